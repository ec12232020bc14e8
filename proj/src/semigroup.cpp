#include "fragdec/semigroup.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "fragdec/error.hpp"

namespace fragdec {

ElementSet element_set(int size, std::initializer_list<int> members) {
  ElementSet s(size);
  for (int m : members) s.set(m);
  return s;
}

std::vector<int> set_bits(const ElementSet& s) {
  std::vector<int> out;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

std::optional<int> SyntacticPresentation::find_element_by_word(const std::string& w) const {
  for (int x = 0; x < element_count_; ++x)
    if (element_words_[x] == w) return x;
  return std::nullopt;
}

ElementSet SyntacticPresentation::all_elements() const {
  ElementSet s(element_count_);
  s.set();
  return s;
}

int SyntacticPresentation::image(const Word& w) const {
  if (!identity_) throw Error("presentation has no identity; cannot map the empty word");
  int x = *identity_;
  for (int sym : w) x = mult(x, letter_image_.at(sym));
  return x;
}

void SyntacticPresentation::finish_tables() {
  // Two-sided identity, if any.
  identity_.reset();
  for (int e = 0; e < element_count_; ++e) {
    bool neutral = true;
    for (int x = 0; x < element_count_ && neutral; ++x)
      neutral = mult(e, x) == x && mult(x, e) == x;
    if (neutral) {
      identity_ = e;
      break;
    }
  }
  // Semigroup part: closure of the generators (all elements when none).
  semigroup_part_ = ElementSet(element_count_);
  if (generators_.empty()) {
    semigroup_part_.set();
  } else {
    std::deque<int> queue;
    for (int g : generators_)
      if (!semigroup_part_.test(g)) {
        semigroup_part_.set(g);
        queue.push_back(g);
      }
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int g : generators_) {
        int y = mult(x, g);
        if (!semigroup_part_.test(y)) {
          semigroup_part_.set(y);
          queue.push_back(y);
        }
      }
    }
  }
  // Idempotent powers.
  omega_.resize(element_count_);
  for (int x = 0; x < element_count_; ++x) omega_[x] = omega_power(*this, x);
}

SyntacticPresentation SyntacticPresentation::from_table(std::vector<int> mult,
                                                        int element_count,
                                                        std::vector<std::string> names,
                                                        std::vector<int> generators) {
  if (element_count < 1) throw Error("presentation needs at least one element");
  if (static_cast<int>(mult.size()) != element_count * element_count)
    throw Error("multiplication table has wrong size");
  for (int v : mult)
    if (v < 0 || v >= element_count) throw Error("multiplication table entry out of range");
  for (int a = 0; a < element_count; ++a)
    for (int b = 0; b < element_count; ++b)
      for (int c = 0; c < element_count; ++c) {
        int ab = mult[a * element_count + b];
        int bc = mult[b * element_count + c];
        if (mult[ab * element_count + c] != mult[a * element_count + bc])
          throw Error("multiplication table is not associative");
      }
  SyntacticPresentation p;
  p.element_count_ = element_count;
  p.mult_.assign(mult.begin(), mult.end());
  if (names.empty())
    for (int i = 0; i < element_count; ++i) names.push_back("e" + std::to_string(i));
  if (static_cast<int>(names.size()) != element_count)
    throw Error("element name list has wrong size");
  p.element_words_ = std::move(names);
  p.accepting_ = ElementSet(element_count);
  p.generators_ = std::move(generators);
  p.finish_tables();
  return p;
}

SyntacticPresentation SyntacticPresentation::build_from_dfa(const Dfa& d, int max_elements) {
  int n = d.state_count;
  int k = d.alphabet.size();

  // Letter transformations.
  std::vector<std::vector<int>> letter_maps(k, std::vector<int>(n));
  for (int a = 0; a < k; ++a)
    for (int q = 0; q < n; ++q) letter_maps[a][q] = d.next(q, a);

  std::vector<std::vector<int>> elements;  // transformation per element
  std::map<std::vector<int>, int> index;
  std::vector<std::string> words;
  std::vector<std::pair<int, int>> derivation;  // (prefix element, letter), (-1,-1) for identity
  auto intern = [&](std::vector<int> t, const std::string& w, int prefix, int letter) {
    auto [it, inserted] = index.emplace(std::move(t), static_cast<int>(elements.size()));
    if (inserted) {
      elements.push_back(it->first);
      words.push_back(w);
      derivation.emplace_back(prefix, letter);
      if (static_cast<int>(elements.size()) > max_elements)
        throw GuardError("monoid size guard exceeded (cap " + std::to_string(max_elements) +
                         "); raise --max-monoid to proceed");
    }
    return it->second;
  };

  std::vector<int> ident(n);
  for (int q = 0; q < n; ++q) ident[q] = q;
  intern(std::move(ident), "", -1, -1);

  // Breadth-first closure in shortlex order over generator words. step[i*k+a]
  // is the element of word(i) followed by letter a.
  std::vector<int> step;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::vector<int> base = elements[i];  // copy: intern() may grow `elements`
    std::string base_word = words[i];
    for (int a = 0; a < k; ++a) {
      std::vector<int> t(n);
      for (int q = 0; q < n; ++q) t[q] = letter_maps[a][base[q]];
      step.push_back(intern(std::move(t), base_word + d.alphabet.name(a),
                            static_cast<int>(i), a));
    }
  }

  int m = static_cast<int>(elements.size());
  SyntacticPresentation p;
  p.element_count_ = m;
  p.alphabet_ = d.alphabet;
  p.element_words_ = std::move(words);
  p.letter_image_.resize(k);
  for (int a = 0; a < k; ++a) p.letter_image_[a] = step[0 * k + a];
  p.generators_ = p.letter_image_;

  // mult(x, y) follows y's generator word from x: x * (w a) = (x * w) a.
  p.mult_.resize(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x) p.mult_[x * m + 0] = static_cast<std::uint16_t>(x);
  for (int y = 1; y < m; ++y) {
    auto [prefix, letter] = derivation[y];
    for (int x = 0; x < m; ++x)
      p.mult_[static_cast<std::size_t>(x) * m + y] = static_cast<std::uint16_t>(
          step[p.mult_[static_cast<std::size_t>(x) * m + prefix] * k + letter]);
  }

  p.accepting_ = ElementSet(m);
  for (int x = 0; x < m; ++x)
    if (d.finals[elements[x][d.initial]]) p.accepting_.set(x);

  p.finish_tables();
  return p;
}

SyntacticPresentation syntactic_morphism(const Dfa& language, int max_elements) {
  return SyntacticPresentation::build_from_dfa(minimize(language), max_elements);
}

SyntacticPresentation transition_monoid(const Dfa& dfa, int max_elements) {
  dfa.validate();
  return SyntacticPresentation::build_from_dfa(dfa, max_elements);
}

int omega_power(const SyntacticPresentation& s, int x) {
  // Walk x, x^2, x^3, ... until the first repeated power, then pick the
  // idempotent on the cycle.
  std::vector<int> order;
  std::vector<char> seen(s.element_count(), 0);
  int cur = x;
  while (!seen[cur]) {
    seen[cur] = 1;
    order.push_back(cur);
    cur = s.mult(cur, x);
  }
  auto cycle_start = std::find(order.begin(), order.end(), cur);
  for (auto it = cycle_start; it != order.end(); ++it)
    if (s.mult(*it, *it) == *it) return *it;
  throw Error("no idempotent power found; multiplication table is inconsistent");
}

ElementSet idempotents(const SyntacticPresentation& s, const ElementSet* within) {
  ElementSet out(s.element_count());
  for (int x = 0; x < s.element_count(); ++x) {
    if (within && !within->test(x)) continue;
    if (s.mult(x, x) == x) out.set(x);
  }
  return out;
}

ElementSet local_monoid(const SyntacticPresentation& s, int e, const ElementSet* within) {
  if (s.mult(e, e) != e) throw Error("local_monoid requires an idempotent");
  ElementSet out(s.element_count());
  for (int x = 0; x < s.element_count(); ++x) {
    if (within && !within->test(x)) continue;
    out.set(s.mult(s.mult(e, x), e));
  }
  return out;
}

ElementSet idempotents_ideal(const SyntacticPresentation& s, const ElementSet* within) {
  ElementSet domain = within ? *within : s.all_elements();
  ElementSet ids = idempotents(s, &domain);
  // x e y with x, y in domain plus the implicit identity on either side.
  ElementSet left(s.element_count());
  for (int e : set_bits(ids)) {
    left.set(e);
    for (int x : set_bits(domain)) left.set(s.mult(x, e));
  }
  ElementSet out(s.element_count());
  for (int l : set_bits(left)) {
    out.set(l);
    for (int y : set_bits(domain)) out.set(s.mult(l, y));
  }
  return out;
}

ElementSet set_product(const SyntacticPresentation& s, const ElementSet& lhs,
                       const ElementSet& rhs) {
  ElementSet out(s.element_count());
  for (int a : set_bits(lhs))
    for (int b : set_bits(rhs)) out.set(s.mult(a, b));
  return out;
}

namespace {

// Backtracking search for a surjective morphism from subsemigroup U of t
// (elements `u`, ascending) onto s.
bool morphism_onto(const SyntacticPresentation& s, const SyntacticPresentation& t,
                   const std::vector<int>& u, std::vector<int>& phi,
                   std::vector<int>& pos_in_u, std::size_t next) {
  int m = static_cast<int>(u.size());
  if (next == u.size()) {
    ElementSet hit(s.element_count());
    for (int v : phi) hit.set(v);
    return static_cast<int>(hit.count()) == s.element_count();
  }
  for (int img = 0; img < s.element_count(); ++img) {
    phi[next] = img;
    bool ok = true;
    for (std::size_t i = 0; i <= next && ok; ++i) {
      for (std::size_t j = 0; j <= next && ok; ++j) {
        int prod = t.mult(u[i], u[j]);
        int p = pos_in_u[prod];
        if (p >= 0 && p <= static_cast<int>(next))
          ok = s.mult(phi[i], phi[j]) == phi[p];
      }
    }
    if (ok && morphism_onto(s, t, u, phi, pos_in_u, next + 1)) return true;
  }
  (void)m;
  return false;
}

}  // namespace

bool divides_bruteforce(const SyntacticPresentation& s, const SyntacticPresentation& t,
                        int cap) {
  if (t.element_count() > cap)
    throw GuardError("divides_bruteforce cap exceeded: " + std::to_string(t.element_count()) +
                     " > " + std::to_string(cap));
  int n = t.element_count();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) < s.element_count()) continue;
    std::vector<int> u;
    for (int x = 0; x < n; ++x)
      if (mask & (1u << x)) u.push_back(x);
    bool closed = true;
    for (std::size_t i = 0; i < u.size() && closed; ++i)
      for (std::size_t j = 0; j < u.size() && closed; ++j)
        closed = (mask >> t.mult(u[i], u[j])) & 1u;
    if (!closed) continue;
    std::vector<int> pos_in_u(n, -1);
    for (std::size_t i = 0; i < u.size(); ++i) pos_in_u[u[i]] = static_cast<int>(i);
    std::vector<int> phi(u.size(), -1);
    if (morphism_onto(s, t, u, phi, pos_in_u, 0)) return true;
  }
  return false;
}

}  // namespace fragdec
