#include "fragdec/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "fragdec/error.hpp"

namespace fragdec {

bool Dfa::accepts(const Word& w) const {
  int q = initial;
  for (int sym : w) q = next(q, sym);
  return finals[q];
}

void Dfa::validate() const {
  if (state_count <= 0) throw Error("DFA must have at least one state");
  if (alphabet.empty()) throw Error("DFA alphabet must be non-empty");
  if (initial < 0 || initial >= state_count) throw Error("initial state out of range");
  if (static_cast<int>(finals.size()) != state_count)
    throw Error("finals bitmap has wrong size");
  if (static_cast<int>(transitions.size()) != state_count * alphabet.size())
    throw Error("transition table has wrong size");
  for (int t : transitions)
    if (t < 0 || t >= state_count) throw Error("transition target out of range");
}

namespace {

// Drops unreachable states; preserves relative order of the kept ones.
Dfa restrict_reachable(const Dfa& d) {
  std::vector<int> order;
  std::vector<int> index(d.state_count, -1);
  std::deque<int> queue{d.initial};
  index[d.initial] = 0;
  order.push_back(d.initial);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int a = 0; a < d.alphabet.size(); ++a) {
      int t = d.next(q, a);
      if (index[t] < 0) {
        index[t] = static_cast<int>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  Dfa out;
  out.alphabet = d.alphabet;
  out.state_count = static_cast<int>(order.size());
  out.initial = 0;
  out.finals.resize(out.state_count);
  out.transitions.resize(out.state_count * d.alphabet.size());
  for (int i = 0; i < out.state_count; ++i) {
    out.finals[i] = d.finals[order[i]];
    for (int a = 0; a < d.alphabet.size(); ++a)
      out.transitions[i * d.alphabet.size() + a] = index[d.next(order[i], a)];
  }
  return out;
}

}  // namespace

Dfa minimize(const Dfa& d) {
  d.validate();
  Dfa r = restrict_reachable(d);
  int n = r.state_count;
  int k = r.alphabet.size();

  // Moore partition refinement.
  std::vector<int> cls(n);
  for (int q = 0; q < n; ++q) cls[q] = r.finals[q] ? 1 : 0;
  int class_count = 2;
  // Degenerate case: all states equivalent at the start.
  {
    bool any_final = std::find(r.finals.begin(), r.finals.end(), true) != r.finals.end();
    bool any_nonfinal = std::find(r.finals.begin(), r.finals.end(), false) != r.finals.end();
    if (!any_final || !any_nonfinal) {
      std::fill(cls.begin(), cls.end(), 0);
      class_count = 1;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> signature_to_class;
    std::vector<int> next_cls(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[q]);
      for (int a = 0; a < k; ++a) sig.push_back(cls[r.next(q, a)]);
      auto [it, inserted] =
          signature_to_class.emplace(std::move(sig), static_cast<int>(signature_to_class.size()));
      next_cls[q] = it->second;
      (void)inserted;
    }
    int next_count = static_cast<int>(signature_to_class.size());
    if (next_count == class_count) break;
    cls = std::move(next_cls);
    class_count = next_count;
  }

  // Quotient, then canonical BFS renumbering from the initial class.
  std::vector<int> rep_state(class_count, -1);
  for (int q = 0; q < n; ++q)
    if (rep_state[cls[q]] < 0) rep_state[cls[q]] = q;

  std::vector<int> bfs_index(class_count, -1);
  std::vector<int> bfs_order;
  std::deque<int> queue{cls[r.initial]};
  bfs_index[cls[r.initial]] = 0;
  bfs_order.push_back(cls[r.initial]);
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    int q = rep_state[c];
    for (int a = 0; a < k; ++a) {
      int t = cls[r.next(q, a)];
      if (bfs_index[t] < 0) {
        bfs_index[t] = static_cast<int>(bfs_order.size());
        bfs_order.push_back(t);
        queue.push_back(t);
      }
    }
  }

  Dfa out;
  out.alphabet = r.alphabet;
  out.state_count = class_count;
  out.initial = 0;
  out.finals.resize(class_count);
  out.transitions.resize(class_count * k);
  for (int i = 0; i < class_count; ++i) {
    int q = rep_state[bfs_order[i]];
    out.finals[i] = r.finals[q];
    for (int a = 0; a < k; ++a)
      out.transitions[i * k + a] = bfs_index[cls[r.next(q, a)]];
  }
  return out;
}

Dfa combine(SetOp op, const Dfa& lhs, const Dfa* rhs) {
  lhs.validate();
  if (op == SetOp::kComplement) {
    if (rhs != nullptr) throw Error("complement takes a single operand");
    Dfa out = lhs;
    for (int q = 0; q < out.state_count; ++q) out.finals[q] = !out.finals[q];
    return minimize(out);
  }
  if (rhs == nullptr) throw Error("binary set operation needs two operands");
  rhs->validate();
  if (lhs.alphabet != rhs->alphabet) throw Error("operand alphabets differ");

  int k = lhs.alphabet.size();
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int a, int b) {
    auto [it, inserted] = index.emplace(std::make_pair(a, b), static_cast<int>(pairs.size()));
    if (inserted) pairs.emplace_back(a, b);
    return it->second;
  };
  intern(lhs.initial, rhs->initial);
  Dfa out;
  out.alphabet = lhs.alphabet;
  out.initial = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    for (int sym = 0; sym < k; ++sym) {
      int t = intern(lhs.next(a, sym), rhs->next(b, sym));
      (void)t;
    }
  }
  out.state_count = static_cast<int>(pairs.size());
  out.finals.resize(out.state_count);
  out.transitions.resize(out.state_count * k);
  for (int i = 0; i < out.state_count; ++i) {
    auto [a, b] = pairs[i];
    bool fa = lhs.finals[a], fb = rhs->finals[b];
    switch (op) {
      case SetOp::kUnion: out.finals[i] = fa || fb; break;
      case SetOp::kIntersection: out.finals[i] = fa && fb; break;
      case SetOp::kDifference: out.finals[i] = fa && !fb; break;
      case SetOp::kComplement: break;  // handled above
    }
    for (int sym = 0; sym < k; ++sym)
      out.transitions[i * k + sym] = index.at({lhs.next(a, sym), rhs->next(b, sym)});
  }
  return minimize(out);
}

bool is_empty_language(const Dfa& d) {
  return !shortest_word(d).has_value();
}

std::optional<Word> shortest_word(const Dfa& d) {
  std::vector<int> prev_state(d.state_count, -1), prev_sym(d.state_count, -1);
  std::vector<bool> seen(d.state_count, false);
  std::deque<int> queue{d.initial};
  seen[d.initial] = true;
  int found = -1;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (d.finals[q]) {
      found = q;
      break;
    }
    for (int a = 0; a < d.alphabet.size(); ++a) {
      int t = d.next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        prev_state[t] = q;
        prev_sym[t] = a;
        queue.push_back(t);
      }
    }
  }
  if (found < 0) return std::nullopt;
  Word w;
  for (int s = found; prev_state[s] >= 0; s = prev_state[s]) w.push_back(prev_sym[s]);
  std::reverse(w.begin(), w.end());
  return w;
}

bool same_language(const Dfa& a, const Dfa& b) {
  Dfa left = combine(SetOp::kDifference, a, &b);
  if (!is_empty_language(left)) return false;
  Dfa right = combine(SetOp::kDifference, b, &a);
  return is_empty_language(right);
}

Dfa parse_dfa_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> letters;
  int states = -1, initial = -1;
  std::vector<int> finals;
  struct Edge { int src; std::string letter; int dst; };
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "alphabet:") {
      std::string l;
      while (ls >> l) letters.push_back(l);
    } else if (key == "states:") {
      if (!(ls >> states)) throw ParseError("states: expects a count");
    } else if (key == "initial:") {
      if (!(ls >> initial)) throw ParseError("initial: expects a state index");
    } else if (key == "finals:") {
      int f;
      while (ls >> f) finals.push_back(f);
    } else if (key == "trans:") {
      Edge e;
      if (!(ls >> e.src >> e.letter >> e.dst))
        throw ParseError("trans: expects `src letter dst` (line " + std::to_string(lineno) + ")");
      edges.push_back(e);
    } else {
      throw ParseError("unknown directive '" + key + "' (line " + std::to_string(lineno) + ")");
    }
  }
  if (letters.empty()) throw ParseError("missing alphabet: line");
  if (states < 1) throw ParseError("missing or invalid states: line");
  if (initial < 0 || initial >= states) throw ParseError("initial state out of range");

  Alphabet alphabet = Alphabet::from_names(letters);
  int k = alphabet.size();
  // Implicit sink for unspecified edges.
  int sink = states;
  std::vector<int> trans((states + 1) * k, sink);
  std::vector<bool> specified(states * k, false);
  for (const auto& e : edges) {
    auto sym = alphabet.find(e.letter);
    if (!sym) throw ParseError("unknown letter '" + e.letter + "' in trans:");
    if (e.src < 0 || e.src >= states || e.dst < 0 || e.dst >= states)
      throw ParseError("trans: state out of range");
    if (specified[e.src * k + *sym])
      throw ParseError("duplicate transition for state " + std::to_string(e.src) +
                       " on '" + e.letter + "'");
    specified[e.src * k + *sym] = true;
    trans[e.src * k + *sym] = e.dst;
  }
  bool need_sink = false;
  for (int q = 0; q < states; ++q)
    for (int a = 0; a < k; ++a)
      if (!specified[q * k + a]) need_sink = true;

  Dfa d;
  d.alphabet = alphabet;
  d.state_count = need_sink ? states + 1 : states;
  d.initial = initial;
  d.finals.assign(d.state_count, false);
  for (int f : finals) {
    if (f < 0 || f >= states) throw ParseError("final state out of range");
    d.finals[f] = true;
  }
  trans.resize(d.state_count * k);
  d.transitions = std::move(trans);
  d.validate();
  return d;
}

std::string to_dfa_text(const Dfa& d) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& n : d.alphabet.names()) out << ' ' << n;
  out << '\n';
  out << "states: " << d.state_count << '\n';
  out << "initial: " << d.initial << '\n';
  out << "finals:";
  for (int q = 0; q < d.state_count; ++q)
    if (d.finals[q]) out << ' ' << q;
  out << '\n';
  for (int q = 0; q < d.state_count; ++q)
    for (int a = 0; a < d.alphabet.size(); ++a)
      out << "trans: " << q << ' ' << d.alphabet.name(a) << ' ' << d.next(q, a) << '\n';
  return out.str();
}

}  // namespace fragdec
