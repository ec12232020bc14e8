#pragma once

// Shared test utilities: seeded random automata, independent oracles
// (regex matching by recursive position sets, syntactic classes by context
// signatures, residue images by trace unions), and small fixture monoids.

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "fragdec/dfa.hpp"
#include "fragdec/regex.hpp"
#include "fragdec/semigroup.hpp"
#include "fragdec/stability.hpp"

namespace fragdec::testing {

inline std::vector<Word> words_upto(const Alphabet& a, int n) {
  std::vector<Word> out;
  for (int len = 0; len <= n; ++len) {
    Word w(len, 0);
    for (;;) {
      out.push_back(w);
      int i = len - 1;
      for (; i >= 0; --i) {
        if (++w[i] < a.size()) break;
        w[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return out;
}

inline Dfa random_dfa(std::mt19937& rng, int max_states, int letters) {
  std::uniform_int_distribution<int> state_count_dist(1, max_states);
  int n = state_count_dist(rng);
  Dfa d;
  d.alphabet = Alphabet::plain(letters == 1 ? "a" : "ab");
  d.state_count = n;
  d.initial = 0;
  d.finals.resize(n);
  std::uniform_int_distribution<int> state_dist(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int q = 0; q < n; ++q) d.finals[q] = coin(rng) == 1;
  d.transitions.resize(n * d.alphabet.size());
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < d.alphabet.size(); ++a) d.transitions[q * d.alphabet.size() + a] = state_dist(rng);
  return d;
}

/// Random minimal DFA whose syntactic monoid stays below `monoid_cap`.
inline Dfa random_language(std::mt19937& rng, int max_states, int letters, int monoid_cap) {
  for (;;) {
    Dfa d = minimize(random_dfa(rng, max_states, letters));
    try {
      SyntacticPresentation m = syntactic_morphism(d, monoid_cap);
      (void)m;
      return d;
    } catch (const GuardError&) {
      continue;
    }
  }
}

// ---------------------------------------------------------------------------
// Regex matching oracle: position sets, no automata involved.

inline std::set<int> regex_positions(const RegexPtr& r, const Word& w, int i,
                                     const Alphabet& a);

inline std::set<int> regex_star_closure(const RegexPtr& child, const Word& w, std::set<int> s,
                                        const Alphabet& a) {
  for (;;) {
    std::set<int> next = s;
    for (int j : s) {
      auto more = regex_positions(child, w, j, a);
      next.insert(more.begin(), more.end());
    }
    if (next == s) return s;
    s = std::move(next);
  }
}

inline std::set<int> regex_positions(const RegexPtr& r, const Word& w, int i,
                                     const Alphabet& a) {
  using K = RegexNode::Kind;
  switch (r->kind) {
    case K::kEmptyWord:
      return {i};
    case K::kLetter: {
      auto sym = a.find(std::string(1, r->letter));
      if (sym && i < static_cast<int>(w.size()) && w[i] == *sym) return {i + 1};
      return {};
    }
    case K::kAny:
      if (i < static_cast<int>(w.size())) return {i + 1};
      return {};
    case K::kConcat: {
      std::set<int> cur{i};
      for (const auto& c : r->children) {
        std::set<int> next;
        for (int j : cur) {
          auto more = regex_positions(c, w, j, a);
          next.insert(more.begin(), more.end());
        }
        cur = std::move(next);
      }
      return cur;
    }
    case K::kUnion: {
      std::set<int> out;
      for (const auto& c : r->children) {
        auto more = regex_positions(c, w, i, a);
        out.insert(more.begin(), more.end());
      }
      return out;
    }
    case K::kStar:
      return regex_star_closure(r->children[0], w, {i}, a);
    case K::kPlus: {
      std::set<int> first = regex_positions(r->children[0], w, i, a);
      return regex_star_closure(r->children[0], w, std::move(first), a);
    }
  }
  return {};
}

inline bool regex_matches(const RegexPtr& r, const Alphabet& a, const Word& w) {
  auto ends = regex_positions(r, w, 0, a);
  return ends.count(static_cast<int>(w.size())) > 0;
}

// ---------------------------------------------------------------------------
// Syntactic classes by bounded context signatures (membership only).

inline int context_class_count(const Dfa& d, int word_bound, int context_bound) {
  auto contexts = words_upto(d.alphabet, context_bound);
  std::set<std::vector<bool>> signatures;
  for (const Word& u : words_upto(d.alphabet, word_bound)) {
    std::vector<bool> sig;
    sig.reserve(contexts.size() * contexts.size());
    for (const Word& p : contexts)
      for (const Word& q : contexts) {
        Word w = p;
        w.insert(w.end(), u.begin(), u.end());
        w.insert(w.end(), q.begin(), q.end());
        sig.push_back(d.accepts(w));
      }
    signatures.insert(std::move(sig));
  }
  return static_cast<int>(signatures.size());
}

// ---------------------------------------------------------------------------
// Residue images by trace unions (oracle for the reachability computation).

inline std::vector<ElementSet> residue_images_by_trace(const SyntacticPresentation& m, int d) {
  ElementSet letters(m.element_count());
  for (int img : m.letter_image()) letters.set(img);
  // Iterate the trace with cycle detection, then union within residues over
  // one full cycle.
  std::vector<ElementSet> trace{letters};
  std::map<ElementSet, int> seen{{letters, 1}};
  int preperiod = 0, period = 0;
  for (int k = 2;; ++k) {
    ElementSet next = set_product(m, trace.back(), letters);
    auto it = seen.find(next);
    if (it != seen.end()) {
      preperiod = it->second;
      period = k - it->second;
      break;
    }
    seen.emplace(next, k);
    trace.push_back(next);
  }
  int bound = preperiod + std::lcm(period, d) + d;
  while (static_cast<int>(trace.size()) < bound)
    trace.push_back(set_product(m, trace.back(), letters));
  std::vector<ElementSet> classes(d, ElementSet(m.element_count()));
  if (m.identity()) classes[0].set(*m.identity());
  for (int k = 1; k <= bound; ++k) classes[k % d] |= trace[k - 1];
  return classes;
}

// ---------------------------------------------------------------------------
// Fixture monoids.

/// U1 = {1, 0} under integer multiplication; element 0 is the identity.
inline SyntacticPresentation u1() {
  return SyntacticPresentation::from_table({0, 1, 1, 1}, 2, {"1", "0"});
}

/// Cyclic group of order n (element i is g^i).
inline SyntacticPresentation cyclic(int n) {
  std::vector<int> mult(n * n);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[i * n + j] = (i + j) % n;
  for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  return SyntacticPresentation::from_table(std::move(mult), n, std::move(names));
}

}  // namespace fragdec::testing
