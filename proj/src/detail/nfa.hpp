#pragma once

// Internal nondeterministic automaton used by the regex compiler and the
// letter-projection construction. Not part of the public API.

#include <map>
#include <set>
#include <vector>

#include "fragdec/alphabet.hpp"
#include "fragdec/dfa.hpp"

namespace fragdec::detail {

struct Nfa {
  Alphabet alphabet;
  int state_count = 0;
  int initial = 0;
  std::set<int> finals;
  // edges[state][sym] = targets; eps[state] = epsilon targets
  std::vector<std::vector<std::vector<int>>> edges;
  std::vector<std::vector<int>> eps;

  int add_state() {
    edges.emplace_back(alphabet.size());
    eps.emplace_back();
    return state_count++;
  }
  void add_edge(int src, int sym, int dst) { edges[src][sym].push_back(dst); }
  void add_eps(int src, int dst) { eps[src].push_back(dst); }
};

// Subset construction; result is complete (dead subset = empty set) and
// minimized.
Dfa determinize(const Nfa& n);

}  // namespace fragdec::detail
