#include "detail/nfa.hpp"

#include <deque>

namespace fragdec::detail {

namespace {

std::set<int> eps_closure(const Nfa& n, std::set<int> states) {
  std::deque<int> queue(states.begin(), states.end());
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int t : n.eps[q])
      if (states.insert(t).second) queue.push_back(t);
  }
  return states;
}

}  // namespace

Dfa determinize(const Nfa& n) {
  int k = n.alphabet.size();
  std::map<std::set<int>, int> index;
  std::vector<std::set<int>> subsets;
  auto intern = [&](std::set<int> s) {
    auto [it, inserted] = index.emplace(std::move(s), static_cast<int>(subsets.size()));
    if (inserted) subsets.push_back(it->first);
    return it->second;
  };
  intern(eps_closure(n, {n.initial}));
  std::vector<int> trans;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::set<int> current = subsets[i];  // intern() may reallocate subsets
    for (int a = 0; a < k; ++a) {
      std::set<int> next;
      for (int q : current)
        for (int t : n.edges[q][a]) next.insert(t);
      trans.push_back(intern(eps_closure(n, std::move(next))));
    }
  }
  Dfa d;
  d.alphabet = n.alphabet;
  d.state_count = static_cast<int>(subsets.size());
  d.initial = 0;
  d.transitions = std::move(trans);
  d.finals.resize(d.state_count);
  for (int i = 0; i < d.state_count; ++i) {
    for (int q : subsets[i])
      if (n.finals.count(q)) d.finals[i] = true;
  }
  return minimize(d);
}

}  // namespace fragdec::detail
