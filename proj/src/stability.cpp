#include "fragdec/stability.hpp"

#include <deque>
#include <map>

#include "fragdec/error.hpp"

namespace fragdec {

StabilityRecord stability_index(const SyntacticPresentation& m) {
  if (m.letter_image().empty())
    throw Error("stability index needs a presentation with letter images");
  if (!m.identity()) throw Error("stability index needs a monoid presentation");

  ElementSet letters(m.element_count());
  for (int img : m.letter_image()) letters.set(img);

  StabilityRecord rec;
  std::map<ElementSet, int> first_seen;  // T value -> k
  rec.trace.push_back(letters);
  first_seen[letters] = 1;
  int repeat_at = 0, repeat_of = 0;
  for (int k = 2;; ++k) {
    ElementSet next = set_product(m, rec.trace.back(), letters);
    auto it = first_seen.find(next);
    if (it != first_seen.end()) {
      repeat_of = it->second;
      repeat_at = k;
      rec.trace.push_back(std::move(next));
      break;
    }
    first_seen.emplace(next, k);
    rec.trace.push_back(std::move(next));
  }
  rec.trace_preperiod = repeat_of;
  rec.trace_period = repeat_at - repeat_of;
  // T_k = T_2k needs k inside the cycle and the period dividing k.
  int p = rec.trace_period;
  int s = ((rec.trace_preperiod + p - 1) / p) * p;
  rec.s = s;
  // Extend the trace to 2s so callers can read T_1 .. T_2s directly.
  while (static_cast<int>(rec.trace.size()) < 2 * s)
    rec.trace.push_back(set_product(m, rec.trace.back(), letters));

  rec.stable_semigroup = rec.T(s);
  rec.stable_monoid = rec.stable_semigroup;
  rec.stable_monoid.set(*m.identity());
  return rec;
}

std::vector<ElementSet> length_residue_images(const SyntacticPresentation& m, int d) {
  if (d < 1) throw Error("modulus must be positive");
  if (!m.identity()) throw Error("length_residue_images needs a monoid presentation");
  int n = m.element_count();
  std::vector<ElementSet> classes(d, ElementSet(n));
  std::vector<bool> seen(static_cast<std::size_t>(n) * d, false);
  std::deque<std::pair<int, int>> queue;
  int start = *m.identity();
  seen[start * d + 0] = true;
  classes[0].set(start);
  queue.emplace_back(start, 0);
  while (!queue.empty()) {
    auto [x, r] = queue.front();
    queue.pop_front();
    for (int img : m.letter_image()) {
      int y = m.mult(x, img);
      int r2 = (r + 1) % d;
      if (!seen[y * d + r2]) {
        seen[y * d + r2] = true;
        classes[r2].set(y);
        queue.emplace_back(y, r2);
      }
    }
  }
  return classes;
}

}  // namespace fragdec
