#pragma once

#include <vector>

#include "fragdec/semigroup.hpp"

namespace fragdec {

/// The power-set dynamics of the letter images: T_k is the set of images of
/// length-k words. s is the least k with T_k = T_2k; T_s is the stable
/// semigroup and T_s plus the identity is the stable monoid.
struct StabilityRecord {
  int s = 1;
  std::vector<ElementSet> trace;  // trace[k-1] = T_k, for k = 1 .. max(2s, cycle)
  int trace_preperiod = 1;        // first k whose T_k re-occurs later
  int trace_period = 1;
  ElementSet stable_semigroup;
  ElementSet stable_monoid;

  const ElementSet& T(int k) const { return trace.at(k - 1); }
  int max_k() const { return static_cast<int>(trace.size()); }
};

/// Computes the trace by hash-memoized iteration until the first repeat,
/// derives the index/period, and takes s as the least multiple of the period
/// not below the preperiod.
StabilityRecord stability_index(const SyntacticPresentation& m);

/// R_r = images of words of length congruent to r mod d, computed by
/// reachability in the product of the monoid with the mod-d counter.
/// R_0 always contains the identity.
std::vector<ElementSet> length_residue_images(const SyntacticPresentation& m, int d);

}  // namespace fragdec
