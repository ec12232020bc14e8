#pragma once

#include "fragdec/alphabet.hpp"
#include "fragdec/dfa.hpp"

namespace fragdec {

/// Kinds of enriched-letter languages over A x Z_d:
///   kWellFormed  - words whose position j carries residue j mod d
///   kFactors     - factors of well-formed words (residues consecutive
///                  mod d from an arbitrary start)
///   kSegment     - non-empty well-formed factors whose first letter
///                  carries residue i and last letter residue j
enum class WellFormedKind { kWellFormed, kFactors, kSegment };

/// The well-formed lift of u starting at residue i: letter p of u carries
/// residue (i + p) mod d. Requires 0 <= i < d.
Word encode_alpha(const Word& u, int i, int d, const Alphabet& base,
                  const Alphabet& enriched);

/// Convenience overload building the enriched alphabet itself.
std::pair<Word, Alphabet> encode_alpha(const Word& u, int i, int d, const Alphabet& base);

bool is_wellformed(const Alphabet& enriched, const Word& w);
bool is_wellformed_factor(const Alphabet& enriched, const Word& w);

/// Minimal DFA over A x Z_d for the requested set. i and j are only used
/// for kSegment.
Dfa wellformed_recognizer(const Alphabet& base, int d, WellFormedKind kind,
                          int i = 0, int j = 0);

/// L_d: the well-formed words whose underlying word is in L. Built as the
/// product of L with a mod-d position counter, minimized.
Dfa enrich(const Dfa& language, int d);

/// Projection to the underlying alphabet: recognizes pi_d(L(D)). Letter
/// relabelling followed by subset construction and minimization.
Dfa project_letters(const Dfa& d);

}  // namespace fragdec
