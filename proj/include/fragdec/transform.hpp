#pragma once

#include <vector>

#include "fragdec/formula.hpp"

namespace fragdec {

/// psi_i = f with D_i^d replaced by true and every other D_j^d by false
/// (plain substitution, no simplification). Every D predicate of f must
/// carry modulus d; L(f) is the union over i of (A^d)* A^i intersected
/// with L(psi_i).
std::vector<FormulaPtr> decompose_D(const FormulaPtr& f, int d);

/// Rewrites a D-free formula with MOD^d predicates into a formula over the
/// enriched alphabet: MOD_i^d(x) becomes the disjunction of (a@i)(x) over
/// the base letters, and each letter predicate becomes the disjunction over
/// its residues. L(f) = pi_d(L(result) /\ K_d).
FormulaPtr mod_to_letters(const FormulaPtr& f, int d, const Alphabet& base);

/// Inverse direction: each enriched letter predicate (a@i) becomes the
/// matching plain predicate constrained by a congruence (MOD on the
/// variable, a fixed truth value at constant positions, D for max-anchored
/// ones).
FormulaPtr letters_to_mod(const FormulaPtr& f, int d);

/// Lifts every MOD/D predicate to the least common multiple of the moduli
/// occurring in f. Returns the lifted formula and that modulus (1 when no
/// modular predicate occurs).
std::pair<FormulaPtr, int> normalize_moduli(const FormulaPtr& f);

/// The quantifier/connective skeleton above substituted leaves; the
/// transformations above preserve it.
std::string formula_skeleton(const FormulaPtr& f);

}  // namespace fragdec
