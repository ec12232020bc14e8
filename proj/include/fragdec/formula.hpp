#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fragdec/alphabet.hpp"

namespace fragdec {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order formulas on finite words over the signature
/// {letters, <, =, descriptive local predicates, MOD_i^d, D_i^d, min, max}.
/// Nodes are immutable and shared.
struct Formula {
  enum class Kind {
    kTrue,
    kFalse,
    kLetter,     // a(x)
    kLetterAt,   // a(x+k), k >= 0
    kLetterMin,  // a(min+k)
    kLetterMax,  // a(max-k)
    kMinPred,    // min(x)
    kMaxPred,    // max(x)
    kLess,       // x < y
    kEqual,      // x = y
    kModPred,    // MOD_i^d(x)
    kLengthMod,  // D_i^d
    kNot,
    kAnd,
    kOr,
    kExists,
    kForall,
  };
  Kind kind = Kind::kTrue;
  std::string letter;
  std::string var, var2;
  int offset = 0;
  int residue = 0, modulus = 0;
  std::vector<FormulaPtr> children;
};

// Node constructors.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_letter(std::string letter, std::string var);
FormulaPtr f_letter_at(std::string letter, std::string var, int offset);
FormulaPtr f_letter_min(std::string letter, int offset);
FormulaPtr f_letter_max(std::string letter, int offset);
FormulaPtr f_min(std::string var);
FormulaPtr f_max(std::string var);
FormulaPtr f_less(std::string x, std::string y);
FormulaPtr f_equal(std::string x, std::string y);
FormulaPtr f_mod(int residue, int modulus, std::string var);
FormulaPtr f_length_mod(int residue, int modulus);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> children);
FormulaPtr f_or(std::vector<FormulaPtr> children);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);

/// Parenthesized prefix text format, e.g.
///   (exists x (and (letter a x) (mod 0 2 x)))
/// with (letter-at a x +1), (letter-min a 0), (letter-max a 1), (min x),
/// (max x), (lt x y), (eq x y), (D 1 2), (not f), (and ...), (or ...),
/// (forall x f), true, false. Enriched letters are written a@i.
FormulaPtr parse_formula(std::string_view text);
std::string render_formula(const FormulaPtr& f);

std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> variable_names(const FormulaPtr& f);
std::set<std::string> formula_letters(const FormulaPtr& f);

/// Word-model satisfaction, positions 0-based. Out-of-range descriptive
/// predicates are false; on the empty word existentials are false,
/// universals true, and D_i^d holds iff 0 = i mod d. Letters not in the
/// alphabet never match. Requires a closed formula.
bool evaluate(const FormulaPtr& f, const Alphabet& alphabet, const Word& w);

/// All words of length at most n satisfying f.
std::vector<Word> language_upto(const FormulaPtr& f, const Alphabet& alphabet, int n);

/// Quantifier block count. The default counts the blocks of the prenex
/// normal form obtained by negation pushing, fresh renaming and in-order
/// prefix extraction. With two_variable set, the formula must use at most
/// two variable names and the count is the maximal number of quantifier
/// blocks along a root-to-leaf branch after negations are pushed to the
/// leaves.
int alternation_depth(const FormulaPtr& f, bool two_variable = false);

/// Named logic fragments (metadata only): the signature selection and, for
/// alternation levels, the bound k.
struct FragmentTag {
  std::string name;
  bool two_variable = false;
  bool has_order = false, has_successor = false, has_mod = false, has_equality = false;
  int alternation_k = 0;  // 0 = unbounded
};
const std::vector<FragmentTag>& fragment_tags();
const FragmentTag* find_fragment_tag(std::string_view name);

}  // namespace fragdec
