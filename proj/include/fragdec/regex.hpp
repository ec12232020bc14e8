#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fragdec/alphabet.hpp"
#include "fragdec/dfa.hpp"

namespace fragdec {

/// Regex grammar: single-character letters, juxtaposition for concatenation,
/// `|` for union, `*`/`+` for iteration, parentheses for grouping, `.` for
/// any letter, `()` for the empty word. No complement or intersection
/// operators; use combine() on DFAs for those.
struct RegexNode {
  enum class Kind { kEmptyWord, kLetter, kAny, kConcat, kUnion, kStar, kPlus };
  Kind kind;
  char letter = 0;
  std::vector<std::shared_ptr<const RegexNode>> children;
};
using RegexPtr = std::shared_ptr<const RegexNode>;

RegexPtr parse_regex(std::string_view text);

/// Letters occurring in the regex, in sorted order.
std::string regex_letters(const RegexPtr& r);

/// Thompson construction, then subset construction and minimization.
Dfa regex_to_dfa(const RegexPtr& r, const Alphabet& alphabet);

}  // namespace fragdec
