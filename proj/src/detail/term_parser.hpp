#pragma once

// Shared parser for omega-term syntax used by identity files and the
// equation part of path-equation files:
//
//   y (x y)^w = (x y)^w
//   (m1 m2)^w m1 m4 (m3 m4)^w
//
// Names are juxtaposed with spaces; `( ... )^w` and `name^w` denote the
// omega power. Internal use only.

#include <string>
#include <string_view>
#include <vector>

namespace fragdec::detail {

struct TermNode {
  enum class Kind { kName, kConcat, kOmega };
  Kind kind = Kind::kName;
  std::string name;
  std::vector<TermNode> children;
};

// Parses a full term (sequence of items). Throws ParseError on bad input.
TermNode parse_term_text(std::string_view text);

// Splits `lhs = rhs` and parses both sides.
std::pair<TermNode, TermNode> parse_equation_text(std::string_view line);

std::string render_term(const TermNode& t);

}  // namespace fragdec::detail
