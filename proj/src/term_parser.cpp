#include "detail/term_parser.hpp"

#include <cctype>

#include "fragdec/error.hpp"

namespace fragdec::detail {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return text[pos];
  }
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

// Applies a trailing `^w` if present (no space allowed before '^').
TermNode maybe_omega(Cursor& c, TermNode inner) {
  if (c.pos + 1 < c.text.size() && c.text[c.pos] == '^' && c.text[c.pos + 1] == 'w') {
    c.pos += 2;
    TermNode o;
    o.kind = TermNode::Kind::kOmega;
    o.children.push_back(std::move(inner));
    return o;
  }
  return inner;
}

TermNode parse_sequence(Cursor& c, bool stop_at_paren);

TermNode parse_item(Cursor& c) {
  char ch = c.peek();
  if (ch == '(') {
    std::size_t open = c.pos;
    ++c.pos;
    TermNode inner = parse_sequence(c, true);
    if (c.at_end() || c.peek() != ')') throw ParseError("unbalanced '(' in term", open);
    ++c.pos;
    return maybe_omega(c, std::move(inner));
  }
  if (!is_name_char(ch)) throw ParseError("expected a name or '(' in term", c.pos);
  std::size_t start = c.pos;
  while (c.pos < c.text.size() && is_name_char(c.text[c.pos])) ++c.pos;
  TermNode n;
  n.kind = TermNode::Kind::kName;
  n.name = std::string(c.text.substr(start, c.pos - start));
  return maybe_omega(c, std::move(n));
}

TermNode parse_sequence(Cursor& c, bool stop_at_paren) {
  std::vector<TermNode> items;
  while (!c.at_end()) {
    char ch = c.peek();
    if (ch == ')' && stop_at_paren) break;
    if (ch == ')') throw ParseError("unexpected ')' in term", c.pos);
    items.push_back(parse_item(c));
  }
  if (items.empty()) throw ParseError("empty term", c.pos);
  if (items.size() == 1) return std::move(items[0]);
  TermNode seq;
  seq.kind = TermNode::Kind::kConcat;
  seq.children = std::move(items);
  return seq;
}

}  // namespace

TermNode parse_term_text(std::string_view text) {
  Cursor c{text};
  TermNode t = parse_sequence(c, false);
  if (!c.at_end()) throw ParseError("trailing characters after term", c.pos);
  return t;
}

std::pair<TermNode, TermNode> parse_equation_text(std::string_view line) {
  std::size_t eq = line.find('=');
  if (eq == std::string_view::npos) throw ParseError("equation needs a '='");
  return {parse_term_text(line.substr(0, eq)), parse_term_text(line.substr(eq + 1))};
}

std::string render_term(const TermNode& t) {
  switch (t.kind) {
    case TermNode::Kind::kName:
      return t.name;
    case TermNode::Kind::kOmega: {
      const TermNode& inner = t.children[0];
      if (inner.kind == TermNode::Kind::kName) return inner.name + "^w";
      return "(" + render_term(inner) + ")^w";
    }
    case TermNode::Kind::kConcat: {
      std::string out;
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ' ';
        const TermNode& ch = t.children[i];
        if (ch.kind == TermNode::Kind::kConcat)
          out += "(" + render_term(ch) + ")";
        else
          out += render_term(ch);
      }
      return out;
    }
  }
  return {};
}

}  // namespace fragdec::detail
