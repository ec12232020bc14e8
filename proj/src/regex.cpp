#include "fragdec/regex.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "detail/nfa.hpp"
#include "fragdec/error.hpp"

namespace fragdec {

namespace {

bool is_meta(char c) {
  return c == '|' || c == '*' || c == '+' || c == '(' || c == ')' || c == '.';
}

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  RegexPtr parse() {
    if (text_.empty()) return node(RegexNode::Kind::kEmptyWord);
    RegexPtr r = alternation();
    if (pos_ != text_.size()) throw ParseError("unexpected ')' in regex", pos_);
    return r;
  }

 private:
  RegexPtr node(RegexNode::Kind kind, char letter = 0,
                std::vector<RegexPtr> children = {}) {
    auto n = std::make_shared<RegexNode>();
    n->kind = kind;
    n->letter = letter;
    n->children = std::move(children);
    return n;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  RegexPtr alternation() {
    std::vector<RegexPtr> branches{concatenation()};
    while (!at_end() && peek() == '|') {
      ++pos_;
      branches.push_back(concatenation());
    }
    if (branches.size() == 1) return branches[0];
    return node(RegexNode::Kind::kUnion, 0, std::move(branches));
  }

  RegexPtr concatenation() {
    std::vector<RegexPtr> parts;
    while (!at_end() && peek() != '|' && peek() != ')') parts.push_back(repetition());
    if (parts.empty()) return node(RegexNode::Kind::kEmptyWord);
    if (parts.size() == 1) return parts[0];
    return node(RegexNode::Kind::kConcat, 0, std::move(parts));
  }

  RegexPtr repetition() {
    RegexPtr r = atom();
    while (!at_end() && (peek() == '*' || peek() == '+')) {
      r = node(peek() == '*' ? RegexNode::Kind::kStar : RegexNode::Kind::kPlus, 0, {r});
      ++pos_;
    }
    return r;
  }

  RegexPtr atom() {
    if (at_end()) throw ParseError("unexpected end of regex", pos_);
    char c = peek();
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      if (!at_end() && peek() == ')') {  // `()` denotes the empty word
        ++pos_;
        return node(RegexNode::Kind::kEmptyWord);
      }
      RegexPtr r = alternation();
      if (at_end() || peek() != ')') throw ParseError("unbalanced '('", open);
      ++pos_;
      return r;
    }
    if (c == '.') {
      ++pos_;
      return node(RegexNode::Kind::kAny);
    }
    if (is_meta(c)) throw ParseError(std::string("unexpected '") + c + "'", pos_);
    if (!std::isprint(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c)))
      throw ParseError("letters must be printable non-space characters", pos_);
    ++pos_;
    return node(RegexNode::Kind::kLetter, c);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_letters(const RegexPtr& r, std::set<char>& out) {
  if (r->kind == RegexNode::Kind::kLetter) out.insert(r->letter);
  for (const auto& c : r->children) collect_letters(c, out);
}

// Thompson fragment with a single entry and a single exit state.
struct Frag {
  int entry, exit;
};

Frag build(detail::Nfa& n, const RegexPtr& r) {
  using K = RegexNode::Kind;
  switch (r->kind) {
    case K::kEmptyWord: {
      int s = n.add_state();
      return {s, s};
    }
    case K::kLetter: {
      int s = n.add_state(), t = n.add_state();
      auto sym = n.alphabet.find(std::string(1, r->letter));
      if (!sym) throw Error(std::string("letter '") + r->letter + "' not in alphabet");
      n.add_edge(s, *sym, t);
      return {s, t};
    }
    case K::kAny: {
      int s = n.add_state(), t = n.add_state();
      for (int a = 0; a < n.alphabet.size(); ++a) n.add_edge(s, a, t);
      return {s, t};
    }
    case K::kConcat: {
      Frag f = build(n, r->children[0]);
      for (std::size_t i = 1; i < r->children.size(); ++i) {
        Frag g = build(n, r->children[i]);
        n.add_eps(f.exit, g.entry);
        f.exit = g.exit;
      }
      return f;
    }
    case K::kUnion: {
      int s = n.add_state(), t = n.add_state();
      for (const auto& c : r->children) {
        Frag f = build(n, c);
        n.add_eps(s, f.entry);
        n.add_eps(f.exit, t);
      }
      return {s, t};
    }
    case K::kStar: {
      Frag f = build(n, r->children[0]);
      int s = n.add_state(), t = n.add_state();
      n.add_eps(s, f.entry);
      n.add_eps(f.exit, t);
      n.add_eps(s, t);
      n.add_eps(f.exit, f.entry);
      return {s, t};
    }
    case K::kPlus: {
      Frag f = build(n, r->children[0]);
      int s = n.add_state(), t = n.add_state();
      n.add_eps(s, f.entry);
      n.add_eps(f.exit, t);
      n.add_eps(f.exit, f.entry);
      return {s, t};
    }
  }
  throw Error("unreachable regex node kind");
}

}  // namespace

RegexPtr parse_regex(std::string_view text) {
  return RegexParser(text).parse();
}

std::string regex_letters(const RegexPtr& r) {
  std::set<char> letters;
  collect_letters(r, letters);
  return std::string(letters.begin(), letters.end());
}

Dfa regex_to_dfa(const RegexPtr& r, const Alphabet& alphabet) {
  detail::Nfa n;
  n.alphabet = alphabet;
  Frag f = build(n, r);
  n.initial = f.entry;
  n.finals = {f.exit};
  return detail::determinize(n);
}

Dfa parse_language(std::string_view text, const Alphabet* alphabet) {
  // DFA descriptions are detected by their header line.
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text.substr(first).rfind("alphabet:", 0) == 0)
    return minimize(parse_dfa_text(text));
  RegexPtr r = parse_regex(text);
  Alphabet a;
  if (alphabet != nullptr) {
    a = *alphabet;
    for (char c : regex_letters(r))
      if (!a.find(std::string(1, c)))
        throw Error(std::string("letter '") + c + "' not in supplied alphabet");
  } else {
    std::string letters = regex_letters(r);
    if (letters.empty())
      throw Error("regex uses no letters; supply an explicit alphabet");
    a = Alphabet::plain(letters);
  }
  return regex_to_dfa(r, a);
}

}  // namespace fragdec
