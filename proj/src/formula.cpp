#include "fragdec/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "fragdec/error.hpp"

namespace fragdec {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr f_true() { return make({.kind = Formula::Kind::kTrue}); }
FormulaPtr f_false() { return make({.kind = Formula::Kind::kFalse}); }

FormulaPtr f_letter(std::string letter, std::string var) {
  return make({.kind = Formula::Kind::kLetter, .letter = std::move(letter), .var = std::move(var)});
}
FormulaPtr f_letter_at(std::string letter, std::string var, int offset) {
  if (offset < 0) throw Error("descriptive predicate offset must be non-negative");
  return make({.kind = Formula::Kind::kLetterAt, .letter = std::move(letter),
               .var = std::move(var), .offset = offset});
}
FormulaPtr f_letter_min(std::string letter, int offset) {
  if (offset < 0) throw Error("descriptive predicate offset must be non-negative");
  return make({.kind = Formula::Kind::kLetterMin, .letter = std::move(letter), .offset = offset});
}
FormulaPtr f_letter_max(std::string letter, int offset) {
  if (offset < 0) throw Error("descriptive predicate offset must be non-negative");
  return make({.kind = Formula::Kind::kLetterMax, .letter = std::move(letter), .offset = offset});
}
FormulaPtr f_min(std::string var) {
  return make({.kind = Formula::Kind::kMinPred, .var = std::move(var)});
}
FormulaPtr f_max(std::string var) {
  return make({.kind = Formula::Kind::kMaxPred, .var = std::move(var)});
}
FormulaPtr f_less(std::string x, std::string y) {
  return make({.kind = Formula::Kind::kLess, .var = std::move(x), .var2 = std::move(y)});
}
FormulaPtr f_equal(std::string x, std::string y) {
  return make({.kind = Formula::Kind::kEqual, .var = std::move(x), .var2 = std::move(y)});
}
FormulaPtr f_mod(int residue, int modulus, std::string var) {
  if (modulus < 1 || residue < 0 || residue >= modulus)
    throw Error("MOD predicate needs 0 <= i < d");
  return make({.kind = Formula::Kind::kModPred, .var = std::move(var),
               .residue = residue, .modulus = modulus});
}
FormulaPtr f_length_mod(int residue, int modulus) {
  if (modulus < 1 || residue < 0 || residue >= modulus)
    throw Error("D predicate needs 0 <= i < d");
  return make({.kind = Formula::Kind::kLengthMod, .residue = residue, .modulus = modulus});
}
FormulaPtr f_not(FormulaPtr f) {
  return make({.kind = Formula::Kind::kNot, .children = {std::move(f)}});
}
FormulaPtr f_and(std::vector<FormulaPtr> children) {
  if (children.empty()) throw Error("conjunction needs at least one operand");
  if (children.size() == 1) return children[0];
  return make({.kind = Formula::Kind::kAnd, .children = std::move(children)});
}
FormulaPtr f_or(std::vector<FormulaPtr> children) {
  if (children.empty()) throw Error("disjunction needs at least one operand");
  if (children.size() == 1) return children[0];
  return make({.kind = Formula::Kind::kOr, .children = std::move(children)});
}
FormulaPtr f_exists(std::string var, FormulaPtr body) {
  return make({.kind = Formula::Kind::kExists, .var = std::move(var),
               .children = {std::move(body)}});
}
FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return make({.kind = Formula::Kind::kForall, .var = std::move(var),
               .children = {std::move(body)}});
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct SexpCursor {
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
  std::string atom() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) throw ParseError("expected an atom", pos);
    return std::string(text.substr(start, pos - start));
  }
  void expect(char c) {
    if (at_end() || peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
};

int parse_int(const std::string& s, const char* what) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) i = 1;
  if (i == s.size()) throw ParseError(std::string("expected an integer for ") + what);
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ParseError(std::string("expected an integer for ") + what);
  return std::stoi(s);
}

FormulaPtr parse_sexp(SexpCursor& c) {
  if (c.at_end()) throw ParseError("unexpected end of formula", c.pos);
  if (c.peek() != '(') {
    std::string a = c.atom();
    if (a == "true") return f_true();
    if (a == "false") return f_false();
    throw ParseError("unknown atom '" + a + "'", c.pos);
  }
  c.expect('(');
  std::string head = c.atom();
  FormulaPtr result;
  if (head == "letter") {
    std::string letter = c.atom(), var = c.atom();
    result = f_letter(letter, var);
  } else if (head == "letter-at") {
    std::string letter = c.atom(), var = c.atom(), off = c.atom();
    result = f_letter_at(letter, var, parse_int(off, "offset"));
  } else if (head == "letter-min") {
    std::string letter = c.atom(), off = c.atom();
    result = f_letter_min(letter, parse_int(off, "offset"));
  } else if (head == "letter-max") {
    std::string letter = c.atom(), off = c.atom();
    result = f_letter_max(letter, parse_int(off, "offset"));
  } else if (head == "min") {
    result = f_min(c.atom());
  } else if (head == "max") {
    result = f_max(c.atom());
  } else if (head == "lt") {
    std::string x = c.atom(), y = c.atom();
    result = f_less(x, y);
  } else if (head == "eq") {
    std::string x = c.atom(), y = c.atom();
    result = f_equal(x, y);
  } else if (head == "mod") {
    std::string i = c.atom(), d = c.atom(), var = c.atom();
    result = f_mod(parse_int(i, "residue"), parse_int(d, "modulus"), var);
  } else if (head == "D") {
    std::string i = c.atom(), d = c.atom();
    result = f_length_mod(parse_int(i, "residue"), parse_int(d, "modulus"));
  } else if (head == "not") {
    result = f_not(parse_sexp(c));
  } else if (head == "and" || head == "or") {
    std::vector<FormulaPtr> children;
    while (!c.at_end() && c.peek() != ')') children.push_back(parse_sexp(c));
    if (children.empty()) throw ParseError("empty " + head, c.pos);
    result = head == "and" ? f_and(std::move(children)) : f_or(std::move(children));
  } else if (head == "exists" || head == "forall") {
    std::string var = c.atom();
    FormulaPtr body = parse_sexp(c);
    result = head == "exists" ? f_exists(var, body) : f_forall(var, body);
  } else {
    throw ParseError("unknown operator '" + head + "'", c.pos);
  }
  c.expect(')');
  return result;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  SexpCursor c{text};
  FormulaPtr f = parse_sexp(c);
  if (!c.at_end()) throw ParseError("trailing characters after formula", c.pos);
  return f;
}

std::string render_formula(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::kTrue: return "true";
    case K::kFalse: return "false";
    case K::kLetter: return "(letter " + f->letter + " " + f->var + ")";
    case K::kLetterAt:
      return "(letter-at " + f->letter + " " + f->var + " +" + std::to_string(f->offset) + ")";
    case K::kLetterMin: return "(letter-min " + f->letter + " " + std::to_string(f->offset) + ")";
    case K::kLetterMax: return "(letter-max " + f->letter + " " + std::to_string(f->offset) + ")";
    case K::kMinPred: return "(min " + f->var + ")";
    case K::kMaxPred: return "(max " + f->var + ")";
    case K::kLess: return "(lt " + f->var + " " + f->var2 + ")";
    case K::kEqual: return "(eq " + f->var + " " + f->var2 + ")";
    case K::kModPred:
      return "(mod " + std::to_string(f->residue) + " " + std::to_string(f->modulus) + " " +
             f->var + ")";
    case K::kLengthMod:
      return "(D " + std::to_string(f->residue) + " " + std::to_string(f->modulus) + ")";
    case K::kNot: return "(not " + render_formula(f->children[0]) + ")";
    case K::kAnd:
    case K::kOr: {
      std::string out = f->kind == K::kAnd ? "(and" : "(or";
      for (const auto& c : f->children) out += " " + render_formula(c);
      return out + ")";
    }
    case K::kExists: return "(exists " + f->var + " " + render_formula(f->children[0]) + ")";
    case K::kForall: return "(forall " + f->var + " " + render_formula(f->children[0]) + ")";
  }
  throw Error("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Variables and letters

namespace {

void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::kLetter:
    case K::kLetterAt:
    case K::kMinPred:
    case K::kMaxPred:
    case K::kModPred:
      if (!bound.count(f->var)) out.insert(f->var);
      break;
    case K::kLess:
    case K::kEqual:
      if (!bound.count(f->var)) out.insert(f->var);
      if (!bound.count(f->var2)) out.insert(f->var2);
      break;
    case K::kExists:
    case K::kForall: {
      bool was_bound = bound.count(f->var) > 0;
      bound.insert(f->var);
      free_vars_rec(f->children[0], bound, out);
      if (!was_bound) bound.erase(f->var);
      break;
    }
    default:
      for (const auto& c : f->children) free_vars_rec(c, bound, out);
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> variable_names(const FormulaPtr& f) {
  std::set<std::string> out;
  using K = Formula::Kind;
  if (f->kind == K::kLetter || f->kind == K::kLetterAt || f->kind == K::kMinPred ||
      f->kind == K::kMaxPred || f->kind == K::kModPred || f->kind == K::kExists ||
      f->kind == K::kForall)
    out.insert(f->var);
  if (f->kind == K::kLess || f->kind == K::kEqual) {
    out.insert(f->var);
    out.insert(f->var2);
  }
  for (const auto& c : f->children) {
    auto sub = variable_names(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::set<std::string> formula_letters(const FormulaPtr& f) {
  std::set<std::string> out;
  if (!f->letter.empty()) out.insert(f->letter);
  for (const auto& c : f->children) {
    auto sub = formula_letters(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

bool letter_at_position(const Alphabet& a, const Word& w, long long pos,
                        const std::string& letter) {
  if (pos < 0 || pos >= static_cast<long long>(w.size())) return false;
  auto sym = a.find(letter);
  return sym && w[pos] == *sym;
}

bool eval_rec(const FormulaPtr& f, const Alphabet& a, const Word& w,
              std::map<std::string, int>& env) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::kTrue: return true;
    case K::kFalse: return false;
    case K::kLetter: return letter_at_position(a, w, env.at(f->var), f->letter);
    case K::kLetterAt:
      return letter_at_position(a, w, static_cast<long long>(env.at(f->var)) + f->offset,
                                f->letter);
    case K::kLetterMin: return letter_at_position(a, w, f->offset, f->letter);
    case K::kLetterMax:
      return letter_at_position(a, w, static_cast<long long>(w.size()) - 1 - f->offset,
                                f->letter);
    case K::kMinPred: return env.at(f->var) == 0;
    case K::kMaxPred: return env.at(f->var) == static_cast<int>(w.size()) - 1;
    case K::kLess: return env.at(f->var) < env.at(f->var2);
    case K::kEqual: return env.at(f->var) == env.at(f->var2);
    case K::kModPred: return env.at(f->var) % f->modulus == f->residue;
    case K::kLengthMod: return static_cast<int>(w.size() % f->modulus) == f->residue;
    case K::kNot: return !eval_rec(f->children[0], a, w, env);
    case K::kAnd:
      for (const auto& c : f->children)
        if (!eval_rec(c, a, w, env)) return false;
      return true;
    case K::kOr:
      for (const auto& c : f->children)
        if (eval_rec(c, a, w, env)) return true;
      return false;
    case K::kExists: {
      auto saved = env.find(f->var) != env.end() ? std::optional<int>(env[f->var]) : std::nullopt;
      for (int p = 0; p < static_cast<int>(w.size()); ++p) {
        env[f->var] = p;
        if (eval_rec(f->children[0], a, w, env)) {
          if (saved) env[f->var] = *saved; else env.erase(f->var);
          return true;
        }
      }
      if (saved) env[f->var] = *saved; else env.erase(f->var);
      return false;
    }
    case K::kForall: {
      auto saved = env.find(f->var) != env.end() ? std::optional<int>(env[f->var]) : std::nullopt;
      for (int p = 0; p < static_cast<int>(w.size()); ++p) {
        env[f->var] = p;
        if (!eval_rec(f->children[0], a, w, env)) {
          if (saved) env[f->var] = *saved; else env.erase(f->var);
          return false;
        }
      }
      if (saved) env[f->var] = *saved; else env.erase(f->var);
      return true;
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace

bool evaluate(const FormulaPtr& f, const Alphabet& alphabet, const Word& w) {
  auto fv = free_variables(f);
  if (!fv.empty()) throw Error("formula has free variable '" + *fv.begin() + "'");
  std::map<std::string, int> env;
  return eval_rec(f, alphabet, w, env);
}

std::vector<Word> language_upto(const FormulaPtr& f, const Alphabet& alphabet, int n) {
  auto fv = free_variables(f);
  if (!fv.empty()) throw Error("formula has free variable '" + *fv.begin() + "'");
  std::vector<Word> out;
  std::map<std::string, int> env;
  for (int len = 0; len <= n; ++len) {
    Word w(len, 0);
    for (;;) {
      if (eval_rec(f, alphabet, w, env)) out.push_back(w);
      int i = len - 1;
      for (; i >= 0; --i) {
        if (++w[i] < alphabet.size()) break;
        w[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alternation depth

namespace {

// Negation normal form: negations pushed to the leaves.
FormulaPtr to_nnf(const FormulaPtr& f, bool negate) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::kNot: return to_nnf(f->children[0], !negate);
    case K::kAnd:
    case K::kOr: {
      std::vector<FormulaPtr> children;
      for (const auto& c : f->children) children.push_back(to_nnf(c, negate));
      bool is_and = (f->kind == K::kAnd) != negate;
      return is_and ? f_and(std::move(children)) : f_or(std::move(children));
    }
    case K::kExists:
    case K::kForall: {
      FormulaPtr body = to_nnf(f->children[0], negate);
      bool is_exists = (f->kind == K::kExists) != negate;
      return is_exists ? f_exists(f->var, body) : f_forall(f->var, body);
    }
    case K::kTrue: return negate ? f_false() : f_true();
    case K::kFalse: return negate ? f_true() : f_false();
    default:
      return negate ? f_not(f) : f;
  }
}

// Renames every bound variable to a fresh name; substitution maps the old
// names of enclosing binders.
FormulaPtr rename_bound(const FormulaPtr& f, std::map<std::string, std::string> subst,
                        int& counter) {
  using K = Formula::Kind;
  auto renamed = [&](const std::string& v) {
    auto it = subst.find(v);
    return it == subst.end() ? v : it->second;
  };
  switch (f->kind) {
    case K::kExists:
    case K::kForall: {
      std::string fresh = "_v" + std::to_string(counter++);
      subst[f->var] = fresh;
      FormulaPtr body = rename_bound(f->children[0], subst, counter);
      return f->kind == K::kExists ? f_exists(fresh, body) : f_forall(fresh, body);
    }
    case K::kLetter: return f_letter(f->letter, renamed(f->var));
    case K::kLetterAt: return f_letter_at(f->letter, renamed(f->var), f->offset);
    case K::kMinPred: return f_min(renamed(f->var));
    case K::kMaxPred: return f_max(renamed(f->var));
    case K::kModPred: return f_mod(f->residue, f->modulus, renamed(f->var));
    case K::kLess: return f_less(renamed(f->var), renamed(f->var2));
    case K::kEqual: return f_equal(renamed(f->var), renamed(f->var2));
    case K::kNot: return f_not(rename_bound(f->children[0], subst, counter));
    case K::kAnd:
    case K::kOr: {
      std::vector<FormulaPtr> children;
      for (const auto& c : f->children) children.push_back(rename_bound(c, subst, counter));
      return f->kind == K::kAnd ? f_and(std::move(children)) : f_or(std::move(children));
    }
    default:
      return f;
  }
}

// Quantifier prefix of the prenex form: child prefixes concatenated in
// order (sound after fresh renaming).
void prenex_prefix(const FormulaPtr& f, std::vector<Formula::Kind>& prefix) {
  using K = Formula::Kind;
  if (f->kind == K::kExists || f->kind == K::kForall) {
    prefix.push_back(f->kind);
    prenex_prefix(f->children[0], prefix);
    return;
  }
  for (const auto& c : f->children) prenex_prefix(c, prefix);
}

int count_blocks(const std::vector<Formula::Kind>& prefix) {
  int blocks = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (i == 0 || prefix[i] != prefix[i - 1]) ++blocks;
  return blocks;
}

// Maximal number of quantifier blocks along a branch.
int branch_blocks(const FormulaPtr& f, Formula::Kind last) {
  using K = Formula::Kind;
  if (f->kind == K::kExists || f->kind == K::kForall) {
    int add = (f->kind != last) ? 1 : 0;
    return add + branch_blocks(f->children[0], f->kind);
  }
  int best = 0;
  for (const auto& c : f->children) best = std::max(best, branch_blocks(c, last));
  return best;
}

}  // namespace

int alternation_depth(const FormulaPtr& f, bool two_variable) {
  auto fv = free_variables(f);
  if (!fv.empty()) throw Error("formula has free variable '" + *fv.begin() + "'");
  FormulaPtr nnf = to_nnf(f, false);
  if (two_variable) {
    if (variable_names(f).size() > 2)
      throw Error("two-variable counting refuses formulas with more than two variable names");
    return branch_blocks(nnf, Formula::Kind::kTrue);
  }
  int counter = 0;
  FormulaPtr renamed = rename_bound(nnf, {}, counter);
  std::vector<Formula::Kind> prefix;
  prenex_prefix(renamed, prefix);
  return count_blocks(prefix);
}

// ---------------------------------------------------------------------------
// Fragment tags

const std::vector<FragmentTag>& fragment_tags() {
  static const std::vector<FragmentTag> tags = {
      {"FO", false, true, true, true, true, 0},
      {"FO2", true, true, false, false, true, 0},
      {"FO2k", true, true, false, false, true, 1},
      {"BS1", false, true, false, false, true, 1},
      {"BSk", false, true, false, false, true, 1},
  };
  return tags;
}

const FragmentTag* find_fragment_tag(std::string_view name) {
  for (const auto& t : fragment_tags())
    if (t.name == name) return &t;
  return nullptr;
}

}  // namespace fragdec
