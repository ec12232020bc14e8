#include "fragdec/transform.hpp"

#include <numeric>
#include <set>

#include "fragdec/error.hpp"

namespace fragdec {

namespace {

void collect_moduli(const FormulaPtr& f, std::set<int>& mods, std::set<int>& dmods) {
  if (f->kind == Formula::Kind::kModPred) mods.insert(f->modulus);
  if (f->kind == Formula::Kind::kLengthMod) dmods.insert(f->modulus);
  for (const auto& c : f->children) collect_moduli(c, mods, dmods);
}

FormulaPtr substitute_D(const FormulaPtr& f, int d, int keep) {
  using K = Formula::Kind;
  if (f->kind == K::kLengthMod) return f->residue == keep ? f_true() : f_false();
  if (f->children.empty()) return f;
  std::vector<FormulaPtr> children;
  for (const auto& c : f->children) children.push_back(substitute_D(c, d, keep));
  switch (f->kind) {
    case K::kNot: return f_not(children[0]);
    case K::kAnd: return f_and(std::move(children));
    case K::kOr: return f_or(std::move(children));
    case K::kExists: return f_exists(f->var, children[0]);
    case K::kForall: return f_forall(f->var, children[0]);
    default: return f;
  }
}

std::pair<std::string, int> split_enriched_letter(const std::string& name) {
  auto at = name.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == name.size())
    throw Error("letters_to_mod: non-enriched letter '" + name + "'");
  return {name.substr(0, at), std::stoi(name.substr(at + 1))};
}

}  // namespace

std::vector<FormulaPtr> decompose_D(const FormulaPtr& f, int d) {
  if (d < 1) throw Error("modulus must be positive");
  std::set<int> mods, dmods;
  collect_moduli(f, mods, dmods);
  for (int m : dmods)
    if (m != d)
      throw Error("decompose_D: D predicate with modulus " + std::to_string(m) +
                  " differs from " + std::to_string(d) + "; normalize moduli first");
  std::vector<FormulaPtr> out;
  for (int i = 0; i < d; ++i) out.push_back(substitute_D(f, d, i));
  return out;
}

FormulaPtr mod_to_letters(const FormulaPtr& f, int d, const Alphabet& base) {
  using K = Formula::Kind;
  if (base.is_enriched()) throw Error("mod_to_letters expects a plain base alphabet");
  if (f->kind == K::kLengthMod)
    throw Error("mod_to_letters: residual D predicate; apply decompose_D first");
  if (f->kind == K::kModPred) {
    if (f->modulus != d)
      throw Error("mod_to_letters: MOD modulus " + std::to_string(f->modulus) +
                  " differs from " + std::to_string(d));
    std::vector<FormulaPtr> disjuncts;
    for (const auto& a : base.names())
      disjuncts.push_back(f_letter(a + "@" + std::to_string(f->residue), f->var));
    return f_or(std::move(disjuncts));
  }
  auto spread_letter = [&](auto makeOne) {
    std::vector<FormulaPtr> disjuncts;
    for (int i = 0; i < d; ++i)
      disjuncts.push_back(makeOne(f->letter + "@" + std::to_string(i)));
    return f_or(std::move(disjuncts));
  };
  switch (f->kind) {
    case K::kLetter:
      return spread_letter([&](std::string l) { return f_letter(std::move(l), f->var); });
    case K::kLetterAt:
      return spread_letter(
          [&](std::string l) { return f_letter_at(std::move(l), f->var, f->offset); });
    case K::kLetterMin:
      return spread_letter([&](std::string l) { return f_letter_min(std::move(l), f->offset); });
    case K::kLetterMax:
      return spread_letter([&](std::string l) { return f_letter_max(std::move(l), f->offset); });
    case K::kNot: return f_not(mod_to_letters(f->children[0], d, base));
    case K::kAnd:
    case K::kOr: {
      std::vector<FormulaPtr> children;
      for (const auto& c : f->children) children.push_back(mod_to_letters(c, d, base));
      return f->kind == K::kAnd ? f_and(std::move(children)) : f_or(std::move(children));
    }
    case K::kExists: return f_exists(f->var, mod_to_letters(f->children[0], d, base));
    case K::kForall: return f_forall(f->var, mod_to_letters(f->children[0], d, base));
    default:
      return f;  // true/false, order, equality, min/max are untouched
  }
}

FormulaPtr letters_to_mod(const FormulaPtr& f, int d) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::kLetter: {
      auto [base, i] = split_enriched_letter(f->letter);
      return f_and({f_letter(base, f->var), f_mod(i % d, d, f->var)});
    }
    case K::kLetterAt: {
      // Position x+k carries residue i exactly when x satisfies MOD_{i-k}.
      auto [base, i] = split_enriched_letter(f->letter);
      int r = ((i - f->offset) % d + d) % d;
      return f_and({f_letter_at(base, f->var, f->offset), f_mod(r, d, f->var)});
    }
    case K::kLetterMin: {
      // Position min+k is the constant position k.
      auto [base, i] = split_enriched_letter(f->letter);
      if (f->offset % d != i % d) return f_false();
      return f_letter_min(base, f->offset);
    }
    case K::kLetterMax: {
      // Position max-k carries residue i exactly when |w| = i+k+1 mod d.
      auto [base, i] = split_enriched_letter(f->letter);
      return f_and({f_letter_max(base, f->offset), f_length_mod((i + f->offset + 1) % d, d)});
    }
    case K::kNot: return f_not(letters_to_mod(f->children[0], d));
    case K::kAnd:
    case K::kOr: {
      std::vector<FormulaPtr> children;
      for (const auto& c : f->children) children.push_back(letters_to_mod(c, d));
      return f->kind == K::kAnd ? f_and(std::move(children)) : f_or(std::move(children));
    }
    case K::kExists: return f_exists(f->var, letters_to_mod(f->children[0], d));
    case K::kForall: return f_forall(f->var, letters_to_mod(f->children[0], d));
    default:
      return f;
  }
}

std::pair<FormulaPtr, int> normalize_moduli(const FormulaPtr& f) {
  std::set<int> mods, dmods;
  collect_moduli(f, mods, dmods);
  int l = 1;
  for (int m : mods) l = std::lcm(l, m);
  for (int m : dmods) l = std::lcm(l, m);
  if (l == 1 && mods.empty() && dmods.empty()) return {f, 1};

  // Lift a congruence-mod-m predicate to modulus l.
  auto lift = [&](const FormulaPtr& node, auto&& self) -> FormulaPtr {
    using K = Formula::Kind;
    switch (node->kind) {
      case K::kModPred: {
        std::vector<FormulaPtr> disjuncts;
        for (int j = node->residue; j < l; j += node->modulus)
          disjuncts.push_back(f_mod(j, l, node->var));
        return f_or(std::move(disjuncts));
      }
      case K::kLengthMod: {
        std::vector<FormulaPtr> disjuncts;
        for (int j = node->residue; j < l; j += node->modulus)
          disjuncts.push_back(f_length_mod(j, l));
        return f_or(std::move(disjuncts));
      }
      case K::kNot: return f_not(self(node->children[0], self));
      case K::kAnd:
      case K::kOr: {
        std::vector<FormulaPtr> children;
        for (const auto& c : node->children) children.push_back(self(c, self));
        return node->kind == K::kAnd ? f_and(std::move(children)) : f_or(std::move(children));
      }
      case K::kExists: return f_exists(node->var, self(node->children[0], self));
      case K::kForall: return f_forall(node->var, self(node->children[0], self));
      default: return node;
    }
  };
  return {lift(f, lift), l};
}

namespace {

bool has_quantifier(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::kExists || f->kind == Formula::Kind::kForall) return true;
  for (const auto& c : f->children)
    if (has_quantifier(c)) return true;
  return false;
}

}  // namespace

std::string formula_skeleton(const FormulaPtr& f) {
  using K = Formula::Kind;
  if (!has_quantifier(f)) return "?";  // maximal quantifier-free slot
  switch (f->kind) {
    case K::kNot: return "!" + formula_skeleton(f->children[0]);
    case K::kAnd:
    case K::kOr: {
      std::string out = f->kind == K::kAnd ? "&(" : "|(";
      for (const auto& c : f->children) out += formula_skeleton(c) + ",";
      return out + ")";
    }
    case K::kExists: return "E" + f->var + "." + formula_skeleton(f->children[0]);
    case K::kForall: return "A" + f->var + "." + formula_skeleton(f->children[0]);
    default:
      throw Error("unreachable skeleton node");
  }
}

}  // namespace fragdec
