#include "fragdec/alphabet.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fragdec/error.hpp"

namespace fragdec {

namespace {

// Splits `a@12` into base name and residue; nullopt if not of that shape.
std::optional<std::pair<std::string, int>> split_enriched(const std::string& name) {
  auto at = name.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == name.size()) return std::nullopt;
  int residue = 0;
  for (std::size_t i = at + 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    residue = residue * 10 + (name[i] - '0');
  }
  return std::make_pair(name.substr(0, at), residue);
}

}  // namespace

Alphabet Alphabet::plain(std::string_view letters) {
  if (letters.empty()) throw Error("alphabet must be non-empty");
  Alphabet a;
  std::set<char> seen;
  for (char c : letters) {
    if (!seen.insert(c).second)
      throw Error(std::string("duplicate letter '") + c + "' in alphabet");
    a.names_.emplace_back(1, c);
  }
  return a;
}

Alphabet Alphabet::from_names(std::vector<std::string> names) {
  if (names.empty()) throw Error("alphabet must be non-empty");
  {
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) throw Error("duplicate letter in alphabet");
  }
  // Detect a complete base x residues grid written as `x@r`.
  std::map<std::string, std::set<int>> grid;
  bool all_pairs = true;
  for (const auto& n : names) {
    auto p = split_enriched(n);
    if (!p) {
      all_pairs = false;
      break;
    }
    grid[p->first].insert(p->second);
  }
  if (all_pairs && !grid.empty()) {
    const std::set<int>& residues = grid.begin()->second;
    int d = static_cast<int>(residues.size());
    bool complete = !residues.empty() && *residues.begin() == 0 &&
                    *residues.rbegin() == d - 1;
    for (const auto& [base, rs] : grid)
      if (rs != residues) complete = false;
    if (complete && d >= 1) {
      // Canonical order: base letters in first-appearance order, residues
      // ascending within each letter.
      std::vector<std::string> base_order;
      std::set<std::string> base_seen;
      for (const auto& n : names) {
        auto p = split_enriched(n);
        if (base_seen.insert(p->first).second) base_order.push_back(p->first);
      }
      Alphabet a;
      a.modulus_ = d;
      a.base_names_ = base_order;
      for (const auto& b : base_order)
        for (int r = 0; r < d; ++r)
          a.names_.push_back(b + "@" + std::to_string(r));
      return a;
    }
  }
  Alphabet a;
  a.names_ = std::move(names);
  return a;
}

Alphabet Alphabet::enriched(const Alphabet& base, int modulus) {
  if (modulus < 1) throw Error("enrichment modulus must be positive");
  if (base.is_enriched()) throw Error("cannot enrich an already enriched alphabet");
  Alphabet a;
  a.modulus_ = modulus;
  a.base_names_ = base.names_;
  for (const auto& b : base.names_)
    for (int r = 0; r < modulus; ++r)
      a.names_.push_back(b + "@" + std::to_string(r));
  return a;
}

std::optional<int> Alphabet::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

int Alphabet::base_size() const {
  return static_cast<int>(base_names_.size());
}

Alphabet Alphabet::base_alphabet() const {
  if (!is_enriched()) throw Error("base_alphabet: alphabet is not enriched");
  return Alphabet::from_names(base_names_);
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  if (!is_enriched()) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      auto sym = find(text.substr(i, 1));
      if (!sym) throw ParseError("unknown letter '" + std::string(1, text[i]) + "'", i);
      w.push_back(*sym);
    }
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    // Greedy token: base letter, '@', digits.
    std::size_t at = text.find('@', i);
    if (at == std::string_view::npos || at == i)
      throw ParseError("expected enriched letter `a@r`", i);
    std::size_t j = at + 1;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    if (j == at + 1) throw ParseError("expected residue digits after '@'", at);
    auto sym = find(text.substr(i, j - i));
    if (!sym) throw ParseError("unknown letter '" + std::string(text.substr(i, j - i)) + "'", i);
    w.push_back(*sym);
    i = j;
  }
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  std::string out;
  for (int sym : w) out += names_[sym];
  return out;
}

}  // namespace fragdec
