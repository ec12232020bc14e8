#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fragdec {

/// A word is a sequence of symbol indices into some Alphabet.
using Word = std::vector<int>;

/// An ordered finite set of letters. Plain alphabets hold single printable
/// characters; enriched alphabets hold (letter, residue) pairs serialized as
/// `a@i`. The order of letters is fixed on construction and all symbol
/// indices refer to it.
class Alphabet {
 public:
  Alphabet() = default;

  /// Plain alphabet from a string of distinct characters, e.g. "ab".
  static Alphabet plain(std::string_view letters);

  /// Alphabet from explicit letter names. If the names form the full grid
  /// base x {0..d-1} in `x@r` notation, the result is enriched with modulus
  /// d and canonical (letter-major, residue-minor) order.
  static Alphabet from_names(std::vector<std::string> names);

  /// The enrichment of `base` by Z_d: letters (a, r) written `a@r`,
  /// ordered letter-major.
  static Alphabet enriched(const Alphabet& base, int modulus);

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::string& name(int sym) const { return names_[sym]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(std::string_view name) const;

  /// True when this alphabet is an enriched alphabet A x Z_d.
  bool is_enriched() const { return modulus_ > 0; }
  int modulus() const { return modulus_; }

  // Enriched-only accessors. base_of/residue_of decompose a symbol; pair
  // maps (base index, residue) back to the symbol index.
  int base_size() const;
  int base_of(int sym) const { return sym / modulus_; }
  int residue_of(int sym) const { return sym % modulus_; }
  int pair(int base_sym, int residue) const { return base_sym * modulus_ + residue; }
  Alphabet base_alphabet() const;

  /// Parse a word: one character per letter for plain alphabets, greedy
  /// `a@12` tokens for enriched ones.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

  bool operator==(const Alphabet& other) const {
    return names_ == other.names_ && modulus_ == other.modulus_;
  }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> base_names_;  // only when enriched
  int modulus_ = 0;                      // 0 = plain
};

}  // namespace fragdec
