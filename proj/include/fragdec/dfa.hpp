#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fragdec/alphabet.hpp"

namespace fragdec {

/// A complete deterministic automaton. Transitions are total: every
/// (state, letter) pair has a successor and every state index is below
/// state_count. Minimized DFAs are canonically numbered breadth-first
/// from the initial state, letters in alphabet order.
struct Dfa {
  Alphabet alphabet;
  int state_count = 0;
  int initial = 0;
  std::vector<bool> finals;       // size state_count
  std::vector<int> transitions;   // state * |A| + sym -> state

  int next(int state, int sym) const {
    return transitions[state * alphabet.size() + sym];
  }
  bool is_final(int state) const { return finals[state]; }
  bool accepts_empty() const { return finals[initial]; }
  bool accepts(const Word& w) const;

  /// Structural validity check (totality, index ranges). Throws on failure.
  void validate() const;
};

enum class SetOp { kUnion, kIntersection, kComplement, kDifference };

/// Minimal complete DFA of the same language, canonically numbered.
Dfa minimize(const Dfa& d);

/// Boolean combination of languages. Complement takes one operand
/// (rhs == nullptr); the other operations require equal alphabets.
Dfa combine(SetOp op, const Dfa& lhs, const Dfa* rhs);

bool is_empty_language(const Dfa& d);
bool same_language(const Dfa& a, const Dfa& b);

/// One accepted word of minimal length, if the language is non-empty.
std::optional<Word> shortest_word(const Dfa& d);

/// Line-based DFA text format:
///   alphabet: a b
///   states: N
///   initial: i
///   finals: i j ...
///   trans: s letter t
/// Missing edges go to an implicit sink. Lines starting with '#' are ignored.
Dfa parse_dfa_text(std::string_view text);
std::string to_dfa_text(const Dfa& d);

/// Universal entry point: parses either a regex (see regex.hpp for the
/// grammar) or a DFA description (detected by its `alphabet:` header) and
/// returns the minimal complete DFA. An explicit alphabet may be supplied
/// for regexes; by default the letters occurring in the regex are used.
Dfa parse_language(std::string_view text, const Alphabet* alphabet = nullptr);

}  // namespace fragdec
