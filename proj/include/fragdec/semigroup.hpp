#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fragdec/alphabet.hpp"
#include "fragdec/dfa.hpp"

namespace fragdec {

/// A subset of the elements of a presentation, as a bitset over element
/// indices.
using ElementSet = boost::dynamic_bitset<>;

ElementSet element_set(int size, std::initializer_list<int> members);
std::vector<int> set_bits(const ElementSet& s);

inline constexpr int kDefaultMonoidCap = 5000;

/// A finite monoid (or semigroup with adjoined data) given by its full
/// multiplication table. For syntactic presentations the elements are the
/// transformations of the minimal DFA, discovered in shortlex order of
/// generator words; element 0 is the image of the empty word.
class SyntacticPresentation {
 public:
  int element_count() const { return element_count_; }
  int mult(int a, int b) const { return mult_[a * element_count_ + b]; }
  std::optional<int> identity() const { return identity_; }

  /// Image of each alphabet symbol (empty for table-built presentations
  /// without generators).
  const std::vector<int>& letter_image() const { return letter_image_; }
  const Alphabet& alphabet() const { return alphabet_; }

  /// Accepting set P: elements mapping the initial state into the finals.
  const ElementSet& accepting() const { return accepting_; }

  /// Shortlex-least generator word per element ("" for the identity).
  const std::string& element_word(int x) const { return element_words_[x]; }
  const std::vector<std::string>& element_words() const { return element_words_; }
  std::optional<int> find_element_by_word(const std::string& w) const;

  /// eta(A^+): the subsemigroup generated by the letter images.
  const ElementSet& semigroup_part() const { return semigroup_part_; }
  ElementSet all_elements() const;

  /// Idempotent power of x, memoized at construction.
  int omega(int x) const { return omega_[x]; }

  /// Image of a word under the morphism (identity for the empty word).
  int image(const Word& w) const;

  /// Builds a presentation from an explicit multiplication table. Checks
  /// associativity; detects a two-sided identity; finds the semigroup part
  /// generated by `generators` (all elements when empty).
  static SyntacticPresentation from_table(std::vector<int> mult, int element_count,
                                          std::vector<std::string> names = {},
                                          std::vector<int> generators = {});

 private:
  static SyntacticPresentation build_from_dfa(const Dfa& d, int max_elements);
  friend SyntacticPresentation syntactic_morphism(const Dfa&, int);
  friend SyntacticPresentation transition_monoid(const Dfa&, int);

  void finish_tables();  // omega + identity detection + semigroup part

  int element_count_ = 0;
  std::vector<std::uint16_t> mult_;
  std::optional<int> identity_;
  std::vector<int> letter_image_;
  Alphabet alphabet_;
  ElementSet accepting_;
  std::vector<std::string> element_words_;
  ElementSet semigroup_part_;
  std::vector<int> omega_;
  std::vector<int> generators_;
};

/// Transition monoid of the minimal DFA of L, which is the syntactic
/// monoid, together with letter images and the accepting set. Minimizes
/// internally. Throws GuardError above max_elements.
SyntacticPresentation syntactic_morphism(const Dfa& language,
                                         int max_elements = kDefaultMonoidCap);

/// Transition monoid of a DFA as given (no minimization); used by tests to
/// compare against the syntactic monoid.
SyntacticPresentation transition_monoid(const Dfa& dfa,
                                        int max_elements = kDefaultMonoidCap);

/// The unique idempotent among the powers of x, by iterate-and-detect-cycle.
int omega_power(const SyntacticPresentation& s, int x);

/// All idempotents, restricted to `within` when given.
ElementSet idempotents(const SyntacticPresentation& s, const ElementSet* within = nullptr);

/// The local monoid eXe for an idempotent e, X = `within` or all elements.
ElementSet local_monoid(const SyntacticPresentation& s, int e,
                        const ElementSet* within = nullptr);

/// The ideal generated by the idempotents of the considered subsemigroup:
/// all x e y with x, y ranging over it plus an implicit identity.
ElementSet idempotents_ideal(const SyntacticPresentation& s,
                             const ElementSet* within = nullptr);

/// Setwise product {a b : a in lhs, b in rhs}.
ElementSet set_product(const SyntacticPresentation& s, const ElementSet& lhs,
                       const ElementSet& rhs);

/// True iff some subsemigroup of t maps onto s by a surjective morphism.
/// Exhaustive search; refuses instances with more than `cap` elements in t.
bool divides_bruteforce(const SyntacticPresentation& s, const SyntacticPresentation& t,
                        int cap = 8);

}  // namespace fragdec
