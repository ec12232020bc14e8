#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragdec/semigroup.hpp"

namespace fragdec {

/// A term over named variables with concatenation and omega power.
struct OmegaTerm {
  enum class Kind { kVar, kConcat, kOmega };
  Kind kind = Kind::kVar;
  std::string var;
  std::vector<OmegaTerm> children;

  static OmegaTerm variable(std::string name);
  static OmegaTerm concat(std::vector<OmegaTerm> parts);
  static OmegaTerm omega(OmegaTerm inner);
};

std::string render_omega_term(const OmegaTerm& t);

struct Identity {
  OmegaTerm lhs, rhs;
};

std::string render_identity(const Identity& id);

/// A named list of identities; a presentation satisfies the set when every
/// equation holds under every assignment of variables.
struct IdentitySet {
  std::string name;
  std::vector<Identity> equations;

  /// Sorted union of the variables of all equations.
  std::vector<std::string> variables() const;
};

/// One equation per line, `lhs = rhs`; terms are names juxtaposed with
/// spaces, `( ... )^w` for the omega power. '#' starts a comment line.
IdentitySet parse_identity_file(std::string_view text, std::string name);

/// Built-in sets: A, ACom, Com, DA, J, J1 and FO[+1].
const IdentitySet& builtin_identities(std::string_view name);
std::vector<std::string> builtin_identity_names();

struct IdentityWitness {
  int equation_index = 0;
  std::map<std::string, int> assignment;  // variable -> element
  int lhs_value = 0, rhs_value = 0;
};

struct IdentityVerdict {
  bool holds = true;
  std::optional<IdentityWitness> witness;
};

struct IdentityCheckOptions {
  std::uint64_t max_assignments = 1'000'000'000;  // per equation
  /// Below this assignment count the parallel kernel falls back to serial.
  std::uint64_t parallel_threshold = 1 << 12;
};

/// Exhaustive check of every equation over every assignment of variables to
/// elements of `within` (all elements when null). The witness, when the set
/// fails, is the first failing equation together with its lexicographically
/// least failing assignment (variables sorted by name, elements by index).
///
/// check_identity dispatches to the OpenMP kernel for large assignment
/// spaces; the serial reference is kept for testing and must agree with it
/// bit for bit.
IdentityVerdict check_identity(const SyntacticPresentation& s, const IdentitySet& ids,
                               const ElementSet* within = nullptr,
                               const IdentityCheckOptions& opts = {});
IdentityVerdict check_identity_serial(const SyntacticPresentation& s, const IdentitySet& ids,
                                      const ElementSet* within = nullptr,
                                      const IdentityCheckOptions& opts = {});
IdentityVerdict check_identity_parallel(const SyntacticPresentation& s, const IdentitySet& ids,
                                        const ElementSet* within = nullptr,
                                        const IdentityCheckOptions& opts = {});

}  // namespace fragdec
