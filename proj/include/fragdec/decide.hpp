#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragdec/category.hpp"
#include "fragdec/dfa.hpp"
#include "fragdec/identities.hpp"
#include "fragdec/semigroup.hpp"
#include "fragdec/stability.hpp"

namespace fragdec {

/// Resource caps threaded through the decision routes.
struct Caps {
  int max_monoid = kDefaultMonoidCap;
  std::uint64_t max_assignments = 1'000'000'000;
  std::uint64_t max_morphisms = 10'000'000;
};

enum class Route {
  kStableMonoid,            // identity check on the stable monoid
  kLocalOfStableSemigroup,  // identity check on every local monoid of T_s
  kDerivedCategory,         // path equations on C_{k s}
  kReduction,               // via the enriched language L_s
};

/// A fragment the toolkit can decide (or reduce). The delay multiplier is 1
/// for local routes and the rank-based factor otherwise.
struct FragmentEntry {
  std::string name;
  Route route;
  std::string identity_set;    // built-in identity set for identity routes
  bool builtin_knast = false;  // derived/reduction route uses Knast's equation
  bool needs_equation_file = false;
  bool needs_k = false;
  int rank_factor = 1;  // delay multiplier; for _k entries multiplied by k
  std::string note;
};

const std::vector<FragmentEntry>& fragment_registry();
const FragmentEntry* find_fragment(std::string_view name);

enum class Verdict { kDefinable, kNotDefinable, kReducedInstanceEmitted };

std::string verdict_name(Verdict v);

/// Serialized witness evidence: either a variable assignment refuting an
/// identity or a graph morphism refuting a path equation. Elements are
/// written by their shortest generator words.
struct WitnessInfo {
  std::string kind;  // "identity" | "path-equation"
  std::string equation;
  std::vector<std::pair<std::string, std::string>> assignment;  // name -> element word
  std::vector<std::pair<std::string, std::string>> vertex_objects;  // vertex -> object
  std::vector<std::pair<std::string, std::string>> via_words;  // edge -> witnessing word
  std::string lhs, rhs;  // element words of the two sides
  std::optional<bool> separated_by_empty_context;
};

struct EvidenceReport {
  int schema_version = 1;
  Verdict verdict = Verdict::kDefinable;
  std::string fragment;
  int stability_index = 1;
  int modulus = 1;  // the congruence the verdict is witnessed at
  std::map<std::string, std::int64_t> sizes;
  std::optional<WitnessInfo> witness;
  bool epsilon_in_language = false;
  std::optional<std::string> reduced_dfa;  // DFA text of the emitted instance
  std::vector<std::string> notes;
  // analyze-only extras
  std::map<std::string, bool> syntactic_monoid_satisfies;
  std::map<std::string, bool> stable_monoid_satisfies;
};

/// Informational survey: algebra sizes, stability index, and which built-in
/// identity sets the syntactic and stable monoids satisfy.
EvidenceReport analyze(const Dfa& language, const Caps& caps = {});

/// Theorem-6 style route: definable iff the stable monoid satisfies V.
EvidenceReport decide_stable_monoid_in(const Dfa& language, const IdentitySet& v,
                                       const Caps& caps = {});

/// Theorem-7 style route: definable iff every local monoid eTe of the
/// stable semigroup T satisfies V.
EvidenceReport decide_local_of_stable_semigroup_in(const Dfa& language, const IdentitySet& v,
                                                   const Caps& caps = {});

/// Derived-category route: definable iff C_{k s}(L) satisfies all supplied
/// path equations; k is the delay multiplier.
EvidenceReport decide_via_derived_category(const Dfa& language,
                                           const std::vector<PathEquation>& equations,
                                           int delay_multiplier, const Caps& caps = {},
                                           std::string fragment_name = {});

/// Reduction route through L_s: for BS1[Reg] checks Knast on the
/// idempotents' category of the syntactic semigroup of L_s; for FO[+1,MOD]
/// checks the FO[+1] identity on that semigroup; other fragments emit the
/// reduced DFA (or check supplied path equations on the idempotents'
/// category).
EvidenceReport decide_via_reduction(const Dfa& language, const FragmentEntry& fragment,
                                    const std::vector<PathEquation>* equations = nullptr,
                                    const Caps& caps = {});

/// Registry dispatch for the CLI.
EvidenceReport decide_fragment(const Dfa& language, const FragmentEntry& fragment, int k,
                               const std::vector<PathEquation>* equations,
                               const Caps& caps = {});

std::string report_to_text(const EvidenceReport& r);
std::string report_to_json(const EvidenceReport& r);  // single-line JSON

/// Exit-code mapping: definable 0, not definable 1, reduced instance 2.
int verdict_exit_code(Verdict v);

}  // namespace fragdec
