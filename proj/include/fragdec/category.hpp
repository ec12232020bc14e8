#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fragdec/identities.hpp"
#include "fragdec/semigroup.hpp"

namespace fragdec {

/// A finite directed multigraph with named vertices and edges.
struct GraphSpec {
  struct Edge {
    std::string name;
    int src = 0, dst = 0;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  int vertex_index(std::string_view name) const;
  int edge_index(std::string_view name) const;
};

/// A path term over the edges of a graph: concatenation of consecutive
/// edges and omega powers of loops. Endpoints are derived on construction.
struct PathTerm {
  enum class Kind { kEdge, kConcat, kOmega };
  Kind kind = Kind::kEdge;
  int edge = 0;
  std::vector<PathTerm> children;
  int src = 0, dst = 0;
};

struct PathEquation {
  GraphSpec graph;
  PathTerm lhs, rhs;
  std::string text;  // rendered `lhs = rhs` for reports
};

/// Path-equation file format:
///   vertices: p q
///   edge: m1 p q
///   equation: (m1 m2)^w (m3 m4)^w = (m1 m2)^w m1 m4 (m3 m4)^w
/// Multiple equation lines share the declared graph; all must hold.
std::vector<PathEquation> parse_path_equation_file(std::string_view text);

/// Knast's two-vertex path equation for gJ.
const PathEquation& knast_equation();

/// One-object specialization: edges become variables of a semigroup
/// identity.
Identity collapse_to_identity(const PathEquation& eq);

/// A finite category. Arrows between objects i and j form a set of values;
/// for categories built from a presentation (derived categories, the
/// idempotents' category) the values are parent element indices and
/// composition is the parent multiplication. Synthetic categories carry an
/// explicit composition table and are self-checked on construction.
class FiniteCategory {
 public:
  int object_count() const { return objects_; }
  int value_count() const;
  const ElementSet& hom(int i, int j) const { return hom_[i * objects_ + j]; }
  int identity_at(int obj) const { return identity_[obj]; }
  int compose(int a, int b) const;
  int omega_value(int v) const;

  /// Derived categories have hom sets depending only on (j - i) mod d, which
  /// lets equation checks pin the first vertex to object 0.
  bool translation_invariant() const { return translation_invariant_; }

  std::shared_ptr<const SyntacticPresentation> parent() const { return parent_; }
  std::string value_name(int v) const;
  std::string object_name(int obj) const;

  /// For derived categories: a word of the right length class witnessing
  /// the arrow (src, value, dst).
  std::optional<std::string> arrow_via_word(int src, int value, int dst) const;

  /// All arrows (src, value, dst), ordered by (src, dst, value).
  std::vector<std::tuple<int, int, int>> arrows() const;

  friend FiniteCategory derived_category(std::shared_ptr<const SyntacticPresentation>, int);
  friend FiniteCategory idempotents_category(std::shared_ptr<const SyntacticPresentation>,
                                             const ElementSet*);
  friend FiniteCategory one_object_category(std::shared_ptr<const SyntacticPresentation>,
                                            const ElementSet*);
  friend FiniteCategory synthetic_category(int, std::vector<std::vector<std::vector<int>>>,
                                           std::vector<std::vector<int>>, std::vector<int>,
                                           std::vector<std::string>);

 private:
  void check_closure_and_identities() const;

  int objects_ = 0;
  std::vector<ElementSet> hom_;
  std::vector<int> identity_;
  std::shared_ptr<const SyntacticPresentation> parent_;
  std::vector<std::string> object_names_;
  // Synthetic-only:
  std::vector<int> table_;  // value x value -> value, -1 undefined
  std::vector<std::string> value_names_;
  int synthetic_values_ = 0;
  // Derived-only metadata:
  bool translation_invariant_ = false;
  int via_modulus_ = 0;
  std::vector<int> via_prev_elem_, via_prev_sym_;  // indexed element * d + residue
};

/// The d-derived category of a presentation: objects Z_d, arrows i -> j the
/// images of words of length congruent to (j - i) mod d.
FiniteCategory derived_category(std::shared_ptr<const SyntacticPresentation> m, int d);

/// The idempotents' category S_E of the considered subsemigroup: objects its
/// idempotents, hom(e, f) = e S f.
FiniteCategory idempotents_category(std::shared_ptr<const SyntacticPresentation> m,
                                    const ElementSet* within = nullptr);

/// The one-object category on a submonoid (must contain the identity).
FiniteCategory one_object_category(std::shared_ptr<const SyntacticPresentation> m,
                                   const ElementSet* within = nullptr);

/// Synthetic category from explicit data: hom[i][j] = value list, a full
/// composition table (-1 = undefined) and per-object identity values.
/// Construction checks associativity, identity laws and closure.
FiniteCategory synthetic_category(int objects, std::vector<std::vector<std::vector<int>>> hom,
                                  std::vector<std::vector<int>> table,
                                  std::vector<int> identities,
                                  std::vector<std::string> value_names = {});

/// The local monoid at an object as a standalone presentation (re-indexed).
SyntacticPresentation local_monoid_at(const FiniteCategory& c, int object);

/// The consolidated semigroup: arrows plus an absorbing zero; the product of
/// non-consecutive arrows is zero. Guarded by `max_arrows`.
SyntacticPresentation consolidate(const FiniteCategory& c, int max_arrows = 600);

/// A division witness from category c to category d: an object map and a
/// set-valued image per arrow of c.
struct DivisionWitness {
  std::vector<int> object_map;  // Ob(c) -> Ob(d)
  std::map<std::tuple<int, int, int>, std::vector<int>> images;  // arrow -> values of d
};

/// Checks the four division axioms: image products contained in the image of
/// the composite, non-empty images, identities mapped to identities, and
/// disjoint images for distinct coterminal arrows. `why` receives a
/// description of the first violated axiom.
bool division_check(const DivisionWitness& w, const FiniteCategory& c,
                    const FiniteCategory& d, std::string* why = nullptr);

/// The canonical division witness from C_d2 to C_d for d | d2: objects map
/// modulo d and each arrow maps to the singleton of its own element.
DivisionWitness prop15_division(std::shared_ptr<const SyntacticPresentation> m, int d, int d2);

struct PathCheckOptions {
  std::uint64_t max_morphisms = 10'000'000;
  std::uint64_t parallel_threshold = 256;  // object assignments
};

struct MorphismWitness {
  std::vector<int> vertex_to_object;                 // by vertex index
  std::vector<std::tuple<int, int, int>> edge_to_arrow;  // (src, value, dst) by edge index
  int lhs_value = 0, rhs_value = 0;
};

struct PathVerdict {
  bool holds = true;
  std::optional<MorphismWitness> witness;
};

/// Checks a path equation against every graph morphism into the category.
/// Enumeration order: vertices in declaration order over ascending objects,
/// then edges in declaration order over ascending arrow values; the witness
/// is the first failing morphism in that order. The OpenMP kernel partitions
/// object assignments and reduces to the same canonical witness as the
/// serial reference.
PathVerdict check_path_equation(const FiniteCategory& c, const PathEquation& eq,
                                const PathCheckOptions& opts = {});
PathVerdict check_path_equation_serial(const FiniteCategory& c, const PathEquation& eq,
                                       const PathCheckOptions& opts = {});
PathVerdict check_path_equation_parallel(const FiniteCategory& c, const PathEquation& eq,
                                         const PathCheckOptions& opts = {});

}  // namespace fragdec
