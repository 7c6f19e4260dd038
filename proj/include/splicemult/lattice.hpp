#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splicemult/cycle.hpp"
#include "splicemult/exact_linalg.hpp"
#include "splicemult/resolution_graph.hpp"

namespace splicemult {

/// Integer vector c in sorted-vertex order, standing for sum_v c_v E_v^*.
using DualVector = std::vector<Integer>;

inline constexpr std::size_t kDefaultGroupCap = 5000;

/// B = (-I(E))^{-1}. Column b holds the coefficients of E_b^*, and
/// E_a^* . E_b^* = -B(a, b).
class DualBasis {
 public:
  DualBasis(GraphPtr g, linalg::RatMatrix b) : graph_(std::move(g)), b_(std::move(b)) {}

  const GraphPtr& graph() const noexcept { return graph_; }
  const linalg::RatMatrix& matrix() const noexcept { return b_; }
  std::size_t size() const noexcept { return b_.rows(); }

  /// M_b(E_a^*); symmetric in a and b.
  const Rational& entry(VertexId a, VertexId b) const { return b_(graph_->index_of(a), graph_->index_of(b)); }
  QCycle dual(VertexId v) const;

  /// Pairing of sum c_v E_v^* with sum c'_v E_v^*, i.e. -c^T B c'.
  Rational pairing(std::span<const Integer> c1, std::span<const Integer> c2) const;

 private:
  GraphPtr graph_;
  linalg::RatMatrix b_;
};

/// Throws InternalInconsistency if some entry is not strictly positive.
DualBasis dual_cycles(const GraphPtr& g);

/// D^T I(E) D2. Throws GraphMismatch.
Rational intersect(const QCycle& d, const QCycle& d2);
/// D . E_v
Rational intersect_vertex(const QCycle& d, VertexId v);

/// c_1 coordinates (-D . E_v)_v.
std::vector<Rational> to_dual_coordinates(const QCycle& d);
QCycle from_dual_coordinates(const DualBasis& basis, std::span<const Rational> coords);
QCycle from_dual_coordinates(const DualBasis& basis, std::span<const Integer> coords);

/// Re-index a dual vector onto a graph that contains all of `from`'s
/// vertices (a blowup of it). New vertices get coefficient 0, which is the
/// pullback of E_v^* being the dual of the strict transform.
DualVector transport_dual_vector(const ResolutionGraph& from, std::span<const Integer> c, const ResolutionGraph& to);

/// H = L^*/L ≅ Z^n / I(E) Z^n in dual coordinates, presented through the
/// Smith form U I V = S as (+) Z/d_j over the factors d_j > 1. Elements are
/// numbered by mixed radix over their residue vectors, first factor most
/// significant, so numeric order equals lexicographic order of residues.
class DiscriminantGroup {
 public:
  explicit DiscriminantGroup(DualBasis basis);

  const DualBasis& basis() const noexcept { return basis_; }
  const ResolutionGraph& graph() const noexcept { return *basis_.graph(); }
  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  const Integer& order() const noexcept { return order_; }
  /// Largest invariant factor (1 for the trivial group).
  Integer exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

  /// Throws CapExceeded when |H| > cap.
  std::size_t element_count(std::size_t cap = kDefaultGroupCap) const;

  std::vector<std::int64_t> residues(std::span<const Integer> c) const;
  std::size_t index_of(std::span<const Integer> c) const;
  std::size_t encode(std::span<const std::int64_t> residues) const;
  std::vector<std::int64_t> decode(std::size_t idx) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t multiple(std::size_t a, std::int64_t k) const;

  /// Some dual vector in the class, U^{-1} applied to the residue vector.
  DualVector representative(std::size_t idx) const;
  /// Short presentation for display: the fewest vertices, then the
  /// smallest coefficients.
  DualVector display_representative(std::size_t idx) const;

  /// h . h' in Q/Z, as a representative in [0, 1).
  Rational pairing(std::size_t a, std::size_t b) const;

 private:
  DualBasis basis_;
  std::vector<Integer> factors_;
  std::vector<std::int64_t> moduli_;
  Integer order_;
  linalg::IntMatrix u_;
  linalg::IntMatrix u_inv_;
  std::vector<std::size_t> positions_;  // rows of S with d > 1
  std::vector<std::vector<std::int64_t>> column_residues_;
};

DiscriminantGroup discriminant_group(const DualBasis& basis);

struct SubgroupData {
  std::vector<DualVector> generators;
  /// Sorted element indices; this is the identity of the subgroup.
  std::vector<std::size_t> elements;
  std::size_t order = 1;
  std::size_t index = 1;

  bool contains(std::size_t idx) const;
  friend bool operator==(const SubgroupData& a, const SubgroupData& b) { return a.elements == b.elements; }
};

/// Closure of the generators. Throws CapExceeded when |H| > cap.
SubgroupData subgroup(std::span<const DualVector> gens, const DiscriminantGroup& h,
                      std::size_t cap = kDefaultGroupCap);
/// Builds SubgroupData from a closed element set, choosing generators greedily
/// in element order and presenting them through display_representative.
SubgroupData subgroup_from_elements(std::vector<std::size_t> elements, const DiscriminantGroup& h);

/// sum c_v E_v^* pairs integrally with every generator of H1.
bool perp_member(std::span<const Integer> d, const SubgroupData& h1, const DualBasis& basis);

/// {h in H : h . g in Z for all g in H1}.
SubgroupData flat_subgroup(const SubgroupData& h1, const DiscriminantGroup& h, std::size_t cap = kDefaultGroupCap);

/// Every subgroup exactly once, sorted by order then by element list.
std::vector<SubgroupData> enumerate_subgroups(const DiscriminantGroup& h, std::size_t cap = kDefaultGroupCap);

/// "E_1^* + 3E_3^*", "0".
std::string format_dual(const ResolutionGraph& g, std::span<const Integer> c);
/// "(1/2)E_5^*", "(1/10)E_1^* + (3/10)E_5^*".
std::string format_dual(const ResolutionGraph& g, std::span<const Rational> c);

}  // namespace splicemult
