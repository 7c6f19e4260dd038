#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splicemult/cycle.hpp"
#include "splicemult/hilbert_kernels.hpp"
#include "splicemult/lattice.hpp"
#include "splicemult/resolution_graph.hpp"

namespace splicemult {

using kernels::Exponents;

/// sum_i a_i E_i^* over the ends named by an end map; exponents follow the
/// end map's order.
struct MonomialCycle {
  Exponents exponents;
  QCycle expansion;
};

MonomialCycle monomial_cycle(const DualBasis& basis, const EndMap& ends, Exponents exponents);

/// M_v(D)
inline const Rational& coefficient(const QCycle& d, VertexId v) { return d.coefficient(v); }

struct MonoidLimits {
  std::uint64_t max_box = 100'000'000;
  /// Nodes visited by the exponent searches of the monomial condition.
  std::uint64_t max_search = 10'000'000;
  bool use_reference_kernel = false;
};

/// Reads SPLICEMULT_MAX_BOX when set.
MonoidLimits limits_from_environment();

// --- monomial condition ----------------------------------------------------

struct BranchWitnesses {
  VertexId node;
  std::vector<VertexId> branch;
  std::vector<VertexId> ends;         // ends of the graph inside the branch
  std::vector<Exponents> witnesses;   // over `ends`, graded-lex order
};

struct MonomialConditionReport {
  std::vector<BranchWitnesses> branches;
  bool satisfied() const;
};

MonomialConditionReport monomial_condition(const DualBasis& basis, const MonoidLimits& limits = {});

/// Cycle D = n_e E_e^x + n E_w^* for the branch C of w, where e is the
/// smallest end of the graph inside C and E_e^x is dual to E_e on C alone.
struct BranchCycle {
  Integer n;
  Integer end_multiplier;
  VertexId end;
  QCycle cycle;
};

BranchCycle branch_cycle(const DualBasis& basis, VertexId w, std::span<const VertexId> branch);

// --- base points -------------------------------------------------------------

struct BasePointDecision {
  VertexId index;
  VertexId vertex;
  bool base_point;
  /// When not a base point: exponents over the end map with a_index = 0 and
  /// M_v(D) = M_v(E_v^*).
  std::optional<Exponents> witness;
};

std::vector<BasePointDecision> base_point_decisions(const DualBasis& basis, const EndMap& ends,
                                                    const MonoidLimits& limits = {});
/// End indices i with b_i a base point.
std::vector<VertexId> base_point_set(const DualBasis& basis, const EndMap& ends, const MonoidLimits& limits = {});

// --- Hilbert basis of M^{H1} -------------------------------------------------

/// Congruences expressing that sum a_i E_i^* pairs integrally with every
/// generator of H1 (dual vectors on basis.graph()).
kernels::CongruenceSystem congruence_system(const DualBasis& basis, const EndMap& ends,
                                            std::span<const DualVector> h1_generators);

struct HilbertBasis {
  EndMap ends;
  std::vector<std::int64_t> orders;
  std::vector<MonomialCycle> generators;  // graded-lex by exponents
};

/// Throws CapExceeded when the order box exceeds limits.max_box.
HilbertBasis hilbert_basis(const DualBasis& basis, const EndMap& ends, std::span<const DualVector> h1_generators,
                           const MonoidLimits& limits = {});

/// Componentwise minimum. Throws EmptySet.
QCycle gcd_cycle(std::span<const QCycle> cycles);
QCycle gcd_cycle(const HilbertBasis& hb);

// --- Neumann-Wahl skeleton -----------------------------------------------------

struct Monomial {
  std::vector<std::pair<VertexId, std::int64_t>> powers;  // (end id, exponent > 0)
};

std::string format_monomial(const Monomial& m);

struct NodeEquations {
  VertexId node;
  std::vector<Monomial> monomials;                      // one per branch
  std::vector<std::vector<std::int64_t>> coefficients;  // (delta-2) x delta
};

/// Among equal-degree admissible monomials the one with the smallest largest
/// exponent is used, ties broken lexicographically.
Exponents preferred_witness(std::span<const Exponents> witnesses);

/// Throws MonomialConditionFails.
std::vector<NodeEquations> neumann_wahl_system(const DualBasis& basis, const MonoidLimits& limits = {});
std::string format_equations(const std::vector<NodeEquations>& system);

}  // namespace splicemult
