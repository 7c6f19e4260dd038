#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splicemult/cycle.hpp"
#include "splicemult/lattice.hpp"
#include "splicemult/monomial_monoid.hpp"
#include "splicemult/resolution_graph.hpp"

namespace splicemult {

enum class Mode { Strict, Optimized };

std::string_view to_string(Mode m);
/// "strict" or "optimized"; throws ParseError otherwise.
Mode parse_mode(std::string_view s);

struct PipelineConfig {
  Mode mode = Mode::Optimized;
  std::size_t max_blowups = 64;
  MonoidLimits limits;
  std::size_t group_cap = kDefaultGroupCap;
  /// Accept graphs with a -1 vertex of valence <= 2. The report is tagged.
  bool allow_non_minimal = false;
};

struct EdgeCheckResult {
  Edge edge;
  bool passed = false;
  /// A generator attaining both M_v(Z) and M_w(Z).
  std::optional<std::size_t> witness;
  bool pruned_by_zero = false;
};

/// Throws EmptySet when there are no generators, InternalInconsistency when
/// the Z . E_v = 0 shortcut disagrees with the witness search.
std::vector<EdgeCheckResult> check_gcd_condition(const ResolutionGraph& g, const QCycle& z,
                                                 std::span<const QCycle> gens);

/// How an end was handled before the edge loop.
struct EndDecision {
  VertexId index;
  VertexId vertex;
  enum class Outcome {
    ZeroWitness,   // a generator with a_i = 0 attains M_i(Z)
    NotBasePoint,  // b_i is not a base point
    BlownUp,
  } outcome;
  std::optional<std::size_t> witness;
};

std::string_view to_string(EndDecision::Outcome o);

struct Round {
  GraphPtr graph;
  std::vector<Exponents> exponents;
  std::vector<QCycle> generators;
  QCycle z;
  std::vector<Rational> z_dual;
  std::vector<EdgeCheckResult> edge_checks;
  std::vector<EndDecision> end_decisions;
  /// Blowup performed after this round, if any.
  std::optional<BlowupEvent> blowup;
  /// True when the generators were recomputed on this graph rather than
  /// pulled back from the previous round.
  bool recomputed = false;
};

struct PipelineReport {
  explicit PipelineReport(const GraphPtr& g) : input(g), history(g), z_final(g) {}

  GraphPtr input;
  Mode mode = Mode::Optimized;
  Integer det;
  std::vector<Integer> h_invariant_factors;
  Integer h_order;
  std::size_t h1_order = 1;
  Integer index;
  std::vector<DualVector> h1_generators;
  std::vector<BasePointDecision> base_points;
  GraphHistory history;
  std::vector<Round> rounds;
  QCycle z_final;
  Rational zz;
  Integer multiplicity;
  bool non_minimal_override = false;
  std::vector<std::string> trace;

  std::size_t edge_blowups() const;
  std::size_t end_point_blowups() const;
};

/// Runs the blowup loop for H1 generated by `h1_generators` (dual vectors on
/// g, sorted-id order). Empty generators give the universal abelian cover.
PipelineReport run_pipeline(const GraphPtr& g, std::span<const DualVector> h1_generators,
                            const PipelineConfig& config = {});

/// H1 = H.
PipelineReport multiplicity_of_quotient(const GraphPtr& g, const PipelineConfig& config = {});

/// Unit dual vectors, which generate H.
std::vector<DualVector> all_dual_generators(const ResolutionGraph& g);

}  // namespace splicemult
