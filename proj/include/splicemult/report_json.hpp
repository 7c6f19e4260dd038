#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "splicemult/lattice.hpp"
#include "splicemult/monomial_monoid.hpp"
#include "splicemult/multiplicity_pipeline.hpp"

// Machine-readable reports. Rationals are strings in lowest terms, integers
// are JSON numbers when they fit in 64 bits and strings otherwise.

namespace splicemult {

using Json = nlohmann::ordered_json;

Json integer_json(const Integer& x);
Json rational_json(const Rational& q);
/// {"<id>": "p/q", ...} in sorted-id order.
Json vertex_map_json(const ResolutionGraph& g, std::span<const Rational> values);

Json pipeline_report_json(const PipelineReport& r);

/// {"generators": [[...], ...]} with vectors in sorted-id order. Throws
/// ParseError or IndexMismatch.
std::vector<DualVector> parse_subgroup_generators(std::string_view text, const ResolutionGraph& g);

struct InvariantsSummary {
  GraphPtr graph;
  Integer det;
  std::vector<Integer> invariant_factors;
  Integer order;
  linalg::RatMatrix duals;
  std::vector<BasePointDecision> base_points;
};

InvariantsSummary compute_invariants(const GraphPtr& g, const MonoidLimits& limits = {});
Json invariants_json(const InvariantsSummary& s);

struct TableRow {
  SubgroupData h1;
  SubgroupData flat;
  PipelineReport report;
};

/// One pipeline run per subgroup of H, sorted by order then elements.
/// Runs are independent and executed in parallel.
std::vector<TableRow> subgroup_table(const GraphPtr& g, const PipelineConfig& config = {});

Json table_json(const ResolutionGraph& g, const std::vector<TableRow>& rows);

}  // namespace splicemult
