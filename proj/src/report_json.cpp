#include "splicemult/report_json.hpp"

#include <exception>
#include <optional>
#include <string>

namespace splicemult {

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json rational_json(const Rational& q) { return Json(to_string(q)); }

Json vertex_map_json(const ResolutionGraph& g, std::span<const Rational> values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < g.size(); ++i) out[std::to_string(g.ids()[i])] = rational_json(values[i]);
  return out;
}

namespace {

Json integers_json(std::span<const Integer> xs) {
  Json out = Json::array();
  for (const Integer& x : xs) out.push_back(integer_json(x));
  return out;
}

Json event_json(const BlowupEvent& e) {
  Json j;
  j["kind"] = e.kind == BlowupKind::Edge ? "edge" : "end_point";
  if (e.kind == BlowupKind::Edge) j["edge"] = {e.v, e.w};
  else {
    j["end_vertex"] = e.v;
    j["end_index"] = e.end_index ? Json(*e.end_index) : Json(nullptr);
  }
  j["new_vertex"] = e.new_vertex;
  Json weights = Json::array();
  for (const WeightChange& w : e.weight_changes)
    weights.push_back({{"id", w.id}, {"old", w.old_weight}, {"new", w.new_weight}});
  j["weight_changes"] = std::move(weights);
  return j;
}

Json base_point_json(const BasePointDecision& d) {
  Json j;
  j["index"] = d.index;
  j["vertex"] = d.vertex;
  j["base_point"] = d.base_point;
  j["witness"] = d.witness ? Json(*d.witness) : Json(nullptr);
  return j;
}

}  // namespace

Json pipeline_report_json(const PipelineReport& r) {
  Json j;
  j["mode"] = std::string(to_string(r.mode));
  j["graph"] = graph_to_json(*r.input);
  j["det"] = integer_json(r.det);
  j["H_order"] = integer_json(r.h_order);
  j["H_invariant_factors"] = integers_json(r.h_invariant_factors);
  j["H1_order"] = r.h1_order;
  j["index"] = integer_json(r.index);
  Json gens = Json::array();
  for (const DualVector& c : r.h1_generators) gens.push_back(integers_json(c));
  j["H1_generators"] = std::move(gens);
  if (r.non_minimal_override) j["non_minimal_override"] = true;
  Json bps = Json::array();
  for (const auto& d : r.base_points) bps.push_back(base_point_json(d));
  j["base_points"] = std::move(bps);

  Json rounds = Json::array();
  for (const Round& round : r.rounds) {
    const ResolutionGraph& g = *round.graph;
    Json rj;
    rj["vertices"] = g.size();
    rj["generators"] = round.exponents;
    rj["recomputed"] = round.recomputed;
    rj["Z_vertex"] = vertex_map_json(g, round.z.coefficients());
    rj["Z_dual"] = vertex_map_json(g, round.z_dual);
    rj["ZZ"] = rational_json(intersect(round.z, round.z));
    Json ends = Json::array();
    for (const EndDecision& d : round.end_decisions) {
      ends.push_back({{"index", d.index},
                      {"vertex", d.vertex},
                      {"outcome", std::string(to_string(d.outcome))},
                      {"witness", d.witness ? Json(*d.witness) : Json(nullptr)}});
    }
    rj["end_decisions"] = std::move(ends);
    Json checks = Json::array();
    for (const EdgeCheckResult& c : round.edge_checks) {
      checks.push_back({{"edge", {c.edge.a, c.edge.b}},
                        {"passed", c.passed},
                        {"witness", c.witness ? Json(*c.witness) : Json(nullptr)},
                        {"pruned_by_zero", c.pruned_by_zero}});
    }
    rj["edge_checks"] = std::move(checks);
    rj["blowup"] = round.blowup ? event_json(*round.blowup) : Json(nullptr);
    rounds.push_back(std::move(rj));
  }
  j["rounds"] = std::move(rounds);
  const ResolutionGraph& fg = *r.z_final.graph();
  j["final_graph"] = graph_to_json(fg);
  j["Z_final"] = vertex_map_json(fg, r.z_final.coefficients());
  j["Z_final_dual"] = vertex_map_json(fg, to_dual_coordinates(r.z_final));
  j["ZZ"] = rational_json(r.zz);
  j["multiplicity"] = integer_json(r.multiplicity);
  j["trace"] = r.trace;
  return j;
}

std::vector<DualVector> parse_subgroup_generators(std::string_view text, const ResolutionGraph& g) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("subgroup document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("generators") || !doc["generators"].is_array()) {
    throw Error(ErrorKind::ParseError, "subgroup document needs a 'generators' array");
  }
  std::vector<DualVector> out;
  for (const auto& row : doc["generators"]) {
    if (!row.is_array()) throw Error(ErrorKind::ParseError, "generator must be an array of integers");
    if (row.size() != g.size()) {
      throw Error(ErrorKind::IndexMismatch, "generator has " + std::to_string(row.size()) + " entries, graph has " +
                                                std::to_string(g.size()) + " vertices");
    }
    DualVector c;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorKind::ParseError, "generator entries must be integers");
      c.emplace_back(static_cast<long>(x.get<std::int64_t>()));
    }
    out.push_back(std::move(c));
  }
  return out;
}

InvariantsSummary compute_invariants(const GraphPtr& g, const MonoidLimits& limits) {
  const DualBasis basis = dual_cycles(g);
  const DiscriminantGroup h(basis);
  return {g,
          linalg::determinant(-g->intersection_matrix()),
          h.invariant_factors(),
          h.order(),
          basis.matrix(),
          base_point_decisions(basis, identity_end_map(*g), limits)};
}

Json invariants_json(const InvariantsSummary& s) {
  const ResolutionGraph& g = *s.graph;
  Json j;
  j["graph"] = graph_to_json(g);
  j["ends"] = g.ends();
  j["nodes"] = g.nodes();
  j["det"] = integer_json(s.det);
  j["H_order"] = integer_json(s.order);
  j["H_invariant_factors"] = integers_json(s.invariant_factors);
  Json duals = Json::object();
  for (std::size_t b = 0; b < g.size(); ++b) {
    std::vector<Rational> col(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) col[a] = s.duals(a, b);
    duals[std::to_string(g.ids()[b])] = vertex_map_json(g, col);
  }
  j["duals"] = std::move(duals);
  Json bset = Json::array();
  Json bps = Json::array();
  for (const auto& d : s.base_points) {
    if (d.base_point) bset.push_back(d.index);
    bps.push_back(base_point_json(d));
  }
  j["base_point_set"] = std::move(bset);
  j["base_points"] = std::move(bps);
  return j;
}

std::vector<TableRow> subgroup_table(const GraphPtr& g, const PipelineConfig& config) {
  const DualBasis basis = dual_cycles(g);
  const DiscriminantGroup h(basis);
  const std::vector<SubgroupData> subs = enumerate_subgroups(h, config.group_cap);
  const auto n = static_cast<std::int64_t>(subs.size());
  std::vector<std::optional<PipelineReport>> reports(subs.size());
  std::vector<std::exception_ptr> errors(subs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      reports[k].emplace(run_pipeline(g, subs[k].generators, config));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<TableRow> rows;
  for (std::size_t k = 0; k < subs.size(); ++k)
    rows.push_back({subs[k], flat_subgroup(subs[k], h, config.group_cap), std::move(*reports[k])});
  return rows;
}

Json table_json(const ResolutionGraph& g, const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const TableRow& row : rows) {
    Json j;
    j["H1_order"] = row.h1.order;
    j["H1_elements"] = row.h1.elements;
    Json gens = Json::array();
    for (const auto& c : row.h1.generators) gens.push_back(format_dual(g, std::span<const Integer>(c)));
    j["H1"] = std::move(gens);
    Json flat = Json::array();
    for (const auto& c : row.flat.generators) flat.push_back(format_dual(g, std::span<const Integer>(c)));
    j["H1_flat"] = std::move(flat);
    const ResolutionGraph& fg = *row.report.z_final.graph();
    j["Z"] = format_dual(fg, std::span<const Rational>(to_dual_coordinates(row.report.z_final)));
    j["ZZ"] = rational_json(row.report.zz);
    j["multiplicity"] = integer_json(row.report.multiplicity);
    j["blowups"] = row.report.history.events().size();
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace splicemult
