#include "splicemult/multiplicity_pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace splicemult {

std::string_view to_string(Mode m) { return m == Mode::Strict ? "strict" : "optimized"; }

Mode parse_mode(std::string_view s) {
  if (s == "strict") return Mode::Strict;
  if (s == "optimized") return Mode::Optimized;
  throw Error(ErrorKind::ParseError, "unknown mode '" + std::string(s) + "'");
}

std::string_view to_string(EndDecision::Outcome o) {
  switch (o) {
    case EndDecision::Outcome::ZeroWitness: return "zero-witness";
    case EndDecision::Outcome::NotBasePoint: return "not-base-point";
    case EndDecision::Outcome::BlownUp: return "blown-up";
  }
  return "?";
}

std::size_t PipelineReport::edge_blowups() const {
  return static_cast<std::size_t>(std::count_if(history.events().begin(), history.events().end(),
                                                [](const BlowupEvent& e) { return e.kind == BlowupKind::Edge; }));
}

std::size_t PipelineReport::end_point_blowups() const { return history.events().size() - edge_blowups(); }

std::vector<DualVector> all_dual_generators(const ResolutionGraph& g) {
  std::vector<DualVector> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    DualVector c(g.size());
    c[i] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EdgeCheckResult> check_gcd_condition(const ResolutionGraph& g, const QCycle& z,
                                                 std::span<const QCycle> gens) {
  if (gens.empty()) throw Error(ErrorKind::EmptySet, "GCD condition needs at least one generator");
  std::vector<EdgeCheckResult> out;
  for (const Edge& e : g.edges()) {
    EdgeCheckResult r{e, false, std::nullopt, false};
    const Rational& mv = z.coefficient(e.a);
    const Rational& mw = z.coefficient(e.b);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (gens[k].coefficient(e.a) == mv && gens[k].coefficient(e.b) == mw) {
        r.witness = k;
        break;
      }
    r.pruned_by_zero = intersect_vertex(z, e.a) == 0 || intersect_vertex(z, e.b) == 0;
    if (r.pruned_by_zero && !r.witness) {
      throw Error(ErrorKind::InternalInconsistency, "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                                        ") pruned by Z.E_v = 0 but has no witness");
    }
    r.passed = r.witness.has_value();
    out.push_back(r);
  }
  return out;
}

namespace {

std::string edge_str(VertexId v, VertexId w) { return "(" + std::to_string(v) + "," + std::to_string(w) + ")"; }

std::string describe(const BlowupEvent& e) {
  std::ostringstream os;
  if (e.kind == BlowupKind::Edge) os << "blow up edge " << edge_str(e.v, e.w);
  else os << "blow up end point of z_" << (e.end_index ? *e.end_index : e.v) << " on E_" << e.v;
  os << " -> E_" << e.new_vertex;
  return os.str();
}

std::vector<DualVector> transport_all(const ResolutionGraph& from, std::span<const DualVector> gens,
                                      const ResolutionGraph& to) {
  std::vector<DualVector> out;
  for (const DualVector& c : gens) out.push_back(transport_dual_vector(from, c, to));
  return out;
}

void check_blowup_budget(const GraphHistory& h, const PipelineConfig& config) {
  if (h.events().size() >= config.max_blowups) {
    throw Error(ErrorKind::MaxBlowupsExceeded, "more than " + std::to_string(config.max_blowups) + " blowups");
  }
}

std::vector<EndDecision> decide_ends(const EndMap& ends, const std::vector<MonomialCycle>& gens, const QCycle& z,
                                     const std::vector<BasePointDecision>& base_points) {
  std::vector<EndDecision> out;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const VertexId v = ends[i].vertex;
    EndDecision d{ends[i].index, v, EndDecision::Outcome::NotBasePoint, std::nullopt};
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (gens[k].exponents[i] == 0 && gens[k].expansion.coefficient(v) == z.coefficient(v)) {
        d.outcome = EndDecision::Outcome::ZeroWitness;
        d.witness = k;
        break;
      }
    if (!d.witness) {
      const auto bp = std::find_if(base_points.begin(), base_points.end(),
                                   [&](const BasePointDecision& b) { return b.index == ends[i].index; });
      if (bp != base_points.end() && bp->base_point) d.outcome = EndDecision::Outcome::BlownUp;
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

PipelineReport run_pipeline(const GraphPtr& g, std::span<const DualVector> h1_generators,
                            const PipelineConfig& config) {
  if (config.max_blowups == 0 || config.group_cap == 0 || config.limits.max_box == 0 ||
      config.limits.max_search == 0) {
    throw Error(ErrorKind::CapExceeded, "caps must be positive");
  }
  PipelineReport report(g);
  report.mode = config.mode;
  if (!g->is_minimal()) {
    if (!config.allow_non_minimal) {
      throw Error(ErrorKind::NotMinimal, "graph has a -1 vertex of valence at most 2");
    }
    report.non_minimal_override = true;
    report.trace.push_back("warning: input graph is not minimal");
  }
  for (const DualVector& c : h1_generators)
    if (c.size() != g->size()) throw Error(ErrorKind::IndexMismatch, "subgroup generator length");

  const DualBasis basis = dual_cycles(g);
  const DiscriminantGroup h(basis);
  report.det = linalg::determinant(-g->intersection_matrix());
  report.h_invariant_factors = h.invariant_factors();
  report.h_order = h.order();
  report.h1_generators.assign(h1_generators.begin(), h1_generators.end());
  const bool trivial = std::all_of(h1_generators.begin(), h1_generators.end(), [&](const DualVector& c) {
    return h.index_of(c) == 0;
  });
  report.h1_order = trivial ? 1 : subgroup(h1_generators, h, config.group_cap).order;
  report.index = h.order() / static_cast<unsigned long>(report.h1_order);
  report.base_points = base_point_decisions(basis, identity_end_map(*g), config.limits);
  {
    std::ostringstream os;
    os << "|H| = " << h.order() << ", |H1| = " << report.h1_order << ", |H/H1| = " << report.index
       << ", mode = " << to_string(config.mode);
    report.trace.push_back(os.str());
  }

  GraphHistory& history = report.history;
  if (config.mode == Mode::Strict) {
    for (const BasePointDecision& d : report.base_points) {
      if (!d.base_point) continue;
      check_blowup_budget(history, config);
      report.trace.push_back(describe(history.blowup_end_point(d.index)));
    }
  }

  // Generators on the current graph, either freshly computed or pulled back.
  std::vector<MonomialCycle> gens;
  std::vector<QCycle> expansions;
  QCycle z(g);
  bool recomputed = true;
  for (;;) {
    const GraphPtr cur = history.current();
    const DualBasis cur_basis = dual_cycles(cur);
    const auto cur_h1 = transport_all(*g, h1_generators, *cur);
    HilbertBasis hb = hilbert_basis(cur_basis, history.end_map(), cur_h1, config.limits);
    gens = std::move(hb.generators);
    expansions.clear();
    for (const auto& m : gens) expansions.push_back(m.expansion);
    z = gcd_cycle(expansions);

    std::vector<BasePointDecision> bps;
    if (config.mode == Mode::Optimized) {
      bps = base_point_decisions(cur_basis, history.end_map(), config.limits);
    } else {
      for (BasePointDecision d : report.base_points) bps.push_back(d);
    }
    std::vector<EndDecision> decisions = decide_ends(history.end_map(), gens, z, bps);
    if (config.mode == Mode::Strict) {
      for (EndDecision& d : decisions)
        for (const BasePointDecision& b : bps)
          if (b.index == d.index && b.base_point) {
            d.outcome = EndDecision::Outcome::BlownUp;
            d.witness.reset();
          }
    }

    Round round{cur, {}, expansions, z, to_dual_coordinates(z), {}, decisions, std::nullopt, true};
    for (const auto& m : gens) round.exponents.push_back(m.exponents);

    const auto need = std::find_if(decisions.begin(), decisions.end(), [](const EndDecision& d) {
      return d.outcome == EndDecision::Outcome::BlownUp;
    });
    if (config.mode == Mode::Optimized && need != decisions.end()) {
      check_blowup_budget(history, config);
      const BlowupEvent& e = history.blowup_end_point(need->index);
      report.trace.push_back("round " + std::to_string(report.rounds.size() + 1) + ": b_" +
                             std::to_string(need->index) + " is a base point; " + describe(e));
      round.blowup = e;
      report.rounds.push_back(std::move(round));
      continue;
    }
    report.rounds.push_back(std::move(round));
    break;
  }

  // Edge loop on pulled-back generators.
  for (;;) {
    Round& round = report.rounds.back();
    round.edge_checks = check_gcd_condition(*round.graph, round.z, round.generators);
    round.recomputed = recomputed;
    recomputed = false;
    {
      std::ostringstream os;
      os << "round " << report.rounds.size() << ": " << round.exponents.size() << " generators, Z = "
         << format_dual(*round.graph, std::span<const Rational>(round.z_dual))
         << ", Z.Z = " << to_string(intersect(round.z, round.z));
      report.trace.push_back(os.str());
    }
    const auto fail = std::find_if(round.edge_checks.begin(), round.edge_checks.end(),
                                   [](const EdgeCheckResult& r) { return !r.passed; });
    if (fail == round.edge_checks.end()) break;

    check_blowup_budget(history, config);
    const BlowupEvent event = history.blowup_edge(fail->edge.a, fail->edge.b);
    report.trace.push_back("GCD condition fails at " + edge_str(fail->edge.a, fail->edge.b) + "; " +
                           describe(event));
    round.blowup = event;

    const GraphPtr post = history.current();
    std::vector<QCycle> pulled;
    for (const QCycle& d : round.generators) pulled.push_back(pullback_vertex_cycle(d, event, post));
    QCycle nz = gcd_cycle(pulled);
    Round next{post, round.exponents, std::move(pulled), nz, to_dual_coordinates(nz), {}, {}, std::nullopt, false};
    report.rounds.push_back(std::move(next));
  }

  report.z_final = report.rounds.back().z;
  report.zz = intersect(report.z_final, report.z_final);
  const Rational mult = Rational(report.index) * -report.zz;
  if (!is_integral(mult) || mult <= 0) {
    throw Error(ErrorKind::NonIntegerMultiplicity, "|H/H1| * (-Z.Z) = " + to_string(mult));
  }
  report.multiplicity = mult.get_num();
  report.trace.push_back("mult = " + report.index.get_str() + " * " + to_string(Rational(-report.zz)) + " = " +
                         report.multiplicity.get_str());
  return report;
}

PipelineReport multiplicity_of_quotient(const GraphPtr& g, const PipelineConfig& config) {
  const auto gens = all_dual_generators(*g);
  return run_pipeline(g, gens, config);
}

}  // namespace splicemult
