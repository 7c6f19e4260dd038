#include "splicemult/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "splicemult/monomial_monoid.hpp"
#include "splicemult/multiplicity_pipeline.hpp"
#include "splicemult/report_json.hpp"

namespace splicemult {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::CapExceeded:
    case ErrorKind::MaxBlowupsExceeded:
      return 3;
    case ErrorKind::SingularMatrix:
    case ErrorKind::RankDeficient:
    case ErrorKind::NotSymmetric:
    case ErrorKind::EmptySet:
    case ErrorKind::MonomialConditionFails:
    case ErrorKind::NonIntegerMultiplicity:
    case ErrorKind::InternalInconsistency:
      return 2;
    default:
      return 1;
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphPtr load_graph(const std::string& path) { return share(parse_graph(read_file(path))); }

template <typename Range>
std::string join(const Range& xs, std::string_view sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

std::string format_witness(const EndMap& ends, const Exponents& a) {
  Monomial m;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0) m.powers.emplace_back(ends[i].index, a[i]);
  return format_monomial(m);
}

std::string format_group(const ResolutionGraph& g, const std::vector<DualVector>& gens) {
  if (gens.empty()) return "<0>";
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i)
    s += (i ? ", " : "") + format_dual(g, std::span<const Integer>(gens[i]));
  return s + ">";
}

int cmd_validate(const std::string& path, bool allow_non_minimal, std::ostream& out, std::ostream& err) {
  const GraphPtr g = load_graph(path);
  const bool minimal = g->is_minimal();
  out << "graph: " << g->size() << " vertices, ends {" << join(g->ends(), ",") << "}, nodes {"
      << join(g->nodes(), ",") << "}\n";
  out << "minimal: " << (minimal ? "yes" : "no") << "\n";
  if (!minimal && !allow_non_minimal) {
    err << "NotMinimal: graph has a -1 vertex of valence at most 2\n";
    return 1;
  }
  const MonomialConditionReport report = monomial_condition(dual_cycles(g), limits_from_environment());
  for (const BranchWitnesses& b : report.branches) {
    if (!b.witnesses.empty()) continue;
    err << "node " << b.node << ", branch {" << join(b.branch, ",") << "}: no admissible monomial\n";
  }
  if (!report.satisfied()) {
    out << "monomial condition: fails\n";
    return 2;
  }
  out << "monomial condition: holds\n";
  return 0;
}

int cmd_invariants(const std::string& path, bool json, std::ostream& out) {
  const GraphPtr g = load_graph(path);
  const InvariantsSummary s = compute_invariants(g, limits_from_environment());
  if (json) {
    out << invariants_json(s).dump(2) << "\n";
    return 0;
  }
  const EndMap ends = identity_end_map(*g);
  out << "vertices: " << join(g->ids()) << "\n";
  out << "ends: " << join(g->ends()) << "\n";
  out << "nodes: " << join(g->nodes()) << "\n";
  out << "det = " << s.det << "\n";
  out << "|H| = " << s.order << "\n";
  out << "invariant factors: " << (s.invariant_factors.empty() ? "none" : join(s.invariant_factors)) << "\n";
  out << "dual cycles (entry w of row v is M_w(E_v^*)):\n";
  for (std::size_t a = 0; a < g->size(); ++a) {
    out << "  E_" << g->ids()[a] << "^*:";
    for (std::size_t b = 0; b < g->size(); ++b) out << " " << to_string(s.duals(a, b));
    out << "\n";
  }
  std::vector<VertexId> bset;
  for (const auto& d : s.base_points)
    if (d.base_point) bset.push_back(d.index);
  out << "base point set: {" << join(bset, ",") << "}\n";
  for (const auto& d : s.base_points) {
    out << "  z_" << d.index << ": ";
    if (d.base_point) out << "base point\n";
    else out << "not a base point, witness " << format_witness(ends, *d.witness) << "\n";
  }
  return 0;
}

int cmd_mult(const std::string& path, const std::string& subgroup_file, bool uac, bool quotient,
             const std::string& mode, bool trace, bool json, bool allow_non_minimal, std::ostream& out,
             std::ostream& err) {
  if (static_cast<int>(!subgroup_file.empty()) + static_cast<int>(uac) + static_cast<int>(quotient) != 1) {
    err << "ParseError: give exactly one of --subgroup, --uac, --quotient\n";
    return 1;
  }
  PipelineConfig config;
  config.mode = parse_mode(mode);
  config.limits = limits_from_environment();
  config.allow_non_minimal = allow_non_minimal;
  const GraphPtr g = load_graph(path);
  std::vector<DualVector> gens;
  if (!subgroup_file.empty()) gens = parse_subgroup_generators(read_file(subgroup_file), *g);
  else if (quotient) gens = all_dual_generators(*g);
  const PipelineReport r = run_pipeline(g, gens, config);
  if (json) {
    out << pipeline_report_json(r).dump(2) << "\n";
    return 0;
  }
  if (trace)
    for (const auto& line : r.trace) out << line << "\n";
  out << "mult = " << r.multiplicity << "\n";
  return 0;
}

int cmd_table(const std::string& path, bool json, std::ostream& out) {
  const GraphPtr g = load_graph(path);
  PipelineConfig config;
  config.limits = limits_from_environment();
  const std::vector<TableRow> rows = subgroup_table(g, config);
  if (json) {
    out << table_json(*g, rows).dump(2) << "\n";
    return 0;
  }
  for (const TableRow& row : rows) {
    const QCycle& z = row.report.z_final;
    out << "|H1| = " << row.h1.order << "  H1 = " << format_group(*g, row.h1.generators)
        << "  H1^flat = " << format_group(*g, row.flat.generators)
        << "  Z = " << format_dual(*z.graph(), std::span<const Rational>(to_dual_coordinates(z)))
        << "  mult = " << row.report.multiplicity << "\n";
  }
  return 0;
}

int cmd_splice_eqs(const std::string& path, std::ostream& out, std::ostream& err) {
  const GraphPtr g = load_graph(path);
  const DualBasis basis = dual_cycles(g);
  const MonoidLimits limits = limits_from_environment();
  const MonomialConditionReport report = monomial_condition(basis, limits);
  if (!report.satisfied()) {
    for (const BranchWitnesses& b : report.branches)
      if (b.witnesses.empty())
        err << "node " << b.node << ", branch {" << join(b.branch, ",") << "}: no admissible monomial\n";
    err << "MonomialConditionFails: no Neumann-Wahl system\n";
    return 2;
  }
  out << format_equations(neumann_wahl_system(basis, limits));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicities of splice quotient singularities and their abelian covers", "splicemult"};
  app.require_subcommand(1);

  std::string graph;
  auto* validate = app.add_subcommand("validate", "Check a graph and the monomial condition");
  bool validate_allow = false;
  validate->add_option("graph", graph, "graph JSON file")->required();
  validate->add_flag("--allow-non-minimal", validate_allow, "accept non-minimal resolutions");

  auto* invariants = app.add_subcommand("invariants", "Dual cycles, discriminant group and base points");
  bool invariants_json = false;
  invariants->add_option("graph", graph, "graph JSON file")->required();
  invariants->add_flag("--json", invariants_json, "machine-readable output");

  auto* mult = app.add_subcommand("mult", "Multiplicity of an abelian cover");
  std::string subgroup_file, mode = "optimized";
  bool uac = false, quotient = false, trace = false, mult_json = false, mult_allow = false;
  mult->add_option("graph", graph, "graph JSON file")->required();
  mult->add_option("--subgroup", subgroup_file, "subgroup JSON file");
  mult->add_flag("--uac", uac, "universal abelian cover, H1 = 0");
  mult->add_flag("--quotient", quotient, "the splice quotient itself, H1 = H");
  mult->add_option("--mode", mode, "strict or optimized")->check(CLI::IsMember({"strict", "optimized"}));
  mult->add_flag("--trace", trace, "print every round");
  mult->add_flag("--json", mult_json, "machine-readable report");
  mult->add_flag("--allow-non-minimal", mult_allow, "accept non-minimal resolutions");

  auto* table = app.add_subcommand("table", "Multiplicity for every subgroup of H");
  bool table_json_flag = false;
  table->add_option("graph", graph, "graph JSON file")->required();
  table->add_flag("--json", table_json_flag, "machine-readable output");

  auto* splice = app.add_subcommand("splice-eqs", "Neumann-Wahl equation skeleton");
  splice->add_option("graph", graph, "graph JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(graph, validate_allow, out, err);
    if (invariants->parsed()) return cmd_invariants(graph, invariants_json, out);
    if (mult->parsed())
      return cmd_mult(graph, subgroup_file, uac, quotient, mode, trace, mult_json, mult_allow, out, err);
    if (table->parsed()) return cmd_table(graph, table_json_flag, out);
    if (splice->parsed()) return cmd_splice_eqs(graph, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 1;
}

}  // namespace splicemult
