#include "splicemult/monomial_monoid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace splicemult {

namespace {

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const Rational& q : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

Integer scaled(const Rational& q, const Integer& l) {
  Rational s = q * l;
  return s.get_num();  // integral by choice of l
}

std::int64_t to_i64(const Integer& x, const char* what) {
  if (!x.fits_slong_p()) throw Error(ErrorKind::CapExceeded, std::string(what) + " does not fit in 64 bits");
  return x.get_si();
}

}  // namespace

MonomialCycle monomial_cycle(const DualBasis& basis, const EndMap& ends, Exponents exponents) {
  if (exponents.size() != ends.size()) throw Error(ErrorKind::IndexMismatch, "exponent vector length");
  QCycle d(basis.graph());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (exponents[i] == 0) continue;
    d += Rational(static_cast<long>(exponents[i])) * basis.dual(ends[i].vertex);
  }
  return {std::move(exponents), std::move(d)};
}

MonoidLimits limits_from_environment() {
  MonoidLimits limits;
  if (const char* env = std::getenv("SPLICEMULT_MAX_BOX")) {
    std::string_view s(env);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw Error(ErrorKind::ParseError, "SPLICEMULT_MAX_BOX must be a positive integer");
    }
    limits.max_box = v;
  }
  return limits;
}

// ---------------------------------------------------------------------------

bool MonomialConditionReport::satisfied() const {
  return std::all_of(branches.begin(), branches.end(), [](const BranchWitnesses& b) { return !b.witnesses.empty(); });
}

MonomialConditionReport monomial_condition(const DualBasis& basis, const MonoidLimits& limits) {
  const ResolutionGraph& g = *basis.graph();
  MonomialConditionReport report;
  for (VertexId v : g.nodes()) {
    const QCycle node_dual = basis.dual(v);
    for (auto& branch : branches(g, v)) {
      BranchWitnesses bw{v, branch, {}, {}};
      for (VertexId u : branch)
        if (g.is_end(u)) bw.ends.push_back(u);

      // Ends outside the branch must have exponent 0: for such an end e,
      // (D - E_v^*) . E_e = -a_e because D - E_v^* lives on the branch.
      // So only the v-coefficient equation over the branch's ends remains.
      std::vector<Rational> vals{basis.entry(v, v)};
      for (VertexId e : bw.ends) vals.push_back(basis.entry(e, v));
      const Integer l = lcm_of_denominators(vals);
      const Integer target = scaled(vals[0], l);
      std::vector<Integer> weights;
      for (std::size_t i = 1; i < vals.size(); ++i) weights.push_back(scaled(vals[i], l));

      std::uint64_t visited = 0;
      Exponents a(bw.ends.size(), 0);
      auto check = [&] {
        QCycle d = Rational(-1) * node_dual;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i]) d += Rational(static_cast<long>(a[i])) * basis.dual(bw.ends[i]);
        if (!d.is_integral() || !d.is_effective()) return false;
        for (std::size_t i = 0; i < g.size(); ++i)
          if (d.at(i) != 0 && !std::binary_search(branch.begin(), branch.end(), g.ids()[i])) return false;
        return true;
      };
      auto search = [&](auto&& self, std::size_t i, const Integer& rem) -> void {
        if (++visited > limits.max_search) {
          throw Error(ErrorKind::CapExceeded, "admissible monomial search exceeded " +
                                                  std::to_string(limits.max_search) + " steps");
        }
        if (i + 1 == a.size()) {
          if (mpz_divisible_p(rem.get_mpz_t(), weights[i].get_mpz_t())) {
            a[i] = to_i64(Integer(rem / weights[i]), "exponent");
            if (check()) bw.witnesses.push_back(a);
            a[i] = 0;
          }
          return;
        }
        Integer r = rem;
        for (std::int64_t k = 0; r >= 0; ++k, r -= weights[i]) {
          a[i] = k;
          self(self, i + 1, r);
        }
        a[i] = 0;
      };
      if (!a.empty()) search(search, 0, target);
      kernels::sort_graded_lex(bw.witnesses);
      report.branches.push_back(std::move(bw));
    }
  }
  return report;
}

BranchCycle branch_cycle(const DualBasis& basis, VertexId w, std::span<const VertexId> branch) {
  const GraphPtr& gp = basis.graph();
  const ResolutionGraph& g = *gp;
  std::vector<VertexId> c(branch.begin(), branch.end());
  std::sort(c.begin(), c.end());
  {
    auto all = branches(g, w);
    if (std::find(all.begin(), all.end(), c) == all.end()) {
      throw Error(ErrorKind::IndexMismatch, "not a branch of vertex " + std::to_string(w));
    }
  }
  VertexId end = 0;
  bool found = false;
  for (VertexId u : c)
    if (g.is_end(u)) {
      end = u;
      found = true;
      break;
    }
  if (!found) throw Error(ErrorKind::InternalInconsistency, "branch without an end");

  // E_end^x: dual of E_end inside the branch, columns of (-I_C)^{-1}.
  linalg::IntMatrix ic(c.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    ic(i, i) = Integer(static_cast<long>(g.weight(c[i])));
    for (std::size_t j = 0; j < c.size(); ++j)
      if (i != j && g.has_edge(c[i], c[j])) ic(i, j) = 1;
  }
  const linalg::RatMatrix inv = linalg::invert_rational_matrix(linalg::to_rational(-ic));
  const std::size_t col = static_cast<std::size_t>(std::find(c.begin(), c.end(), end) - c.begin());
  std::vector<Rational> cross(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) cross[i] = inv(i, col);

  const Integer n_end = lcm_of_denominators(cross);
  // E_end^x . E_w is the coefficient at the branch vertex adjacent to w.
  Rational meet = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (g.has_edge(c[i], w)) meet += cross[i];
  const Rational n = meet * n_end;
  if (!is_integral(n)) throw Error(ErrorKind::InternalInconsistency, "branch multiplier is not integral");

  QCycle d = n * basis.dual(w);
  for (std::size_t i = 0; i < c.size(); ++i) d.at(g.index_of(c[i])) += cross[i] * n_end;
  return {n.get_num(), n_end, end, std::move(d)};
}

// ---------------------------------------------------------------------------

std::vector<BasePointDecision> base_point_decisions(const DualBasis& basis, const EndMap& ends,
                                                    const MonoidLimits& limits) {
  std::vector<BasePointDecision> out;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const VertexId v = ends[i].vertex;
    std::vector<Rational> vals{basis.entry(v, v)};
    std::vector<std::size_t> slots;
    for (std::size_t j = 0; j < ends.size(); ++j) {
      if (j == i) continue;
      vals.push_back(basis.entry(ends[j].vertex, v));
      slots.push_back(j);
    }
    const Integer l = lcm_of_denominators(vals);
    const Integer target_big = scaled(vals[0], l);
    if (target_big > static_cast<unsigned long>(limits.max_search)) {
      throw Error(ErrorKind::CapExceeded, "base point knapsack target " + target_big.get_str() + " too large");
    }
    const auto target = static_cast<std::size_t>(target_big.get_ui());
    std::vector<std::size_t> coins;
    for (std::size_t k = 1; k < vals.size(); ++k) coins.push_back(scaled(vals[k], l).get_ui());

    // Unbounded coin problem; keep the fewest-coins representation.
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(target + 1, kNone), via(target + 1, kNone);
    best[0] = 0;
    for (std::size_t t = 1; t <= target; ++t)
      for (std::size_t k = 0; k < coins.size(); ++k) {
        if (coins[k] > t || best[t - coins[k]] == kNone) continue;
        if (best[t - coins[k]] + 1 < best[t]) {
          best[t] = best[t - coins[k]] + 1;
          via[t] = k;
        }
      }
    BasePointDecision d{ends[i].index, v, best[target] == kNone, std::nullopt};
    if (!d.base_point) {
      Exponents w(ends.size(), 0);
      for (std::size_t t = target; t > 0; t -= coins[via[t]]) ++w[slots[via[t]]];
      d.witness = std::move(w);
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<VertexId> base_point_set(const DualBasis& basis, const EndMap& ends, const MonoidLimits& limits) {
  std::vector<VertexId> out;
  for (const auto& d : base_point_decisions(basis, ends, limits))
    if (d.base_point) out.push_back(d.index);
  return out;
}

// ---------------------------------------------------------------------------

kernels::CongruenceSystem congruence_system(const DualBasis& basis, const EndMap& ends,
                                            std::span<const DualVector> h1_generators) {
  const std::size_t n = basis.size();
  std::vector<std::vector<Rational>> pairings(ends.size());
  std::vector<Rational> all;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    DualVector unit(n);
    unit[basis.graph()->index_of(ends[i].vertex)] = 1;
    for (const DualVector& g : h1_generators) {
      pairings[i].push_back(fractional_part(basis.pairing(unit, g)));
      all.push_back(pairings[i].back());
    }
  }
  kernels::CongruenceSystem sys;
  sys.modulus = to_i64(lcm_of_denominators(all), "pairing modulus");
  for (std::size_t i = 0; i < ends.size(); ++i) {
    std::vector<std::int64_t> r;
    std::int64_t g = sys.modulus;
    for (const Rational& p : pairings[i]) {
      r.push_back(to_i64(scaled(p, Integer(static_cast<long>(sys.modulus))), "residue"));
      g = std::gcd(g, r.back());
    }
    sys.bounds.push_back(sys.modulus / g);
    sys.residues.push_back(std::move(r));
  }
  return sys;
}

HilbertBasis hilbert_basis(const DualBasis& basis, const EndMap& ends, std::span<const DualVector> h1_generators,
                           const MonoidLimits& limits) {
  const kernels::CongruenceSystem sys = congruence_system(basis, ends, h1_generators);
  if (sys.box_volume() > limits.max_box) {
    throw Error(ErrorKind::CapExceeded, "Hilbert basis box volume exceeds " + std::to_string(limits.max_box));
  }
  auto exps = limits.use_reference_kernel ? kernels::hilbert_basis_reference(sys)
                                          : kernels::hilbert_basis_parallel(sys);
  HilbertBasis hb{ends, sys.bounds, {}};
  for (auto& e : exps) hb.generators.push_back(monomial_cycle(basis, ends, std::move(e)));
  return hb;
}

QCycle gcd_cycle(std::span<const QCycle> cycles) {
  if (cycles.empty()) throw Error(ErrorKind::EmptySet, "gcd of an empty set");
  QCycle z = cycles.front();
  for (const QCycle& d : cycles.subspan(1)) {
    if (!same_graph(z.graph(), d.graph())) throw Error(ErrorKind::GraphMismatch, "gcd across graphs");
    for (std::size_t i = 0; i < z.size(); ++i)
      if (d.at(i) < z.at(i)) z.at(i) = d.at(i);
  }
  return z;
}

QCycle gcd_cycle(const HilbertBasis& hb) {
  std::vector<QCycle> cycles;
  for (const auto& m : hb.generators) cycles.push_back(m.expansion);
  return gcd_cycle(cycles);
}

// ---------------------------------------------------------------------------

std::string format_monomial(const Monomial& m) {
  if (m.powers.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < m.powers.size(); ++i) {
    if (i) os << "*";
    os << "z_" << m.powers[i].first;
    if (m.powers[i].second != 1) os << "^" << m.powers[i].second;
  }
  return os.str();
}

Exponents preferred_witness(std::span<const Exponents> witnesses) {
  if (witnesses.empty()) throw Error(ErrorKind::EmptySet, "no admissible monomial");
  auto key = [](const Exponents& e) {
    return std::make_tuple(std::accumulate(e.begin(), e.end(), std::int64_t{0}),
                           e.empty() ? std::int64_t{0} : *std::max_element(e.begin(), e.end()), e);
  };
  return *std::min_element(witnesses.begin(), witnesses.end(),
                           [&](const Exponents& x, const Exponents& y) { return key(x) < key(y); });
}

std::vector<NodeEquations> neumann_wahl_system(const DualBasis& basis, const MonoidLimits& limits) {
  const MonomialConditionReport report = monomial_condition(basis, limits);
  if (!report.satisfied()) throw Error(ErrorKind::MonomialConditionFails, "some branch has no admissible monomial");
  std::vector<NodeEquations> system;
  for (const BranchWitnesses& bw : report.branches) {
    if (system.empty() || system.back().node != bw.node) system.push_back({bw.node, {}, {}});
    const Exponents chosen = preferred_witness(bw.witnesses);
    Monomial m;
    for (std::size_t i = 0; i < chosen.size(); ++i)
      if (chosen[i] > 0) m.powers.emplace_back(bw.ends[i], chosen[i]);
    system.back().monomials.push_back(std::move(m));
  }
  for (NodeEquations& eq : system) {
    const auto delta = static_cast<std::int64_t>(eq.monomials.size());
    for (std::int64_t i = 1; i <= delta - 2; ++i) {
      std::vector<std::int64_t> row;
      for (std::int64_t j = 1; j <= delta; ++j) {
        std::int64_t p = 1;
        for (std::int64_t k = 1; k < i; ++k) p *= j;
        row.push_back(p);
      }
      eq.coefficients.push_back(std::move(row));
    }
  }
  return system;
}

std::string format_equations(const std::vector<NodeEquations>& system) {
  std::ostringstream os;
  for (const NodeEquations& eq : system) {
    for (const auto& row : eq.coefficients) {
      os << "node " << eq.node << ": ";
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) os << " + ";
        if (row[j] != 1) os << row[j] << "*";
        os << format_monomial(eq.monomials[j]);
      }
      os << " = 0\n";
    }
  }
  return os.str();
}

}  // namespace splicemult
