#include "splicemult/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace splicemult {

QCycle DualBasis::dual(VertexId v) const {
  const std::size_t col = graph_->index_of(v);
  std::vector<Rational> c(size());
  for (std::size_t i = 0; i < size(); ++i) c[i] = b_(i, col);
  return QCycle(graph_, std::move(c));
}

Rational DualBasis::pairing(std::span<const Integer> c1, std::span<const Integer> c2) const {
  if (c1.size() != size() || c2.size() != size()) throw Error(ErrorKind::IndexMismatch, "dual vector length");
  Rational acc = 0;
  for (std::size_t a = 0; a < size(); ++a) {
    if (c1[a] == 0) continue;
    Rational row = 0;
    for (std::size_t b = 0; b < size(); ++b)
      if (c2[b] != 0) row += b_(a, b) * c2[b];
    acc += c1[a] * row;
  }
  return -acc;
}

DualBasis dual_cycles(const GraphPtr& g) {
  linalg::RatMatrix b = linalg::invert_rational_matrix(linalg::to_rational(-g->intersection_matrix()));
  for (const Rational& q : b.data())
    if (q <= 0) throw Error(ErrorKind::InternalInconsistency, "dual cycle with non-positive coefficient");
  return DualBasis(g, std::move(b));
}

Rational intersect(const QCycle& d, const QCycle& d2) {
  if (!same_graph(d.graph(), d2.graph())) throw Error(ErrorKind::GraphMismatch, "cycles live on different graphs");
  const ResolutionGraph& g = *d.graph();
  Rational acc = 0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += d.at(i) * d2.at(i) * static_cast<long>(g.weight_at(i));
  for (const Edge& e : g.edges()) {
    std::size_t i = g.index_of(e.a), j = g.index_of(e.b);
    acc += d.at(i) * d2.at(j) + d.at(j) * d2.at(i);
  }
  return acc;
}

Rational intersect_vertex(const QCycle& d, VertexId v) {
  const ResolutionGraph& g = *d.graph();
  Rational acc = d.coefficient(v) * static_cast<long>(g.weight(v));
  for (VertexId w : g.neighbors(v)) acc += d.coefficient(w);
  return acc;
}

std::vector<Rational> to_dual_coordinates(const QCycle& d) {
  std::vector<Rational> out;
  out.reserve(d.size());
  for (VertexId v : d.graph()->ids()) out.push_back(-intersect_vertex(d, v));
  return out;
}

QCycle from_dual_coordinates(const DualBasis& basis, std::span<const Rational> coords) {
  if (coords.size() != basis.size()) throw Error(ErrorKind::IndexMismatch, "dual coordinate length");
  std::vector<Rational> c(basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (coords[b] == 0) continue;
    for (std::size_t i = 0; i < basis.size(); ++i) c[i] += basis.matrix()(i, b) * coords[b];
  }
  return QCycle(basis.graph(), std::move(c));
}

QCycle from_dual_coordinates(const DualBasis& basis, std::span<const Integer> coords) {
  std::vector<Rational> q(coords.begin(), coords.end());
  return from_dual_coordinates(basis, std::span<const Rational>(q));
}

DualVector transport_dual_vector(const ResolutionGraph& from, std::span<const Integer> c, const ResolutionGraph& to) {
  if (c.size() != from.size()) throw Error(ErrorKind::IndexMismatch, "dual vector length");
  DualVector out(to.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[to.index_of(from.ids()[i])] = c[i];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t mod_floor(const Integer& a, std::int64_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

}  // namespace

DiscriminantGroup::DiscriminantGroup(DualBasis basis) : basis_(std::move(basis)) {
  const linalg::SnfResult snf = linalg::smith_normal_form(graph().intersection_matrix());
  const auto diag = snf.diagonal();
  order_ = 1;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0) throw Error(ErrorKind::SingularMatrix, "intersection matrix is singular");
    if (diag[i] == 1) continue;
    positions_.push_back(i);
    factors_.push_back(diag[i]);
    order_ *= diag[i];
  }
  u_ = snf.U;
  const linalg::RatMatrix inv = linalg::invert_rational_matrix(linalg::to_rational(u_));
  u_inv_ = linalg::IntMatrix(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) u_inv_(i, j) = inv(i, j).get_num();

  // Residue arithmetic needs machine-size moduli; huge groups stay
  // describable but not enumerable.
  const bool small = std::all_of(factors_.begin(), factors_.end(), [](const Integer& d) { return d.fits_slong_p(); });
  if (small) {
    for (const Integer& d : factors_) moduli_.push_back(d.get_si());
    column_residues_.assign(graph().size(), std::vector<std::int64_t>(moduli_.size()));
    for (std::size_t v = 0; v < graph().size(); ++v)
      for (std::size_t j = 0; j < moduli_.size(); ++j)
        column_residues_[v][j] = mod_floor(u_(positions_[j], v), moduli_[j]);
  }
}

DiscriminantGroup discriminant_group(const DualBasis& basis) { return DiscriminantGroup(basis); }

std::size_t DiscriminantGroup::element_count(std::size_t cap) const {
  if (moduli_.size() != factors_.size() || order_ > static_cast<unsigned long>(cap)) {
    throw Error(ErrorKind::CapExceeded, "|H| = " + order_.get_str() + " exceeds the enumeration cap " +
                                            std::to_string(cap));
  }
  return order_.get_ui();
}

std::vector<std::int64_t> DiscriminantGroup::residues(std::span<const Integer> c) const {
  if (c.size() != graph().size()) throw Error(ErrorKind::IndexMismatch, "dual vector length");
  if (moduli_.size() != factors_.size()) throw Error(ErrorKind::CapExceeded, "invariant factor too large");
  std::vector<std::int64_t> r(moduli_.size(), 0);
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (c[v] == 0) continue;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      r[j] = (r[j] + mod_floor(c[v], moduli_[j]) * column_residues_[v][j]) % moduli_[j];
    }
  }
  return r;
}

std::size_t DiscriminantGroup::encode(std::span<const std::int64_t> r) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) idx = idx * moduli_[j] + static_cast<std::size_t>(r[j]);
  return idx;
}

std::vector<std::int64_t> DiscriminantGroup::decode(std::size_t idx) const {
  std::vector<std::int64_t> r(moduli_.size());
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    r[j] = static_cast<std::int64_t>(idx % moduli_[j]);
    idx /= moduli_[j];
  }
  return r;
}

std::size_t DiscriminantGroup::index_of(std::span<const Integer> c) const { return encode(residues(c)); }

std::size_t DiscriminantGroup::add(std::size_t a, std::size_t b) const {
  auto ra = decode(a);
  auto rb = decode(b);
  for (std::size_t j = 0; j < ra.size(); ++j) ra[j] = (ra[j] + rb[j]) % moduli_[j];
  return encode(ra);
}

std::size_t DiscriminantGroup::multiple(std::size_t a, std::int64_t k) const {
  auto r = decode(a);
  for (std::size_t j = 0; j < r.size(); ++j) {
    r[j] = ((r[j] * (k % moduli_[j])) % moduli_[j] + moduli_[j]) % moduli_[j];
  }
  return encode(r);
}

DualVector DiscriminantGroup::representative(std::size_t idx) const {
  const auto r = decode(idx);
  const std::size_t n = graph().size();
  DualVector c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r.size(); ++j) c[i] += u_inv_(i, positions_[j]) * r[j];
  return c;
}

DualVector DiscriminantGroup::display_representative(std::size_t idx) const {
  const std::size_t n = graph().size();
  if (idx == 0) return DualVector(n);
  const std::int64_t e = exponent().get_si();
  std::vector<std::int64_t> r(moduli_.size());

  auto matches = [&](std::size_t v, std::int64_t a, std::size_t w, std::int64_t b) {
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      r[j] = (a * column_residues_[v][j] + b * column_residues_[w][j]) % moduli_[j];
    }
    return encode(r) == idx;
  };
  for (std::int64_t k = 1; k < e; ++k)
    for (std::size_t v = 0; v < n; ++v)
      if (matches(v, k, v, 0)) {
        DualVector c(n);
        c[v] = static_cast<long>(k);
        return c;
      }
  for (std::int64_t s = 2; s <= 2 * (e - 1); ++s)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = v + 1; w < n; ++w)
        for (std::int64_t a = std::min(s - 1, e - 1); a >= 1 && s - a < e; --a)
          if (matches(v, a, w, s - a)) {
            DualVector c(n);
            c[v] = static_cast<long>(a);
            c[w] = static_cast<long>(s - a);
            return c;
          }
  return representative(idx);
}

Rational DiscriminantGroup::pairing(std::size_t a, std::size_t b) const {
  const DualVector ra = representative(a);
  const DualVector rb = representative(b);
  return fractional_part(basis_.pairing(ra, rb));
}

// ---------------------------------------------------------------------------

bool SubgroupData::contains(std::size_t idx) const {
  return std::binary_search(elements.begin(), elements.end(), idx);
}

namespace {

// Closure of `seed` (assumed closed) together with element x.
std::vector<std::size_t> join(const std::vector<std::size_t>& seed, std::size_t x, const DiscriminantGroup& h,
                              std::vector<char>& scratch) {
  std::fill(scratch.begin(), scratch.end(), 0);
  std::vector<std::size_t> out = seed;
  for (std::size_t s : seed) scratch[s] = 1;
  std::size_t cur = x;
  while (!scratch[cur]) {
    for (std::size_t s : seed) {
      std::size_t y = h.add(s, cur);
      if (!scratch[y]) {
        scratch[y] = 1;
        out.push_back(y);
      }
    }
    cur = h.add(cur, x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubgroupData subgroup(std::span<const DualVector> gens, const DiscriminantGroup& h, std::size_t cap) {
  const std::size_t count = h.element_count(cap);
  std::vector<char> scratch(count);
  std::vector<std::size_t> elements{0};
  for (const DualVector& g : gens) {
    const std::size_t idx = h.index_of(g);
    if (!std::binary_search(elements.begin(), elements.end(), idx)) elements = join(elements, idx, h, scratch);
  }
  SubgroupData s;
  s.generators.assign(gens.begin(), gens.end());
  s.order = elements.size();
  s.index = count / s.order;
  s.elements = std::move(elements);
  return s;
}

SubgroupData subgroup_from_elements(std::vector<std::size_t> elements, const DiscriminantGroup& h) {
  const std::size_t count = h.element_count(std::max<std::size_t>(kDefaultGroupCap, h.order().get_ui()));
  std::sort(elements.begin(), elements.end());
  std::vector<char> scratch(count);
  std::vector<std::size_t> span{0};
  SubgroupData s;
  for (std::size_t x : elements) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    span = join(span, x, h, scratch);
    s.generators.push_back(h.display_representative(x));
  }
  if (span != elements) throw Error(ErrorKind::InternalInconsistency, "element set is not a subgroup");
  s.order = elements.size();
  s.index = count / s.order;
  s.elements = std::move(elements);
  return s;
}

bool perp_member(std::span<const Integer> d, const SubgroupData& h1, const DualBasis& basis) {
  for (const DualVector& g : h1.generators)
    if (!is_integral(basis.pairing(d, g))) return false;
  return true;
}

SubgroupData flat_subgroup(const SubgroupData& h1, const DiscriminantGroup& h, std::size_t cap) {
  const std::size_t count = h.element_count(cap);
  const std::size_t rank = h.invariant_factors().size();
  // pairing(x, g) = sum_j r_j(x) * pairing(e_j, g) by bilinearity.
  std::vector<std::vector<Rational>> unit_pairings(rank);
  for (std::size_t j = 0; j < rank; ++j) {
    std::vector<std::int64_t> r(rank, 0);
    r[j] = 1;
    const DualVector ej = h.representative(h.encode(r));
    for (const DualVector& g : h1.generators) unit_pairings[j].push_back(h.basis().pairing(ej, g));
  }
  std::vector<std::size_t> elements;
  for (std::size_t x = 0; x < count; ++x) {
    const auto r = h.decode(x);
    bool ok = true;
    for (std::size_t k = 0; k < h1.generators.size() && ok; ++k) {
      Rational acc = 0;
      for (std::size_t j = 0; j < rank; ++j) acc += unit_pairings[j][k] * static_cast<long>(r[j]);
      ok = is_integral(acc);
    }
    if (ok) elements.push_back(x);
  }
  return subgroup_from_elements(std::move(elements), h);
}

std::vector<SubgroupData> enumerate_subgroups(const DiscriminantGroup& h, std::size_t cap) {
  const std::size_t count = h.element_count(cap);
  std::vector<char> scratch(count);
  std::set<std::vector<std::size_t>> found{{0}};
  std::vector<std::vector<std::size_t>> queue{{0}};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<std::size_t> s = queue[q];
    // Every x in one coset of s yields the same join, so try one per coset.
    std::vector<char> covered(count, 0);
    for (std::size_t x : s) covered[x] = 1;
    for (std::size_t x = 0; x < count; ++x) {
      if (covered[x]) continue;
      for (std::size_t y : s) covered[h.add(y, x)] = 1;
      auto t = join(s, x, h, scratch);
      if (found.insert(t).second) queue.push_back(std::move(t));
    }
  }
  std::sort(queue.begin(), queue.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<SubgroupData> out;
  out.reserve(queue.size());
  for (auto& elems : queue) out.push_back(subgroup_from_elements(std::move(elems), h));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
std::string format_terms(const ResolutionGraph& g, std::span<const T> c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    T mag = abs(T(c[i]));
    if (first) {
      if (c[i] < 0) os << "-";
    } else {
      os << (c[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) {
      const std::string s = mag.get_str();
      if (s.find('/') != std::string::npos) os << "(" << s << ")";
      else os << s;
    }
    os << "E_" << g.ids()[i] << "^*";
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string format_dual(const ResolutionGraph& g, std::span<const Integer> c) { return format_terms(g, c); }
std::string format_dual(const ResolutionGraph& g, std::span<const Rational> c) { return format_terms(g, c); }

}  // namespace splicemult
