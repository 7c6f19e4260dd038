#include <algorithm>
#include <limits>
#include <numeric>

#include "splicemult/hilbert_kernels.hpp"

namespace splicemult::kernels {

bool CongruenceSystem::is_member(std::span<const std::int64_t> a) const {
  for (std::size_t k = 0; k < constraints(); ++k) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = (s + (a[i] % modulus) * residues[i][k]) % modulus;
    if (s != 0) return false;
  }
  return true;
}

std::uint64_t CongruenceSystem::box_volume() const {
  std::uint64_t vol = 1;
  for (std::int64_t b : bounds) {
    const auto side = static_cast<std::uint64_t>(b) + 1;
    if (vol > std::numeric_limits<std::uint64_t>::max() / side) return std::numeric_limits<std::uint64_t>::max();
    vol *= side;
  }
  return vol;
}

bool graded_lex_less(const Exponents& a, const Exponents& b) {
  const auto da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  if (da != db) return da < db;
  return a < b;
}

void sort_graded_lex(std::vector<Exponents>& v) { std::sort(v.begin(), v.end(), graded_lex_less); }

bool dominated_by(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<Exponents> hilbert_basis_reference(const CongruenceSystem& sys) {
  const std::size_t n = sys.variables();
  std::vector<Exponents> members;
  if (n == 0) return members;

  Exponents a(n, 0);
  for (;;) {
    // odometer step
    std::size_t i = 0;
    while (i < n && a[i] == sys.bounds[i]) a[i++] = 0;
    if (i == n) break;
    ++a[i];
    if (sys.is_member(a)) members.push_back(a);
  }

  // A non-minimal member dominates a minimal one of strictly smaller degree.
  sort_graded_lex(members);
  std::vector<Exponents> basis;
  for (const Exponents& m : members) {
    const bool reducible =
        std::any_of(basis.begin(), basis.end(), [&](const Exponents& b) { return dominated_by(b, m); });
    if (!reducible) basis.push_back(m);
  }
  return basis;
}

}  // namespace splicemult::kernels
