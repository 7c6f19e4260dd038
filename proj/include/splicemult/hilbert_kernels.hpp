#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Minimal generators of a congruence monoid
//   { a in Z_{>=0}^n : sum_i a_i r_i == 0 (mod N) componentwise }.
// Two kernels with identical output: a serial brute-force box scan kept as
// the reference, and an OpenMP degree-by-degree staircase search used in
// production.

namespace splicemult::kernels {

using Exponents = std::vector<std::int64_t>;

struct CongruenceSystem {
  std::int64_t modulus = 1;
  /// bounds[i] is the additive order of residues[i]; bounds[i] * e_i is
  /// always a member, so minimal members satisfy a_i <= bounds[i].
  std::vector<std::int64_t> bounds;
  /// residues[i][k] in [0, modulus)
  std::vector<std::vector<std::int64_t>> residues;

  std::size_t variables() const noexcept { return bounds.size(); }
  std::size_t constraints() const noexcept { return residues.empty() ? 0 : residues.front().size(); }
  bool is_member(std::span<const std::int64_t> a) const;
  /// prod_i (bounds[i] + 1), saturating at UINT64_MAX.
  std::uint64_t box_volume() const;
};

/// Total degree first, then lexicographic.
bool graded_lex_less(const Exponents& a, const Exponents& b);
void sort_graded_lex(std::vector<Exponents>& v);

/// a <= b componentwise.
bool dominated_by(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Scans the whole box prod [0, bounds_i], keeps nonzero members and filters
/// minimal ones. Serial. Output sorted graded-lex.
std::vector<Exponents> hilbert_basis_reference(const CongruenceSystem& sys);

/// Grows the down-closed set of vectors that dominate no nonzero member one
/// degree at a time; minimal members are exactly the members all of whose
/// predecessors lie in that set. Each level is expanded in parallel.
/// Output sorted graded-lex, independent of thread count.
std::vector<Exponents> hilbert_basis_parallel(const CongruenceSystem& sys);

}  // namespace splicemult::kernels
