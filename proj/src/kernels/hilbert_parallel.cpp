#include <algorithm>
#include <unordered_set>

#include <omp.h>

#include "splicemult/hilbert_kernels.hpp"

namespace splicemult::kernels {

namespace {

struct Item {
  std::uint64_t code;
  Exponents a;
  std::vector<std::int64_t> residue;  // sum a_i r_i mod N
};

}  // namespace

std::vector<Exponents> hilbert_basis_parallel(const CongruenceSystem& sys) {
  const std::size_t n = sys.variables();
  const std::size_t k = sys.constraints();
  std::vector<Exponents> basis;
  if (n == 0) return basis;

  std::vector<std::uint64_t> stride(n, 1);
  for (std::size_t i = 1; i < n; ++i) stride[i] = stride[i - 1] * static_cast<std::uint64_t>(sys.bounds[i - 1] + 1);

  // `open` holds the current degree of the set of vectors dominating no
  // nonzero member.
  std::vector<Item> open{{0, Exponents(n, 0), std::vector<std::int64_t>(k, 0)}};
  std::unordered_set<std::uint64_t> open_codes{0};

  while (!open.empty()) {
    std::vector<Item> next;
    const auto level = static_cast<std::int64_t>(open.size());

#pragma omp parallel
    {
      std::vector<Item> local_open;
      std::vector<Exponents> local_basis;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t t = 0; t < level; ++t) {
        const Item& o = open[static_cast<std::size_t>(t)];
        // Canonical parent: extend only at or after the last nonzero slot.
        std::size_t last = 0;
        for (std::size_t i = n; i-- > 0;)
          if (o.a[i] > 0) {
            last = i;
            break;
          }
        for (std::size_t j = last; j < n; ++j) {
          if (o.a[j] == sys.bounds[j]) continue;  // would dominate bounds[j] * e_j
          Exponents a = o.a;
          ++a[j];
          const std::uint64_t code = o.code + stride[j];
          bool all_open = true;
          for (std::size_t m = 0; m < n && all_open; ++m) {
            if (m == j || a[m] == 0) continue;
            all_open = open_codes.count(code - stride[m]) != 0;
          }
          if (!all_open) continue;
          std::vector<std::int64_t> res = o.residue;
          bool member = true;
          for (std::size_t c = 0; c < k; ++c) {
            res[c] = (res[c] + sys.residues[j][c]) % sys.modulus;
            member = member && res[c] == 0;
          }
          if (member) local_basis.push_back(std::move(a));
          else local_open.push_back({code, std::move(a), std::move(res)});
        }
      }
#pragma omp critical
      {
        basis.insert(basis.end(), std::make_move_iterator(local_basis.begin()),
                     std::make_move_iterator(local_basis.end()));
        next.insert(next.end(), std::make_move_iterator(local_open.begin()),
                    std::make_move_iterator(local_open.end()));
      }
    }

    std::sort(next.begin(), next.end(), [](const Item& x, const Item& y) { return x.code < y.code; });
    open_codes.clear();
    for (const Item& it : next) open_codes.insert(it.code);
    open = std::move(next);
  }

  sort_graded_lex(basis);
  return basis;
}

}  // namespace splicemult::kernels
