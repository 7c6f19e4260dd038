// Reference box scan vs parallel staircase kernel on the example graphs'
// universal abelian covers and on a synthetic system with a larger box.

#include <fstream>
#include <sstream>

#include <benchmark/benchmark.h>

#include "splicemult/monomial_monoid.hpp"

using namespace splicemult;

namespace {

kernels::CongruenceSystem uac_system(const char* file) {
  std::ifstream in(std::string(SPLICEMULT_DATA_DIR) + "/" + file);
  std::stringstream ss;
  ss << in.rdbuf();
  const GraphPtr g = share(parse_graph(ss.str()));
  return congruence_system(dual_cycles(g), identity_end_map(*g), {});
}

kernels::CongruenceSystem synthetic() {
  // Five variables modulo 23 with two constraints; the box has 24^5 points.
  kernels::CongruenceSystem s;
  s.modulus = 23;
  s.residues = {{1, 5}, {3, 11}, {7, 2}, {13, 17}, {19, 8}};
  s.bounds.assign(5, 23);
  return s;
}

const kernels::CongruenceSystem& system_for(int which) {
  static const kernels::CongruenceSystem systems[] = {uac_system("example1.json"), uac_system("example2.json"),
                                                      synthetic()};
  return systems[which];
}

void BM_Reference(benchmark::State& state) {
  const auto& s = system_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hilbert_basis_reference(s));
}

void BM_Parallel(benchmark::State& state) {
  const auto& s = system_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::hilbert_basis_parallel(s));
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
