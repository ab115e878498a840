// Serial reference against OpenMP kernels.

#include <random>

#include "benchmark/benchmark.h"
#include "roleforge/frame.hpp"
#include "roleforge/kernels.hpp"
#include "roleforge/rsr.hpp"

using namespace roleforge;

namespace {

struct UnionSpace {
  std::vector<std::uint64_t> codes;
  Bitset incoherent;
};

// Every code of `bits` bits, each incoherent with probability 1/2.
UnionSpace random_union_space(unsigned bits) {
  std::mt19937_64 rng(7);
  UnionSpace s;
  const std::uint64_t n = std::uint64_t{1} << bits;
  s.incoherent = Bitset(n);
  for (std::uint64_t c = 0; c < n; ++c) {
    s.codes.push_back(c);
    if (rng() & 1U) s.incoherent.set(c);
  }
  return s;
}

Frame multiset_diagonal(unsigned cap) {
  Position p = Position::empty(1);
  p.right[0] = 1;
  Position q = Position::empty(1);
  q.left[0] = 1;
  q.right[0] = 2;
  return Frame(AtomTable({"p"}), Mode::multiset, cap, {p, q}, {Generator::diagonal});
}

template <bool Parallel>
void BM_Blockers(benchmark::State& state) {
  const UnionSpace s = random_union_space(static_cast<unsigned>(state.range(0)));
  const kernels::SumSpace view{s.codes, &s.incoherent, true};
  for (auto _ : state) {
    auto rows = Parallel ? kernels::blockers_parallel(view) : kernels::blockers_serial(view);
    benchmark::DoNotOptimize(rows);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.codes.size() * s.codes.size()));
}

template <bool Parallel>
void BM_MeetClosure(benchmark::State& state) {
  PositionSpace sp(multiset_diagonal(static_cast<unsigned>(state.range(0))), Execution::serial);
  const Bitset top = sp.full_set();
  std::vector<Bitset> out;
  for (auto _ : state) {
    const bool ok = Parallel ? kernels::meet_closure_parallel(sp.blockers(), top, 1u << 20, out)
                             : kernels::meet_closure_serial(sp.blockers(), top, 1u << 20, out);
    benchmark::DoNotOptimize(ok);
  }
  state.counters["roles"] = static_cast<double>(out.size());
}

template <Execution Exec>
void BM_RoleLattice(benchmark::State& state) {
  auto sp = std::make_shared<const PositionSpace>(multiset_diagonal(static_cast<unsigned>(state.range(0))), Exec);
  for (auto _ : state) benchmark::DoNotOptimize(role_lattice(sp, RoleLattice::kDefaultBound, Exec));
}

}  // namespace

BENCHMARK(BM_Blockers<false>)->Name("blockers/serial")->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Blockers<true>)->Name("blockers/parallel")->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeetClosure<false>)->Name("meet_closure/serial")->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeetClosure<true>)->Name("meet_closure/parallel")->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoleLattice<Execution::serial>)->Name("role_lattice/serial")->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoleLattice<Execution::parallel>)->Name("role_lattice/parallel")->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
