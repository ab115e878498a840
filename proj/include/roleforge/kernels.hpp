#pragma once

// Data-parallel kernels behind the rsr engine. Each kernel has an OpenMP
// version and a serial reference with identical output; tests compare the
// two and the benchmark target times them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "roleforge/bitset.hpp"

namespace roleforge::kernels {

// Input to the blocker kernel: a window of `codes` (one per window position)
// living in a code space where the code of a sum is `sum(code_i, code_j)`,
// plus the incoherence bit of every code in that space.
struct SumSpace {
  std::span<const std::uint64_t> codes;
  const Bitset* incoherent = nullptr;  // indexed by code
  bool union_sums = true;              // OR codes (set mode) or add them (multiset)

  std::uint64_t sum(std::uint64_t a, std::uint64_t b) const { return union_sums ? (a | b) : (a + b); }
};

// rows[i] = { j | code_i + code_j incoherent }, i.e. the principal blocker set
// of window position i.
std::vector<Bitset> blockers_serial(const SumSpace& space);
std::vector<Bitset> blockers_parallel(const SumSpace& space);

// Intersection-closure of `generators` together with `top`. Result order is
// unspecified; callers sort. Returns false if more than `bound` sets arise.
bool meet_closure_serial(std::span<const Bitset> generators, const Bitset& top, std::size_t bound,
                         std::vector<Bitset>& out);
bool meet_closure_parallel(std::span<const Bitset> generators, const Bitset& top,
                           std::size_t bound, std::vector<Bitset>& out);

// Intersection of rows[i] over all members i of `set`; `top` if `set` is empty.
Bitset intersect_rows(std::span<const Bitset> rows, const Bitset& set, const Bitset& top);

}  // namespace roleforge::kernels
