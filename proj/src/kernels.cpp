#include "roleforge/kernels.hpp"

#include <unordered_set>

namespace roleforge::kernels {

namespace {

Bitset blocker_row(const SumSpace& space, std::size_t i) {
  const std::size_t w = space.codes.size();
  Bitset row(w);
  const std::uint64_t ci = space.codes[i];
  for (std::size_t j = 0; j < w; ++j)
    if (space.incoherent->test(space.sum(ci, space.codes[j]))) row.set(j);
  return row;
}

using SetTable = std::unordered_set<Bitset, BitsetHash>;

}  // namespace

std::vector<Bitset> blockers_serial(const SumSpace& space) {
  std::vector<Bitset> rows;
  rows.reserve(space.codes.size());
  for (std::size_t i = 0; i < space.codes.size(); ++i) rows.push_back(blocker_row(space, i));
  return rows;
}

std::vector<Bitset> blockers_parallel(const SumSpace& space) {
  const auto w = static_cast<std::ptrdiff_t>(space.codes.size());
  std::vector<Bitset> rows(space.codes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < w; ++i)
    rows[static_cast<std::size_t>(i)] = blocker_row(space, static_cast<std::size_t>(i));
  return rows;
}

bool meet_closure_serial(std::span<const Bitset> generators, const Bitset& top, std::size_t bound,
                         std::vector<Bitset>& out) {
  SetTable seen{top};
  out.assign(1, top);
  for (const auto& g : generators) {
    if (seen.contains(g)) continue;
    const std::size_t existing = out.size();
    for (std::size_t k = 0; k < existing; ++k) {
      Bitset m = out[k] & g;
      if (seen.insert(m).second) {
        out.push_back(std::move(m));
        if (out.size() > bound) return false;
      }
    }
  }
  return true;
}

bool meet_closure_parallel(std::span<const Bitset> generators, const Bitset& top,
                           std::size_t bound, std::vector<Bitset>& out) {
  SetTable seen{top};
  out.assign(1, top);
  std::vector<Bitset> fresh;
  for (const auto& g : generators) {
    if (seen.contains(g)) continue;
    const auto existing = static_cast<std::ptrdiff_t>(out.size());
    fresh.assign(out.size(), Bitset());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < existing; ++k)
      fresh[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k)] & g;
    for (auto& m : fresh) {
      if (seen.insert(m).second) {
        out.push_back(std::move(m));
        if (out.size() > bound) return false;
      }
    }
  }
  return true;
}

Bitset intersect_rows(std::span<const Bitset> rows, const Bitset& set, const Bitset& top) {
  Bitset acc = top;
  set.for_each([&](std::size_t i) { acc &= rows[i]; });
  return acc;
}

}  // namespace roleforge::kernels
