#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "roleforge/rsr.hpp"

namespace roleforge {

namespace detail {

// Write-once memo for a binary operation on role ids. Dense atomic cells for
// small lattices, a locked hash map above that. Concurrent fills of the same
// cell compute the same value, so a lost race is harmless.
class BinaryMemo {
 public:
  static constexpr std::size_t kDenseLimit = 1024;

  explicit BinaryMemo(std::size_t n);

  template <class F>
  RoleId get(RoleId a, RoleId b, F&& compute) const {
    const std::uint64_t key = static_cast<std::uint64_t>(a.value) * n_ + static_cast<std::uint64_t>(b.value);
    if (!dense_.empty()) {
      std::int32_t v = dense_[key].load(std::memory_order_acquire);
      if (v >= 0) return RoleId{v};
      RoleId r = compute();
      dense_[key].store(r.value, std::memory_order_release);
      return r;
    }
    {
      std::lock_guard lock(mutex_);
      auto it = sparse_.find(key);
      if (it != sparse_.end()) return RoleId{it->second};
    }
    RoleId r = compute();
    std::lock_guard lock(mutex_);
    sparse_.emplace(key, r.value);
    return r;
  }

 private:
  std::size_t n_;
  mutable std::vector<std::atomic<std::int32_t>> dense_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

}  // namespace detail

// Girard-quantale operations on the roles of one lattice. All operations
// take and return role ids of that lattice.
class QuantaleOps {
 public:
  explicit QuantaleOps(std::shared_ptr<const RoleLattice> lattice);

  const RoleLattice& lattice() const { return *lattice_; }
  std::shared_ptr<const RoleLattice> lattice_ptr() const { return lattice_; }
  const PositionSpace& space() const { return lattice_->space(); }
  std::size_t size() const { return lattice_->size(); }
  bool window_relative() const { return space().window_relative(); }

  RoleId unit() const { return lattice_->unit(); }
  RoleId dualizer() const { return lattice_->dualizer(); }
  RoleId top() const { return lattice_->top(); }
  RoleId bottom() const { return lattice_->bottom(); }
  bool leq(RoleId a, RoleId b) const { return lattice_->leq(a, b); }

  // Closure of pairwise sums. In multiset mode sums leaving the window are
  // dropped before closing.
  RoleId tensor(RoleId a, RoleId b) const;
  // Closure of the union.
  RoleId join(RoleId a, RoleId b) const;
  RoleId meet(RoleId a, RoleId b) const;
  RoleId neg(RoleId a) const { return neg_[a.index()]; }
  RoleId parr(RoleId a, RoleId b) const { return neg(tensor(neg(a), neg(b))); }
  // Fold of tensor; the unit for an empty list.
  RoleId tensor_all(std::span<const RoleId> rs) const;

  bool is_idempotent(RoleId a) const { return tensor(a, a) == a; }
  // a v b v (a * b); throws DomainError unless both arguments are idempotent.
  RoleId tilde_join(RoleId a, RoleId b) const;

  // Whether the lattice minimum absorbs every role under tensor.
  bool bottom_absorbing() const { return bottom_absorbing_; }

  // Role closure of an arbitrary position set.
  RoleId close(const PositionSet& s) const;

 private:
  std::shared_ptr<const RoleLattice> lattice_;
  std::vector<RoleId> neg_;
  detail::BinaryMemo tensor_memo_;
  detail::BinaryMemo join_memo_;
  bool bottom_absorbing_ = false;
};

// Roles r with r * r = r, with the tilde join as their binary join.
class IdempotentSubquantale {
 public:
  explicit IdempotentSubquantale(const QuantaleOps& ops);

  const QuantaleOps& parent() const { return *ops_; }
  const std::vector<RoleId>& elements() const { return elements_; }
  bool contains(RoleId r) const { return member_[r.index()]; }
  RoleId tilde_join(RoleId a, RoleId b) const { return ops_->tilde_join(a, b); }

 private:
  const QuantaleOps* ops_;
  std::vector<RoleId> elements_;
  std::vector<bool> member_;
};

// True iff every role equals the join of the idempotent roles below it.
bool is_join_idempotent(const QuantaleOps& ops);

struct LawResult {
  std::string law;
  bool holds = true;
  std::vector<RoleId> counterexample;  // the offending arguments
};

struct LawReport {
  std::vector<LawResult> laws;
  bool sampled = false;
  std::size_t cases = 0;  // argument tuples examined per law
  bool ok() const {
    for (const auto& l : laws)
      if (!l.holds) return false;
    return true;
  }
  const LawResult* first_failure() const {
    for (const auto& l : laws)
      if (!l.holds) return &l;
    return nullptr;
  }
};

struct LawOptions {
  std::size_t exhaustive_limit = 64;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

// Girard-quantale laws over any algebra exposing size(), unit(), dualizer(),
// leq, tensor, join, meet and neg on RoleId. Exhaustive over all triples up to
// `exhaustive_limit` roles, seeded samples above.
template <class Algebra>
LawReport check_gq_laws(const Algebra& q, const LawOptions& opt = {}) {
  const std::size_t n = q.size();
  LawReport report;
  report.sampled = n > opt.exhaustive_limit;
  enum Law { assoc, comm, unit, distrib, involution, de_morgan, residual, join_assoc, join_comm, join_idem, kLaws };
  static constexpr std::array<const char*, kLaws> names = {
      "tensor associative",    "tensor commutative",  "tensor unit",
      "tensor distributes over join", "negation involutive", "meet De Morgan",
      "dualizing residual",    "join associative",    "join commutative",
      "join idempotent"};
  for (auto* name : names) report.laws.push_back({name, true, {}});

  auto fail = [&](Law law, std::vector<RoleId> args) {
    auto& l = report.laws[law];
    if (l.holds) {
      l.holds = false;
      l.counterexample = std::move(args);
    }
  };
  auto check = [&](RoleId a, RoleId b, RoleId c) {
    if (q.tensor(q.tensor(a, b), c) != q.tensor(a, q.tensor(b, c))) fail(assoc, {a, b, c});
    if (q.tensor(a, b) != q.tensor(b, a)) fail(comm, {a, b});
    if (q.tensor(q.unit(), a) != a) fail(unit, {a});
    if (q.tensor(a, q.join(b, c)) != q.join(q.tensor(a, b), q.tensor(a, c))) fail(distrib, {a, b, c});
    if (q.neg(q.neg(a)) != a) fail(involution, {a});
    if (q.meet(a, b) != q.neg(q.join(q.neg(a), q.neg(b)))) fail(de_morgan, {a, b});
    if (q.leq(q.tensor(a, b), q.dualizer()) != q.leq(b, q.neg(a))) fail(residual, {a, b});
    if (q.join(q.join(a, b), c) != q.join(a, q.join(b, c))) fail(join_assoc, {a, b, c});
    if (q.join(a, b) != q.join(b, a)) fail(join_comm, {a, b});
    if (q.join(a, a) != a) fail(join_idem, {a});
  };

  if (!report.sampled) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          check(RoleId{static_cast<std::int32_t>(i)}, RoleId{static_cast<std::int32_t>(j)},
                RoleId{static_cast<std::int32_t>(k)});
          ++report.cases;
        }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::int32_t> pick(0, static_cast<std::int32_t>(n) - 1);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      check(RoleId{pick(rng)}, RoleId{pick(rng)}, RoleId{pick(rng)});
      ++report.cases;
    }
  }
  return report;
}

}  // namespace roleforge
