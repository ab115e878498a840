#include "roleforge/quantale.hpp"

namespace roleforge {

namespace detail {

BinaryMemo::BinaryMemo(std::size_t n) : n_(n) {
  if (n <= kDenseLimit) {
    dense_ = std::vector<std::atomic<std::int32_t>>(n * n);
    for (auto& c : dense_) c.store(-1, std::memory_order_relaxed);
  }
}

}  // namespace detail

QuantaleOps::QuantaleOps(std::shared_ptr<const RoleLattice> lattice)
    : lattice_(std::move(lattice)), tensor_memo_(lattice_->size()), join_memo_(lattice_->size()) {
  const auto& sp = space();
  neg_.reserve(size());
  for (const auto& r : lattice_->roles()) neg_.push_back(lattice_->id_of(rsr(sp, r)));
  bottom_absorbing_ = true;
  for (std::size_t i = 0; i < size() && bottom_absorbing_; ++i)
    bottom_absorbing_ = tensor(bottom(), RoleId{static_cast<std::int32_t>(i)}) == bottom();
}

RoleId QuantaleOps::close(const PositionSet& s) const { return lattice_->id_of(closure(space(), s)); }

RoleId QuantaleOps::tensor(RoleId a, RoleId b) const {
  if (b < a) std::swap(a, b);
  return tensor_memo_.get(a, b, [&] {
    const auto& sp = space();
    const PositionSet& ra = lattice_->role(a);
    const PositionSet& rb = lattice_->role(b);
    PositionSet sums = sp.empty_set();
    ra.for_each([&](std::size_t i) {
      rb.for_each([&](std::size_t j) {
        if (auto k = sp.sum_index(i, j)) sums.set(*k);
      });
    });
    return close(sums);
  });
}

RoleId QuantaleOps::join(RoleId a, RoleId b) const {
  if (b < a) std::swap(a, b);
  return join_memo_.get(a, b, [&] { return close(lattice_->role(a) | lattice_->role(b)); });
}

RoleId QuantaleOps::meet(RoleId a, RoleId b) const {
  return lattice_->id_of(lattice_->role(a) & lattice_->role(b));
}

RoleId QuantaleOps::tensor_all(std::span<const RoleId> rs) const {
  RoleId acc = unit();
  for (auto r : rs) acc = tensor(acc, r);
  return acc;
}

RoleId QuantaleOps::tilde_join(RoleId a, RoleId b) const {
  if (!is_idempotent(a) || !is_idempotent(b))
    throw DomainError("tilde join needs idempotent arguments");
  return join(join(a, b), tensor(a, b));
}

IdempotentSubquantale::IdempotentSubquantale(const QuantaleOps& ops)
    : ops_(&ops), member_(ops.size(), false) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    RoleId r{static_cast<std::int32_t>(i)};
    if (ops.is_idempotent(r)) {
      elements_.push_back(r);
      member_[i] = true;
    }
  }
}

bool is_join_idempotent(const QuantaleOps& ops) {
  IdempotentSubquantale idem(ops);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    RoleId r{static_cast<std::int32_t>(i)};
    PositionSet below = ops.space().empty_set();
    for (auto e : idem.elements())
      if (ops.leq(e, r)) below |= ops.lattice().role(e);
    if (ops.close(below) != r) return false;
  }
  return true;
}

}  // namespace roleforge
