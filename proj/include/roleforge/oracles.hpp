#pragma once

// Independent reference implementations for tests. None of these share code
// paths with the rsr engine, the quantale tables or the NMMS unfolder.

#include <cstdint>
#include <vector>

#include "roleforge/formula.hpp"
#include "roleforge/frame.hpp"
#include "roleforge/rsr.hpp"

namespace roleforge::oracles {

// Multi-succedent classical validity by truth tables over the atoms that
// occur in the sequent. Boolean connectives only; throws past 20 atoms.
bool classical_valid(const FormulaSequent& s);

struct MallOptions {
  unsigned max_connectives = 14;
};

// Cut-free MALL provability. The sequent is made one-sided, pushed to
// negation normal form and searched backwards; identity axioms apply only to
// a literal and its dual with nothing else in the context. Linear
// connectives only; throws DomainError above the connective bound.
bool mall_provable(const FormulaSequent& s, const MallOptions& opt = {});

// Literal scan over the window: p is kept iff p + a is incoherent for every
// a in `a`. Throws past 4096 window positions.
PositionSet rsr_naive(const Frame& f, const std::vector<Position>& window, const PositionSet& a);

// All closed sets obtained as rsr_naive of some subset of the window.
// Exponential; meant for windows of at most 16 positions.
std::vector<PositionSet> naive_roles(const Frame& f);

// For all A, B within the source window: A^bot within B^bot implies
// f(A)^bot within f(B)^bot, with both rsr taken by literal scans.
bool continuity_condition4(const FrameMorphism& m);

}  // namespace roleforge::oracles
