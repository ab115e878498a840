#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "roleforge/formula.hpp"
#include "roleforge/frame.hpp"

namespace roleforge {

enum class Variant { contractive, noncontractive };

std::string_view variant_name(Variant v);

struct Target {
  bool rhs = false;
  std::size_t index = 0;
};

// Chooses which complex formula to reduce. Called only on sequents holding
// at least one complex formula.
using ReductionPolicy = std::function<Target(const FormulaSequent&)>;

// First complex formula of the lhs, else of the rhs.
Target leftmost_outermost(const FormulaSequent& s);

struct TraceNode {
  FormulaSequent sequent;
  std::string rule;  // "axiom" at leaves
  bool verdict = false;
  std::vector<TraceNode> children;
};

// Bidirectional NMMS unfolding down to atomic incoherence tests. Contractive
// needs a set-mode frame, non-contractive a multiset frame; implication is
// read as ~A \/ B. Throws DomainError on a mode mismatch, on connectives
// outside ~ /\ \/ ->, and on unknown atoms.
bool decide(const Frame& f, const FormulaSequent& s, Variant v,
            const ReductionPolicy& policy = leftmost_outermost);
TraceNode reduction_trace(const Frame& f, const FormulaSequent& s, Variant v,
                          const ReductionPolicy& policy = leftmost_outermost);

std::string format_trace(const TraceNode& t);

}  // namespace roleforge
