#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogarith/fact_library.hpp"
#include "cogarith/problem.hpp"

namespace cogarith {

/// Per-step time costs in milliseconds. The defaults are model parameters,
/// not measured human constants.
struct CostParams {
    double count_step_ms = 400.0;
    double carry_ms = 150.0;
    double borrow_ms = 150.0;
    double column_overhead_ms = 50.0;
    double transform_ms = 100.0;
    double shift_ms = 50.0;

    void validate() const;
};

struct StrategyPolicy {
    bool fast_addition = true;
    /// Max distance from an operand to its round number for the rewrite to
    /// be considered.
    std::int64_t fast_addition_threshold = 9;
    bool divide_by_5 = true;

    static StrategyPolicy none() { return {false, 9, false}; }
};

enum class StepKind { retrieve, carry, borrow, count, transform, shift, compose };

std::string_view step_kind_name(StepKind kind);

struct Step {
    StepKind kind = StepKind::retrieve;
    std::string description;
    double rt_ms = 0.0;
};

enum class PlanKind { direct, fast_addition, divide_by_five };

std::string_view plan_kind_name(PlanKind kind);

struct SolutionTrace {
    std::int64_t value = 0;
    std::int64_t remainder = 0; // Div only, 0 otherwise
    double total_rt_ms = 0.0;   // always the sum of step rts
    std::vector<Step> steps;
    PlanKind plan = PlanKind::direct;
};

/// Solves via retrieval, decomposition or counting; builds every applicable
/// strategy plan and returns the cheapest, ties going to the direct plan.
/// Throws Error(division_by_zero) and Error(negative_result).
SolutionTrace solve(const Problem& problem, const FactLibrary& library,
                    const StrategyPolicy& policy, const CostParams& costs);

/// The retrieval/decomposition/counting plan with no strategy applied.
SolutionTrace direct_plan(const Problem& problem, const FactLibrary& library,
                          const CostParams& costs);

// Decomposition building blocks. solve() dispatches to these; they are
// exposed so traces of individual procedures can be inspected directly.
SolutionTrace add_multidigit(std::int64_t a, std::int64_t b, const FactLibrary& library,
                             const CostParams& costs);
SolutionTrace sub_multidigit(std::int64_t a, std::int64_t b, const FactLibrary& library,
                             const CostParams& costs);
SolutionTrace mul_multidigit(std::int64_t a, std::int64_t b, const FactLibrary& library,
                             const CostParams& costs);
SolutionTrace div_long(std::int64_t a, std::int64_t b, const FactLibrary& library,
                       const CostParams& costs);

/// Minimum counting: start at max(a,b), increment min(a,b) times.
SolutionTrace count_min(std::int64_t a, std::int64_t b, const CostParams& costs);

/// One fast-addition rewrite: `rounded` is the round number replacing the
/// target operand, `compensated` the other operand after absorbing the
/// distance.
struct FastAdditionRewrite {
    std::int64_t rounded = 0;
    std::int64_t compensated = 0;
    std::int64_t distance = 0;
    int target = 0; // 0 = lhs rounded, 1 = rhs rounded
};

/// Round numbers are single-significant-digit multiples of powers of ten
/// (10, 500, 20000, ...). Applicable iff 0 < distance <= threshold and the
/// other operand absorbs the distance without going negative. When both
/// operands qualify, prefers the larger round number.
std::optional<FastAdditionRewrite> fast_addition_transform(const Problem& problem,
                                                           std::int64_t threshold);

/// Rewrite targeting one specific operand; used by the strategy sweep.
std::optional<FastAdditionRewrite> fast_addition_transform(const Problem& problem,
                                                           std::int64_t threshold, int target);

/// a/5 -> (2a)/10, applicable iff rhs == 5 and 5 divides lhs.
std::optional<Problem> divide_by_5_transform(const Problem& problem);

/// Full costed plan for one fast-addition rewrite target, or nullopt when
/// inapplicable.
std::optional<SolutionTrace> fast_addition_plan(const Problem& problem,
                                                const FactLibrary& library,
                                                const CostParams& costs,
                                                std::int64_t threshold, int target);

std::optional<SolutionTrace> divide_by_5_plan(const Problem& problem,
                                              const FactLibrary& library,
                                              const CostParams& costs);

/// Human-readable step table.
std::string trace_to_text(const SolutionTrace& trace);

/// Machine form, `step_index,kind,description,rt_ms` with a header row.
std::string trace_to_csv(const SolutionTrace& trace);

} // namespace cogarith
