#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "cogarith/problem.hpp"

namespace cogarith {

inline constexpr int kTableSize = 10;

using Grid = std::array<std::array<double, kTableSize>, kTableSize>;

/// Deterministic learning RNG. Digits are drawn as engine() % 10, table index
/// first, then table extent; this mapping is part of the reproducibility
/// contract and is recorded in experiment manifests.
using LearningRng = std::mt19937_64;

/// One rehearsal of a table: memorize (index x 0) .. (index x extent).
struct TrialDraw {
    int table_index = 0;
    int table_extent = 0;
};

struct LearningConfig {
    int trials = 10000;
    double learning_factor = 0.5;
    std::uint64_t seed = 42;

    /// Throws Error(bad_range) unless trials >= 0 and learning_factor in [0,1].
    void validate() const;
};

/// 10x10 accumulated activation strengths for one operator's fact table.
struct ActivationMatrix {
    Grid cells{};
    LearningConfig config{};
    Operator op = Operator::mul;

    double total() const;
};

enum class RtScale { normalized01, milliseconds };

struct RTMatrix {
    Grid cells{};
    RtScale scale = RtScale::normalized01;
    /// Set when every activation cell was identical, leaving min-max
    /// normalization undefined; cells are then all zero.
    bool degenerate = false;
};

TrialDraw draw_trial(LearningRng& rng);

/// Adds 1.0 to cells (i,0)..(i,e) and learning_factor to (0,i)..(e,i).
/// The diagonal cell (i,i) is in both lists when e >= i and receives both
/// increments.
void apply_trial(ActivationMatrix& matrix, const TrialDraw& trial, double learning_factor);

ActivationMatrix simulate_learning(const LearningConfig& config, Operator op = Operator::mul);

/// Exact per-trial expected increment of cell (i,j):
/// ((10-j) + learning_factor*(10-i)) / 100.
double expected_activation(int i, int j, double learning_factor);

/// Reciprocal of activation, min-max normalized to [0,1]. Cells with zero
/// activation map to the largest reciprocal present before normalizing.
RTMatrix activation_to_rt(const ActivationMatrix& matrix);

/// Affine map of a normalized01 matrix into [rt_min_ms, rt_max_ms]. Output
/// cells are rounded to 6 decimals so CSV persistence is lossless.
/// Throws Error(bad_range) when rt_min_ms >= rt_max_ms.
RTMatrix rescale_rt(const RTMatrix& normalized, double rt_min_ms, double rt_max_ms);

} // namespace cogarith
