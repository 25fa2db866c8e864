#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cogarith/activation.hpp"
#include "cogarith/fact_library.hpp"
#include "cogarith/solver.hpp"

namespace cogarith {

/// Everything an experiment run depends on. Each run writes a manifest
/// echoing these values so its outputs can be regenerated from the manifest
/// alone.
struct ExperimentConfig {
    std::uint64_t seed = 42;
    int trials = 10000;
    double learning_factor = 0.5;
    double rt_min_ms = 700.0;
    double rt_max_ms = 1400.0;
    CostParams costs{};
    StrategyPolicy policy{};
    std::filesystem::path output_dir = ".";

    void validate() const;
};

struct SweepSpec {
    std::int64_t n_start = 19950;
    std::int64_t n_end = 20000;
    std::int64_t addend = 679;

    void validate() const; // n_start <= n_end
};

/// Millisecond RT tables for all operators. Add/Sub/Mul matrices are learned
/// with seeds seed+0, seed+1, seed+2.
RtTables build_rt_tables(const ExperimentConfig& config);

/// Default fact library under this configuration.
FactLibrary build_library(const ExperimentConfig& config);

/// Multiplication-table learning, normalized RT heatmap -> problem_size.csv.
RTMatrix run_problem_size(const ExperimentConfig& config);

struct AblationResult {
    Grid without_ablation{}; // ms per single-digit addition (a,b)
    Grid with_ablation{};
};

/// All 100 single-digit additions with the full and the novice-ablated
/// library (strategies off) -> ablation_without.csv, ablation_with.csv.
AblationResult run_ablation(const ExperimentConfig& config);

struct StrategyPoint {
    std::int64_t n = 0;
    double rt_direct_ms = 0.0;
    double rt_fast_addition_ms = 0.0; // transform forced on the swept operand
    double rt_selected_ms = 0.0;      // plan comparison under config.policy
    bool fast_addition_selected = false;
};

/// n + addend over the sweep -> strategy.csv with columns
/// n,rt_direct_ms,rt_fast_addition_ms,rt_selected_ms.
std::vector<StrategyPoint> run_strategy(const ExperimentConfig& config, const SweepSpec& sweep);

/// Heatmap CSV: header `i\j,0,...,9`, then one row per first operand with
/// 6-decimal cells. \n line endings.
void write_grid_csv(const Grid& grid, const std::filesystem::path& path);

Grid read_grid_csv(const std::filesystem::path& path);

} // namespace cogarith
