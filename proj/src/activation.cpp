#include "cogarith/activation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cogarith/error.hpp"

namespace cogarith {

void LearningConfig::validate() const {
    if (trials < 0) raise(Errc::bad_range, "trials must be >= 0, got " + std::to_string(trials));
    if (!(learning_factor >= 0.0 && learning_factor <= 1.0))
        raise(Errc::bad_range, "learning_factor must be in [0,1], got " + std::to_string(learning_factor));
}

double ActivationMatrix::total() const {
    double sum = 0.0;
    for (const auto& row : cells)
        for (double v : row) sum += v;
    return sum;
}

TrialDraw draw_trial(LearningRng& rng) {
    TrialDraw d;
    d.table_index = static_cast<int>(rng() % kTableSize);
    d.table_extent = static_cast<int>(rng() % kTableSize);
    return d;
}

void apply_trial(ActivationMatrix& matrix, const TrialDraw& trial, double learning_factor) {
    const int i = trial.table_index;
    const int e = trial.table_extent;
    for (int j = 0; j <= e; ++j) matrix.cells[i][j] += 1.0;
    for (int j = 0; j <= e; ++j) matrix.cells[j][i] += learning_factor;
}

ActivationMatrix simulate_learning(const LearningConfig& config, Operator op) {
    config.validate();
    ActivationMatrix matrix;
    matrix.config = config;
    matrix.op = op;
    LearningRng rng(config.seed);
    for (int t = 0; t < config.trials; ++t) {
        apply_trial(matrix, draw_trial(rng), config.learning_factor);
    }
    return matrix;
}

double expected_activation(int i, int j, double learning_factor) {
    return ((kTableSize - j) + learning_factor * (kTableSize - i)) /
           static_cast<double>(kTableSize * kTableSize);
}

RTMatrix activation_to_rt(const ActivationMatrix& matrix) {
    RTMatrix rt;
    rt.scale = RtScale::normalized01;

    // Reciprocals; zero-activation cells get patched to the max afterwards.
    double max_raw = 0.0;
    bool any_positive = false;
    for (int i = 0; i < kTableSize; ++i) {
        for (int j = 0; j < kTableSize; ++j) {
            const double a = matrix.cells[i][j];
            if (a > 0.0) {
                rt.cells[i][j] = 1.0 / a;
                max_raw = std::max(max_raw, rt.cells[i][j]);
                any_positive = true;
            } else {
                rt.cells[i][j] = std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
    if (any_positive) {
        for (auto& row : rt.cells)
            for (double& v : row)
                if (std::isnan(v)) v = max_raw;
    } else {
        for (auto& row : rt.cells) row.fill(0.0);
    }

    double lo = rt.cells[0][0];
    double hi = rt.cells[0][0];
    for (const auto& row : rt.cells)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }

    if (!any_positive || lo == hi) {
        for (auto& row : rt.cells) row.fill(0.0);
        rt.degenerate = true;
        return rt;
    }

    const double span = hi - lo;
    for (auto& row : rt.cells)
        for (double& v : row) v = (v - lo) / span;
    return rt;
}

RTMatrix rescale_rt(const RTMatrix& normalized, double rt_min_ms, double rt_max_ms) {
    if (normalized.scale != RtScale::normalized01)
        throw std::logic_error("rescale_rt expects a normalized01 matrix");
    if (!(rt_min_ms < rt_max_ms))
        raise(Errc::bad_range, "rt_min_ms must be < rt_max_ms, got [" + std::to_string(rt_min_ms) +
                                   ", " + std::to_string(rt_max_ms) + "]");
    RTMatrix out;
    out.scale = RtScale::milliseconds;
    out.degenerate = normalized.degenerate;
    for (int i = 0; i < kTableSize; ++i) {
        for (int j = 0; j < kTableSize; ++j) {
            const double ms = rt_min_ms + normalized.cells[i][j] * (rt_max_ms - rt_min_ms);
            // 6-decimal quantization keeps CSV round-trips exact.
            out.cells[i][j] = std::round(ms * 1e6) / 1e6;
        }
    }
    return out;
}

} // namespace cogarith
