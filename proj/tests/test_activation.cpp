#include <doctest.h>

#include <cmath>
#include <vector>

#include "cogarith/activation.hpp"
#include "cogarith/error.hpp"

using namespace cogarith;

namespace {

// Exact per-trial variance of cell (i,j) under the trial process: the primary
// increment fires on {index==i, extent>=j}, the conjugate on
// {index==j, extent>=i}. For i==j both are the same event; otherwise they are
// mutually exclusive.
double per_trial_variance(int i, int j, double lf) {
    const double p1 = (10.0 - j) / 100.0;
    const double p2 = (10.0 - i) / 100.0;
    if (i == j) {
        const double p = p1;
        return (1.0 + lf) * (1.0 + lf) * p * (1.0 - p);
    }
    return p1 * (1.0 - p1) + lf * lf * p2 * (1.0 - p2) - 2.0 * lf * p1 * p2;
}

} // namespace

TEST_CASE("draw_trial stays in range and is seed-deterministic") {
    LearningRng rng(123);
    LearningRng rng2(123);
    for (int k = 0; k < 1000; ++k) {
        const TrialDraw a = draw_trial(rng);
        const TrialDraw b = draw_trial(rng2);
        CHECK(a.table_index >= 0);
        CHECK(a.table_index <= 9);
        CHECK(a.table_extent >= 0);
        CHECK(a.table_extent <= 9);
        CHECK(a.table_index == b.table_index);
        CHECK(a.table_extent == b.table_extent);
    }
}

TEST_CASE("draw_trial pairs are uniform over the 100 cells") {
    LearningRng rng(99);
    const int draws = 100000;
    std::array<std::array<int, 10>, 10> counts{};
    for (int k = 0; k < draws; ++k) {
        const TrialDraw d = draw_trial(rng);
        ++counts[d.table_index][d.table_extent];
    }
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double freq = counts[i][j] / static_cast<double>(draws);
            CHECK(freq == doctest::Approx(0.01).epsilon(0.3)); // 0.01 +/- 0.003
        }
}

TEST_CASE("apply_trial activates the table run and its conjugates") {
    ActivationMatrix m;
    apply_trial(m, {2, 5}, 0.5);
    for (int j = 0; j <= 5; ++j) {
        if (j == 2) continue;
        CHECK(m.cells[2][j] == 1.0);
        CHECK(m.cells[j][2] == 0.5);
    }
    CHECK(m.cells[2][2] == 1.5); // both lists contain the diagonal cell
    double sum = 0.0;
    for (const auto& row : m.cells)
        for (double v : row) sum += v;
    CHECK(sum == doctest::Approx(6 * 1.5));
    CHECK(m.cells[2][6] == 0.0);
    CHECK(m.cells[6][2] == 0.0);
}

TEST_CASE("apply_trial degenerate single-cell trial") {
    ActivationMatrix m;
    apply_trial(m, {0, 0}, 0.5);
    CHECK(m.cells[0][0] == 1.5);
    CHECK(m.total() == doctest::Approx(1.5));
}

TEST_CASE("apply_trial is additive") {
    ActivationMatrix once;
    apply_trial(once, {3, 7}, 0.25);
    ActivationMatrix twice;
    apply_trial(twice, {3, 7}, 0.25);
    apply_trial(twice, {3, 7}, 0.25);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) CHECK(twice.cells[i][j] == 2.0 * once.cells[i][j]);
}

TEST_CASE("simulate_learning basics") {
    CHECK(simulate_learning({0, 0.5, 1}).total() == 0.0);

    const ActivationMatrix m = simulate_learning({10000, 0.5, 42});
    // Closed-form expectations: 0.15 and 0.015 per trial.
    CHECK(m.cells[0][0] == doctest::Approx(1500.0).epsilon(0.10));
    CHECK(m.cells[9][9] == doctest::Approx(150.0).epsilon(0.20));

    const ActivationMatrix again = simulate_learning({10000, 0.5, 42});
    CHECK(m.cells == again.cells); // bit-identical for a fixed config
}

TEST_CASE("conservation: total activation equals sum over trials of (e+1)(1+lf)") {
    const LearningConfig cfg{537, 0.5, 2024};
    const ActivationMatrix m = simulate_learning(cfg);

    LearningRng rng(cfg.seed); // replay the same draw sequence
    double expected = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const TrialDraw d = draw_trial(rng);
        expected += (d.table_extent + 1) * (1.0 + cfg.learning_factor);
    }
    CHECK(m.total() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("expected_activation closed form") {
    CHECK(expected_activation(0, 0, 0.5) == doctest::Approx(0.15));
    CHECK(expected_activation(9, 9, 0.5) == doctest::Approx(0.015));
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(expected_activation(i, j, 0.0) == doctest::Approx((10.0 - j) / 100.0));

    // Strictly decreasing in both indices.
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 9; ++j) {
            CHECK(expected_activation(i, j, 0.5) > expected_activation(i, j + 1, 0.5));
            CHECK(expected_activation(j, i, 0.5) > expected_activation(j + 1, i, 0.5));
        }
}

TEST_CASE("simulated cells stay within 5 sigma of the closed form") {
    const int trials = 10000;
    const double lf = 0.5;
    const ActivationMatrix m = simulate_learning({trials, lf, 42});
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double mean = trials * expected_activation(i, j, lf);
            const double sigma = std::sqrt(trials * per_trial_variance(i, j, lf));
            CHECK(std::abs(m.cells[i][j] - mean) <= 5.0 * sigma);
        }
}

TEST_CASE("activation_to_rt normalizes reciprocals") {
    ActivationMatrix m;
    for (auto& row : m.cells) row.fill(2.0);
    m.cells[0][0] = 4.0;
    m.cells[9][9] = 1.0;
    const RTMatrix rt = activation_to_rt(m);
    CHECK_FALSE(rt.degenerate);
    CHECK(rt.cells[0][0] == doctest::Approx(0.0));
    CHECK(rt.cells[9][9] == doctest::Approx(1.0));
    CHECK(rt.cells[4][7] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("activation_to_rt inverts the activation ordering") {
    const ActivationMatrix m = simulate_learning({10000, 0.5, 7});
    const RTMatrix rt = activation_to_rt(m);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 0; k < 10; ++k)
                for (int l = 0; l < 10; ++l)
                    if (m.cells[i][j] > m.cells[k][l]) CHECK(rt.cells[i][j] < rt.cells[k][l]);
}

TEST_CASE("degenerate matrices come back flagged and zeroed") {
    ActivationMatrix flat;
    for (auto& row : flat.cells) row.fill(3.0);
    const RTMatrix rt = activation_to_rt(flat);
    CHECK(rt.degenerate);
    for (const auto& row : rt.cells)
        for (double v : row) CHECK(v == 0.0);

    ActivationMatrix zero;
    CHECK(activation_to_rt(zero).degenerate);
}

TEST_CASE("zero-activation cells map to the slowest observed rt") {
    ActivationMatrix m;
    for (auto& row : m.cells) row.fill(2.0);
    m.cells[5][5] = 0.0;
    m.cells[0][0] = 4.0;
    const RTMatrix rt = activation_to_rt(m);
    // raw: 0.25 everywhere... 0.5 for the bulk, patched max 0.5 for (5,5)
    CHECK(rt.cells[5][5] == doctest::Approx(1.0));
}

TEST_CASE("rescale_rt maps the unit interval onto [min,max]") {
    RTMatrix norm;
    norm.cells[0][0] = 0.0;
    norm.cells[0][1] = 1.0;
    norm.cells[0][2] = 0.5;
    const RTMatrix ms = rescale_rt(norm, 700.0, 1400.0);
    CHECK(ms.scale == RtScale::milliseconds);
    CHECK(ms.cells[0][0] == 700.0);
    CHECK(ms.cells[0][1] == 1400.0);
    CHECK(ms.cells[0][2] == 1050.0);

    CHECK_THROWS_AS(rescale_rt(norm, 1400.0, 700.0), Error);
    CHECK_THROWS_AS(rescale_rt(norm, 700.0, 700.0), Error);
}

TEST_CASE("bad learning configs are rejected") {
    CHECK_THROWS_AS(simulate_learning({-1, 0.5, 1}), Error);
    CHECK_THROWS_AS(simulate_learning({10, 1.5, 1}), Error);
    CHECK_THROWS_AS(simulate_learning({10, -0.1, 1}), Error);
}

TEST_CASE("row and column rt means grow with operand size (default seed)") {
    const RTMatrix rt = activation_to_rt(simulate_learning({10000, 0.5, 42}));
    std::vector<double> row_means(10, 0.0), col_means(10, 0.0);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            row_means[i] += rt.cells[i][j] / 10.0;
            col_means[j] += rt.cells[i][j] / 10.0;
        }
    for (int k = 0; k + 1 < 10; ++k) {
        CHECK(row_means[k] < row_means[k + 1]);
        CHECK(col_means[k] < col_means[k + 1]);
    }
}
