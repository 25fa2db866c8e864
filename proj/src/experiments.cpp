#include "cogarith/experiments.hpp"

#include <fstream>
#include <limits>

#include <json.hpp>

#include "cogarith/error.hpp"
#include "text_util.hpp"

namespace cogarith {

namespace {

using nlohmann::json;

json costs_json(const CostParams& c) {
    return {{"count_step_ms", c.count_step_ms}, {"carry_ms", c.carry_ms},
            {"borrow_ms", c.borrow_ms},         {"column_overhead_ms", c.column_overhead_ms},
            {"transform_ms", c.transform_ms},   {"shift_ms", c.shift_ms}};
}

json policy_json(const StrategyPolicy& p) {
    return {{"fast_addition", p.fast_addition},
            {"fast_addition_threshold", p.fast_addition_threshold},
            {"divide_by_5", p.divide_by_5}};
}

json base_manifest(const ExperimentConfig& cfg, const std::string& experiment) {
    json m;
    m["experiment"] = experiment;
    m["seed"] = cfg.seed;
    m["trials"] = cfg.trials;
    m["learning_factor"] = cfg.learning_factor;
    m["rt_min_ms"] = cfg.rt_min_ms;
    m["rt_max_ms"] = cfg.rt_max_ms;
    m["costs"] = costs_json(cfg.costs);
    m["policy"] = policy_json(cfg.policy);
    m["rng"] = {{"engine", "std::mt19937_64"},
                {"digit_draw", "engine() % 10"},
                {"draw_order", "table_index then table_extent"},
                {"table_seeds", {{"add", cfg.seed}, {"sub", cfg.seed + 1}, {"mul", cfg.seed + 2}}}};
    return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io_failure, "cannot write " + path.string());
    out << text;
    if (!out) raise(Errc::io_failure, "short write to " + path.string());
}

void write_manifest(const ExperimentConfig& cfg, json manifest, const std::string& name) {
    write_text(cfg.output_dir / name, manifest.dump(2) + "\n");
}

void ensure_output_dir(const ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec && !std::filesystem::is_directory(cfg.output_dir))
        raise(Errc::io_failure, "cannot create " + cfg.output_dir.string());
}

} // namespace

void ExperimentConfig::validate() const {
    LearningConfig{trials, learning_factor, seed}.validate();
    if (!(rt_min_ms < rt_max_ms)) raise(Errc::bad_range, "rt_min_ms must be < rt_max_ms");
    costs.validate();
    if (policy.fast_addition_threshold < 1)
        raise(Errc::bad_range, "fast_addition_threshold must be >= 1");
}

void SweepSpec::validate() const {
    if (n_start > n_end) raise(Errc::bad_range, "sweep n_start must be <= n_end");
    if (n_start < 0 || addend < 0) raise(Errc::bad_range, "sweep operands must be non-negative");
}

RtTables build_rt_tables(const ExperimentConfig& config) {
    config.validate();
    auto table = [&](Operator op, std::uint64_t seed) {
        const ActivationMatrix m =
            simulate_learning({config.trials, config.learning_factor, seed}, op);
        return rescale_rt(activation_to_rt(m), config.rt_min_ms, config.rt_max_ms);
    };
    RtTables tables;
    tables.add = table(Operator::add, config.seed);
    tables.sub = table(Operator::sub, config.seed + 1);
    tables.mul = table(Operator::mul, config.seed + 2);
    return tables;
}

FactLibrary build_library(const ExperimentConfig& config) {
    return FactLibrary::build_default(build_rt_tables(config));
}

void write_grid_csv(const Grid& grid, const std::filesystem::path& path) {
    std::string out = "i\\j";
    for (int j = 0; j < kTableSize; ++j) {
        out += ',';
        out += std::to_string(j);
    }
    out += '\n';
    for (int i = 0; i < kTableSize; ++i) {
        out += std::to_string(i);
        for (int j = 0; j < kTableSize; ++j) {
            out += ',';
            out += detail::fixed6(grid[i][j]);
        }
        out += '\n';
    }
    write_text(path, out);
}

Grid read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_failure, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) raise(Errc::malformed_row, path.string() + ": empty file");
    Grid grid{};
    for (int i = 0; i < kTableSize; ++i) {
        if (!std::getline(in, line))
            raise(Errc::malformed_row, path.string() + ": expected 10 data rows");
        std::size_t pos = line.find(',');
        if (pos == std::string::npos)
            raise(Errc::malformed_row, path.string() + " row " + std::to_string(i + 2));
        for (int j = 0; j < kTableSize; ++j) {
            const std::size_t next = line.find(',', pos + 1);
            const std::string field = line.substr(pos + 1, next == std::string::npos
                                                               ? std::string::npos
                                                               : next - pos - 1);
            try {
                grid[i][j] = std::stod(field);
            } catch (const std::exception&) {
                raise(Errc::malformed_row, path.string() + " row " + std::to_string(i + 2) +
                                               " column " + std::to_string(j + 2));
            }
            pos = next;
        }
    }
    return grid;
}

RTMatrix run_problem_size(const ExperimentConfig& config) {
    config.validate();
    ensure_output_dir(config);
    const ActivationMatrix activation =
        simulate_learning({config.trials, config.learning_factor, config.seed}, Operator::mul);
    const RTMatrix rt = activation_to_rt(activation);
    write_grid_csv(rt.cells, config.output_dir / "problem_size.csv");

    json m = base_manifest(config, "problem-size");
    m["rng"]["table_seeds"] = {{"mul", config.seed}};
    m["outputs"] = {"problem_size.csv"};
    m["scale"] = "normalized01";
    write_manifest(config, m, "problem_size_manifest.json");
    return rt;
}

AblationResult run_ablation(const ExperimentConfig& config) {
    config.validate();
    ensure_output_dir(config);
    const FactLibrary full = build_library(config);
    const FactLibrary ablated = full.ablate(AblationMask::novice_default());

    // Retrieval vs counting is the point here; strategies stay off.
    const StrategyPolicy off = StrategyPolicy::none();
    AblationResult result;
    for (int a = 0; a <= 9; ++a) {
        for (int b = 0; b <= 9; ++b) {
            const Problem p{a, Operator::add, b};
            result.without_ablation[a][b] = solve(p, full, off, config.costs).total_rt_ms;
            result.with_ablation[a][b] = solve(p, ablated, off, config.costs).total_rt_ms;
        }
    }
    write_grid_csv(result.without_ablation, config.output_dir / "ablation_without.csv");
    write_grid_csv(result.with_ablation, config.output_dir / "ablation_with.csv");

    json m = base_manifest(config, "ablation");
    m["policy"] = policy_json(off);
    m["ablation_mask"] = "add facts with both operands in 5..9";
    m["outputs"] = {"ablation_without.csv", "ablation_with.csv"};
    m["scale"] = "milliseconds";
    write_manifest(config, m, "ablation_manifest.json");
    return result;
}

std::vector<StrategyPoint> run_strategy(const ExperimentConfig& config, const SweepSpec& sweep) {
    config.validate();
    sweep.validate();
    ensure_output_dir(config);
    const FactLibrary lib = build_library(config);

    StrategyPolicy selection = config.policy;
    selection.fast_addition = true;

    std::vector<StrategyPoint> points;
    points.reserve(static_cast<std::size_t>(sweep.n_end - sweep.n_start + 1));
    std::string csv = "n,rt_direct_ms,rt_fast_addition_ms,rt_selected_ms\n";
    for (std::int64_t n = sweep.n_start; n <= sweep.n_end; ++n) {
        const Problem p{n, Operator::add, sweep.addend};
        StrategyPoint pt;
        pt.n = n;
        pt.rt_direct_ms = direct_plan(p, lib, config.costs).total_rt_ms;
        // Forced mode rounds the swept operand whenever structurally possible.
        const auto forced = fast_addition_plan(p, lib, config.costs,
                                               std::numeric_limits<std::int64_t>::max() / 2, 0);
        pt.rt_fast_addition_ms = forced ? forced->total_rt_ms : pt.rt_direct_ms;
        const SolutionTrace selected = solve(p, lib, selection, config.costs);
        pt.rt_selected_ms = selected.total_rt_ms;
        pt.fast_addition_selected = selected.plan == PlanKind::fast_addition;
        points.push_back(pt);

        csv += std::to_string(n);
        csv += ',';
        csv += detail::fixed6(pt.rt_direct_ms);
        csv += ',';
        csv += detail::fixed6(pt.rt_fast_addition_ms);
        csv += ',';
        csv += detail::fixed6(pt.rt_selected_ms);
        csv += '\n';
    }
    write_text(config.output_dir / "strategy.csv", csv);

    json m = base_manifest(config, "strategy");
    m["policy"] = policy_json(selection);
    m["sweep"] = {{"n_start", sweep.n_start}, {"n_end", sweep.n_end}, {"addend", sweep.addend}};
    m["outputs"] = {"strategy.csv"};
    write_manifest(config, m, "strategy_manifest.json");
    return points;
}

} // namespace cogarith
