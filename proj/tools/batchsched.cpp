// Command-line front end. Exit status: 0 success, 1 schedule fails validation,
// 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "batchsched/bench.hpp"
#include "batchsched/dispatch.hpp"
#include "batchsched/errors.hpp"
#include "batchsched/io.hpp"
#include "batchsched/milp.hpp"

namespace {

using namespace bsched;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

Instance load_instance(const std::string& path) {
    try {
        return io::parse_instance(read_all(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct SolveArgs {
    std::string instance = "-";
    std::string algorithm = "auto";
    std::string output;
    int iters = heuristics::kDefaultIterations;
    std::uint64_t seed = 0;
};

int run_solve(const SolveArgs& a) {
    const auto inst = load_instance(a.instance);
    heuristics::HeuristicConfig cfg;
    cfg.iterations = a.iters;
    cfg.seed = a.seed;
    const auto out = solve(a.algorithm, inst, cfg);
    if (a.algorithm == "auto") std::cerr << "auto: used " << out.algorithm << '\n';
    write_out(a.output, io::format_schedule(out.schedule, out.makespan));
    return kOk;
}

int run_validate(const std::string& instance_path, const std::string& schedule_path) {
    const auto inst = load_instance(instance_path);
    const auto parsed = io::parse_schedule(read_all(schedule_path));
    auto report = validate(parsed.schedule, inst);
    if (report.ok() && parsed.cmax) {
        const auto actual = makespan(parsed.schedule, inst);
        if (actual != *parsed.cmax) {
            report.violations.push_back("stated Cmax " + std::to_string(*parsed.cmax) + " differs from evaluated " +
                                        std::to_string(actual));
        }
    }
    if (!report.ok()) {
        for (const auto& v : report.violations) std::cout << "violation: " << v << '\n';
        return kInvalid;
    }
    std::cout << "valid Cmax " << makespan(parsed.schedule, inst) << '\n';
    return kOk;
}

int run_generate(const bench::GenSpec& spec, const std::string& mode, const std::string& output) {
    bench::GenSpec s = spec;
    s.mode = mode == "sum" ? BatchMode::Sum : BatchMode::Max;
    write_out(output, io::format_instance(bench::generate_instance(s)));
    return kOk;
}

int run_export(const std::string& instance_path, const std::string& output) {
    const auto inst = load_instance(instance_path);
    write_out(output, milp::export_lp(milp::build_model(inst)));
    return kOk;
}

int run_bench(const std::string& config_path, const std::string& output) {
    const auto cfg = bench::parse_config(read_all(config_path));
    heuristics::HeuristicConfig heur;
    heur.iterations = cfg.iters;
    heur.seed = cfg.seed;
    const auto cells = cfg.cells();
    const auto report = bench::run_experiment(cells, cfg.methods, cfg.instances_per_cell, heur);
    for (const auto& row : report.rows) {
        if (row.skipped > 0) {
            std::cerr << "n=" << row.n << " m=" << row.m << " d=" << row.density_pct << ' ' << row.method << ": skipped "
                      << row.skipped << " inapplicable instances\n";
        }
    }
    for (std::size_t i = 0; i < report.rows.size(); i += cfg.methods.size()) {
        const auto& row = report.rows[i];
        std::cerr << "n=" << row.n << " m=" << row.m << " d=" << row.density_pct << ": best-known values from "
                  << row.bs_source << '\n';
    }
    write_out(output, bench::to_csv(report));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch scheduling with compatibility graphs: capacity-2 batches, setup times, max/sum batch modes"};
    app.require_subcommand(1);

    std::string algorithms;
    for (auto name : algorithm_names()) algorithms += (algorithms.empty() ? "" : ", ") + std::string(name);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print the schedule");
    solve_cmd->add_option("instance", solve_args.instance, "Instance file, '-' for stdin")->capture_default_str();
    solve_cmd->add_option("-a,--algorithm", solve_args.algorithm, "One of: " + algorithms)
        ->capture_default_str()
        ->check(CLI::IsMember(std::vector<std::string>(algorithm_names().begin(), algorithm_names().end())));
    solve_cmd->add_option("--iters", solve_args.iters, "Heuristic iterations (h1, h2, auto)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", solve_args.seed, "Heuristic random seed")->capture_default_str();
    solve_cmd->add_option("-o,--output", solve_args.output, "Schedule output file (default stdout)");

    std::string val_instance, val_schedule;
    auto* validate_cmd = app.add_subcommand("validate", "Check a schedule against an instance; exit 1 if infeasible");
    validate_cmd->add_option("instance", val_instance, "Instance file")->required();
    validate_cmd->add_option("schedule", val_schedule, "Schedule file, '-' for stdin")->required();

    bench::GenSpec gen;
    std::string gen_mode = "max";
    std::string gen_out;
    auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");
    generate_cmd->add_option("--n", gen.n, "Number of jobs")->capture_default_str()->check(CLI::PositiveNumber);
    generate_cmd->add_option("--m", gen.m, "Number of machines")->capture_default_str()->check(CLI::PositiveNumber);
    generate_cmd->add_option("--density", gen.density_pct, "Edge density in percent, in (0, 100]")->capture_default_str();
    generate_cmd->add_option("--p-min", gen.p_min, "Smallest processing time")->capture_default_str();
    generate_cmd->add_option("--p-max", gen.p_max, "Largest processing time")->capture_default_str();
    generate_cmd->add_option("--s-set", gen.s_choices, "Setup values to draw from")->capture_default_str()->delimiter(',');
    generate_cmd->add_option("--mode", gen_mode, "Batch mode")->capture_default_str()->check(CLI::IsMember({"max", "sum"}));
    generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

    std::string lp_instance, lp_out;
    auto* export_cmd = app.add_subcommand("export-lp", "Write the MILP model of a max-batch instance in LP format");
    export_cmd->add_option("instance", lp_instance, "Instance file, '-' for stdin")->required();
    export_cmd->add_option("-o,--output", lp_out, "LP output file (default stdout)");

    std::string bench_config, bench_out;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Run a benchmark described by a key = value config file and print CSV.\n"
                 "Keys: sizes, machines, densities, p_min, p_max, s_set, iters, seed, methods,\n"
                 "instances_per_cell, mode. Lists are comma separated; '#' starts a comment.");
    bench_cmd->add_option("--config", bench_config, "Config file")->required();
    bench_cmd->add_option("-o,--output", bench_out, "CSV output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve_args);
        if (*validate_cmd) return run_validate(val_instance, val_schedule);
        if (*generate_cmd) return run_generate(gen, gen_mode, gen_out);
        if (*export_cmd) return run_export(lp_instance, lp_out);
        if (*bench_cmd) return run_bench(bench_config, bench_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const WrongSubproblem& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const OracleLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InfeasibleSchedule& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kUsage;
}
