#include "mctp/mctp.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

    using namespace mctp;

    void apply_config_file(const std::string &path, SolverConfig &cfg) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config " + path);
        nlohmann::json doc;
        in >> doc;
        if (doc.contains("geni")) {
            const auto &g = doc.at("geni");
            if (g.contains("p")) cfg.geni.p = g.at("p").get<int>();
            if (g.contains("mode")) cfg.geni.mode = parse_geni_mode(g.at("mode").get<std::string>());
        }
        if (doc.contains("sector")) {
            const auto &s = doc.at("sector");
            if (s.contains("t")) cfg.sector_t = s.at("t").get<int>();
            if (s.contains("augment")) cfg.sector_augment = s.at("augment").get<bool>();
        }
        if (doc.contains("post")) cfg.post = parse_post_mode(doc.at("post").get<std::string>());
        if (doc.contains("balance")) cfg.balance = parse_balance_mode(doc.at("balance").get<std::string>());
        if (doc.contains("repair")) cfg.repair = doc.at("repair").get<bool>();
    }

    void write_json(const nlohmann::json &doc, const std::string &path) {
        if (path.empty() || path == "-") {
            std::cout << doc.dump(1) << '\n';
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << doc.dump(1) << '\n';
    }

    struct SolveArgs {
        std::string instance, heuristic = "route-first", out, config, post, balance, sector_augment, geni_mode;
        int m = -1, r = -1, sector_t = -1, geni_p = -1;
        std::uint64_t seed = 0;
        bool check = false;
    };

    int run_solve(const SolveArgs &a) {
        SolverConfig cfg;
        if (!a.config.empty()) apply_config_file(a.config, cfg);
        if (!a.post.empty()) cfg.post = parse_post_mode(a.post);
        if (!a.balance.empty()) cfg.balance = parse_balance_mode(a.balance);
        if (a.sector_t > 0) cfg.sector_t = a.sector_t;
        if (!a.sector_augment.empty()) cfg.sector_augment = a.sector_augment == "on";
        if (a.geni_p > 0) cfg.geni.p = a.geni_p;
        if (!a.geni_mode.empty()) cfg.geni.mode = parse_geni_mode(a.geni_mode);
        const HeuristicTag tag = parse_heuristic(a.heuristic);

        Instance raw = load_instance(a.instance);
        if (a.m > 0 || a.r >= 0) raw = raw.with_params(a.m > 0 ? a.m : raw.m(), a.r >= 0 ? a.r : raw.r());
        const Instance inst = preprocess(raw);

        RunResult res;
        try {
            res = run_heuristic(inst, tag, cfg);
        } catch (const NoSolution &e) {
            std::cerr << "no solution: " << e.what() << '\n';
            return 2;
        }
        auto doc = solution_to_json(res.best, inst, to_string(tag));
        doc["seed"] = a.seed;
        doc["wall_seconds"] = res.wall_seconds;
        doc["iterations"] = res.iterations;
        doc["skipped"] = res.skipped;
        doc["max_load_gap"] = max_load_gap(res.best);
        const auto report = check_feasible(res.best, inst);
        if (a.check) doc["feasibility"] = report_to_json(report);
        write_json(doc, a.out);
        std::cerr << to_string(tag) << ": cost " << res.best_cost << ", " << res.iterations << " iterations ("
                  << res.skipped << " skipped), " << res.wall_seconds << " s\n";
        if (a.check && !report.feasible()) {
            for (const auto &v : report.violations) std::cerr << "  (" << v.constraint << ") " << v.detail << '\n';
            return cfg.balance == BalanceMode::report && std::all_of(report.violations.begin(), report.violations.end(),
                                                                     [](const Violation &v) { return v.constraint == 7; })
                       ? 0
                       : 3;
        }
        return 0;
    }

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"m-CTP heuristics: instance generation, solving, benchmarking and plotting"};
    app.require_subcommand(1);

    // gen
    std::vector<std::string> gen_classes;
    int gen_count = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_dir = ".";
    auto *gen = app.add_subcommand("gen", "generate random instances");
    gen->add_option("--class", gen_classes, "instance class, e.g. 100-1")->required();
    gen->add_option("--count", gen_count, "instances per class")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "batch seed");
    gen->add_option("--out-dir", gen_dir, "output directory");

    // solve
    SolveArgs sa;
    auto *solve = app.add_subcommand("solve", "run one heuristic on an instance file");
    solve->add_option("--instance", sa.instance)->required()->check(CLI::ExistingFile);
    solve->add_option("--heuristic", sa.heuristic, "greedy | sweep | route-first | sector");
    solve->add_option("--m", sa.m, "override number of vehicles");
    solve->add_option("--r", sa.r, "override balance parameter");
    solve->add_option("--seed", sa.seed, "recorded in the output");
    solve->add_option("--post", sa.post, "paired | 2opt | multicover | both | none");
    solve->add_option("--sector-t", sa.sector_t, "number of sector rotations");
    solve->add_option("--sector-augment", sa.sector_augment)->check(CLI::IsMember({"on", "off"}));
    solve->add_option("--geni-p", sa.geni_p, "GENI neighbourhood size");
    solve->add_option("--geni-mode", sa.geni_mode)->check(CLI::IsMember({"full", "simple"}));
    solve->add_option("--balance", sa.balance)->check(CLI::IsMember({"enforce", "report"}));
    solve->add_option("--config", sa.config, "JSON config file")->check(CLI::ExistingFile);
    solve->add_flag("--check", sa.check, "attach the feasibility report");
    solve->add_option("--out", sa.out, "solution file (stdout if omitted)");

    // bench
    std::vector<std::string> bench_classes;
    int bench_count = 20;
    std::uint64_t bench_seed = 1;
    unsigned bench_threads = 0;
    std::string bench_report, bench_csv, bench_config;
    auto *bench = app.add_subcommand("bench", "run all heuristics over generated batches");
    bench->add_option("--classes", bench_classes, "classes to run (default: all fifteen)");
    bench->add_option("--count", bench_count, "instances per class")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "batch seed");
    bench->add_option("--threads", bench_threads, "worker threads (0 = hardware)");
    bench->add_option("--config", bench_config, "JSON config file")->check(CLI::ExistingFile);
    bench->add_option("--report", bench_report, "JSON report path");
    bench->add_option("--csv", bench_csv, "CSV summary path");

    // plot
    std::string plot_solution, plot_instance, plot_out;
    auto *plot = app.add_subcommand("plot", "draw a solution as SVG");
    plot->add_option("--solution", plot_solution)->required()->check(CLI::ExistingFile);
    plot->add_option("--instance", plot_instance)->required()->check(CLI::ExistingFile);
    plot->add_option("--out", plot_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            std::filesystem::create_directories(gen_dir);
            for (const auto &name : gen_classes) {
                const auto cls = InstanceClass::parse(name);
                for (int i = 0; i < gen_count; ++i) {
                    const auto path = std::filesystem::path(gen_dir) / (cls.name() + "_" + std::to_string(i) + ".json");
                    save_instance(generate_instance(cls, instance_seed(gen_seed, cls, i)), path);
                    std::cout << path.string() << '\n';
                }
            }
            return 0;
        }
        if (*solve) return run_solve(sa);
        if (*bench) {
            std::vector<InstanceClass> classes;
            for (const auto &name : bench_classes) classes.push_back(InstanceClass::parse(name));
            if (classes.empty()) classes = all_instance_classes();
            SolverConfig cfg;
            if (!bench_config.empty()) apply_config_file(bench_config, cfg);
            const auto report = bench_run(classes, bench_count, bench_seed, cfg, bench_threads);
            if (!bench_report.empty()) write_json(bench_to_json(report), bench_report);
            if (!bench_csv.empty()) {
                std::ofstream out(bench_csv);
                if (!out) throw std::runtime_error("cannot write " + bench_csv);
                write_bench_csv(report, out);
            }
            write_bench_csv(report, std::cout);
            return 0;
        }
        if (*plot) {
            const Instance inst = load_instance(plot_instance);
            emit_plot(load_solution(plot_solution, inst), inst, std::filesystem::path(plot_out));
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
