#pragma once

#include "driver.hpp"
#include "generator.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace mctp {

    // Each mean cost divided by the smallest one.
    inline std::vector<double> quality_index(std::span<const double> mean_costs) {
        if (mean_costs.empty()) throw std::invalid_argument("quality_index needs at least one cost");
        for (double c : mean_costs) {
            if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("quality_index needs positive finite costs");
        }
        const double lo = *std::min_element(mean_costs.begin(), mean_costs.end());
        std::vector<double> out;
        out.reserve(mean_costs.size());
        for (double c : mean_costs) out.push_back(c == lo ? 1.0 : c / lo);
        return out;
    }

    struct InstanceRun {
        int index = 0;
        std::uint64_t seed = 0;
        std::array<double, 4> cost{};     // NaN when the heuristic failed
        std::array<double, 4> seconds{};
        std::array<std::string, 4> error;
    };

    struct SubclassResult {
        std::string subclass;
        std::array<double, 4> mean_cost{};
        std::array<double, 4> mean_time{};
        std::array<double, 4> qi{};
        std::array<int, 4> failures{};
        std::vector<InstanceRun> runs;
    };

    struct BenchReport {
        std::uint64_t seed = 0;
        int count = 0;
        SolverConfig config;
        std::vector<SubclassResult> rows;
    };

    // Seed of instance `index` of class `cls` within a batch seeded with `seed`.
    inline std::uint64_t instance_seed(std::uint64_t seed, const InstanceClass &cls, int index) {
        const auto stream = static_cast<std::uint64_t>(cls.total * 10 + cls.subclass);
        return derive_seed(derive_seed(seed, stream), static_cast<std::uint64_t>(index));
    }

    namespace detail {

        inline InstanceRun bench_instance(const InstanceClass &cls, int index, std::uint64_t seed, const SolverConfig &cfg) {
            InstanceRun run;
            run.index = index;
            run.seed = instance_seed(seed, cls, index);
            std::optional<Instance> inst;
            std::string prep_error;
            try {
                inst = preprocess(generate_instance(cls, run.seed));
            } catch (const std::exception &e) {
                prep_error = e.what();
            }
            for (std::size_t h = 0; h < all_heuristics.size(); ++h) {
                run.cost[h] = std::numeric_limits<double>::quiet_NaN();
                if (!inst) {
                    run.error[h] = prep_error;
                    continue;
                }
                const auto start = std::chrono::steady_clock::now();
                try {
                    run.cost[h] = run_heuristic(*inst, all_heuristics[h], cfg).best_cost;
                } catch (const std::exception &e) {
                    run.error[h] = e.what();
                }
                run.seconds[h] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
            return run;
        }

        inline void aggregate(SubclassResult &row) {
            std::vector<double> finite;
            for (std::size_t h = 0; h < 4; ++h) {
                double cost = 0.0, time = 0.0;
                int ok = 0;
                for (const auto &run : row.runs) {
                    time += run.seconds[h];
                    if (std::isnan(run.cost[h])) {
                        ++row.failures[h];
                        continue;
                    }
                    cost += run.cost[h];
                    ++ok;
                }
                row.mean_cost[h] = ok ? cost / ok : std::numeric_limits<double>::quiet_NaN();
                row.mean_time[h] = row.runs.empty() ? 0.0 : time / static_cast<double>(row.runs.size());
                if (ok) finite.push_back(row.mean_cost[h]);
            }
            row.qi.fill(std::numeric_limits<double>::quiet_NaN());
            if (finite.empty()) return;
            const auto qi = quality_index(finite);
            for (std::size_t h = 0, a = 0; h < 4; ++h) {
                if (!std::isnan(row.mean_cost[h])) row.qi[h] = qi[a++];
            }
        }

    }  // namespace detail

    /// Generates `count` instances per class, runs every heuristic on each and aggregates
    /// means and Q.I. per class. Instances are spread over `threads` workers; results are
    /// folded in index order, so the report does not depend on scheduling.
    inline BenchReport bench_run(std::span<const InstanceClass> classes, int count, std::uint64_t seed,
                                 const SolverConfig &cfg = {}, unsigned threads = 0) {
        if (count < 1) throw std::invalid_argument("bench count must be >= 1");
        BenchReport report{seed, count, cfg, {}};

        struct Task {
            std::size_t row;
            int index;
        };
        std::vector<Task> tasks;
        for (std::size_t r = 0; r < classes.size(); ++r) {
            classes[r].validate();
            SubclassResult row;
            row.subclass = classes[r].name();
            row.runs.resize(static_cast<std::size_t>(count));
            report.rows.push_back(std::move(row));
            for (int i = 0; i < count; ++i) tasks.push_back({r, i});
        }

        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
                const auto &task = tasks[t];
                report.rows[task.row].runs[static_cast<std::size_t>(task.index)] =
                    detail::bench_instance(classes[task.row], task.index, seed, cfg);
            }
        };
        if (threads <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
            for (auto &th : pool) th.join();
        }
        for (auto &row : report.rows) detail::aggregate(row);
        return report;
    }

    namespace detail {

        inline nlohmann::json number_or_null(double v) {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        }

    }  // namespace detail

    inline nlohmann::json bench_to_json(const BenchReport &report) {
        nlohmann::json doc;
        doc["seed"] = report.seed;
        doc["count"] = report.count;
        doc["config"] = {{"geni", {{"p", report.config.geni.p},
                                   {"mode", report.config.geni.mode == GeniConfig::Mode::full ? "full" : "simple"}}},
                         {"sector", {{"t", report.config.sector_t}, {"augment", report.config.sector_augment}}},
                         {"balance", report.config.balance == BalanceMode::enforce ? "enforce" : "report"}};
        doc["rows"] = nlohmann::json::array();
        for (const auto &row : report.rows) {
            nlohmann::json r;
            r["subclass"] = row.subclass;
            for (std::size_t h = 0; h < 4; ++h) {
                r["heuristics"][to_string(all_heuristics[h])] = {{"mean_cost", detail::number_or_null(row.mean_cost[h])},
                                                                 {"mean_time_s", row.mean_time[h]},
                                                                 {"qi", detail::number_or_null(row.qi[h])},
                                                                 {"failures", row.failures[h]}};
            }
            r["instances"] = nlohmann::json::array();
            for (const auto &run : row.runs) {
                nlohmann::json one{{"index", run.index}, {"seed", run.seed}};
                for (std::size_t h = 0; h < 4; ++h) {
                    auto &cell = one["heuristics"][to_string(all_heuristics[h])];
                    cell["cost"] = detail::number_or_null(run.cost[h]);
                    cell["time_s"] = run.seconds[h];
                    if (!run.error[h].empty()) cell["error"] = run.error[h];
                }
                r["instances"].push_back(std::move(one));
            }
            doc["rows"].push_back(std::move(r));
        }
        return doc;
    }

    // One line per (subclass, heuristic): subclass,heuristic,qi,mean_cost,mean_time_s
    inline void write_bench_csv(const BenchReport &report, std::ostream &out) {
        out << "subclass,heuristic,qi,mean_cost,mean_time_s\n";
        char buf[160];
        for (const auto &row : report.rows) {
            for (std::size_t h = 0; h < 4; ++h) {
                std::snprintf(buf, sizeof buf, "%s,%s,%.4f,%.3f,%.6f\n", row.subclass.c_str(),
                              to_string(all_heuristics[h]).c_str(), row.qi[h], row.mean_cost[h], row.mean_time[h]);
                out << buf;
            }
        }
    }

}  // namespace mctp
