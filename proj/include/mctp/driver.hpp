#pragma once

#include "phase1.hpp"
#include "phase3.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace mctp {

    enum class PostMode { paired, two_opt, multicover, both, none };
    enum class BalanceMode { enforce, report };

    inline PostMode parse_post_mode(const std::string &text) {
        if (text == "paired" || text == "default") return PostMode::paired;
        if (text == "2opt" || text == "two-opt") return PostMode::two_opt;
        if (text == "multicover") return PostMode::multicover;
        if (text == "both") return PostMode::both;
        if (text == "none") return PostMode::none;
        throw std::invalid_argument("unknown post-optimizer '" + text + "'");
    }

    inline BalanceMode parse_balance_mode(const std::string &text) {
        if (text == "enforce") return BalanceMode::enforce;
        if (text == "report") return BalanceMode::report;
        throw std::invalid_argument("unknown balance mode '" + text + "'");
    }

    struct SolverConfig {
        GeniConfig geni;
        int sector_t = 10;
        bool sector_augment = true;
        PostMode post = PostMode::paired;
        BalanceMode balance = BalanceMode::enforce;
        bool repair = true;  // fix short routes and (in enforce mode) load imbalance before post-optimization

        [[nodiscard]] Phase1Config phase1() const { return Phase1Config{geni, sector_t, sector_augment}; }
    };

    // post-optimizers paired with each heuristic by default.
    inline PostMode paired_post(HeuristicTag tag) {
        return tag == HeuristicTag::sector_partition ? PostMode::multicover : PostMode::two_opt;
    }

    struct IterationRecord {
        int index = 0;
        bool feasible = false;
        double cost = 0.0;          // after post-optimization, when feasible
        double before_post = 0.0;   // after assembly and repair
        int load_gap = 0;
        std::string note;
    };

    struct RunResult {
        Solution best;
        double best_cost = 0.0;
        double wall_seconds = 0.0;
        int iterations = 0;
        int skipped = 0;
        std::vector<IterationRecord> per_iteration;
    };

    namespace detail {

        inline double splice_saving(const std::vector<NodeId> &seq, std::size_t pos, const Instance &inst) {
            const std::size_t n = seq.size();
            const NodeId a = seq[pos - 1], i = seq[pos], b = seq[(pos + 1) % n];
            return inst.d(a, i) + inst.d(i, b) - inst.d(a, b);
        }

        // Cheapest edge to insert v into a closed tour: (cost, position to insert before).
        inline std::pair<double, std::size_t> cheapest_slot(const std::vector<NodeId> &seq, NodeId v, const Instance &inst) {
            const std::size_t n = seq.size();
            if (n == 1) return {2.0 * inst.d(seq[0], v), 1};
            double best = std::numeric_limits<double>::infinity();
            std::size_t at = 1;
            for (std::size_t a = 0; a < n; ++a) {
                const NodeId x = seq[a], y = seq[(a + 1) % n];
                const double c = inst.d(x, v) + inst.d(v, y) - inst.d(x, y);
                if (c < best) {
                    best = c;
                    at = a + 1;
                }
            }
            return {best, at};
        }

        struct Relocation {
            double delta = std::numeric_limits<double>::infinity();
            std::size_t from_pos = 0;
            std::size_t to_pos = 0;
        };

        inline Relocation best_relocation(const Route &from, const Route &to, const Instance &inst) {
            Relocation best;
            for (std::size_t pos = 1; pos < from.seq.size(); ++pos) {
                const auto [add, at] = cheapest_slot(to.seq, from.seq[pos], inst);
                const double delta = add - splice_saving(from.seq, pos, inst);
                if (delta < best.delta) best = {delta, pos, at};
            }
            return best;
        }

        inline void relocate(Route &from, Route &to, const Relocation &mv) {
            const NodeId v = from.seq[mv.from_pos];
            from.seq.erase(from.seq.begin() + static_cast<std::ptrdiff_t>(mv.from_pos));
            to.seq.insert(to.seq.begin() + static_cast<std::ptrdiff_t>(mv.to_pos), v);
        }

        // Adds the unvisited optional node cheapest to insert into `route`. False if none is left.
        inline bool add_optional(std::vector<Route> &routes, std::size_t k, const Instance &inst) {
            std::vector<char> visited(static_cast<std::size_t>(inst.num_v()), 0);
            for (const auto &r : routes) {
                for (NodeId i : r.seq) visited[static_cast<std::size_t>(i)] = 1;
            }
            double best = std::numeric_limits<double>::infinity();
            NodeId pick = -1;
            std::size_t at = 0;
            for (NodeId i : inst.optional_nodes()) {
                if (visited[static_cast<std::size_t>(i)]) continue;
                const auto [c, pos] = cheapest_slot(routes[k].seq, i, inst);
                if (c < best) {
                    best = c;
                    pick = i;
                    at = pos;
                }
            }
            if (pick < 0) return false;
            routes[k].seq.insert(routes[k].seq.begin() + static_cast<std::ptrdiff_t>(at), pick);
            return true;
        }

    }  // namespace detail

    /// Joins per-block routes into a Solution. A V \ T node visited by several routes keeps
    /// only the visit whose removal would save least; the others are spliced out. Returns
    /// nothing when coverage is lost or a T node is missing.
    inline std::optional<Solution> assemble(std::vector<Route> routes, const Instance &inst) {
        for (auto &r : routes) rotate_to_base(r.seq);
        for (NodeId i = 1; i < inst.num_v(); ++i) {
            if (inst.is_t(i)) continue;
            struct Visit {
                std::size_t route;
                std::size_t pos;
                double saving;
            };
            std::vector<Visit> visits;
            for (std::size_t k = 0; k < routes.size(); ++k) {
                const auto &seq = routes[k].seq;
                for (std::size_t pos = 1; pos < seq.size(); ++pos) {
                    if (seq[pos] == i) visits.push_back({k, pos, detail::splice_saving(seq, pos, inst)});
                }
            }
            if (visits.size() < 2) continue;
            std::size_t keep = 0;
            for (std::size_t a = 1; a < visits.size(); ++a) {
                if (visits[a].saving < visits[keep].saving) keep = a;
            }
            for (std::size_t a = visits.size(); a-- > 0;) {
                if (a == keep) continue;
                auto &seq = routes[visits[a].route].seq;
                seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(visits[a].pos));
            }
        }
        Solution sol = make_solution(std::move(routes), inst);
        const auto report = check_feasible(sol, inst);
        if (report.has(2) || report.has(8) || report.has(3) || report.has(4)) return std::nullopt;
        return sol;
    }

    /// Makes every route carry at least two nodes and, when `limit` >= 0, brings the load gap
    /// within `limit`, moving nodes by cheapest relocation. Returns false when this is not
    /// possible.
    inline bool repair_routes(std::vector<Route> &routes, const Instance &inst, int limit) {
        for (std::size_t k = 0; k < routes.size(); ++k) {
            while (routes[k].load() < 2) {
                detail::Relocation best;
                std::size_t donor = routes.size();
                for (std::size_t d = 0; d < routes.size(); ++d) {
                    if (d == k || routes[d].load() <= 2) continue;
                    const auto mv = detail::best_relocation(routes[d], routes[k], inst);
                    if (mv.delta < best.delta) {
                        best = mv;
                        donor = d;
                    }
                }
                if (donor < routes.size()) {
                    detail::relocate(routes[donor], routes[k], best);
                } else if (!detail::add_optional(routes, k, inst)) {
                    return false;
                }
            }
        }
        if (limit < 0) return true;
        while (detail::loads_gap(routes) > limit) {
            std::size_t hi = 0, lo = 0;
            for (std::size_t k = 1; k < routes.size(); ++k) {
                if (routes[k].load() > routes[hi].load()) hi = k;
                if (routes[k].load() < routes[lo].load()) lo = k;
            }
            if (routes[hi].load() - routes[lo].load() >= 2) {
                detail::relocate(routes[hi], routes[lo], detail::best_relocation(routes[hi], routes[lo], inst));
            } else if (!detail::add_optional(routes, lo, inst)) {
                return false;
            }
        }
        return true;
    }

    namespace detail {

        inline Solution post_optimize(const Solution &sol, const Instance &inst, PostMode mode, int limit) {
            auto checked = [&](const Solution &in, const Solution &out, const char *who) {
                if (out.total_length > in.total_length + objective_cache_tolerance) {
                    throw std::logic_error(std::string(who) + " increased the objective");
                }
                return out;
            };
            Solution cur = sol;
            if (mode == PostMode::two_opt || mode == PostMode::both) {
                cur = checked(cur, balanced_2opt(cur, inst, limit), "balanced_2opt");
            }
            if (mode == PostMode::multicover || mode == PostMode::both) {
                cur = checked(cur, multicover_eliminate(cur, inst, limit), "multicover_eliminate");
            }
            return cur;
        }

    }  // namespace detail

    /// One heuristic on a preprocessed instance: every partition is solved block by
    /// block with the 1-CTP routine, assembled, repaired, post-optimized, and the cheapest
    /// feasible result kept (ties keep the earlier iteration).
    inline RunResult run_heuristic(const Instance &inst, HeuristicTag tag, const SolverConfig &cfg = {}) {
        const auto start = std::chrono::steady_clock::now();
        RunResult res;
        const PostMode post = cfg.post == PostMode::paired ? paired_post(tag) : cfg.post;
        const bool enforce = cfg.balance == BalanceMode::enforce;

        std::vector<Partition> parts;
        try {
            parts = outer_iterations(tag, inst, cfg.phase1());
        } catch (const InfeasibleSplit &e) {
            throw NoSolution(std::string(to_string(tag)) + ": " + e.what());
        }

        bool have = false;
        for (std::size_t it = 0; it < parts.size(); ++it) {
            IterationRecord rec;
            rec.index = static_cast<int>(it);
            try {
                std::vector<Route> routes;
                for (const auto &blk : parts[it].blocks) {
                    routes.push_back(solve_1ctp(blk.v, blk.t, blk.w, inst, cfg.geni));
                }
                auto assembled = assemble(std::move(routes), inst);
                if (!assembled) throw InfeasibleInstance("assembly lost coverage");
                std::vector<Route> fixed = assembled->routes;
                if (cfg.repair && !repair_routes(fixed, inst, enforce ? inst.r() : -1)) {
                    throw InfeasibleInstance("route repair failed");
                }
                Solution sol = make_solution(std::move(fixed), inst);
                const int limit = enforce ? inst.r() : std::max(inst.r(), max_load_gap(sol));
                const auto report = check_feasible(sol, inst);
                for (const auto &v : report.violations) {
                    if (v.constraint == 7 && !enforce) continue;
                    throw InfeasibleInstance("constraint (" + std::to_string(v.constraint) + ") violated: " + v.detail);
                }
                rec.before_post = sol.total_length;
                sol = detail::post_optimize(sol, inst, post, limit);
                rec.feasible = true;
                rec.cost = sol.total_length;
                rec.load_gap = max_load_gap(sol);
                if (!have || sol.total_length < res.best_cost) {
                    res.best_cost = sol.total_length;
                    res.best = std::move(sol);
                    have = true;
                }
            } catch (const InfeasibleInstance &e) {
                rec.note = e.what();
                ++res.skipped;
            }
            res.per_iteration.push_back(std::move(rec));
        }
        res.iterations = static_cast<int>(parts.size());
        res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!have) {
            std::string why = std::string(to_string(tag)) + ": no feasible iteration";
            for (const auto &rec : res.per_iteration) why += "\n  iteration " + std::to_string(rec.index) + ": " + rec.note;
            throw NoSolution(why);
        }
        return res;
    }

}  // namespace mctp
