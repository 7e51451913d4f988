#pragma once

#include "model.hpp"

#include <bit>
#include <limits>
#include <optional>

namespace mctp {

    inline constexpr int brute_force_max_v = 8;
    inline constexpr int brute_force_max_m = 3;

    namespace detail {

        struct BestCycle {
            double length = std::numeric_limits<double>::infinity();
            std::vector<NodeId> seq;  // base first, oriented so that seq[1] < seq.back()
        };

        // Optimal closed tour from the base through `nodes`, by full enumeration.
        inline BestCycle best_cycle(std::vector<NodeId> nodes, const Instance &inst) {
            std::sort(nodes.begin(), nodes.end());
            BestCycle best;
            do {
                if (nodes.size() >= 2 && nodes.front() > nodes.back()) continue;  // each cycle once
                std::vector<NodeId> seq{base_node};
                seq.insert(seq.end(), nodes.begin(), nodes.end());
                const double len = tour_length(seq, inst);
                if (len < best.length - 1e-12 || (len <= best.length + 1e-12 && seq < best.seq)) {
                    best.length = len;
                    best.seq = std::move(seq);
                }
            } while (std::next_permutation(nodes.begin(), nodes.end()));
            return best;
        }

    }  // namespace detail

    /// Exact m-CTP optimum for tiny instances.
    ///
    /// Every assignment of V* to {unvisited, route 1..m} respecting single visits, balance, T visits and coverage
    /// is enumerated, each route is ordered optimally by enumeration, and the cheapest total
    /// wins. Ties go to the lexicographically smallest sorted list of canonical routes.
    inline Solution brute_force_optimum(const Instance &inst) {
        if (inst.num_v() > brute_force_max_v || inst.m() > brute_force_max_m) {
            throw SizeGuardError("brute force is limited to |V| <= 8 and m <= 3");
        }
        const int m = inst.m();
        const int free_nodes = inst.num_v() - 1;  // V*
        const unsigned full = 1u << free_nodes;

        // Memoised per-subset optimal cycles; bit b stands for node b + 1.
        std::vector<std::optional<detail::BestCycle>> cycles(full);
        auto cycle_of = [&](unsigned mask) -> const detail::BestCycle & {
            auto &slot = cycles[mask];
            if (!slot) {
                std::vector<NodeId> nodes;
                for (int b = 0; b < free_nodes; ++b) {
                    if (mask & (1u << b)) nodes.push_back(b + 1);
                }
                slot = detail::best_cycle(std::move(nodes), inst);
            }
            return *slot;
        };

        double best_cost = std::numeric_limits<double>::infinity();
        std::vector<std::vector<NodeId>> best_repr;

        std::vector<int> assign(static_cast<std::size_t>(free_nodes), 0);  // 0 = unvisited, k = route k
        std::vector<unsigned> masks(static_cast<std::size_t>(m));
        while (true) {
            bool ok = true;
            for (int b = 0; b < free_nodes && ok; ++b) {
                if (inst.is_t(b + 1) && assign[static_cast<std::size_t>(b)] == 0) ok = false;
            }
            if (ok) {
                std::fill(masks.begin(), masks.end(), 0u);
                for (int b = 0; b < free_nodes; ++b) {
                    const int k = assign[static_cast<std::size_t>(b)];
                    if (k > 0) masks[static_cast<std::size_t>(k - 1)] |= 1u << b;
                }
                int lo = std::numeric_limits<int>::max();
                int hi = 0;
                for (unsigned mk : masks) {
                    const int load = std::popcount(mk);
                    lo = std::min(lo, load);
                    hi = std::max(hi, load);
                }
                ok = lo >= 2 && hi - lo <= inst.r();
            }
            if (ok) {
                for (NodeId j = inst.num_v(); j < inst.num_nodes() && ok; ++j) {
                    bool covered = inst.covers(base_node, j);
                    for (int b = 0; b < free_nodes && !covered; ++b) {
                        covered = assign[static_cast<std::size_t>(b)] > 0 && inst.covers(b + 1, j);
                    }
                    ok = covered;
                }
            }
            if (ok) {
                double cost = 0.0;
                std::vector<std::vector<NodeId>> repr;
                for (unsigned mk : masks) {
                    const auto &cyc = cycle_of(mk);
                    cost += cyc.length;
                    repr.push_back(cyc.seq);
                }
                std::sort(repr.begin(), repr.end());
                if (cost < best_cost - 1e-9 || (cost <= best_cost + 1e-9 && repr < best_repr)) {
                    best_cost = cost;
                    best_repr = std::move(repr);
                }
            }

            int pos = 0;
            while (pos < free_nodes && assign[static_cast<std::size_t>(pos)] == m) {
                assign[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == free_nodes) break;
            ++assign[static_cast<std::size_t>(pos)];
        }

        if (best_repr.empty()) {
            throw InfeasibleInstance("no feasible m-CTP solution exists for this instance");
        }
        std::vector<Route> routes;
        for (auto &seq : best_repr) routes.push_back(Route{std::move(seq)});
        return make_solution(std::move(routes), inst);
    }

}  // namespace mctp
