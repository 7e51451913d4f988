#pragma once

#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace mctp {

    // A closed route through the base. seq[0] is the base; the return arc is implicit.
    struct Route {
        std::vector<NodeId> seq;

        [[nodiscard]] std::size_t size() const { return seq.size(); }
        // Number of non-base nodes.
        [[nodiscard]] int load() const { return seq.empty() ? 0 : static_cast<int>(seq.size()) - 1; }

        friend bool operator==(const Route &, const Route &) = default;
    };

    inline double tour_length(std::span<const NodeId> seq, const Instance &inst) {
        if (seq.size() < 2) return 0.0;
        double total = 0.0;
        for (std::size_t a = 0; a + 1 < seq.size(); ++a) total += inst.d(seq[a], seq[a + 1]);
        return total + inst.d(seq.back(), seq.front());
    }

    inline double route_length(const Route &route, const Instance &inst) {
        return tour_length(route.seq, inst);
    }

    struct Solution {
        std::vector<Route> routes;
        double total_length = 0.0;
    };

    // Sum of closed-tour lengths, return arcs included.
    inline double objective(const Solution &sol, const Instance &inst) {
        double total = 0.0;
        for (const auto &route : sol.routes) {
            for (NodeId i : route.seq) {
                if (!inst.is_v(i)) {
                    throw StructuralError("node " + std::to_string(i) + " is not in V");
                }
            }
            total += route_length(route, inst);
        }
        return total;
    }

    inline Solution make_solution(std::vector<Route> routes, const Instance &inst) {
        Solution sol{std::move(routes), 0.0};
        sol.total_length = objective(sol, inst);
        return sol;
    }

    inline constexpr double objective_cache_tolerance = 1e-6;

    inline bool cache_consistent(const Solution &sol, const Instance &inst) {
        return std::abs(objective(sol, inst) - sol.total_length) <= objective_cache_tolerance;
    }

    struct Violation {
        int constraint = 0;  // 2..9, matching the model's constraint families
        std::string detail;
    };

    struct FeasibilityReport {
        std::vector<Violation> violations;

        [[nodiscard]] bool feasible() const { return violations.empty(); }

        [[nodiscard]] bool has(int constraint) const {
            return std::any_of(violations.begin(), violations.end(), [&](const Violation &v) { return v.constraint == constraint; });
        }
    };

    /// Reports every violated constraint family of the m-CTP model.
    ///
    /// Sequence-encoded routes make degree and subtour constraints structural: a route is
    /// valid when it starts at the base, has at least two further nodes, stays inside V and
    /// repeats nothing. Coverage is measured on distances, so the checker also works on
    /// instances that were never preprocessed.
    inline FeasibilityReport check_feasible(const Solution &sol, const Instance &inst) {
        FeasibilityReport rep;
        auto add = [&](int c, std::string detail) { rep.violations.push_back({c, std::move(detail)}); };

        if (static_cast<int>(sol.routes.size()) != inst.m()) {
            add(9, "expected " + std::to_string(inst.m()) + " routes, got " + std::to_string(sol.routes.size()));
        }

        std::vector<int> visits(static_cast<std::size_t>(inst.num_v()), 0);
        bool structurally_ok = true;
        for (std::size_t k = 0; k < sol.routes.size(); ++k) {
            const auto &seq = sol.routes[k].seq;
            const std::string where = "route " + std::to_string(k);
            if (seq.empty() || seq.front() != base_node) {
                add(9, where + " does not start at the base");
            }
            if (seq.size() < 3) {
                add(6, where + " has fewer than two non-base nodes");
            }
            std::vector<NodeId> seen;
            for (std::size_t a = 0; a < seq.size(); ++a) {
                const NodeId i = seq[a];
                if (!inst.is_v(i)) {
                    add(4, where + " visits node " + std::to_string(i) + " outside V");
                    structurally_ok = false;
                    continue;
                }
                if (a > 0 && i == base_node) {
                    add(4, where + " passes the base twice");
                    continue;
                }
                if (std::find(seen.begin(), seen.end(), i) != seen.end()) {
                    add(4, where + " repeats node " + std::to_string(inst.label(i)));
                    continue;
                }
                seen.push_back(i);
                if (i != base_node) ++visits[static_cast<std::size_t>(i)];
            }
        }

        for (NodeId i = 1; i < inst.num_v(); ++i) {
            const int v = visits[static_cast<std::size_t>(i)];
            if (inst.is_t(i) && v != 1) {
                add(8, "T node " + std::to_string(inst.label(i)) + " is on " + std::to_string(v) + " routes");
            } else if (!inst.is_t(i) && v > 1) {
                add(3, "node " + std::to_string(inst.label(i)) + " is on " + std::to_string(v) + " routes");
            }
        }

        for (NodeId j = inst.num_v(); j < inst.num_nodes(); ++j) {
            bool covered = false;
            for (NodeId i = 0; i < inst.num_v() && !covered; ++i) {
                covered = (i == base_node || visits[static_cast<std::size_t>(i)] > 0) && inst.covers(i, j);
            }
            if (!covered) add(2, "W node " + std::to_string(inst.label(j)) + " is not covered");
        }

        if (structurally_ok && !sol.routes.empty()) {
            auto [lo, hi] = std::minmax_element(sol.routes.begin(), sol.routes.end(),
                                                [](const Route &a, const Route &b) { return a.load() < b.load(); });
            if (hi->load() - lo->load() > inst.r()) {
                add(7, "route loads " + std::to_string(hi->load()) + " and " + std::to_string(lo->load()) +
                           " differ by more than r = " + std::to_string(inst.r()));
            }
        }

        return rep;
    }

    // Largest difference in non-base node counts between two routes.
    inline int max_load_gap(const Solution &sol) {
        if (sol.routes.empty()) return 0;
        auto [lo, hi] = std::minmax_element(sol.routes.begin(), sol.routes.end(),
                                            [](const Route &a, const Route &b) { return a.load() < b.load(); });
        return hi->load() - lo->load();
    }

    // Rotation/orientation-free form of a cyclic sequence: starts at its smallest node and
    // continues towards the smaller of its two neighbours.
    inline std::vector<NodeId> canonical_cycle(std::span<const NodeId> seq) {
        if (seq.size() < 3) {
            std::vector<NodeId> out(seq.begin(), seq.end());
            std::sort(out.begin(), out.end());
            return out;
        }
        const std::size_t n = seq.size();
        const std::size_t start = static_cast<std::size_t>(std::min_element(seq.begin(), seq.end()) - seq.begin());
        const bool forward = seq[(start + 1) % n] <= seq[(start + n - 1) % n];
        std::vector<NodeId> out;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(forward ? seq[(start + k) % n] : seq[(start + n - k) % n]);
        }
        return out;
    }

    inline std::vector<std::vector<NodeId>> canonical_form(const Solution &sol) {
        std::vector<std::vector<NodeId>> out;
        for (const auto &route : sol.routes) out.push_back(canonical_cycle(route.seq));
        std::sort(out.begin(), out.end());
        return out;
    }

    // Equal node sets and cyclic orders, regardless of orientation, rotation or route order.
    inline bool same_solution(const Solution &a, const Solution &b) {
        return canonical_form(a) == canonical_form(b);
    }

}  // namespace mctp
