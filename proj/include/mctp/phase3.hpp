#pragma once

#include "model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mctp {

    inline constexpr double improvement_epsilon = 1e-9;

    namespace detail {

        // Route loads when the copies of the base sit at `copies` in a cycle of length `len`.
        inline void loads_from_copies(std::vector<std::size_t> copies, std::size_t len, std::vector<int> &out) {
            std::sort(copies.begin(), copies.end());
            for (std::size_t a = 0; a < copies.size(); ++a) {
                const std::size_t next = a + 1 < copies.size() ? copies[a + 1] : copies.front() + len;
                out.push_back(static_cast<int>(next - copies[a]) - 1);
            }
        }

        inline bool loads_acceptable(const std::vector<int> &loads, int rho, int limit) {
            const auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
            return *lo >= std::max(rho, 2) && *hi - *lo <= limit;
        }

        // Splits a cyclic sequence holding base copies into routes, one per copy.
        inline void routes_from_cycle(const std::vector<NodeId> &cycle, std::vector<Route> &out) {
            const auto first = std::find(cycle.begin(), cycle.end(), base_node);
            const std::size_t n = cycle.size();
            const std::size_t start = static_cast<std::size_t>(first - cycle.begin());
            for (std::size_t t = 0; t < n; ++t) {
                const NodeId x = cycle[(start + t) % n];
                if (x == base_node) {
                    out.push_back(Route{{base_node}});
                } else {
                    out.back().seq.push_back(x);
                }
            }
        }

        inline void require_feasible(const Solution &sol, const Instance &inst, int limit, const char *who) {
            for (const auto &v : check_feasible(sol, inst).violations) {
                if (v.constraint == 7 && max_load_gap(sol) <= limit) continue;
                throw std::invalid_argument(std::string(who) + " needs a feasible solution: " + v.detail);
            }
        }

        inline int loads_gap(const std::vector<Route> &routes) {
            int lo = std::numeric_limits<int>::max(), hi = 0;
            for (const auto &r : routes) {
                lo = std::min(lo, r.load());
                hi = std::max(hi, r.load());
            }
            return hi - lo;
        }

        // first improving feasible arc exchange on the route concatenation, restarting
        // after every improvement. Returns true if anything improved.
        inline bool two_opt_pass(std::vector<Route> &routes, const Instance &inst, int limit) {
            bool improved = false;
            while (true) {
                int rho = std::numeric_limits<int>::max();
                std::vector<NodeId> giant;
                for (const auto &r : routes) {
                    rho = std::min(rho, r.load());
                    giant.insert(giant.end(), r.seq.begin(), r.seq.end());
                }
                const std::size_t len = giant.size();
                std::vector<std::size_t> copies;
                for (std::size_t p = 0; p < len; ++p) {
                    if (giant[p] == base_node) copies.push_back(p);
                }

                bool found = false;
                std::vector<int> loads;
                for (std::size_t a = 0; a < len && !found; ++a) {
                    for (std::size_t b = a + 2; b < len && !found; ++b) {
                        if (a == 0 && b == len - 1) continue;
                        const NodeId r = giant[a], s = giant[a + 1], t = giant[b], u = giant[(b + 1) % len];
                        const double old_arcs = inst.d(r, s) + inst.d(t, u);
                        const double delta_i = inst.d(r, t) + inst.d(s, u) - old_arcs;
                        const double delta_ii = inst.d(r, u) + inst.d(s, t) - old_arcs;

                        // Try the better replacement first.
                        const bool first_i = delta_i <= delta_ii;
                        for (int attempt = 0; attempt < 2 && !found; ++attempt) {
                            const bool use_i = (attempt == 0) == first_i;
                            const double delta = use_i ? delta_i : delta_ii;
                            if (delta >= -improvement_epsilon) continue;

                            loads.clear();
                            if (use_i) {
                                // Reversing giant[a+1..b] keeps a single cycle.
                                std::vector<std::size_t> moved;
                                for (std::size_t p : copies) moved.push_back(p > a && p <= b ? a + 1 + b - p : p);
                                loads_from_copies(moved, len, loads);
                                if (!loads_acceptable(loads, rho, limit)) continue;
                                std::vector<NodeId> next(giant);
                                std::reverse(next.begin() + static_cast<std::ptrdiff_t>(a + 1),
                                             next.begin() + static_cast<std::ptrdiff_t>(b + 1));
                                routes.clear();
                                routes_from_cycle(next, routes);
                            } else {
                                // Splits into giant[a+1..b] and the rest; each needs a base copy.
                                std::vector<std::size_t> inner, outer;
                                for (std::size_t p : copies) {
                                    if (p > a && p <= b) {
                                        inner.push_back(p - (a + 1));
                                    } else {
                                        outer.push_back((p + len - (b + 1)) % len);
                                    }
                                }
                                if (inner.empty() || outer.empty()) continue;
                                loads_from_copies(inner, b - a, loads);
                                loads_from_copies(outer, len - (b - a), loads);
                                if (!loads_acceptable(loads, rho, limit)) continue;
                                std::vector<NodeId> c1(giant.begin() + static_cast<std::ptrdiff_t>(a + 1),
                                                       giant.begin() + static_cast<std::ptrdiff_t>(b + 1));
                                std::vector<NodeId> c2(giant.begin() + static_cast<std::ptrdiff_t>(b + 1), giant.end());
                                c2.insert(c2.end(), giant.begin(), giant.begin() + static_cast<std::ptrdiff_t>(a + 1));
                                routes.clear();
                                routes_from_cycle(c1, routes);
                                routes_from_cycle(c2, routes);
                            }
                            found = true;
                        }
                    }
                }
                if (!found) return improved;
                improved = true;
            }
        }

        // best cross-route node swap, repeated while one improves.
        inline bool swap_pass(std::vector<Route> &routes, const Instance &inst) {
            bool improved = false;
            auto replace_delta = [&](const Route &r, std::size_t pos, NodeId by) {
                const std::size_t n = r.seq.size();
                const NodeId prev = r.seq[pos - 1], next = r.seq[(pos + 1) % n], cur = r.seq[pos];
                return inst.d(prev, by) + inst.d(by, next) - inst.d(prev, cur) - inst.d(cur, next);
            };
            while (true) {
                double best = -improvement_epsilon;
                std::size_t ba = 0, bpa = 0, bb = 0, bpb = 0;
                bool any = false;
                for (std::size_t ra = 0; ra < routes.size(); ++ra) {
                    for (std::size_t rb = ra + 1; rb < routes.size(); ++rb) {
                        for (std::size_t pa = 1; pa < routes[ra].seq.size(); ++pa) {
                            for (std::size_t pb = 1; pb < routes[rb].seq.size(); ++pb) {
                                const double delta = replace_delta(routes[ra], pa, routes[rb].seq[pb]) +
                                                     replace_delta(routes[rb], pb, routes[ra].seq[pa]);
                                if (delta < best) {
                                    best = delta;
                                    ba = ra, bpa = pa, bb = rb, bpb = pb;
                                    any = true;
                                }
                            }
                        }
                    }
                }
                if (!any) return improved;
                std::swap(routes[ba].seq[bpa], routes[bb].seq[bpb]);
                improved = true;
            }
        }

    }  // namespace detail

    /// Balanced 2-opt over the concatenation of all routes with one base copy per route.
    ///
    /// Arc pairs are scanned in order; an exchange is accepted when it shortens the total,
    /// every resulting route keeps at least rho nodes (rho = smallest current route load)
    /// and the loads stay within `balance_limit` (the instance r by default). After each
    /// accepted exchange the scan restarts. When no exchange helps, cross-route node swaps
    /// are applied best-first; if any swap was made the arc scan is run again.
    inline Solution balanced_2opt(const Solution &sol, const Instance &inst, int balance_limit = -1) {
        const int limit = balance_limit < 0 ? inst.r() : balance_limit;
        detail::require_feasible(sol, inst, limit, "balanced_2opt");
        std::vector<Route> routes = sol.routes;
        while (true) {
            detail::two_opt_pass(routes, inst, std::max(limit, 0));
            if (!detail::swap_pass(routes, inst)) break;
        }
        return make_solution(std::move(routes), inst);
    }

    /// Removes visited V \ T nodes whose W nodes stay covered without them.
    ///
    /// Candidates are ranked by splice saving d(a,i) + d(i,b) - d(a,b), largest first, then
    /// each is re-checked against the current solution before its removal. A removal that
    /// would leave a route with fewer than two nodes or break the load limit is skipped.
    inline Solution multicover_eliminate(const Solution &sol, const Instance &inst, int balance_limit = -1) {
        const int limit = balance_limit < 0 ? inst.r() : balance_limit;
        detail::require_feasible(sol, inst, limit, "multicover_eliminate");
        std::vector<Route> routes = sol.routes;

        std::vector<int> count(static_cast<std::size_t>(inst.num_nodes()), 0);
        for (const auto &r : routes) {
            for (NodeId i : r.seq) {
                for (NodeId j : inst.covered_by(i)) ++count[static_cast<std::size_t>(j)];
            }
        }
        auto superfluous = [&](NodeId i) {
            const auto &ci = inst.covered_by(i);
            return std::all_of(ci.begin(), ci.end(), [&](NodeId j) { return count[static_cast<std::size_t>(j)] >= 2; });
        };
        auto splice_saving = [&](const Route &r, std::size_t pos) {
            const std::size_t n = r.seq.size();
            const NodeId a = r.seq[pos - 1], i = r.seq[pos], b = r.seq[(pos + 1) % n];
            return inst.d(a, i) + inst.d(i, b) - inst.d(a, b);
        };

        struct Candidate {
            NodeId node;
            double saving;
        };
        std::vector<Candidate> list;
        for (const auto &r : routes) {
            for (std::size_t pos = 1; pos < r.seq.size(); ++pos) {
                const NodeId i = r.seq[pos];
                if (inst.is_optional(i) && superfluous(i)) list.push_back({i, splice_saving(r, pos)});
            }
        }
        std::sort(list.begin(), list.end(), [](const Candidate &a, const Candidate &b) {
            return a.saving > b.saving || (a.saving == b.saving && a.node < b.node);
        });

        for (const auto &cand : list) {
            if (!superfluous(cand.node)) continue;
            std::size_t k = 0, pos = 0;
            for (; k < routes.size(); ++k) {
                const auto it = std::find(routes[k].seq.begin() + 1, routes[k].seq.end(), cand.node);
                if (it != routes[k].seq.end()) {
                    pos = static_cast<std::size_t>(it - routes[k].seq.begin());
                    break;
                }
            }
            if (routes[k].load() <= 2) continue;
            routes[k].seq.erase(routes[k].seq.begin() + static_cast<std::ptrdiff_t>(pos));
            if (detail::loads_gap(routes) > limit) {
                routes[k].seq.insert(routes[k].seq.begin() + static_cast<std::ptrdiff_t>(pos), cand.node);
                continue;
            }
            for (NodeId j : inst.covered_by(cand.node)) --count[static_cast<std::size_t>(j)];
        }
        return make_solution(std::move(routes), inst);
    }

}  // namespace mctp
