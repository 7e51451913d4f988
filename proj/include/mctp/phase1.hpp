#pragma once

#include "ctp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mctp {

    enum class HeuristicTag { greedy_selection, sweep, route_first, sector_partition };

    inline constexpr std::array<HeuristicTag, 4> all_heuristics{HeuristicTag::greedy_selection, HeuristicTag::sweep,
                                                                HeuristicTag::route_first, HeuristicTag::sector_partition};

    inline std::string to_string(HeuristicTag tag) {
        switch (tag) {
            case HeuristicTag::greedy_selection: return "greedy";
            case HeuristicTag::sweep: return "sweep";
            case HeuristicTag::route_first: return "route-first";
            case HeuristicTag::sector_partition: return "sector";
        }
        return "?";
    }

    inline HeuristicTag parse_heuristic(const std::string &text) {
        if (text == "greedy" || text == "greedy-selection") return HeuristicTag::greedy_selection;
        if (text == "sweep") return HeuristicTag::sweep;
        if (text == "route-first" || text == "route-first-cluster-second") return HeuristicTag::route_first;
        if (text == "sector" || text == "sector-partition") return HeuristicTag::sector_partition;
        throw std::invalid_argument("unknown heuristic '" + text + "'");
    }

    // A single route (h0 = base, h1, ..., hz) over V that visits T and covers W.
    struct GiantRoute {
        std::vector<NodeId> seq;

        [[nodiscard]] int z() const { return seq.empty() ? 0 : static_cast<int>(seq.size()) - 1; }
    };

    // Per-vehicle subproblems. `v` and `t` always contain the base.
    struct Partition {
        struct Block {
            std::vector<NodeId> v;
            std::vector<NodeId> t;
            std::vector<NodeId> w;

            friend bool operator==(const Block &, const Block &) = default;
        };
        std::vector<Block> blocks;

        friend bool operator==(const Partition &, const Partition &) = default;
    };

    struct Phase1Config {
        GeniConfig geni;
        int sector_t = 10;
        bool sector_augment = true;
    };

    namespace detail {

        // Shared append/cover rule of the greedy and sweep builders. L = T* u W.
        class GiantBuilder {
        public:
            explicit GiantBuilder(const Instance &inst)
                : inst_(inst), in_l_(static_cast<std::size_t>(inst.num_nodes()), 0), on_route_(static_cast<std::size_t>(inst.num_v()), 0) {
                for (NodeId i = 1; i < inst.num_v(); ++i) {
                    if (inst.is_t(i)) in_l_[static_cast<std::size_t>(i)] = 1;
                }
                for (NodeId j = inst.num_v(); j < inst.num_nodes(); ++j) in_l_[static_cast<std::size_t>(j)] = 1;
                route_.seq.push_back(base_node);
                on_route_[0] = 1;
            }

            [[nodiscard]] bool in_l(NodeId i) const { return in_l_[static_cast<std::size_t>(i)] != 0; }
            [[nodiscard]] NodeId last() const { return last_; }

            [[nodiscard]] bool empty() const {
                return std::none_of(in_l_.begin(), in_l_.end(), [](char c) { return c != 0; });
            }

            void take(NodeId h) {
                if (inst_.is_t(h)) {
                    append(h);
                    in_l_[static_cast<std::size_t>(h)] = 0;
                    for (NodeId j : inst_.covered_by(h)) in_l_[static_cast<std::size_t>(j)] = 0;
                    return;
                }
                const auto &sh = inst_.coverers(h);
                if (sh.empty()) {
                    throw std::logic_error("W node " + std::to_string(inst_.label(h)) + " has no coverer; preprocess first");
                }
                NodeId pick = -1;
                int pick_gain = -1;
                for (NodeId l : sh) {
                    int gain = 0;
                    for (NodeId j : inst_.covered_by(l)) gain += in_l(j);
                    const bool wins = gain > pick_gain ||
                                      (gain == pick_gain && (inst_.d(last_, l) < inst_.d(last_, pick) ||
                                                             (inst_.d(last_, l) == inst_.d(last_, pick) && l < pick)));
                    if (wins) {
                        pick = l;
                        pick_gain = gain;
                    }
                }
                append(pick);
                for (NodeId j : inst_.covered_by(pick)) in_l_[static_cast<std::size_t>(j)] = 0;
                in_l_[static_cast<std::size_t>(h)] = 0;
            }

            GiantRoute finish() { return std::move(route_); }

        private:
            void append(NodeId i) {
                // A node already on R is not appended twice.
                if (!on_route_[static_cast<std::size_t>(i)]) {
                    route_.seq.push_back(i);
                    on_route_[static_cast<std::size_t>(i)] = 1;
                }
                last_ = i;
            }

            const Instance &inst_;
            std::vector<char> in_l_;
            std::vector<char> on_route_;
            GiantRoute route_;
            NodeId last_ = base_node;
        };

        // Counterclockwise angle of p around `centre`, in [0, 2pi). Coincident points get 0.
        inline double polar_angle(const Point &centre, const Point &p) {
            if (p.x == centre.x && p.y == centre.y) return 0.0;
            double a = std::atan2(p.y - centre.y, p.x - centre.x);
            if (a < 0.0) a += 2.0 * std::numbers::pi;
            if (a >= 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
            return a;
        }

        inline double normalise_angle(double a) {
            const double full = 2.0 * std::numbers::pi;
            a = std::fmod(a, full);
            if (a < 0.0) a += full;
            if (a >= full) a -= full;
            return a;
        }

    }  // namespace detail

    /// Giant route by nearest neighbour over L = T* u W. A T node is appended as is; a W node
    /// is replaced by the coverer covering the most nodes still in L (ties: nearest to the
    /// previous node, then lowest id).
    inline GiantRoute greedy_giant(const Instance &inst) {
        detail::GiantBuilder builder(inst);
        while (!builder.empty()) {
            NodeId pick = -1;
            double best = std::numeric_limits<double>::infinity();
            for (NodeId h = 1; h < inst.num_nodes(); ++h) {
                if (!builder.in_l(h)) continue;
                const double d = inst.d(builder.last(), h);
                if (d < best) {
                    best = d;
                    pick = h;
                }
            }
            builder.take(pick);
        }
        return builder.finish();
    }

    // Angle of every node of T* u W around the base, measured counterclockwise from the ray base -> hbar.
    inline double sweep_angle(const Instance &inst, NodeId hbar, NodeId h) {
        const Point &base = inst.point(base_node);
        const Point &p = inst.point(h);
        if (p.x == base.x && p.y == base.y) return 0.0;
        if (h == hbar) return 0.0;
        const double ref = detail::polar_angle(base, inst.point(hbar));
        return detail::normalise_angle(detail::polar_angle(base, p) - ref);
    }

    /// Giant route by sweeping T* u W in ascending angle from the ray base -> hbar
    /// (ties: nearer to the base first, then lower id), with the greedy append/cover rule.
    inline GiantRoute sweep_giant(const Instance &inst, NodeId hbar) {
        if (hbar <= 0 || hbar >= inst.num_nodes() || (inst.is_v(hbar) && !inst.is_t(hbar))) {
            throw std::invalid_argument("sweep reference node must be in T* or W");
        }
        struct Keyed {
            double angle;
            double radius;
            NodeId node;
        };
        std::vector<Keyed> order;
        for (NodeId h = 1; h < inst.num_nodes(); ++h) {
            if (inst.is_optional(h)) continue;
            order.push_back({sweep_angle(inst, hbar, h), inst.d(base_node, h), h});
        }
        std::sort(order.begin(), order.end(), [](const Keyed &a, const Keyed &b) {
            if (a.angle != b.angle) return a.angle < b.angle;
            if (a.radius != b.radius) return a.radius < b.radius;
            return a.node < b.node;
        });
        detail::GiantBuilder builder(inst);
        for (const auto &k : order) {
            if (builder.in_l(k.node)) builder.take(k.node);
        }
        return builder.finish();
    }

    // Giant route from the modified 1-CTP routine on the whole instance.
    inline GiantRoute routefirst_giant(const Instance &inst, const GeniConfig &cfg = {}) {
        const auto route = solve_1ctp(inst.v_nodes(), inst.t_nodes(), inst.w_nodes(), inst, cfg);
        return GiantRoute{route.seq};
    }

    /// Cuts the circular list R* = R \ {0}, rotated by `offset`, into q blocks of p + 1 nodes
    /// followed by m - q blocks of p nodes (p = floor(z / m), q = z - m p).
    ///
    /// Each W node is required only in the block holding its first coverer along R, so the
    /// w sets partition W.
    inline Partition split_giant(const GiantRoute &g, int m, int offset, const Instance &inst) {
        const int z = g.z();
        if (m < 1) throw std::invalid_argument("m must be >= 1");
        if (z < m) {
            throw InfeasibleSplit("giant route has " + std::to_string(z) + " nodes, fewer than m = " + std::to_string(m));
        }
        if (offset < 0 || offset >= z) throw std::invalid_argument("split offset out of range");
        const int p = z / m;
        const int q = z - m * p;

        std::vector<int> block_of(static_cast<std::size_t>(inst.num_v()), -1);
        Partition part;
        part.blocks.resize(static_cast<std::size_t>(m));
        int cursor = 0;
        for (int k = 0; k < m; ++k) {
            auto &blk = part.blocks[static_cast<std::size_t>(k)];
            blk.v.push_back(base_node);
            blk.t.push_back(base_node);
            const int size = k < q ? p + 1 : p;
            for (int s = 0; s < size; ++s, ++cursor) {
                const NodeId i = g.seq[static_cast<std::size_t>(1 + (offset + cursor) % z)];
                blk.v.push_back(i);
                if (inst.is_t(i)) blk.t.push_back(i);
                block_of[static_cast<std::size_t>(i)] = k;
            }
        }

        std::vector<char> assigned(static_cast<std::size_t>(inst.num_nodes()), 0);
        for (std::size_t a = 1; a < g.seq.size(); ++a) {
            const NodeId i = g.seq[a];
            for (NodeId j : inst.covered_by(i)) {
                if (assigned[static_cast<std::size_t>(j)]) continue;
                assigned[static_cast<std::size_t>(j)] = 1;
                part.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(i)])].w.push_back(j);
            }
        }
        for (auto &blk : part.blocks) {
            std::sort(blk.v.begin(), blk.v.end());
            std::sort(blk.t.begin(), blk.t.end());
            std::sort(blk.w.begin(), blk.w.end());
        }
        return part;
    }

    // Sector (0-based) holding node h for m equal sectors rotated by shift_index * 360/t_total degrees.
    inline int sector_of(const Instance &inst, NodeId h, int m, int shift_index, int t_total) {
        const double width = 2.0 * std::numbers::pi / m;
        const double rotation = 2.0 * std::numbers::pi * static_cast<double>(shift_index % t_total) / t_total;
        const double a = detail::normalise_angle(detail::polar_angle(inst.point(base_node), inst.point(h)) - rotation);
        return std::min(static_cast<int>(a / width), m - 1);
    }

    /// Geographic partition into m circular sectors around the base. With `augment`, every
    /// coverer of a sector's W nodes joins that sector's v set so each subproblem is coverable.
    inline Partition sector_partition(const Instance &inst, int shift_index, int t_total = 10, bool augment = true) {
        if (t_total < 1 || shift_index < 0) throw std::invalid_argument("sector shift out of range");
        const int m = inst.m();
        Partition part;
        part.blocks.resize(static_cast<std::size_t>(m));
        for (auto &blk : part.blocks) {
            blk.v.push_back(base_node);
            blk.t.push_back(base_node);
        }
        for (NodeId h = 1; h < inst.num_nodes(); ++h) {
            auto &blk = part.blocks[static_cast<std::size_t>(sector_of(inst, h, m, shift_index, t_total))];
            if (inst.is_w(h)) {
                blk.w.push_back(h);
            } else {
                blk.v.push_back(h);
                if (inst.is_t(h)) blk.t.push_back(h);
            }
        }
        if (augment) {
            for (auto &blk : part.blocks) {
                for (NodeId j : blk.w) {
                    for (NodeId i : inst.coverers(j)) {
                        if (std::find(blk.v.begin(), blk.v.end(), i) == blk.v.end()) blk.v.push_back(i);
                    }
                }
                std::sort(blk.v.begin(), blk.v.end());
            }
        }
        return part;
    }

    // Number of list-split outer iterations: p + 1 when m does not divide z, else p.
    inline int list_iteration_count(int z, int m) {
        if (m == 1) return 1;
        const int p = z / m;
        return z % m != 0 ? p + 1 : p;
    }

    /// All partitions of one heuristic run.
    ///
    /// Greedy and route-first build their giant route once and vary the split offset.
    /// Sweep rebuilds the giant route per iteration, using the iteration-th node of T* u W
    /// (ascending id) as reference, and splits at offset 0. Sector yields t shifted sectors.
    inline std::vector<Partition> outer_iterations(HeuristicTag tag, const Instance &inst, const Phase1Config &cfg = {}) {
        std::vector<Partition> out;
        const int m = inst.m();
        switch (tag) {
            case HeuristicTag::greedy_selection:
            case HeuristicTag::route_first: {
                const GiantRoute g = tag == HeuristicTag::greedy_selection ? greedy_giant(inst) : routefirst_giant(inst, cfg.geni);
                if (g.z() < m) {
                    throw InfeasibleSplit("giant route has fewer than m nodes");
                }
                const int count = list_iteration_count(g.z(), m);
                for (int offset = 0; offset < count; ++offset) out.push_back(split_giant(g, m, offset, inst));
                break;
            }
            case HeuristicTag::sweep: {
                std::vector<NodeId> refs;
                for (NodeId h = 1; h < inst.num_nodes(); ++h) {
                    if (!inst.is_optional(h)) refs.push_back(h);
                }
                if (refs.empty()) throw InfeasibleSplit("nothing to sweep: T* and W are empty");
                const GiantRoute first = sweep_giant(inst, refs.front());
                if (first.z() < m) throw InfeasibleSplit("giant route has fewer than m nodes");
                const int count = list_iteration_count(first.z(), m);
                for (int it = 0; it < count; ++it) {
                    const GiantRoute g = it == 0 ? first : sweep_giant(inst, refs[static_cast<std::size_t>(it) % refs.size()]);
                    if (g.z() < m) continue;
                    out.push_back(split_giant(g, m, 0, inst));
                }
                break;
            }
            case HeuristicTag::sector_partition:
                for (int s = 0; s < cfg.sector_t; ++s) out.push_back(sector_partition(inst, s, cfg.sector_t, cfg.sector_augment));
                break;
        }
        return out;
    }

}  // namespace mctp
