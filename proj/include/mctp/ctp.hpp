#pragma once

#include "tour.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mctp {

    // PRIMAL1 merit functions, applied in this order by solve_1ctp.
    enum class MeritVariant {
        log_ratio,  // c / log2(b)
        ratio,      // c / b
        cost,       // c
    };

    inline constexpr std::array<MeritVariant, 3> merit_sequence{MeritVariant::log_ratio, MeritVariant::ratio,
                                                                MeritVariant::cost};

    // `cost` is the insertion cost of a node, `newly_covered` how many uncovered W nodes it would cover.
    // log2(1) = 0, so the log variant falls back to the plain cost when newly_covered == 1.
    inline double merit(double cost, int newly_covered, MeritVariant variant) {
        if (newly_covered < 1) {
            throw NotACandidate("a node covering no new W node is not a merit candidate");
        }
        switch (variant) {
            case MeritVariant::log_ratio:
                return newly_covered == 1 ? cost : cost / std::log2(static_cast<double>(newly_covered));
            case MeritVariant::ratio:
                return cost / static_cast<double>(newly_covered);
            case MeritVariant::cost:
                return cost;
        }
        return cost;
    }

    // Optional record of what solve_1ctp did, for tests and diagnostics.
    struct OneCtpTrace {
        struct Pass {
            MeritVariant variant;
            std::vector<NodeId> inserted;
            std::vector<int> uncovered_after;  // uncovered W count after each insertion
            std::vector<NodeId> removed;
            double value = 0.0;                // tour length before redundancy removal
        };
        std::vector<Pass> passes;
        double best_value = std::numeric_limits<double>::infinity();
    };

    namespace detail {

        // Working state of one 1-CTP solve: visited set H, its tour and coverage counters.
        class OneCtpState {
        public:
            OneCtpState(std::span<const NodeId> v_set, std::span<const NodeId> t_set, std::span<const NodeId> w_set,
                        const Instance &inst)
                : inst_(inst), w_(w_set.begin(), w_set.end()) {
                for (NodeId t : t_set) add_unique(v_, t);
                for (NodeId i : v_set) add_unique(v_, i);
                for (NodeId t : t_set) add_unique(t_, t);
                in_t_.assign(static_cast<std::size_t>(inst.num_v()), 0);
                for (NodeId t : t_) in_t_[static_cast<std::size_t>(t)] = 1;
                in_h_.assign(static_cast<std::size_t>(inst.num_v()), 0);

                covers_.assign(static_cast<std::size_t>(inst.num_v()), {});
                std::vector<char> coverable(w_.size(), 0);
                for (NodeId i : v_) {
                    for (std::size_t a = 0; a < w_.size(); ++a) {
                        if (inst.covers(i, w_[a])) {
                            covers_[static_cast<std::size_t>(i)].push_back(static_cast<int>(a));
                            coverable[a] = 1;
                        }
                    }
                }
                for (std::size_t a = 0; a < w_.size(); ++a) {
                    if (!coverable[a]) {
                        throw InfeasibleInstance("W node " + std::to_string(inst.label(w_[a])) +
                                                 " cannot be covered from the subproblem's V");
                    }
                }
                count_.assign(w_.size(), 0);
                uncovered_ = static_cast<int>(w_.size());
            }

            [[nodiscard]] int uncovered() const { return uncovered_; }
            [[nodiscard]] const std::vector<NodeId> &tour() const { return tour_; }
            [[nodiscard]] const std::vector<NodeId> &candidates_pool() const { return v_; }
            [[nodiscard]] bool in_h(NodeId i) const { return in_h_[static_cast<std::size_t>(i)] != 0; }
            [[nodiscard]] bool in_t(NodeId i) const { return in_t_[static_cast<std::size_t>(i)] != 0; }

            [[nodiscard]] int newly_covered(NodeId i) const {
                int b = 0;
                for (int a : covers_[static_cast<std::size_t>(i)]) b += count_[static_cast<std::size_t>(a)] == 0;
                return b;
            }

            // True when every W node covered by i has another visited coverer.
            [[nodiscard]] bool redundant(NodeId i) const {
                for (int a : covers_[static_cast<std::size_t>(i)]) {
                    if (count_[static_cast<std::size_t>(a)] < 2) return false;
                }
                return true;
            }

            // initial tour over T: the base, the two T nodes nearest to it, then the rest by id.
            void build_initial_tour(const GeniConfig &cfg) {
                std::vector<NodeId> order = t_;
                std::sort(order.begin(), order.end());
                const NodeId anchor = in_t(base_node) ? base_node : order.front();
                std::vector<NodeId> rest;
                for (NodeId t : order) {
                    if (t != anchor) rest.push_back(t);
                }
                // ids ascending, so equal distances keep the lower id first
                std::stable_sort(rest.begin(), rest.end(), [&](NodeId a, NodeId b) { return inst_.d(anchor, a) < inst_.d(anchor, b); });
                std::vector<NodeId> seeds{anchor};
                for (std::size_t a = 0; a < std::min<std::size_t>(2, rest.size()); ++a) seeds.push_back(rest[a]);
                std::vector<NodeId> remaining(rest.begin() + static_cast<std::ptrdiff_t>(seeds.size() - 1), rest.end());
                std::sort(remaining.begin(), remaining.end());

                tour_.clear();
                for (NodeId s : seeds) {
                    tour_.push_back(s);
                    mark_visited(s);
                }
                for (NodeId t : remaining) insert(t, cfg);
            }

            void insert(NodeId i, const GeniConfig &cfg) {
                const auto mv = best_insertion(tour_, i, inst_, cfg, nullptr);
                tour_ = apply_insertion(tour_, i, mv);
                mark_visited(i);
            }

            void remove(NodeId i, const GeniConfig &cfg) {
                const auto pos = static_cast<std::size_t>(std::find(tour_.begin(), tour_.end(), i) - tour_.begin());
                const auto mv = best_removal(tour_, pos, inst_, cfg);
                tour_ = apply_removal(tour_, mv);
                in_h_[static_cast<std::size_t>(i)] = 0;
                for (int a : covers_[static_cast<std::size_t>(i)]) {
                    if (--count_[static_cast<std::size_t>(a)] == 0) ++uncovered_;
                }
            }

        private:
            static void add_unique(std::vector<NodeId> &out, NodeId i) {
                if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
            }

            void mark_visited(NodeId i) {
                in_h_[static_cast<std::size_t>(i)] = 1;
                for (int a : covers_[static_cast<std::size_t>(i)]) {
                    if (count_[static_cast<std::size_t>(a)]++ == 0) --uncovered_;
                }
            }

            const Instance &inst_;
            std::vector<NodeId> v_;
            std::vector<NodeId> t_;
            std::vector<NodeId> w_;
            std::vector<char> in_t_;
            std::vector<char> in_h_;
            std::vector<std::vector<int>> covers_;
            std::vector<int> count_;
            int uncovered_ = 0;
            std::vector<NodeId> tour_;
        };

    }  // namespace detail

    /// Modified 1-CTP routine on the subproblem (v_set, t_set, w_set).
    ///
    /// Starting from a tour over T, nodes of V \ H are added one at a time by the current
    /// merit function (insertion cost from GENI, benefit = newly covered W nodes) until every
    /// W node is covered. The tour value is then compared with the best so far (ties update).
    /// Between merit functions, visited optional nodes whose W nodes are all covered twice are
    /// unstrung with US, largest saving first. Merit functions run in the order log_ratio, ratio, cost.
    /// The returned tour is the best one seen, starting at the base when the base is in t_set.
    inline Route solve_1ctp(std::span<const NodeId> v_set, std::span<const NodeId> t_set, std::span<const NodeId> w_set,
                            const Instance &inst, const GeniConfig &cfg = {}, OneCtpTrace *trace = nullptr) {
        if (t_set.empty()) throw std::invalid_argument("solve_1ctp needs a non-empty T");
        detail::OneCtpState st(v_set, t_set, w_set, inst);
        st.build_initial_tour(cfg);

        double best_value = std::numeric_limits<double>::infinity();
        std::vector<NodeId> best_tour;

        for (std::size_t pass = 0; pass < merit_sequence.size(); ++pass) {
            const MeritVariant variant = merit_sequence[pass];
            OneCtpTrace::Pass record{variant, {}, {}, {}, 0.0};

            // insert the best merit candidate until W is covered.
            while (st.uncovered() > 0) {
                const TourNeighbors nb(st.tour(), cfg.p, inst);
                NodeId pick = -1;
                double pick_merit = std::numeric_limits<double>::infinity();
                double pick_cost = std::numeric_limits<double>::infinity();
                for (NodeId i : st.candidates_pool()) {
                    if (st.in_h(i)) continue;
                    const int b = st.newly_covered(i);
                    if (b == 0) continue;
                    const double c = detail::best_insertion(st.tour(), i, inst, cfg, &nb).delta;
                    const double f = merit(c, b, variant);
                    const bool wins = pick < 0 || f < pick_merit ||
                                      (f == pick_merit && (c < pick_cost || (c == pick_cost && i < pick)));
                    if (wins) {
                        pick = i;
                        pick_merit = f;
                        pick_cost = c;
                    }
                }
                if (pick < 0) {
                    throw InfeasibleInstance("1-CTP subproblem ran out of covering candidates");
                }
                st.insert(pick, cfg);
                record.inserted.push_back(pick);
                record.uncovered_after.push_back(st.uncovered());
            }

            // drop redundant optional nodes
            const double z = tour_length(st.tour(), inst);
            record.value = z;
            if (z <= best_value) {
                best_value = z;
                best_tour = st.tour();
            }
            if (pass + 1 == merit_sequence.size()) {
                if (trace) trace->passes.push_back(std::move(record));
                break;
            }

            struct Candidate {
                NodeId node;
                double saving;
            };
            std::vector<Candidate> removable;
            for (NodeId i : st.tour()) {
                if (st.in_t(i) || !st.redundant(i)) continue;
                removable.push_back({i, -us_removal_delta(st.tour(), i, inst, cfg)});
            }
            std::sort(removable.begin(), removable.end(), [](const Candidate &a, const Candidate &b) {
                return a.saving > b.saving || (a.saving == b.saving && a.node < b.node);
            });
            for (const auto &cand : removable) {
                if (!st.redundant(cand.node)) continue;
                st.remove(cand.node, cfg);
                record.removed.push_back(cand.node);
            }
            if (trace) trace->passes.push_back(std::move(record));
        }

        if (trace) trace->best_value = best_value;
        rotate_to_base(best_tour);
        return Route{std::move(best_tour)};
    }

}  // namespace mctp
