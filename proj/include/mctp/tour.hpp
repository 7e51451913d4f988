#pragma once

#include "model.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mctp {

    struct GeniConfig {
        enum class Mode { full, simple };

        int p = 5;  // neighbourhood size
        Mode mode = Mode::full;
    };

    inline GeniConfig::Mode parse_geni_mode(const std::string &text) {
        if (text == "full") return GeniConfig::Mode::full;
        if (text == "simple") return GeniConfig::Mode::simple;
        throw std::invalid_argument("geni mode must be 'full' or 'simple', got '" + text + "'");
    }

    // Rotates a cyclic sequence so that the base comes first, if it is present.
    inline void rotate_to_base(std::vector<NodeId> &seq) {
        auto it = std::find(seq.begin(), seq.end(), base_node);
        if (it != seq.end()) std::rotate(seq.begin(), it, seq.end());
    }

    // For each position of a tour, the positions of its p nearest fellow tour nodes.
    class TourNeighbors {
    public:
        // `excluded`, when set, is a position left out of every list (a node being removed).
        TourNeighbors(std::span<const NodeId> tour, int p, const Instance &inst,
                      std::size_t excluded = std::numeric_limits<std::size_t>::max())
            : near_(tour.size()) {
            const std::size_t n = tour.size();
            std::vector<std::size_t> order(n);
            for (std::size_t a = 0; a < n; ++a) {
                order.clear();
                for (std::size_t b = 0; b < n; ++b) {
                    if (b != a && b != excluded) order.push_back(b);
                }
                const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(p, 0)), order.size());
                std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                                  [&](std::size_t x, std::size_t y) {
                                      const double dx = inst.d(tour[a], tour[x]);
                                      const double dy = inst.d(tour[a], tour[y]);
                                      return dx < dy || (dx == dy && tour[x] < tour[y]);
                                  });
                near_[a].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
            }
        }

        [[nodiscard]] const std::vector<std::size_t> &of(std::size_t pos) const { return near_[pos]; }

    private:
        std::vector<std::vector<std::size_t>> near_;
    };

    namespace detail {

        // Positions of the p tour nodes nearest to an outside node v.
        inline std::vector<std::size_t> nearest_to(std::span<const NodeId> tour, NodeId v, int p, const Instance &inst) {
            std::vector<std::size_t> order(tour.size());
            for (std::size_t a = 0; a < tour.size(); ++a) order[a] = a;
            const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(p, 0)), order.size());
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                              [&](std::size_t x, std::size_t y) {
                                  const double dx = inst.d(v, tour[x]);
                                  const double dy = inst.d(v, tour[y]);
                                  return dx < dy || (dx == dy && tour[x] < tour[y]);
                              });
            order.resize(keep);
            return order;
        }

        enum class MoveKind { none, plain, type1, type2 };

        // An insertion or removal, described on the forward tour or on its reversal.
        // Positions are offsets from `i` along the chosen orientation.
        struct Move {
            double delta = std::numeric_limits<double>::infinity();
            MoveKind kind = MoveKind::none;
            bool reversed = false;
            std::size_t i = 0;
            std::size_t dj = 0;
            std::size_t dk = 0;
            std::size_t dl = 0;
        };

        // View of a tour in one orientation. Position q of the reversed view is n - 1 - q forward.
        struct Oriented {
            std::span<const NodeId> tour;
            bool reversed;

            [[nodiscard]] std::size_t n() const { return tour.size(); }
            [[nodiscard]] std::size_t to_forward(std::size_t q) const { return reversed ? n() - 1 - q : q; }
            [[nodiscard]] std::size_t from_forward(std::size_t q) const { return reversed ? n() - 1 - q : q; }
            [[nodiscard]] NodeId at(std::size_t q) const { return tour[to_forward(q % n())]; }
        };

        inline bool better(const Move &a, const Move &b) { return a.delta < b.delta - 1e-12; }

        inline Move best_plain_insertion(std::span<const NodeId> tour, NodeId v, const Instance &inst) {
            Move best;
            const std::size_t n = tour.size();
            if (n == 0) return {0.0, MoveKind::plain};
            if (n == 1) return {2.0 * inst.d(tour[0], v), MoveKind::plain};
            for (std::size_t x = 0; x < n; ++x) {
                const NodeId a = tour[x];
                const NodeId b = tour[(x + 1) % n];
                const double delta = inst.d(a, v) + inst.d(v, b) - inst.d(a, b);
                if (better({delta}, best)) best = {delta, MoveKind::plain, false, x};
            }
            return best;
        }

        // GENI Type I and Type II insertions of v in one orientation.
        inline void scan_geni(const Oriented &o, NodeId v, std::span<const std::size_t> v_near, const TourNeighbors &nb,
                              const Instance &inst, Move &best) {
            const std::size_t n = o.n();
            auto d = [&](NodeId a, NodeId b) { return inst.d(a, b); };
            auto off = [&](std::size_t i, std::size_t t) { return o.at(i + t); };
            auto oriented_near = [&](std::size_t q) {
                std::vector<std::size_t> out;
                for (std::size_t f : nb.of(o.to_forward(q))) out.push_back(o.from_forward(f));
                return out;
            };

            for (std::size_t fi : v_near) {
                const std::size_t i = o.from_forward(fi);
                const std::size_t ip1 = (i + 1) % n;
                const auto near_ip1 = oriented_near(ip1);
                for (std::size_t fj : v_near) {
                    const std::size_t j = o.from_forward(fj);
                    if (j == i) continue;
                    const std::size_t dj = (j + n - i) % n;
                    const std::size_t jp1 = (j + 1) % n;
                    const NodeId vi = off(i, 0), vi1 = off(i, 1), vj = off(i, dj), vj1 = off(i, dj + 1);
                    const double head = d(vi, v) + d(v, vj) - d(vi, vi1) - d(vj, vj1);

                    for (std::size_t k : near_ip1) {
                        const std::size_t dk = (k + n - i) % n;
                        if (dk <= dj || dk == 0) continue;
                        const NodeId vk = off(i, dk), vk1 = off(i, dk + 1);
                        // Type I
                        const double delta1 = head + d(vi1, vk) + d(vj1, vk1) - d(vk, vk1);
                        if (better({delta1}, best)) best = {delta1, MoveKind::type1, o.reversed, i, dj, dk};

                        // Type II
                        if (dk < dj + 2) continue;
                        const NodeId vkm1 = off(i, dk - 1);
                        for (std::size_t l : oriented_near(jp1)) {
                            const std::size_t dl = (l + n - i) % n;
                            if (dl < 2 || dl > dj) continue;
                            const NodeId vl = off(i, dl), vlm1 = off(i, dl - 1);
                            const double delta2 = d(vi, v) + d(v, vj) + d(vl, vj1) + d(vkm1, vlm1) + d(vi1, vk) -
                                                  d(vi, vi1) - d(vlm1, vl) - d(vj, vj1) - d(vkm1, vk);
                            if (better({delta2}, best)) best = {delta2, MoveKind::type2, o.reversed, i, dj, dk, dl};
                        }
                    }
                }
            }
        }

        inline Move best_insertion(std::span<const NodeId> tour, NodeId v, const Instance &inst, const GeniConfig &cfg,
                                   const TourNeighbors *nb) {
            Move best = best_plain_insertion(tour, v, inst);
            // GENI needs at least three nodes besides the base.
            if (cfg.mode == GeniConfig::Mode::simple || tour.size() < 4) return best;
            std::optional<TourNeighbors> local;
            if (nb == nullptr) {
                local.emplace(tour, cfg.p, inst);
                nb = &*local;
            }
            const auto v_near = nearest_to(tour, v, cfg.p, inst);
            scan_geni({tour, false}, v, v_near, *nb, inst, best);
            scan_geni({tour, true}, v, v_near, *nb, inst, best);
            return best;
        }

        inline std::vector<NodeId> apply_insertion(std::span<const NodeId> tour, NodeId v, const Move &mv) {
            std::vector<NodeId> out;
            out.reserve(tour.size() + 1);
            if (mv.kind == MoveKind::plain) {
                if (tour.empty()) return {v};
                out.assign(tour.begin(), tour.begin() + static_cast<std::ptrdiff_t>(mv.i + 1));
                out.push_back(v);
                out.insert(out.end(), tour.begin() + static_cast<std::ptrdiff_t>(mv.i + 1), tour.end());
                return out;
            }
            const Oriented o{tour, mv.reversed};
            const std::size_t n = o.n();
            auto off = [&](std::size_t t) { return o.at(mv.i + t); };
            auto down = [&](std::size_t from, std::size_t to) {  // inclusive, from >= to
                for (std::size_t t = from + 1; t-- > to;) out.push_back(off(t));
            };
            auto up = [&](std::size_t from, std::size_t to) {  // inclusive
                for (std::size_t t = from; t <= to; ++t) out.push_back(off(t));
            };
            out.push_back(off(0));
            out.push_back(v);
            if (mv.kind == MoveKind::type1) {
                down(mv.dj, 1);
                down(mv.dk, mv.dj + 1);
                if (mv.dk + 1 <= n - 1) up(mv.dk + 1, n - 1);
            } else {
                down(mv.dj, mv.dl);
                up(mv.dj + 1, mv.dk - 1);
                down(mv.dl - 1, 1);
                up(mv.dk, n - 1);
            }
            return out;
        }

        // US Type I removal of the node at forward position `pos`, in one orientation.
        inline void scan_us(const Oriented &o, std::size_t i, const TourNeighbors &nb, const Instance &inst, Move &best) {
            const std::size_t n = o.n();
            auto d = [&](NodeId a, NodeId b) { return inst.d(a, b); };
            auto off = [&](std::size_t t) { return o.at(i + t); };
            auto oriented_near = [&](std::size_t q) {
                std::vector<std::size_t> out;
                for (std::size_t f : nb.of(o.to_forward(q))) out.push_back(o.from_forward(f));
                return out;
            };
            const NodeId vi = off(0), next = off(1), prev = off(n - 1);
            const double cut = d(prev, vi) + d(vi, next);
            for (std::size_t j : oriented_near((i + 1) % n)) {
                const std::size_t dj = (j + n - i) % n;
                if (dj < 2 || dj > n - 2) continue;
                const NodeId vj = off(dj), vj1 = off(dj + 1);
                for (std::size_t k : oriented_near((i + n - 1) % n)) {
                    const std::size_t dk = (k + n - i) % n;
                    if (dk < 1 || dk >= dj) continue;
                    const NodeId vk = off(dk), vk1 = off(dk + 1);
                    const double delta = d(prev, vk) + d(next, vj) + d(vk1, vj1) - cut - d(vk, vk1) - d(vj, vj1);
                    if (better({delta}, best)) best = {delta, MoveKind::type1, o.reversed, i, dj, dk};
                }
            }
        }

        inline Move best_removal(std::span<const NodeId> tour, std::size_t pos, const Instance &inst, const GeniConfig &cfg) {
            const std::size_t n = tour.size();
            const NodeId prev = tour[(pos + n - 1) % n], vi = tour[pos], next = tour[(pos + 1) % n];
            Move best{inst.d(prev, next) - inst.d(prev, vi) - inst.d(vi, next), MoveKind::plain, false, pos};
            // US needs at least three nodes left after the removal.
            if (cfg.mode == GeniConfig::Mode::simple || n < 5) return best;
            const TourNeighbors nb(tour, cfg.p, inst, pos);
            scan_us({tour, false}, pos, nb, inst, best);
            scan_us({tour, true}, n - 1 - pos, nb, inst, best);
            return best;
        }

        inline std::vector<NodeId> apply_removal(std::span<const NodeId> tour, const Move &mv) {
            if (mv.kind == MoveKind::plain) {
                std::vector<NodeId> out(tour.begin(), tour.end());
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(mv.i));
                return out;
            }
            const Oriented o{tour, mv.reversed};
            const std::size_t n = o.n();
            auto off = [&](std::size_t t) { return o.at(mv.i + t); };
            std::vector<NodeId> out;
            out.reserve(n - 1);
            for (std::size_t t = mv.dk; t >= 1; --t) out.push_back(off(t));
            for (std::size_t t = mv.dj; t > mv.dk; --t) out.push_back(off(t));
            for (std::size_t t = mv.dj + 1; t <= n - 1; ++t) out.push_back(off(t));
            return out;
        }

    }  // namespace detail

    // Cheapest GENI insertion cost of h into the tour (plain cheapest-edge insertion in simple mode).
    inline double geni_insertion_cost(std::span<const NodeId> tour, NodeId h, const Instance &inst, const GeniConfig &cfg,
                                      const TourNeighbors *nb = nullptr) {
        return detail::best_insertion(tour, h, inst, cfg, nb).delta;
    }

    /// Inserts h with the cheapest of: plain insertion on any tour edge, GENI Type I and
    /// GENI Type II insertions between two of h's p nearest tour nodes, in both orientations.
    /// Tours with fewer than three nodes besides the base only get plain insertion.
    inline Route geni_insert(const Route &tour, NodeId h, const Instance &inst, const GeniConfig &cfg = {}) {
        if (std::find(tour.seq.begin(), tour.seq.end(), h) != tour.seq.end()) {
            throw std::invalid_argument("node " + std::to_string(h) + " is already on the tour");
        }
        const auto mv = detail::best_insertion(tour.seq, h, inst, cfg, nullptr);
        Route out{detail::apply_insertion(tour.seq, h, mv)};
        rotate_to_base(out.seq);
        return out;
    }

    // Length change (<= 0 under the triangle inequality) of removing h with us_remove.
    inline double us_removal_delta(std::span<const NodeId> tour, NodeId h, const Instance &inst, const GeniConfig &cfg = {}) {
        const auto it = std::find(tour.begin(), tour.end(), h);
        if (it == tour.end()) throw std::invalid_argument("node " + std::to_string(h) + " is not on the tour");
        return detail::best_removal(tour, static_cast<std::size_t>(it - tour.begin()), inst, cfg).delta;
    }

    /// Removes h, reconnecting with the better of a direct splice of its two neighbours and
    /// US Type I unstringing over the p-neighbourhoods of those neighbours (both orientations).
    /// Removing a node from a 3-node tour leaves a 2-node tour the caller has to deal with.
    inline Route us_remove(const Route &tour, NodeId h, const Instance &inst, const GeniConfig &cfg = {}) {
        if (h == base_node) throw std::invalid_argument("the base cannot be removed from a route");
        const auto it = std::find(tour.seq.begin(), tour.seq.end(), h);
        if (it == tour.seq.end()) throw std::invalid_argument("node " + std::to_string(h) + " is not on the tour");
        const auto mv = detail::best_removal(tour.seq, static_cast<std::size_t>(it - tour.seq.begin()), inst, cfg);
        Route out{detail::apply_removal(tour.seq, mv)};
        rotate_to_base(out.seq);
        return out;
    }

}  // namespace mctp
