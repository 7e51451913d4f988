#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mctp {

    // Index into an instance. 0 is the base, [0, n] is V and [n+1, n+l] is W.
    using NodeId = int;

    inline constexpr NodeId base_node = 0;

    struct Point {
        double x = 0.0;
        double y = 0.0;

        friend bool operator==(const Point &, const Point &) = default;
    };

    inline double euclidean(const Point &a, const Point &b) {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    // Dense symmetric matrix of pairwise Euclidean distances.
    class DistanceMatrix {
    public:
        DistanceMatrix() = default;

        explicit DistanceMatrix(std::span<const Point> coords) : n_(coords.size()), data_(n_ * n_, 0.0) {
            if (n_ < 2) {
                throw InvalidInstance("distance matrix needs at least 2 points, got " + std::to_string(n_));
            }
            for (std::size_t i = 0; i < n_; ++i) {
                for (std::size_t j = i + 1; j < n_; ++j) {
                    const double d = euclidean(coords[i], coords[j]);
                    data_[i * n_ + j] = d;
                    data_[j * n_ + i] = d;
                }
            }
        }

        [[nodiscard]] double operator()(NodeId i, NodeId j) const {
            return data_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
        }

        [[nodiscard]] std::size_t size() const { return n_; }

        friend bool operator==(const DistanceMatrix &, const DistanceMatrix &) = default;

    private:
        std::size_t n_ = 0;
        std::vector<double> data_;
    };

    inline DistanceMatrix build_distance_matrix(std::span<const Point> coords) {
        return DistanceMatrix(coords);
    }

    // Coverage relation between W and V.
    //   s[j]   : nodes of V that cover j (empty for j outside W)
    //   cov[i] : nodes of W covered by i (empty for i outside V)
    // Both are indexed by global NodeId and kept sorted.
    struct CoverSets {
        std::vector<std::vector<NodeId>> s;
        std::vector<std::vector<NodeId>> cov;

        friend bool operator==(const CoverSets &, const CoverSets &) = default;
    };

    class Instance {
    public:
        Instance() = default;

        // `num_v` counts V including the base; nodes [num_v, coords.size()) are W.
        // `in_t` has one flag per V node. `ids` are external labels (defaults to the index).
        Instance(std::vector<Point> coords, int num_v, std::vector<char> in_t, int m, double c, int r,
                 std::vector<int> ids = {})
            : coords_(std::move(coords)), ids_(std::move(ids)), num_v_(num_v), in_t_(std::move(in_t)), m_(m), c_(c), r_(r) {
            validate();
            dist_ = DistanceMatrix(coords_);
            cover_ = build_cover(/*include_t=*/false);
        }

        [[nodiscard]] int num_nodes() const { return static_cast<int>(coords_.size()); }
        [[nodiscard]] int num_v() const { return num_v_; }
        [[nodiscard]] int num_w() const { return num_nodes() - num_v_; }
        [[nodiscard]] int m() const { return m_; }
        [[nodiscard]] double c() const { return c_; }
        [[nodiscard]] int r() const { return r_; }

        [[nodiscard]] bool is_v(NodeId i) const { return i >= 0 && i < num_v_; }
        [[nodiscard]] bool is_w(NodeId i) const { return i >= num_v_ && i < num_nodes(); }
        [[nodiscard]] bool is_t(NodeId i) const { return is_v(i) && in_t_[static_cast<std::size_t>(i)] != 0; }
        [[nodiscard]] bool is_optional(NodeId i) const { return is_v(i) && !is_t(i); }

        [[nodiscard]] const std::vector<Point> &coords() const { return coords_; }
        [[nodiscard]] const Point &point(NodeId i) const { return coords_[static_cast<std::size_t>(i)]; }
        [[nodiscard]] int label(NodeId i) const { return ids_[static_cast<std::size_t>(i)]; }
        [[nodiscard]] const std::vector<int> &labels() const { return ids_; }
        [[nodiscard]] const std::vector<char> &t_flags() const { return in_t_; }

        [[nodiscard]] double d(NodeId i, NodeId j) const { return dist_(i, j); }
        [[nodiscard]] const DistanceMatrix &dist() const { return dist_; }
        [[nodiscard]] const CoverSets &cover() const { return cover_; }

        // S_j restricted to V \ T.
        [[nodiscard]] const std::vector<NodeId> &coverers(NodeId j) const { return cover_.s[static_cast<std::size_t>(j)]; }
        // C_i, the W nodes covered by i.
        [[nodiscard]] const std::vector<NodeId> &covered_by(NodeId i) const { return cover_.cov[static_cast<std::size_t>(i)]; }

        [[nodiscard]] bool covers(NodeId i, NodeId j) const { return dist_(i, j) <= c_; }

        [[nodiscard]] std::vector<NodeId> t_nodes() const {
            std::vector<NodeId> out;
            for (NodeId i = 0; i < num_v_; ++i) {
                if (is_t(i)) out.push_back(i);
            }
            return out;
        }

        [[nodiscard]] std::vector<NodeId> optional_nodes() const {
            std::vector<NodeId> out;
            for (NodeId i = 0; i < num_v_; ++i) {
                if (!is_t(i)) out.push_back(i);
            }
            return out;
        }

        [[nodiscard]] std::vector<NodeId> v_nodes() const {
            std::vector<NodeId> out(static_cast<std::size_t>(num_v_));
            std::iota(out.begin(), out.end(), 0);
            return out;
        }

        [[nodiscard]] std::vector<NodeId> w_nodes() const {
            std::vector<NodeId> out;
            for (NodeId j = num_v_; j < num_nodes(); ++j) out.push_back(j);
            return out;
        }

        // Coverage over all of V, T included (the unrestricted S_j).
        [[nodiscard]] CoverSets raw_cover_sets() const { return build_cover(/*include_t=*/true); }

        Instance with_params(int m, int r) const {
            return Instance(coords_, num_v_, in_t_, m, c_, r, ids_);
        }

        friend bool operator==(const Instance &a, const Instance &b) {
            return a.coords_ == b.coords_ && a.ids_ == b.ids_ && a.num_v_ == b.num_v_ && a.in_t_ == b.in_t_ &&
                   a.m_ == b.m_ && a.c_ == b.c_ && a.r_ == b.r_;
        }

    private:
        void validate() {
            if (coords_.size() < 2) {
                throw InvalidInstance("an instance needs at least 2 nodes");
            }
            if (num_v_ < 1 || num_v_ > num_nodes()) {
                throw InvalidInstance("|V| out of range");
            }
            if (in_t_.size() != static_cast<std::size_t>(num_v_)) {
                throw InvalidInstance("T flags must have one entry per V node");
            }
            if (in_t_[0] == 0) {
                throw InvalidInstance("the base must belong to T");
            }
            if (m_ < 1) throw InvalidInstance("m must be >= 1");
            if (r_ < 0) throw InvalidInstance("r must be >= 0");
            if (!(c_ >= 0.0) || !std::isfinite(c_)) throw InvalidInstance("c must be finite and >= 0");
            for (const auto &p : coords_) {
                if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidInstance("non-finite coordinate");
            }
            if (ids_.empty()) {
                ids_.resize(coords_.size());
                std::iota(ids_.begin(), ids_.end(), 0);
            }
            if (ids_.size() != coords_.size()) throw InvalidInstance("one id per node required");
            if (ids_[0] != 0) throw InvalidInstance("the base must carry id 0");
            std::unordered_set<int> seen;
            for (int id : ids_) {
                if (id < 0) throw InvalidInstance("negative node id " + std::to_string(id));
                if (!seen.insert(id).second) throw InvalidInstance("duplicate node id " + std::to_string(id));
            }
        }

        CoverSets build_cover(bool include_t) const {
            CoverSets cs;
            cs.s.resize(coords_.size());
            cs.cov.resize(coords_.size());
            for (NodeId j = num_v_; j < num_nodes(); ++j) {
                for (NodeId i = 0; i < num_v_; ++i) {
                    if (!include_t && is_t(i)) continue;
                    if (dist_(i, j) <= c_) {
                        cs.s[static_cast<std::size_t>(j)].push_back(i);
                        cs.cov[static_cast<std::size_t>(i)].push_back(j);
                    }
                }
            }
            return cs;
        }

        std::vector<Point> coords_;
        std::vector<int> ids_;
        int num_v_ = 0;
        std::vector<char> in_t_;
        int m_ = 1;
        double c_ = 0.0;
        int r_ = 0;
        DistanceMatrix dist_;
        CoverSets cover_;
    };

    // s[j] = { i in V \ T : d(i, j) <= c }, cov its inverse. Exact comparison, no epsilon.
    inline CoverSets compute_cover_sets(const Instance &inst) {
        return inst.cover();
    }

    // True when every W node has >= 2 coverers in V \ T and none in T.
    inline bool satisfies_assumptions(const Instance &inst) {
        const auto raw = inst.raw_cover_sets();
        for (NodeId j = inst.num_v(); j < inst.num_nodes(); ++j) {
            const auto &sj = raw.s[static_cast<std::size_t>(j)];
            if (sj.size() < 2) return false;
            if (std::any_of(sj.begin(), sj.end(), [&](NodeId i) { return inst.is_t(i); })) return false;
        }
        return true;
    }

    /// Reduces an instance so that every W node has at least two coverers, none of them in T.
    ///
    /// Rules are applied until nothing changes:
    ///   (a) a W node with exactly one coverer promotes that coverer into T and is dropped;
    ///   (b) a W node already covered by a T node is dropped;
    ///   (c) a V \ T node covering no W node is dropped.
    /// Surviving nodes keep their relative order and external labels.
    inline Instance preprocess(const Instance &inst) {
        const int nv = inst.num_v();
        std::vector<char> in_t = inst.t_flags();
        std::vector<char> keep_w(static_cast<std::size_t>(inst.num_w()), 1);
        const auto raw = inst.raw_cover_sets();

        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId j = nv; j < inst.num_nodes(); ++j) {
                auto &alive = keep_w[static_cast<std::size_t>(j - nv)];
                if (!alive) continue;
                const auto &sj = raw.s[static_cast<std::size_t>(j)];
                if (std::any_of(sj.begin(), sj.end(), [&](NodeId i) { return in_t[static_cast<std::size_t>(i)] != 0; })) {
                    alive = 0;
                    changed = true;
                    continue;
                }
                if (sj.empty()) {
                    throw InfeasibleInstance("W node " + std::to_string(inst.label(j)) + " has no node of V within c");
                }
                if (sj.size() == 1) {
                    in_t[static_cast<std::size_t>(sj.front())] = 1;
                    alive = 0;
                    changed = true;
                }
            }
        }

        std::vector<NodeId> kept_v;
        for (NodeId i = 0; i < nv; ++i) {
            if (in_t[static_cast<std::size_t>(i)]) {
                kept_v.push_back(i);
                continue;
            }
            const auto &ci = raw.cov[static_cast<std::size_t>(i)];
            if (std::any_of(ci.begin(), ci.end(), [&](NodeId j) { return keep_w[static_cast<std::size_t>(j - nv)] != 0; })) {
                kept_v.push_back(i);
            }
        }

        std::vector<Point> coords;
        std::vector<int> ids;
        std::vector<char> t_flags;
        for (NodeId i : kept_v) {
            coords.push_back(inst.point(i));
            ids.push_back(inst.label(i));
            t_flags.push_back(in_t[static_cast<std::size_t>(i)]);
        }
        for (NodeId j = nv; j < inst.num_nodes(); ++j) {
            if (keep_w[static_cast<std::size_t>(j - nv)]) {
                coords.push_back(inst.point(j));
                ids.push_back(inst.label(j));
            }
        }
        if (coords.size() < 2) {
            throw InfeasibleInstance("preprocessing left fewer than 2 nodes");
        }
        return Instance(std::move(coords), static_cast<int>(kept_v.size()), std::move(t_flags), inst.m(), inst.c(), inst.r(),
                        std::move(ids));
    }

    /// Smallest radius meeting both generator lower bounds: every W node reaches its second
    /// nearest V node, and every V \ T node reaches its nearest W node.
    /// `num_v` and `in_t` follow the Instance layout.
    inline double select_c(std::span<const Point> coords, int num_v, std::span<const char> in_t) {
        const int total = static_cast<int>(coords.size());
        if (num_v >= total) {
            throw InvalidInstance("select_c needs a non-empty W");
        }
        double c = 0.0;
        for (int j = num_v; j < total; ++j) {
            double first = std::numeric_limits<double>::infinity();
            double second = std::numeric_limits<double>::infinity();
            for (int i = 0; i < num_v; ++i) {
                const double d = euclidean(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]);
                if (d < first) {
                    second = first;
                    first = d;
                } else if (d < second) {
                    second = d;
                }
            }
            // With a single V node the second nearest does not exist; fall back to the nearest.
            c = std::max(c, std::isfinite(second) ? second : first);
        }
        for (int h = 0; h < num_v; ++h) {
            if (in_t[static_cast<std::size_t>(h)]) continue;
            double nearest = std::numeric_limits<double>::infinity();
            for (int j = num_v; j < total; ++j) {
                nearest = std::min(nearest, euclidean(coords[static_cast<std::size_t>(h)], coords[static_cast<std::size_t>(j)]));
            }
            c = std::max(c, nearest);
        }
        return c;
    }

}  // namespace mctp
