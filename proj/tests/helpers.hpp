#pragma once

#include "mctp/mctp.hpp"

#include <random>

namespace testutil {

    using mctp::Instance;
    using mctp::NodeId;
    using mctp::Point;

    // Nodes: base, then `t` further T nodes, then optional V nodes, then W nodes.
    inline Instance make(std::vector<Point> v_pts, int num_t, std::vector<Point> w_pts, double c, int m = 1, int r = 10) {
        const int nv = static_cast<int>(v_pts.size());
        std::vector<char> in_t(static_cast<std::size_t>(nv), 0);
        for (int i = 0; i < num_t; ++i) in_t[static_cast<std::size_t>(i)] = 1;
        v_pts.insert(v_pts.end(), w_pts.begin(), w_pts.end());
        return Instance(std::move(v_pts), nv, std::move(in_t), m, c, r);
    }

    inline std::vector<Point> random_points(std::mt19937 &g, int n, double lo = 0.0, double hi = 100.0) {
        std::uniform_real_distribution<double> u(lo, hi);
        std::vector<Point> out;
        for (int i = 0; i < n; ++i) {
            const double x = u(g);
            out.push_back({x, u(g)});
        }
        return out;
    }

    // Arc-by-arc length of a closed sequence, straight from coordinates.
    inline double cycle_length(const std::vector<NodeId> &seq, const Instance &inst) {
        double s = 0.0;
        for (std::size_t a = 0; a < seq.size(); ++a) {
            const Point &p = inst.point(seq[a]);
            const Point &q = inst.point(seq[(a + 1) % seq.size()]);
            s += std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y));
        }
        return seq.size() < 2 ? 0.0 : s;
    }

    // Every W node within c of some visited node (base included).
    inline bool covers_all(const std::vector<std::vector<NodeId>> &routes, const Instance &inst) {
        for (NodeId j = inst.num_v(); j < inst.num_nodes(); ++j) {
            bool ok = inst.d(0, j) <= inst.c();
            for (const auto &r : routes) {
                for (NodeId i : r) ok = ok || inst.d(i, j) <= inst.c();
            }
            if (!ok) return false;
        }
        return true;
    }

    // Optimal 1-CTP tour over t_set plus any subset of the other v_set nodes covering w_set.
    inline double one_ctp_optimum(const std::vector<NodeId> &v_set, const std::vector<NodeId> &t_set,
                                  const std::vector<NodeId> &w_set, const Instance &inst) {
        std::vector<NodeId> opt;
        for (NodeId i : v_set) {
            if (std::find(t_set.begin(), t_set.end(), i) == t_set.end()) opt.push_back(i);
        }
        double best = std::numeric_limits<double>::infinity();
        for (unsigned mask = 0; mask < (1u << opt.size()); ++mask) {
            std::vector<NodeId> h = t_set;
            for (std::size_t b = 0; b < opt.size(); ++b) {
                if (mask & (1u << b)) h.push_back(opt[b]);
            }
            bool ok = true;
            for (NodeId j : w_set) {
                bool cov = false;
                for (NodeId i : h) cov = cov || inst.d(i, j) <= inst.c();
                ok = ok && cov;
            }
            if (!ok) continue;
            std::sort(h.begin() + 1, h.end());
            do {
                best = std::min(best, cycle_length(h, inst));
            } while (std::next_permutation(h.begin() + 1, h.end()));
        }
        return best;
    }

}  // namespace testutil
