#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace mctp;
using testutil::make;

TEST(Objective, RightTriangle) {
    const auto inst = make({{0, 0}, {1, 0}, {1, 1}}, 3, {}, 0.0);
    const auto sol = make_solution({Route{{0, 1, 2}}}, inst);
    EXPECT_NEAR(objective(sol, inst), 2.0 + std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(sol.total_length, 2.0 + std::sqrt(2.0), 1e-12);
}

TEST(Objective, TranslatedCopiesAdd) {
    // three congruent triangles hanging off the base
    const auto inst = make({{0, 0}, {3, 0}, {3, 4}, {-3, 0}, {-3, -4}, {0, -3}, {4, -3}}, 7, {}, 0.0, 3);
    const auto one = make_solution({Route{{0, 1, 2}}}, make({{0, 0}, {3, 0}, {3, 4}}, 3, {}, 0.0));
    const auto sol = make_solution({Route{{0, 1, 2}}, Route{{0, 3, 4}}, Route{{0, 5, 6}}}, inst);
    EXPECT_NEAR(sol.total_length, 3.0 * one.total_length, 1e-9);
    EXPECT_NEAR(one.total_length, 12.0, 1e-12);
}

TEST(Objective, MatchesArcSummation) {
    std::mt19937 g(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = testutil::random_points(g, 10);
        const auto inst = make(pts, 10, {}, 0.0, 3);
        std::vector<NodeId> perm{1, 2, 3, 4, 5, 6, 7, 8, 9};
        std::shuffle(perm.begin(), perm.end(), g);
        std::vector<Route> routes{Route{{0, perm[0], perm[1], perm[2]}}, Route{{0, perm[3], perm[4]}},
                                  Route{{0, perm[5], perm[6], perm[7], perm[8]}}};
        double expect = 0.0;
        for (const auto &r : routes) expect += testutil::cycle_length(r.seq, inst);
        EXPECT_NEAR(objective(make_solution(routes, inst), inst), expect, 1e-9);
    }
}

TEST(Objective, NodeOutsideVIsStructuralError) {
    const auto inst = make({{0, 0}, {1, 0}, {2, 0}}, 2, {{5, 5}}, 10.0);
    Solution sol{{Route{{0, 1, 3}}}, 0.0};
    EXPECT_THROW(objective(sol, inst), StructuralError);
}

TEST(Objective, InvariantUnderReversalAndRotation) {
    std::mt19937 g(8);
    const auto inst = make(testutil::random_points(g, 6), 6, {}, 0.0);
    const Route r{{0, 3, 1, 5, 2, 4}};
    const double base = route_length(r, inst);
    EXPECT_NEAR(route_length(Route{{0, 4, 2, 5, 1, 3}}, inst), base, 1e-9);
    EXPECT_NEAR(tour_length(std::vector<NodeId>{5, 2, 4, 0, 3, 1}, inst), base, 1e-9);
}

TEST(Objective, CacheConsistency) {
    const auto inst = make({{0, 0}, {1, 0}, {1, 1}}, 3, {}, 0.0);
    auto sol = make_solution({Route{{0, 1, 2}}}, inst);
    EXPECT_TRUE(cache_consistent(sol, inst));
    sol.total_length += 1e-3;
    EXPECT_FALSE(cache_consistent(sol, inst));
}

namespace {

    // base, T* = {1, 2, 3, 4}, optional {5}, W {6}
    Instance feasibility_toy(int m, int r) {
        return make({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {5, 5}}, 5, {{5, 6}}, 1.5, m, r);
    }

}  // namespace

TEST(Feasibility, FeasibleSolutionHasEmptyReport) {
    const auto inst = feasibility_toy(2, 1);
    const auto sol = make_solution({Route{{0, 1, 2, 5}}, Route{{0, 3, 4}}}, inst);
    EXPECT_TRUE(check_feasible(sol, inst).feasible());
}

TEST(Feasibility, MissingTNodeIsConstraint8) {
    const auto inst = feasibility_toy(2, 1);
    const auto sol = make_solution({Route{{0, 1, 5}}, Route{{0, 3, 4}}}, inst);
    const auto rep = check_feasible(sol, inst);
    EXPECT_TRUE(rep.has(8));
    EXPECT_FALSE(rep.has(7));
}

TEST(Feasibility, LoadGapIsConstraint7) {
    std::vector<Point> pts{{0, 0}};
    for (int i = 1; i <= 11; ++i) pts.push_back({static_cast<double>(i), static_cast<double>(i % 3)});
    const auto inst = make(pts, 12, {}, 0.0, 2, 2);
    const auto sol = make_solution({Route{{0, 1, 2, 3, 4, 5, 6, 7}}, Route{{0, 8, 9, 10, 11}}}, inst);
    const auto rep = check_feasible(sol, inst);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].constraint, 7);
    EXPECT_EQ(max_load_gap(sol), 3);
}

TEST(Feasibility, UncoveredWIsConstraint2) {
    const auto inst = feasibility_toy(2, 1);
    const auto sol = make_solution({Route{{0, 1, 2}}, Route{{0, 3, 4}}}, inst);
    const auto rep = check_feasible(sol, inst);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].constraint, 2);
}

TEST(Feasibility, SharedOptionalNodeIsConstraint3) {
    const auto inst = feasibility_toy(2, 2);
    const auto sol = make_solution({Route{{0, 1, 2, 5}}, Route{{0, 3, 4, 5}}}, inst);
    EXPECT_TRUE(check_feasible(sol, inst).has(3));
}

TEST(Feasibility, StructuralProblems) {
    const auto inst = feasibility_toy(2, 3);
    // one route only
    EXPECT_TRUE(check_feasible(Solution{{Route{{0, 1, 2, 3, 4, 5}}}, 0.0}, inst).has(9));
    // a route with a single node
    EXPECT_TRUE(check_feasible(Solution{{Route{{0, 1}}, Route{{0, 2, 3, 4, 5}}}, 0.0}, inst).has(6));
    // a route not starting at the base
    EXPECT_TRUE(check_feasible(Solution{{Route{{1, 0, 2}}, Route{{0, 3, 4, 5}}}, 0.0}, inst).has(9));
    // a W node on a route, and a repeated node
    EXPECT_TRUE(check_feasible(Solution{{Route{{0, 1, 2, 6}}, Route{{0, 3, 4, 5}}}, 0.0}, inst).has(4));
    EXPECT_TRUE(check_feasible(Solution{{Route{{0, 1, 2, 1}}, Route{{0, 3, 4, 5}}}, 0.0}, inst).has(4));
}

TEST(Canonical, EqualityIgnoresOrientationRotationAndOrder) {
    const auto inst = feasibility_toy(2, 1);
    const auto a = make_solution({Route{{0, 1, 2, 5}}, Route{{0, 3, 4}}}, inst);
    const auto b = make_solution({Route{{0, 4, 3}}, Route{{0, 5, 2, 1}}}, inst);
    EXPECT_TRUE(same_solution(a, b));
    const auto c = make_solution({Route{{0, 2, 1, 5}}, Route{{0, 3, 4}}}, inst);
    EXPECT_FALSE(same_solution(a, c));
}

TEST(BruteForce, SingleRouteSquare) {
    // V = T = {0, 1, 2, 3} on a unit square, m = 1
    const auto inst = make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 4, {}, 0.0, 1, 0);
    const auto sol = brute_force_optimum(inst);
    EXPECT_NEAR(sol.total_length, 4.0, 1e-12);
    EXPECT_TRUE(same_solution(sol, make_solution({Route{{0, 1, 2, 3}}}, inst)));
}

TEST(BruteForce, SquareAroundBaseThreePairings) {
    // base at the centre, four T corners, m = 2, r = 0: each route takes two corners
    const auto inst = make({{0, 0}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, 5, {}, 0.0, 2, 0);
    auto tri = [&](NodeId a, NodeId b) { return testutil::cycle_length({0, a, b}, inst); };
    const double pairings[] = {tri(1, 2) + tri(3, 4), tri(1, 3) + tri(2, 4), tri(1, 4) + tri(2, 3)};
    const double expect = *std::min_element(std::begin(pairings), std::end(pairings));
    const auto sol = brute_force_optimum(inst);
    EXPECT_NEAR(sol.total_length, expect, 1e-12);
    EXPECT_TRUE(check_feasible(sol, inst).feasible());
}

TEST(BruteForce, OptionalNodeOnlyWhenNeeded) {
    // W node 4 reachable from optional node 3 (or 2, further away); T = {0, 1}
    const auto inst = make({{0, 0}, {4, 0}, {0, 4}, {3, 3}}, 2, {{3.5, 3.5}}, 1.0, 1, 5);
    const auto sol = brute_force_optimum(inst);
    EXPECT_TRUE(same_solution(sol, make_solution({Route{{0, 1, 3}}}, inst)));
}

TEST(BruteForce, MatchesIndependentEnumeration) {
    std::mt19937 g(99);
    for (int trial = 0; trial < 15; ++trial) {
        const auto v = testutil::random_points(g, 6);
        const auto w = testutil::random_points(g, 2);
        const auto inst = make(v, 3, w, 30.0, 2, 1);
        // independent oracle: assignments of 5 nodes to {skip, route 1, route 2}
        double best = std::numeric_limits<double>::infinity();
        for (int code = 0; code < 243; ++code) {
            std::vector<NodeId> r1{0}, r2{0};
            bool ok = true;
            int x = code;
            for (NodeId i = 1; i <= 5; ++i, x /= 3) {
                if (x % 3 == 1) r1.push_back(i);
                if (x % 3 == 2) r2.push_back(i);
                if (x % 3 == 0 && inst.is_t(i)) ok = false;
            }
            const int l1 = static_cast<int>(r1.size()) - 1, l2 = static_cast<int>(r2.size()) - 1;
            if (!ok || l1 < 2 || l2 < 2 || std::abs(l1 - l2) > 1) continue;
            if (!testutil::covers_all({r1, r2}, inst)) continue;
            auto best_cycle = [&](std::vector<NodeId> r) {
                double b = std::numeric_limits<double>::infinity();
                do {
                    b = std::min(b, testutil::cycle_length(r, inst));
                } while (std::next_permutation(r.begin() + 1, r.end()));
                return b;
            };
            best = std::min(best, best_cycle(r1) + best_cycle(r2));
        }
        if (!std::isfinite(best)) {
            EXPECT_THROW(brute_force_optimum(inst), InfeasibleInstance);
            continue;
        }
        const auto sol = brute_force_optimum(inst);
        EXPECT_NEAR(sol.total_length, best, 1e-9);
        EXPECT_TRUE(check_feasible(sol, inst).feasible());
    }
}

TEST(BruteForce, SizeGuard) {
    std::mt19937 g(1);
    EXPECT_THROW(brute_force_optimum(make(testutil::random_points(g, 9), 9, {}, 0.0, 2, 2)), SizeGuardError);
    EXPECT_THROW(brute_force_optimum(make(testutil::random_points(g, 8), 8, {}, 0.0, 4, 2)), SizeGuardError);
}

TEST(BruteForce, InfeasibleThrows) {
    // three nodes cannot give two routes two nodes each
    const auto inst = make({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 4, {}, 0.0, 2, 1);
    EXPECT_THROW(brute_force_optimum(inst), InfeasibleInstance);
}
