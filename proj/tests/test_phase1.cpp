#include "helpers.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <set>
#include <tuple>

using namespace mctp;
using testutil::make;

namespace {

    Point polar(double deg, double radius) {
        const double a = deg * std::numbers::pi / 180.0;
        return {radius * std::cos(a), radius * std::sin(a)};
    }

    // base, T = {1, 2}, optional {3, 4, 5, 6}, W = {7, 8, 9}
    Instance greedy_toy() {
        return make({{0, 0}, {10, 0}, {20, 0}, {30, 4}, {30, -4}, {3, 20}, {-3, 20}}, 3,
                    {{30, 0}, {34, 0}, {0, 22}}, 6.0, 2, 2);
    }

    void expect_valid_giant(const GiantRoute &g, const Instance &inst) {
        ASSERT_FALSE(g.seq.empty());
        EXPECT_EQ(g.seq.front(), 0);
        std::set<NodeId> seen(g.seq.begin(), g.seq.end());
        EXPECT_EQ(seen.size(), g.seq.size());
        for (NodeId t : inst.t_nodes()) EXPECT_TRUE(seen.count(t)) << "T node " << t;
        EXPECT_TRUE(testutil::covers_all({g.seq}, inst));
    }

    std::vector<int> block_sizes(const Partition &p) {
        std::vector<int> out;
        for (const auto &b : p.blocks) out.push_back(static_cast<int>(b.v.size()) - 1);
        return out;
    }

    // An instance whose V* is z T nodes on a circle, and the giant route visiting them in id order.
    std::pair<Instance, GiantRoute> ring(int z, int m) {
        std::vector<Point> pts{{0, 0}};
        for (int i = 0; i < z; ++i) pts.push_back(polar(360.0 * i / z + 1.0, 10.0));
        auto inst = make(pts, z + 1, {}, 0.0, m, 1);
        GiantRoute g;
        for (int i = 0; i <= z; ++i) g.seq.push_back(i);
        return {std::move(inst), std::move(g)};
    }

}  // namespace

TEST(Greedy, NoWIsNearestNeighbourOverT) {
    const auto inst = make({{0, 0}, {5, 5}, {1, 0}, {-3, 0}, {2, 1}}, 5, {}, 0.0);
    // 0 -> 2 (1) -> 4 (1.41) -> 1 (5) -> 3
    EXPECT_EQ(greedy_giant(inst).seq, (std::vector<NodeId>{0, 2, 4, 1, 3}));
}

TEST(Greedy, CollinearInOrder) {
    const auto inst = make({{0, 0}, {3, 0}, {1, 0}, {2, 0}}, 4, {}, 0.0);
    EXPECT_EQ(greedy_giant(inst).seq, (std::vector<NodeId>{0, 2, 3, 1}));
}

TEST(Greedy, HandTrace) {
    // 0 -> T1 -> T2 -> W7 (coverers 3 and 4 both cover two live W nodes and are equally far: 3 wins on id)
    //   -> W9 (coverers 5 and 6 cover one each; 5 is nearer to 3)
    const auto inst = greedy_toy();
    const auto g = greedy_giant(inst);
    EXPECT_EQ(g.seq, (std::vector<NodeId>{0, 1, 2, 3, 5}));
    expect_valid_giant(g, inst);
}

TEST(Sweep, AscendingAngleFromReference) {
    // T nodes at 0 (reference), 10, 90 and 200 degrees
    const auto inst = make({{0, 0}, polar(90, 5), polar(200, 5), polar(0, 5), polar(10, 5)}, 5, {}, 0.0);
    EXPECT_EQ(sweep_giant(inst, 3).seq, (std::vector<NodeId>{0, 3, 4, 1, 2}));
    // reference first, the rest counterclockwise from it
    EXPECT_EQ(sweep_giant(inst, 1).seq, (std::vector<NodeId>{0, 1, 2, 3, 4}));
}

TEST(Sweep, EqualAnglesNearerFirst) {
    const auto inst = make({{0, 0}, polar(30, 8), polar(30, 4), polar(0, 5)}, 4, {}, 0.0);
    EXPECT_EQ(sweep_giant(inst, 3).seq, (std::vector<NodeId>{0, 3, 2, 1}));
}

namespace {

    // Sort T* and W by angle from the ray base -> hbar, then apply the append/cover rule step by step.
    std::vector<NodeId> sweep_oracle(const Instance &inst, NodeId hbar) {
        const Point b = inst.point(0);
        auto angle = [&](NodeId h) {
            if (h == hbar) return 0.0;
            const double ref = std::atan2(inst.point(hbar).y - b.y, inst.point(hbar).x - b.x);
            double a = std::atan2(inst.point(h).y - b.y, inst.point(h).x - b.x) - ref;
            while (a < 0) a += 2 * std::numbers::pi;
            return a;
        };
        std::vector<NodeId> order;
        for (NodeId h = 1; h < inst.num_nodes(); ++h) {
            if (!inst.is_optional(h)) order.push_back(h);
        }
        std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
            return std::make_tuple(angle(x), inst.d(0, x), x) < std::make_tuple(angle(y), inst.d(0, y), y);
        });
        std::set<NodeId> live(order.begin(), order.end());
        std::vector<NodeId> route{0};
        NodeId last = 0;
        auto drop_cover = [&](NodeId i) {
            for (NodeId j = inst.num_v(); j < inst.num_nodes(); ++j) {
                if (inst.d(i, j) <= inst.c()) live.erase(j);
            }
        };
        auto push = [&](NodeId i) {
            if (std::find(route.begin(), route.end(), i) == route.end()) route.push_back(i);
            last = i;
        };
        for (NodeId h : order) {
            if (!live.count(h)) continue;
            if (inst.is_t(h)) {
                push(h);
                live.erase(h);
                drop_cover(h);
                continue;
            }
            NodeId pick = -1;
            int pick_gain = -1;
            for (NodeId l = 1; l < inst.num_v(); ++l) {
                if (inst.is_t(l) || inst.d(l, h) > inst.c()) continue;
                int gain = 0;
                for (NodeId j : live) gain += inst.is_w(j) && inst.d(l, j) <= inst.c();
                if (gain > pick_gain || (gain == pick_gain && inst.d(last, l) < inst.d(last, pick))) {
                    pick = l;
                    pick_gain = gain;
                }
            }
            push(pick);
            drop_cover(pick);
            live.erase(h);
        }
        return route;
    }

}  // namespace

TEST(Sweep, MatchesSortThenSimulate) {
    const auto toy = greedy_toy();
    for (NodeId hbar : {1, 2, 7, 8, 9}) {
        const auto g = sweep_giant(toy, hbar);
        expect_valid_giant(g, toy);
        EXPECT_EQ(g.seq, sweep_oracle(toy, hbar)) << "hbar " << hbar;
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = preprocess(generate_instance({300, 1}, seed));
        ASSERT_GT(inst.num_w(), 0);
        for (NodeId hbar : {1, 5, inst.num_v(), inst.num_nodes() - 1}) {
            EXPECT_EQ(sweep_giant(inst, hbar).seq, sweep_oracle(inst, hbar));
        }
    }
}

TEST(Sweep, RejectsOptionalReference) {
    const auto inst = greedy_toy();
    EXPECT_THROW(sweep_giant(inst, 3), std::invalid_argument);
    EXPECT_THROW(sweep_giant(inst, 0), std::invalid_argument);
}

TEST(RouteFirst, NoWIsTriangle) {
    const auto inst = make({{0, 0}, {4, 0}, {2, 3}}, 3, {}, 0.0);
    const auto g = routefirst_giant(inst);
    EXPECT_EQ(g.z(), 2);
    EXPECT_NEAR(tour_length(g.seq, inst), testutil::cycle_length({0, 1, 2}, inst), 1e-12);
}

TEST(RouteFirst, ValidOnGeneratedInstances) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = preprocess(generate_instance({100, 2}, seed));
        expect_valid_giant(routefirst_giant(inst), inst);
        expect_valid_giant(greedy_giant(inst), inst);
        expect_valid_giant(sweep_giant(inst, 1), inst);
    }
}

TEST(Split, BlockSizes) {
    {
        auto [inst, g] = ring(10, 3);
        EXPECT_EQ(block_sizes(split_giant(g, 3, 0, inst)), (std::vector<int>{4, 3, 3}));
    }
    {
        auto [inst, g] = ring(9, 3);
        EXPECT_EQ(block_sizes(split_giant(g, 3, 0, inst)), (std::vector<int>{3, 3, 3}));
    }
}

TEST(Split, OffsetShiftsBoundaries) {
    auto [inst, g] = ring(10, 3);
    const auto p0 = split_giant(g, 3, 0, inst);
    const auto p1 = split_giant(g, 3, 1, inst);
    EXPECT_EQ(p0.blocks[0].v, (std::vector<NodeId>{0, 1, 2, 3, 4}));
    EXPECT_EQ(p1.blocks[0].v, (std::vector<NodeId>{0, 2, 3, 4, 5}));
    EXPECT_EQ(p1.blocks[1].v, (std::vector<NodeId>{0, 6, 7, 8}));
    EXPECT_EQ(p1.blocks[2].v, (std::vector<NodeId>{0, 1, 9, 10}));
}

TEST(Split, ExhaustiveSizes) {
    for (int z = 3; z <= 40; ++z) {
        for (int m = 1; m <= 5; ++m) {
            if (z < m) continue;
            auto [inst, g] = ring(z, m);
            const int p = z / m, q = z - m * p;
            for (int offset = 0; offset < z; offset += 7) {
                const auto sizes = block_sizes(split_giant(g, m, offset, inst));
                for (int k = 0; k < m; ++k) EXPECT_EQ(sizes[static_cast<std::size_t>(k)], k < q ? p + 1 : p);
            }
        }
    }
}

TEST(Split, TooShortGiantRouteThrows) {
    auto [inst, g] = ring(2, 3);
    EXPECT_THROW(split_giant(g, 3, 0, inst), InfeasibleSplit);
}

TEST(Split, BlocksPartitionTAndW) {
    for (const auto &cls : all_instance_classes()) {
        const auto inst = preprocess(generate_instance(cls, 8));
        const auto g = greedy_giant(inst);
        for (int offset = 0; offset < list_iteration_count(g.z(), inst.m()); ++offset) {
            const auto part = split_giant(g, inst.m(), offset, inst);
            std::multiset<NodeId> t_seen, w_seen;
            int lo = 1 << 30, hi = 0;
            for (const auto &b : part.blocks) {
                EXPECT_EQ(b.t.front(), 0);
                for (NodeId t : b.t) {
                    if (t != 0) t_seen.insert(t);
                }
                w_seen.insert(b.w.begin(), b.w.end());
                lo = std::min(lo, static_cast<int>(b.v.size()));
                hi = std::max(hi, static_cast<int>(b.v.size()));
                // every W node of a block is coverable inside it
                for (NodeId j : b.w) {
                    bool ok = false;
                    for (NodeId i : b.v) ok = ok || inst.covers(i, j);
                    EXPECT_TRUE(ok);
                }
            }
            EXPECT_LE(hi - lo, 1);
            const auto t = inst.t_nodes();
            EXPECT_EQ(std::vector<NodeId>(t_seen.begin(), t_seen.end()), std::vector<NodeId>(t.begin() + 1, t.end()));
            const auto w = inst.w_nodes();
            EXPECT_EQ(std::vector<NodeId>(w_seen.begin(), w_seen.end()), w);
        }
    }
}

TEST(Sector, FortyFiveDegreesIsFirstSector) {
    const auto inst = make({{0, 0}, polar(45, 3), polar(130, 3), polar(250, 3)}, 4, {}, 0.0, 3);
    EXPECT_EQ(sector_of(inst, 1, 3, 0, 10), 0);
    EXPECT_EQ(sector_of(inst, 2, 3, 0, 10), 1);
    EXPECT_EQ(sector_of(inst, 3, 3, 0, 10), 2);
    // rotating by 36 degrees moves 45 degrees to the start of sector 0 and 130 to 94
    EXPECT_EQ(sector_of(inst, 2, 3, 1, 10), 0);
}

TEST(Sector, FullRotationEqualsShiftZero) {
    const auto inst = preprocess(generate_instance({100, 1}, 4));
    EXPECT_EQ(sector_partition(inst, 10, 10), sector_partition(inst, 0, 10));
}

TEST(Sector, RingOfTwelve) {
    std::vector<Point> pts{{0, 0}};
    for (int k = 0; k < 12; ++k) pts.push_back(polar(15.0 + 30.0 * k, 10.0));
    const auto inst = make(pts, 13, {}, 0.0, 3);
    for (int shift = 0; shift < 10; ++shift) {
        const auto part = sector_partition(inst, shift, 10);
        for (const auto &b : part.blocks) {
            // angle binning oracle
            int expect = 0;
            for (int k = 0; k < 12; ++k) {
                double a = std::fmod(15.0 + 30.0 * k - 36.0 * shift + 720.0, 360.0);
                expect += static_cast<int>(a / 120.0) == static_cast<int>(&b - part.blocks.data());
            }
            EXPECT_EQ(static_cast<int>(b.t.size()) - 1, expect);
        }
        if (shift == 0) {
            for (const auto &b : part.blocks) EXPECT_EQ(b.t.size(), 5u);
        }
    }
}

TEST(Sector, AugmentationMakesBlocksCoverable) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = preprocess(generate_instance({150, 1}, seed));
        for (int s = 0; s < 10; ++s) {
            const auto part = sector_partition(inst, s, 10, true);
            std::multiset<NodeId> w_seen;
            for (const auto &b : part.blocks) {
                w_seen.insert(b.w.begin(), b.w.end());
                for (NodeId j : b.w) {
                    bool ok = false;
                    for (NodeId i : b.v) ok = ok || inst.covers(i, j);
                    EXPECT_TRUE(ok);
                }
            }
            const auto w = inst.w_nodes();
            EXPECT_EQ(std::vector<NodeId>(w_seen.begin(), w_seen.end()), w);
        }
    }
}

TEST(OuterIterations, Counts) {
    EXPECT_EQ(list_iteration_count(9, 3), 3);
    EXPECT_EQ(list_iteration_count(10, 3), 4);
    EXPECT_EQ(list_iteration_count(7, 1), 1);
    const auto inst = preprocess(generate_instance({100, 1}, 2));
    EXPECT_EQ(outer_iterations(HeuristicTag::sector_partition, inst).size(), 10u);
    const auto g = greedy_giant(inst);
    EXPECT_EQ(static_cast<int>(outer_iterations(HeuristicTag::greedy_selection, inst).size()),
              list_iteration_count(g.z(), 3));
}

TEST(OuterIterations, DistinctListPartitions) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = preprocess(generate_instance({100, 2}, seed));
        const auto parts = outer_iterations(HeuristicTag::greedy_selection, inst);
        if (greedy_giant(inst).z() % inst.m() == 0) continue;
        for (std::size_t a = 0; a < parts.size(); ++a) {
            for (std::size_t b = a + 1; b < parts.size(); ++b) EXPECT_FALSE(parts[a] == parts[b]);
        }
    }
}

TEST(Heuristic, ParseNames) {
    for (auto tag : all_heuristics) EXPECT_EQ(parse_heuristic(to_string(tag)), tag);
    EXPECT_THROW(parse_heuristic("tabu"), std::invalid_argument);
}
