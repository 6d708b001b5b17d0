#include <gtest/gtest.h>

#include <algorithm>

#include "skeinlab/apollonian.hpp"
#include "skeinlab/reduction.hpp"
#include "skeinlab/state_sum.hpp"

using namespace skeinlab;

namespace {

const NetEdge* find_edge(const SpinNetwork& net, const std::string& id) {
    for (const auto& e : net.edges())
        if (e.id == id) return &e;
    return nullptr;
}

std::string ford_edge(const std::vector<FordFraction>& fr, FordFraction a, FordFraction b) {
    auto index = [&](FordFraction f) {
        for (std::size_t i = 0; i < fr.size(); ++i)
            if (fr[i].p == f.p && fr[i].q == f.q) return static_cast<int>(i + 1);
        return -1;
    };
    int i = index(a), j = index(b);
    return "d" + std::to_string(std::min(i, j)) + "-d" + std::to_string(std::max(i, j));
}

}  // namespace

TEST(DiskFormulas, HandValues) {
    EXPECT_EQ(eval_two(1, 1), Rational(3));
    EXPECT_EQ(eval_two(0, 1), Rational(-2));
    EXPECT_EQ(eval_three(1, 1, 1), Rational(-3));
    EXPECT_EQ(eval_three(1, 1, 1, false), Rational(3));
    EXPECT_EQ(eval_four(1, 1, 1, 1), Rational(3, 2));
    EXPECT_EQ(insertion_ratio(1, 1, 1, 1), Rational(-1, 2));
    EXPECT_THROW(eval_two(-1, 0), DomainError);
}

TEST(DiskFormulas, AgreeWithRecouplingSymbols) {
    for (long long a = 0; a <= 6; ++a)
        for (long long b = 0; b <= 6; ++b) EXPECT_EQ(eval_two(a, b), delta(a + b));
    for (long long a = 0; a <= 4; ++a)
        for (long long b = 0; b <= 4; ++b)
            for (long long c = 0; c <= 4; ++c) {
                EXPECT_EQ(eval_three(a, b, c), theta(a + b, b + c, c + a));
                EXPECT_EQ(eval_three(a, b, c, false), sign_power(a + b + c) * eval_three(a, b, c));
                EXPECT_EQ(eval_four(a, b, c, 0), eval_three(a, b, c));
                EXPECT_EQ(insertion_ratio(a, b, c, 0), Rational(1));
                for (long long d = 0; d <= 4; ++d)
                    EXPECT_EQ(eval_four(a, b, c, d), tet({c + d, a + d, b + d, a + b, b + c, c + a}));
            }
}

TEST(DiskFormulas, AgreeWithNetworkEvaluation) {
    for (long long a = 0; a <= 4; ++a)
        for (long long b = 0; b <= 4; ++b) {
            auto two = packing_to_network(two_disk_configuration(a, b));
            EXPECT_TRUE(two.open_ends.empty());
            EXPECT_EQ(evaluate_recoupling(two.network), eval_two(a, b));
            for (long long c = 0; c <= 4; ++c) {
                auto three = packing_to_network(three_disk_configuration(a, b, c));
                ASSERT_TRUE(three.network.is_planar());
                EXPECT_EQ(evaluate_recoupling(three.network), eval_three(a, b, c));
                for (long long d = 0; d <= 4; ++d) {
                    auto four = packing_to_network(four_disk_configuration(a, b, c, d));
                    ASSERT_TRUE(four.network.is_planar());
                    EXPECT_EQ(evaluate_recoupling(four.network), eval_four(a, b, c, d)) << a << b << c << d;
                }
            }
        }
    // Small cases once more by state sums.
    EXPECT_EQ(evaluate_brute(packing_to_network(four_disk_configuration(1, 1, 1, 1)).network), Rational(3, 2));
    EXPECT_EQ(evaluate_brute(packing_to_network(four_disk_configuration(0, 1, 2, 1)).network), eval_four(0, 1, 2, 1));
}

TEST(DiskFormulas, RatioLaws) {
    for (long long a = 0; a <= 5; ++a)
        for (long long b = 0; b <= 5; ++b)
            for (long long c = 0; c <= 5; ++c) {
                EXPECT_EQ(ratio_three_over_two(a, b, c), eval_three(a, b, c) / eval_two(a, b));
                for (long long d = 0; d <= 5; ++d)
                    EXPECT_EQ(insertion_ratio(a, b, c, d), eval_four(a, b, c, d) / eval_three(a, b, c));
            }
}

TEST(Descartes, FourthCurvature) {
    auto s = descartes_fourth(2, 2, 3);
    ASSERT_TRUE(s.exact_plus && s.exact_minus);
    EXPECT_EQ(*s.exact_plus, Rational(15));
    EXPECT_EQ(*s.exact_minus, Rational(-1));
    auto t = descartes_fourth(-1, 2, 2);
    EXPECT_EQ(*t.exact_plus, Rational(3));
    EXPECT_EQ(*t.exact_minus, Rational(3));
    auto u = descartes_fourth(0, 0, 1);
    EXPECT_EQ(*u.exact_plus, Rational(1));
    EXPECT_EQ(*u.exact_minus, Rational(1));
    auto irr = descartes_fourth(1, 1, 1);
    EXPECT_FALSE(irr.exact_plus.has_value());
    EXPECT_NEAR(irr.plus, 3 + 2 * std::sqrt(3.0), 1e-12);
    EXPECT_THROW(descartes_fourth(-1, -1, 1), GeometryError);
}

TEST(Apollonian, RootAndFirstGeneration) {
    auto p0 = generate_apollonian({-1, 2, 2, 3}, 0);
    EXPECT_EQ(p0.disks.size(), 4u);
    EXPECT_EQ(p0.tangencies.size(), 6u);
    EXPECT_EQ(p0.regions.size(), 4u);

    auto p1 = generate_apollonian({-1, 2, 2, 3}, 1);
    std::vector<Rational> added;
    for (const auto& d : p1.disks)
        if (d.generation == 1) added.push_back(d.curvature);
    std::sort(added.begin(), added.end());
    EXPECT_EQ(added, (std::vector<Rational>{3, 6, 6, 15}));
    EXPECT_EQ(p1.regions.size(), 12u);
    EXPECT_EQ(p1.tangencies.size(), 18u);

    EXPECT_THROW(generate_apollonian({1, 1, 1, 1}, 1), GeometryError);
}

TEST(Apollonian, ExactGeometryIsTangent) {
    for (auto root : {std::array<Rational, 4>{-1, 2, 2, 3}, std::array<Rational, 4>{0, 0, 1, 1},
                      std::array<Rational, 4>{-6, 11, 14, 15}}) {
        auto pk = generate_apollonian(root, 3);
        for (const auto& d : pk.disks)
            if (!d.is_line) ASSERT_TRUE(d.exact_center.has_value()) << root[0] << root[1] << root[2] << root[3];
        for (const auto& t : pk.tangencies) {
            const Disk& a = pk.disks[static_cast<std::size_t>(t[0])];
            const Disk& b = pk.disks[static_cast<std::size_t>(t[1])];
            if (a.is_line || b.is_line) {
                EXPECT_LT(detail::tangency_error(a, b), 1e-12);
                continue;
            }
            EXPECT_TRUE(detail::exactly_tangent(a, b));
        }
        for (const auto& r : pk.regions) {
            std::array<Rational, 4> q{pk.disks[static_cast<std::size_t>(r.disks[0])].curvature,
                                      pk.disks[static_cast<std::size_t>(r.disks[1])].curvature,
                                      pk.disks[static_cast<std::size_t>(r.disks[2])].curvature,
                                      pk.disks[static_cast<std::size_t>(r.parent)].curvature};
            EXPECT_TRUE(satisfies_descartes(q));
        }
        auto net = packing_to_network(pk);
        EXPECT_TRUE(net.open_ends.empty());
        EXPECT_EQ(net.network.vertices().size(), pk.regions.size());
        EXPECT_TRUE(net.network.is_planar());
    }
}

TEST(Apollonian, DeeperPackingsStayTangent) {
    for (auto root : {std::array<Rational, 4>{-2, 3, 6, 7}, std::array<Rational, 4>{-3, 5, 8, 8}}) {
        auto pk = generate_apollonian(root, 4);
        for (const auto& d : pk.disks) EXPECT_TRUE(d.exact_center.has_value());
        EXPECT_EQ(pk.regions.size(), 4u * 81u);
        for (const auto& t : pk.tangencies)
            EXPECT_LT(detail::tangency_error(pk.disks[static_cast<std::size_t>(t[0])],
                                             pk.disks[static_cast<std::size_t>(t[1])]),
                      1e-9);
        EXPECT_TRUE(packing_to_network(pk).network.is_planar());
    }
}

TEST(Ford, TangencyAndLabels) {
    std::vector<FordFraction> fr;
    auto pk = generate_ford(13, &fr);
    // Geometric tangency exactly when |p q' - p' q| = 1; other pairs are disjoint.
    for (std::size_t i = 0; i < fr.size(); ++i)
        for (std::size_t j = i + 1; j < fr.size(); ++j) {
            const Disk& a = pk.disks[i + 1];
            const Disk& b = pk.disks[j + 1];
            Rational dx = (*a.exact_center)[0] - (*b.exact_center)[0];
            Rational dy = (*a.exact_center)[1] - (*b.exact_center)[1];
            Rational rs = (*a.exact_center)[1] + (*b.exact_center)[1];
            Rational gap = dx * dx + dy * dy - rs * rs;
            bool unimodular = std::abs(fr[i].p * fr[j].q - fr[j].p * fr[i].q) == 1;
            if (unimodular) EXPECT_TRUE(gap.is_zero());
            else EXPECT_GT(gap, Rational(0));
            bool listed = std::binary_search(pk.tangencies.begin(), pk.tangencies.end(),
                                             std::array<int, 2>{static_cast<int>(i + 1), static_cast<int>(j + 1)});
            EXPECT_EQ(listed, unimodular);
        }

    auto net = packing_to_network(pk);
    const auto& n = net.network;
    // Baseline tangencies carry q^2, the side tangencies with 0/1 carry q^2 + 1.
    for (std::size_t i = 0; i < fr.size(); ++i) {
        const NetEdge* e = find_edge(n, "d0-d" + std::to_string(i + 1));
        ASSERT_NE(e, nullptr);
        EXPECT_EQ(e->label, fr[i].q * fr[i].q);
        if (fr[i].p == 1) {
            const NetEdge* side = find_edge(n, ford_edge(fr, {0, 1}, fr[i]));
            ASSERT_NE(side, nullptr);
            EXPECT_EQ(side->label, fr[i].q * fr[i].q + 1);
        }
    }
    // Zigzag through consecutive Fibonacci ratios.
    const std::vector<FordFraction> zig{{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}, {8, 13}};
    const std::vector<EdgeLabel> expect{2, 5, 13, 34, 89, 233};
    for (std::size_t k = 0; k + 1 < zig.size(); ++k) {
        const NetEdge* e = find_edge(n, ford_edge(fr, zig[k], zig[k + 1]));
        ASSERT_NE(e, nullptr);
        EXPECT_EQ(e->label, expect[k]);
    }
    // The outermost tangencies border a single region.
    std::vector<std::string> open = net.open_ends;
    std::sort(open.begin(), open.end());
    const std::string last = "d" + std::to_string(fr.size());  // 1/1 sorts last
    std::vector<std::string> outer{"d0-d1", "d0-" + last, "d1-" + last};
    std::sort(outer.begin(), outer.end());
    EXPECT_EQ(open, outer);
}

TEST(PackingToNetwork, LabelErrors) {
    EXPECT_THROW(packing_to_network(two_disk_configuration(-3, 1)), LabelingError);
    EXPECT_THROW(packing_to_network(three_disk_configuration(Rational(1, 2), Rational(1, 2), 1)), LabelingError);
    EXPECT_NO_THROW(packing_to_network(three_disk_configuration(Rational(1, 2), Rational(1, 2), Rational(3, 2))));
}
