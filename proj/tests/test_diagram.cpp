#include <gtest/gtest.h>

#include <random>

#include "skeinlab/diagram.hpp"
#include "skeinlab/planar_word.hpp"

using namespace skeinlab;

namespace {

PlanarWord word(std::vector<MorseStep> steps) { return PlanarWord(std::move(steps)); }

constexpr auto cup = MorseOp::cup;
constexpr auto cap = MorseOp::cap;
constexpr auto cross = MorseOp::cross;

// Kauffman bracket at A = 1 with loop value d = -2: sum over all smoothings of
// d^(number of loops). Counts loops only, never touches the matrices.
Rational bracket_at_one(const StrandDiagram& d) {
    Rational total;
    for (const auto& term : skein_resolve(d)) {
        BigInt v = 1;
        for (std::size_t i = 0; i < decompose_loops(term.diagram).loops.size(); ++i) v *= -2;
        total += term.coefficient * Rational(v);
    }
    return total;
}

}  // namespace

TEST(Contract, CircleAndFigureEight) {
    EXPECT_EQ(contract(make_circle()), Rational(-2));
    EXPECT_EQ(contract(make_figure_eight()), Rational(2));
    EXPECT_EQ(loop_value(make_circle()), Rational(-2));
    EXPECT_EQ(loop_value(make_figure_eight()), Rational(2));
}

TEST(Contract, TwoCirclesCrossingTwice) {
    // Trace of the squared swap on the 4-dimensional tensor square.
    auto d = word({{cup, 0}, {cup, 2}, {cross, 1}, {cross, 1}, {cap, 0}, {cap, 0}}).compile();
    EXPECT_EQ(contract(d), Rational(4));
    EXPECT_EQ(loop_value(d), Rational(4));
    auto dec = decompose_loops(d);
    ASSERT_EQ(dec.loops.size(), 2U);
    EXPECT_EQ(dec.loops[0].crossing_incidence, 2U);
    EXPECT_EQ(dec.loops[1].crossing_incidence, 2U);
}

TEST(Contract, WavyCircleStraightens) {
    // cup, then a zigzag on its left strand, then the closing cap.
    auto d = word({{cup, 0}, {cup, 0}, {cap, 1}, {cap, 0}}).compile();
    EXPECT_EQ(contract(d), Rational(-2));
    auto e = word({{cup, 0}, {cup, 2}, {cap, 1}, {cap, 0}}).compile();
    EXPECT_EQ(contract(e), Rational(-2));
}

TEST(LoopValue, ThreeDisjointCircles) {
    auto d = word({{cup, 0}, {cap, 0}, {cup, 0}, {cup, 0}, {cap, 0}, {cap, 0}}).compile();
    EXPECT_EQ(loop_value(d), Rational(-8));
    EXPECT_EQ(contract(d), Rational(-8));
}

TEST(Contract, OpenDiagramIsStructuralError) {
    StrandDiagram d;
    NodeId c = d.add_node(NodeKind::cup);
    NodeId k = d.add_node(NodeKind::cap);
    d.connect(d.port(c, 0), d.port(k, 0));
    EXPECT_THROW(contract(d), StructuralError);
    EXPECT_THROW(loop_value(d), StructuralError);
    EXPECT_THROW(d.connect(d.port(c, 1), d.port(c, 0)), StructuralError);
}

TEST(Skein, CrossinglessIsItself) {
    auto terms = skein_resolve(make_circle());
    ASSERT_EQ(terms.size(), 1U);
    EXPECT_EQ(terms[0].coefficient, Rational(1));
}

TEST(Skein, FigureEightSplitsIntoOneAndTwoCircles) {
    auto terms = skein_resolve(make_figure_eight());
    ASSERT_EQ(terms.size(), 2U);
    std::vector<Rational> values;
    for (const auto& t : terms) {
        EXPECT_EQ(t.diagram.crossing_count(), 0U);
        values.push_back(contract(t.diagram));
    }
    std::sort(values.begin(), values.end());
    EXPECT_EQ(values[0], Rational(-2));
    EXPECT_EQ(values[1], Rational(4));
    EXPECT_EQ(contract_sum(terms), Rational(2));
}

TEST(Skein, ReidemeisterTwoShapeEqualsUncrossedStrands) {
    // Two vertical strands closed into circles, once plain and once with a
    // bigon of crossings in between.
    auto plain = word({{cup, 0}, {cup, 2}, {cap, 0}, {cap, 0}}).compile();
    auto bigon = word({{cup, 0}, {cup, 2}, {cross, 1}, {cross, 1}, {cap, 0}, {cap, 0}}).compile();
    // Closing the two middle strands: value is the same as the uncrossed pair
    // once the closure is identical.
    auto plain_closed = word({{cup, 0}, {cup, 2}, {cap, 1}, {cap, 0}}).compile();
    auto bigon_closed = word({{cup, 0}, {cup, 2}, {cross, 1}, {cross, 1}, {cap, 1}, {cap, 0}}).compile();
    EXPECT_EQ(contract_sum(skein_resolve(bigon_closed)), contract(plain_closed));
    EXPECT_EQ(contract_sum(skein_resolve(bigon)), contract(bigon));
    (void)plain;
}

TEST(Twist, FlipsSign) {
    auto circle = make_circle();
    auto once = apply_twist(circle, 0);
    EXPECT_EQ(contract(once), Rational(2));
    EXPECT_EQ(contract(apply_twist(make_figure_eight(), 0)), Rational(-2));
    auto twice = apply_twist(once, 0);
    EXPECT_EQ(contract(twice), contract(circle));
    EXPECT_EQ(loop_value(once), Rational(2));
    EXPECT_THROW(apply_twist(circle, 3), StructuralError);
}

TEST(Oracle, LoopRuleMatchesContractionOnRandomWords) {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t crossings = static_cast<std::size_t>(trial % 9);
        auto w = random_planar_word(rng, crossings, 6);
        auto d = w.compile();
        ASSERT_EQ(d.crossing_count(), crossings);
        EXPECT_EQ(loop_value(d), contract(d)) << "trial " << trial;
    }
}

TEST(Oracle, SkeinConsistencyAndKauffmanSpecialization) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        auto d = random_planar_word(rng, static_cast<std::size_t>(trial % 7), 6).compile();
        auto terms = skein_resolve(d);
        for (const auto& t : terms) EXPECT_EQ(t.coefficient, Rational(1));
        Rational c = contract(d);
        EXPECT_EQ(contract_sum(terms), c);
        EXPECT_EQ(bracket_at_one(d), c);
    }
}

TEST(Oracle, ReidemeisterMovesOnRandomWords) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        auto w = random_planar_word(rng, static_cast<std::size_t>(trial % 5), 6);
        Rational base = contract(w.compile());
        // Pick a cut with at least two strands.
        std::vector<std::size_t> cuts;
        for (std::size_t i = 0; i <= w.size(); ++i)
            if (w.width_before(i) >= 2) cuts.push_back(i);
        if (cuts.empty()) continue;
        std::size_t at = cuts[rng() % cuts.size()];
        std::size_t width = w.width_before(at);
        std::size_t pos = rng() % (width - 1);
        Side side = coin(rng) ? Side::left : Side::right;

        auto r1 = reidemeister1(w, at, pos, side).compile();
        EXPECT_EQ(contract(r1), -base);
        EXPECT_EQ(loop_value(r1), -base);

        auto r2 = reidemeister2(w, at, pos).compile();
        EXPECT_EQ(contract(r2), base);
        EXPECT_EQ(loop_value(r2), base);

        auto ind = indent(w, at, pos, side).compile();
        EXPECT_EQ(contract(ind), base);

        if (width >= 3) {
            std::size_t p3 = rng() % (width - 2);
            auto tri = w.inserted(at, {{cross, p3}, {cross, p3 + 1}, {cross, p3}});
            Rational before = contract(tri.compile());
            auto after = reidemeister3(tri, at).compile();
            EXPECT_EQ(contract(after), before);
            EXPECT_EQ(loop_value(after), before);
        }
    }
}
