#include <gtest/gtest.h>

#include "skeinlab/analytic.hpp"
#include "skeinlab/apollonian.hpp"

using namespace skeinlab;

namespace {

double relative_error(ComplexValue got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST(Analytic, DeltaValues) {
    EXPECT_EQ(delta_c(1, 1), ComplexValue(3, 0));
    EXPECT_EQ(delta_c(1, 2), ComplexValue(-4, 0));
    EXPECT_EQ(delta_c(1, 3), ComplexValue(5, 0));
    EXPECT_EQ(delta_c(0, 0), ComplexValue(1, 0));
    EXPECT_EQ(delta_c(1, 1.5), ComplexValue(0, 3.5));
}

TEST(Analytic, IntegerAgreement) {
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b) {
            EXPECT_LE(relative_error(delta_c(a, b), eval_two(a, b).to_double()), 1e-12);
            for (int c = 0; c <= 8; ++c) {
                ComplexValue v = theta_c(a, b, c);
                EXPECT_LE(relative_error(v, eval_three(a, b, c).to_double()), 1e-9) << a << b << c;
                EXPECT_EQ(v.imag(), 0.0);
            }
        }
    EXPECT_NEAR(theta_c(1, 1, 1).real(), -3, 1e-12);
    EXPECT_NEAR(theta_c(0, 0, 0).real(), 1, 1e-15);
}

TEST(Analytic, Attractor) {
    for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
        double want = 2 * (2 * x + 1) / (x + 1);
        EXPECT_NEAR(std::abs(theta_c(1, x, x)) / want, 1.0, 1e-6) << x;
    }
    EXPECT_NEAR(std::abs(theta_c(1, 1e4, 1e4)), 4.0, 1e-3);
}

TEST(Analytic, SinkIsMonotone) {
    double prev = std::abs(theta_c(2, 2, 2));
    for (double x = 2.25; x <= 30.0; x += 0.25) {
        double cur = std::abs(theta_c(x, x, x));
        EXPECT_LT(cur, prev) << x;
        prev = cur;
    }
}

TEST(Analytic, SteadyGrowth) {
    double x = 1000;
    EXPECT_NEAR(std::abs(theta_c(1, 1, x)) / x, 0.5, 0.005);
    EXPECT_NEAR(std::abs(theta_c(1, 1, x)), (x + 3) * (x + 2) / (2 * (x + 1)), 1e-6 * x);
}

TEST(Analytic, Phase) {
    for (double x = -0.9; x < 5; x += 0.37)
        for (double y = -0.05; y < 3; y += 0.29) {
            ComplexValue v = delta_c(x, y);
            double diff = std::remainder(std::arg(v) - std::numbers::pi * (x + y), 2 * std::numbers::pi);
            EXPECT_NEAR(diff, 0, 1e-9);
        }
}

TEST(Analytic, Poles) {
    EXPECT_THROW(theta_c(-1, 2, 2), PoleError);
    try {
        theta_c(0.5, -1.5, 0.5);
        FAIL();
    } catch (const PoleError& e) {
        EXPECT_EQ(e.argument(), 0.0);  // a + b + 1
    }
    // Negative non-integers are fine.
    ComplexValue v = theta_c(-0.5, 0.25, 0.25);
    EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
}

TEST(PathParser, AffineComponents) {
    auto p = parse_path("1, x, 2*x+1, -x/2, 3x-0.5, 1e-3x+2");
    ASSERT_EQ(p.size(), 6u);
    EXPECT_EQ(p[0].at(7), 1);
    EXPECT_EQ(p[1].at(7), 7);
    EXPECT_EQ(p[2].at(7), 15);
    EXPECT_EQ(p[3].at(7), -3.5);
    EXPECT_EQ(p[4].at(1), 2.5);
    EXPECT_NEAR(p[5].at(1000), 3, 1e-12);
    EXPECT_THROW(parse_path("x*x"), DomainError);
    EXPECT_THROW(parse_path("1/x"), DomainError);
    EXPECT_THROW(parse_path("1,,x"), DomainError);
    EXPECT_THROW(parse_path("2*"), DomainError);
    EXPECT_THROW(parse_path("y"), DomainError);
}

TEST(Sampler, GridAndExactEndpoints) {
    SamplePath path{parse_path("1,x"), 1, 2, 1};
    auto s = sample(ContinuedFunction::delta, path);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].value, ComplexValue(3, 0));
    EXPECT_EQ(s[1].value, ComplexValue(-4, 0));

    SamplePath spiral{parse_path("1,x"), -3, 7, 1000};
    auto sp = sample(ContinuedFunction::delta, spiral);
    ASSERT_EQ(sp.size(), 1001u);
    for (std::size_t i = 1; i < sp.size(); ++i) EXPECT_LT(sp[i - 1].t, sp[i].t);
    EXPECT_EQ(sp.back().t, 7.0);

    EXPECT_THROW(sample(ContinuedFunction::delta, SamplePath{parse_path("1,x"), 2, 1, 4}), DomainError);
    EXPECT_THROW(sample(ContinuedFunction::delta, SamplePath{parse_path("1,x"), 0, 1, 0}), DomainError);
    EXPECT_THROW(sample(ContinuedFunction::theta, SamplePath{parse_path("1,x"), 0, 1, 4}), DomainError);
}

TEST(Sampler, PoleOnGridNamesT) {
    try {
        sample(ContinuedFunction::theta, SamplePath{parse_path("x,1,1"), -3, 1, 4});
        FAIL();
    } catch (const PoleError& e) {
        EXPECT_NE(std::string(e.what()).find("t=-3"), std::string::npos) << e.what();
    }
}

TEST(Sampler, CsvAndSvgAreStable) {
    SamplePath path{parse_path("x,x,x"), 1, 3, 4};
    auto s = sample(ContinuedFunction::theta, path);
    std::string csv = samples_to_csv(s);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,re,im");
    EXPECT_NE(csv.find("\n1,-3,0\n"), std::string::npos) << csv;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
    std::string svg = samples_to_svg(s);
    EXPECT_EQ(svg, samples_to_svg(sample(ContinuedFunction::theta, path)));
    EXPECT_NE(svg.find("viewBox=\"0 0 800 800\""), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
}
