/**
 * @file acceptance.cpp
 * @brief End-to-end acceptance run: one PASS/FAIL line per criterion.
 *
 * Each check returns an empty string on success or a short reason on
 * failure. Wall time is measured around the whole check and compared with
 * its limit. The process exits nonzero if any line is FAIL.
 */
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skeinlab/analytic.hpp"
#include "skeinlab/apollonian.hpp"
#include "skeinlab/diagram.hpp"
#include "skeinlab/planar_word.hpp"
#include "skeinlab/random_network.hpp"
#include "skeinlab/recoupling.hpp"
#include "skeinlab/reduction.hpp"
#include "skeinlab/state_sum.hpp"

using namespace skeinlab;

namespace {

/// Collects the first few mismatches so a FAIL line says what went wrong.
class Failures {
  public:
    template <class... Parts>
    void add(const Parts&... parts) {
        ++count_;
        if (count_ > 3) return;
        std::ostringstream os;
        (os << ... << parts);
        if (!text_.empty()) text_ += "; ";
        text_ += os.str();
    }
    void expect(bool ok, const std::string& what) {
        if (!ok) add(what);
    }
    std::string report() const {
        if (count_ == 0) return {};
        return count_ > 3 ? text_ + "; ... (" + std::to_string(count_) + " total)" : text_;
    }

  private:
    int count_ = 0;
    std::string text_;
};

std::string eq(const Rational& got, const Rational& want) { return got.to_string() + " vs " + want.to_string(); }

std::string fundamental_values() {
    Failures f;
    auto circle = PlanarWord({{MorseOp::cup, 0}, {MorseOp::cap, 0}}).compile();
    auto eight = PlanarWord({{MorseOp::cup, 0}, {MorseOp::cross, 0}, {MorseOp::cap, 0}}).compile();
    if (contract(circle) != Rational(-2)) f.add("circle contract ", eq(contract(circle), -2));
    if (loop_value(circle) != Rational(-2)) f.add("circle loop_value ", eq(loop_value(circle), -2));
    if (contract(eight) != Rational(2)) f.add("figure-8 contract ", eq(contract(eight), 2));
    if (loop_value(eight) != Rational(2)) f.add("figure-8 loop_value ", eq(loop_value(eight), 2));
    return f.report();
}

std::string reidemeister_suite() {
    Failures f;
    std::mt19937_64 rng(2024);
    int library = 0;
    for (int trial = 0; library < 40 && trial < 400; ++trial) {
        auto w = random_planar_word(rng, static_cast<std::size_t>(trial % 7), 6);
        std::vector<std::size_t> cuts;
        for (std::size_t i = 0; i <= w.size(); ++i)
            if (w.width_before(i) >= 3) cuts.push_back(i);
        if (cuts.empty()) continue;
        ++library;
        const Rational base = contract(w.compile());
        std::size_t at = cuts[rng() % cuts.size()];
        std::size_t width = w.width_before(at);
        std::size_t pos = rng() % (width - 1);
        Side side = rng() % 2 ? Side::left : Side::right;

        Rational r1 = contract(reidemeister1(w, at, pos, side).compile());
        if (r1 != -base) f.add("R1 on word ", trial, ": ", eq(r1, -base));
        Rational r2 = contract(reidemeister2(w, at, pos).compile());
        if (r2 != base) f.add("R2 on word ", trial, ": ", eq(r2, base));

        // Plant a braid triangle, then flip it.
        std::size_t p3 = rng() % (width - 2);
        auto tri = w.inserted(at, {{MorseOp::cross, p3}, {MorseOp::cross, p3 + 1}, {MorseOp::cross, p3}});
        Rational before = contract(tri.compile());
        Rational after = contract(reidemeister3(tri, at).compile());
        if (after != before) f.add("R3 on word ", trial, ": ", eq(after, before));
        // The triangle itself carries three crossings, so check the moved word too.
        for (std::size_t site : reidemeister3_sites(tri)) {
            Rational moved = contract(reidemeister3(tri, site).compile());
            if (moved != before) f.add("R3 site ", site, " on word ", trial, ": ", eq(moved, before));
        }
    }
    f.expect(library >= 20, "library has only " + std::to_string(library) + " diagrams");
    return f.report();
}

std::string closed_forms_vs_state_sum() {
    Failures f;
    for (EdgeLabel n = 0; n <= 6; ++n) {
        Rational got = evaluate_brute(make_loop_network(n));
        if (got != delta(n)) f.add("loop ", n, ": ", eq(got, delta(n)));
    }
    int thetas = 0;
    for (EdgeLabel p = 0; p <= 4; ++p)
        for (EdgeLabel q = 0; q <= 4; ++q)
            for (EdgeLabel r = 0; r <= 4; ++r) {
                if (!admissible(p, q, r)) continue;
                ++thetas;
                Rational got = evaluate_brute(make_theta_network(p, q, r));
                if (got != theta(p, q, r)) f.add("theta ", p, q, r, ": ", eq(got, theta(p, q, r)));
            }
    f.expect(thetas > 0, "no admissible theta triples");
    for (EdgeLabel n = 0; n <= 3; ++n) {
        TetLabels t{n, n, n, n, n, n};
        if (admissible(n, n, n)) {
            Rational got = evaluate_brute(make_tet_network(t));
            if (got != tet(t)) f.add("tet all ", n, ": ", eq(got, tet(t)));
            continue;
        }
        // Odd labels break the parity condition at every vertex.
        bool rejected = false;
        try {
            evaluate_brute(make_tet_network(t));
        } catch (const AdmissibilityError&) {
            rejected = true;
        }
        f.expect(rejected, "tet all " + std::to_string(n) + " was not rejected");
    }
    return f.report();
}

std::string delta_sequence() {
    Failures f;
    const std::vector<std::pair<long long, long long>> want{{1, 3}, {2, -4}, {3, 5}};
    for (auto [b, value] : want) {
        if (eval_two(1, b) != Rational(value)) f.add("eval_two(1,", b, "): ", eq(eval_two(1, b), value));
        if (delta(1 + b) != Rational(value)) f.add("delta(", 1 + b, "): ", eq(delta(1 + b), value));
    }
    return f.report();
}

std::string descartes_three_ways() {
    Failures f;
    const Rational want(3, 2);
    Rational sum = eval_four(1, 1, 1, 1);
    Rational symbol = tet({2, 2, 2, 2, 2, 2});
    Rational brute = evaluate_brute(make_tet_network({2, 2, 2, 2, 2, 2}));
    if (sum != want) f.add("closed form ", eq(sum, want));
    if (symbol != want) f.add("tet symbol ", eq(symbol, want));
    if (brute != want) f.add("state sum ", eq(brute, want));
    return f.report();
}

std::string ratio_laws() {
    Failures f;
    for (long long a = 0; a <= 5; ++a)
        for (long long b = 0; b <= 5; ++b)
            for (long long c = 0; c <= 5; ++c) {
                Rational two = eval_two(a, b), three = eval_three(a, b, c);
                if (ratio_three_over_two(a, b, c) != three / two) f.add("three/two at ", a, b, c);
                for (long long d = 0; d <= 5; ++d)
                    if (insertion_ratio(a, b, c, d) != eval_four(a, b, c, d) / three)
                        f.add("four/three at ", a, b, c, d);
            }
    return f.report();
}

std::string consistency_identities() {
    Failures f;
    for (long long a = 0; a <= 4; ++a)
        for (long long b = 0; b <= 4; ++b) {
            if (eval_two(a, b) != delta(a + b)) f.add("two ", a, b);
            for (long long c = 0; c <= 4; ++c) {
                if (eval_three(a, b, c) != theta(a + b, b + c, c + a)) f.add("three ", a, b, c);
                if (eval_four(a, b, c, 0) != eval_three(a, b, c)) f.add("four with 0 ", a, b, c);
            }
        }
    return f.report();
}

const NetEdge* find_edge(const SpinNetwork& net, const std::string& id) {
    for (const auto& e : net.edges())
        if (e.id == id) return &e;
    return nullptr;
}

std::string ford_patterns() {
    Failures f;
    std::vector<FordFraction> fr;
    auto net = packing_to_network(generate_ford(13, &fr)).network;
    auto disk = [&](long long p, long long q) -> int {
        for (std::size_t i = 0; i < fr.size(); ++i)
            if (fr[i].p == p && fr[i].q == q) return static_cast<int>(i + 1);
        return -1;
    };
    auto label = [&](int i, int j) -> EdgeLabel {
        const NetEdge* e = find_edge(net, "d" + std::to_string(std::min(i, j)) + "-d" + std::to_string(std::max(i, j)));
        return e ? e->label : -1;
    };
    const int zero = disk(0, 1);
    for (std::size_t i = 0; i < fr.size(); ++i) {
        const int d = static_cast<int>(i + 1);
        const EdgeLabel q2 = fr[i].q * fr[i].q;
        if (label(0, d) != q2) f.add("baseline label at ", fr[i].p, "/", fr[i].q, " is ", label(0, d));
        if (fr[i].p == 1 && label(zero, d) != q2 + 1)
            f.add("side label at 1/", fr[i].q, " is ", label(zero, d));
    }
    const std::vector<std::pair<long long, long long>> zig{{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}};
    const std::vector<EdgeLabel> want{2, 5, 13, 34, 89};
    for (std::size_t k = 0; k < want.size(); ++k) {
        EdgeLabel got = label(disk(zig[k].first, zig[k].second), disk(zig[k + 1].first, zig[k + 1].second));
        if (got != want[k]) f.add("zigzag step ", k, " is ", got, " not ", want[k]);
    }
    return f.report();
}

std::string analytic_agreement() {
    Failures f;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int c = 0; c <= 8; ++c) {
                double want = eval_three(a, b, c).to_double();
                double err = std::abs(theta_c(a, b, c) - want) / std::max(1.0, std::abs(want));
                if (!(err <= 1e-9)) f.add("theta_c(", a, ",", b, ",", c, ") relative error ", err);
            }
    double far = std::abs(theta_c(1, 1e4, 1e4));
    if (!(std::abs(far - 4) <= 1e-3)) f.add("|theta_c(1,1e4,1e4)| = ", far);
    double prev = std::abs(theta_c(2, 2, 2));
    for (int k = 1; k <= 28 * 20; ++k) {
        double x = 2 + k / 20.0;
        double cur = std::abs(theta_c(x, x, x));
        if (!(cur < prev)) f.add("sink not decreasing at x = ", x);
        prev = cur;
    }
    return f.report();
}

std::string oracle_cross_validation() {
    Failures f;
    std::mt19937 rng(20260416);
    int compared = 0, exploded_nets = 0, exploded_states = 0;
    for (int trial = 0; trial < 80; ++trial) {
        auto net = random_planar_network(2 + 2 * static_cast<std::size_t>(trial % 3), 3, rng);
        Rational brute = evaluate_brute(net);
        try {
            Rational reduced = evaluate_recoupling(net);
            ++compared;
            if (reduced != brute) f.add("net ", trial, ": recoupling ", eq(reduced, brute));
        } catch (const ReductionFailure&) {
        }
        if (net.total_strands() > 12) continue;
        ++exploded_nets;
        // Every state when there are few, otherwise an evenly spaced sample.
        const auto count = static_cast<std::uint64_t>(net.state_count());
        const std::uint64_t stride = count > 2000 ? count / 2000 : 1;
        std::uint64_t index = 0;
        resolve(net, [&](const State& s) {
            if (index++ % stride != 0) return;
            auto d = explode_state(net, s);
            ++exploded_states;
            if (loop_value(d) != contract(d)) f.add("net ", trial, " state ", index - 1, ": loop rule vs contraction");
        });
    }
    f.expect(compared >= 50, "only " + std::to_string(compared) + " networks reduced");
    f.expect(exploded_nets >= 20, "only " + std::to_string(exploded_nets) + " networks exploded");
    std::printf("  (%d networks compared, %d exploded diagrams from %d networks)\n", compared, exploded_states,
                exploded_nets);
    return f.report();
}

struct Criterion {
    const char* name;
    double limit_ms;
    std::function<std::string()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"fundamental diagram values", 1, fundamental_values},
        {"Reidemeister suite", 1000, reidemeister_suite},
        {"closed forms vs state sum", 60000, closed_forms_vs_state_sum},
        {"delta sequence", 1, delta_sequence},
        {"four-disk value three ways", 10000, descartes_three_ways},
        {"ratio laws", 5000, ratio_laws},
        {"consistency identities", 5000, consistency_identities},
        {"Ford patterns", 1000, ford_patterns},
        {"analytic agreement", 2000, analytic_agreement},
        {"oracle cross-validation", 120000, oracle_cross_validation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        std::string reason;
        auto start = std::chrono::steady_clock::now();
        try {
            reason = c.check();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (reason.empty() && ms > c.limit_ms) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "took %.3f ms, limit %.0f ms", ms, c.limit_ms);
            reason = buf;
        }
        std::printf("%s criterion %zu: %s (%.3f ms)%s%s\n", reason.empty() ? "PASS" : "FAIL", i + 1, c.name, ms,
                    reason.empty() ? "" : " -- ", reason.c_str());
        std::fflush(stdout);
        if (!reason.empty()) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
