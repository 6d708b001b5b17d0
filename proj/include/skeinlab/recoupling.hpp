/**
 * @file recoupling.hpp
 * @brief Closed-form chromatic primitives: loop (Delta), theta, tetrahedron
 *        and 6j coefficients, with admissibility checking.
 */
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <set>
#include <string>

#include "skeinlab/errors.hpp"
#include "skeinlab/rational.hpp"

namespace skeinlab {

/// Number of strands in an edge bundle.
using EdgeLabel = long long;

/// Internal strand counts of an admissible vertex (a, b, c):
/// i strands join legs a and c, j join a and b, k join b and c.
struct StrandCounts {
    long long i = 0, j = 0, k = 0;
    friend bool operator==(const StrandCounts&, const StrandCounts&) = default;
};

/// (p, q, r) is admissible iff p+q+r is even and each label is at most half the sum.
inline std::optional<StrandCounts> admissible(EdgeLabel p, EdgeLabel q, EdgeLabel r) {
    if (p < 0 || q < 0 || r < 0) return std::nullopt;
    long long sum = p + q + r;
    if (sum % 2 != 0) return std::nullopt;
    long long half = sum / 2;
    if (p > half || q > half || r > half) return std::nullopt;
    return StrandCounts{(p + r - q) / 2, (p + q - r) / 2, (q + r - p) / 2};
}

/// Why a triple fails admissibility, or empty if it is admissible.
inline std::string admissibility_violation(EdgeLabel p, EdgeLabel q, EdgeLabel r) {
    if (p < 0 || q < 0 || r < 0) return "negative label";
    if ((p + q + r) % 2 != 0) return "parity violation (odd label sum)";
    long long half = (p + q + r) / 2;
    if (p > half || q > half || r > half) return "inequality violation (label exceeds sum of the other two)";
    return {};
}

/// Same as admissible() but throws AdmissibilityError.
inline StrandCounts vertex_strand_counts(EdgeLabel a, EdgeLabel b, EdgeLabel c) {
    if (auto s = admissible(a, b, c)) return *s;
    throw AdmissibilityError("inadmissible triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(c) + "): " + admissibility_violation(a, b, c));
}

/// Loop value (-1)^n (n+1).
inline Rational delta(EdgeLabel n) {
    if (n < 0) throw DomainError("negative edge label");
    return Rational(sign_power(n) * (n + 1));
}

/// Theta network (-1)^(i+j+k) i! j! k! (i+j+k+1)! / ((i+j)! (j+k)! (k+i)!).
inline Rational theta(EdgeLabel p, EdgeLabel q, EdgeLabel r) {
    auto [i, j, k] = vertex_strand_counts(p, q, r);
    BigInt num = factorial(i) * factorial(j) * factorial(k) * factorial(i + j + k + 1);
    BigInt den = factorial(i + j) * factorial(j + k) * factorial(k + i);
    return Rational(sign_power(i + j + k) * num, den);
}

/**
 * Tetrahedron labels. Columns pair opposite edges (P,p), (Q,q), (R,r); the
 * four vertices carry (p,q,r), (P,Q,r), (P,q,R), (p,Q,R).
 */
struct TetLabels {
    EdgeLabel P = 0, Q = 0, R = 0, p = 0, q = 0, r = 0;

    auto operator<=>(const TetLabels&) const = default;

    std::array<std::array<EdgeLabel, 3>, 4> vertex_triples() const {
        return {{{p, q, r}, {P, Q, r}, {P, q, R}, {p, Q, R}}};
    }
    std::string to_string() const {
        return "[" + std::to_string(P) + " " + std::to_string(Q) + " " + std::to_string(R) + "; " +
               std::to_string(p) + " " + std::to_string(q) + " " + std::to_string(r) + "]";
    }
};

/// Tetrahedral network value.
inline Rational tet(const TetLabels& t) {
    for (const auto& v : t.vertex_triples()) vertex_strand_counts(v[0], v[1], v[2]);
    const std::array<long long, 4> a{(t.p + t.q + t.r) / 2, (t.P + t.Q + t.r) / 2, (t.P + t.q + t.R) / 2,
                                     (t.p + t.Q + t.R) / 2};
    const std::array<long long, 3> b{(t.p + t.P + t.q + t.Q) / 2, (t.p + t.P + t.r + t.R) / 2,
                                     (t.q + t.Q + t.r + t.R) / 2};
    long long lo = *std::max_element(a.begin(), a.end());
    long long hi = *std::min_element(b.begin(), b.end());
    if (lo > hi)
        throw Error("internal consistency: empty tetrahedral sum for admissible labels " + t.to_string());

    BigInt prefactor_num = 1;
    for (long long bi : b)
        for (long long aj : a) prefactor_num *= factorial(bi - aj);
    BigInt prefactor_den = factorial(t.p) * factorial(t.q) * factorial(t.r) * factorial(t.P) * factorial(t.Q) *
                           factorial(t.R);

    Rational sum;
    for (long long s = lo; s <= hi; ++s) {
        BigInt den = 1;
        for (long long ai : a) den *= factorial(s - ai);
        for (long long bj : b) den *= factorial(bj - s);
        sum += Rational(sign_power(s) * factorial(s + 1), den);
    }
    return Rational(prefactor_num, prefactor_den) * sum;
}

/**
 * Tetrahedral symmetry orbit: any permutation of the columns combined with
 * flipping (swapping upper and lower entry of) two columns at once.
 */
inline std::set<TetLabels> tet_symmetry_orbit(const TetLabels& t) {
    std::array<std::array<EdgeLabel, 2>, 3> cols{{{t.P, t.p}, {t.Q, t.q}, {t.R, t.r}}};
    std::array<int, 3> perm{0, 1, 2};
    static constexpr std::array<std::array<bool, 3>, 4> flips{
        {{false, false, false}, {true, true, false}, {true, false, true}, {false, true, true}}};
    std::set<TetLabels> orbit;
    do {
        for (const auto& f : flips) {
            std::array<std::array<EdgeLabel, 2>, 3> c;
            for (int k = 0; k < 3; ++k) {
                c[k] = cols[perm[k]];
                if (f[k]) std::swap(c[k][0], c[k][1]);
            }
            orbit.insert({c[0][0], c[1][0], c[2][0], c[0][1], c[1][1], c[2][1]});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return orbit;
}

/**
 * 6j recoupling coefficient {p q i; x y j} = Tet[p q i; x y j] Delta(i) / (theta(p,y,i) theta(q,x,i)).
 *
 * It re-expresses an edge j joining vertices (p,q,j) and (x,y,j) as a sum
 * over edges i joining (p,y,i) and (q,x,i), where p, q, x, y are the outer
 * legs in cyclic order.
 */
inline Rational sixj(EdgeLabel p, EdgeLabel q, EdgeLabel i, EdgeLabel x, EdgeLabel y, EdgeLabel j) {
    TetLabels t{p, q, i, x, y, j};
    Rational t_value = tet(t);  // checks (x,y,j), (p,q,j), (p,y,i), (x,q,i)
    Rational den = theta(p, y, i) * theta(q, x, i);
    if (den.is_zero()) throw DegenerateError("zero theta denominator in 6j symbol");
    return t_value * delta(i) / den;
}

}  // namespace skeinlab
