/**
 * @file apollonian.hpp
 * @brief Circle packings (Apollonian and Ford) as a source of spin networks,
 *        and closed-form chromatic values of small disk configurations.
 *
 * A packing turns into a network by placing a vertex in every region (the
 * curvilinear triangle between three mutually tangent disks) and an edge
 * through every tangency point, labeled with the sum of the two curvatures.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skeinlab/errors.hpp"
#include "skeinlab/network.hpp"
#include "skeinlab/rational.hpp"

namespace skeinlab {

// Closed-form disk configuration values ---------------------------------------

/// Two tangent disks: (-1)^(a+b) (a+b+1).
inline Rational eval_two(long long a, long long b) {
    if (a < 0 || b < 0) throw DomainError("disk curvature labels must be nonnegative");
    return Rational(sign_power(a + b) * (a + b + 1));
}

/**
 * Three mutually tangent disks:
 * (-1)^(a+b+c) (a+b+c+1; a,b,c,1) / ((a+b; a) (b+c; b) (c+a; c)).
 * With `signed_form = false` the leading sign is dropped (the unsigned variant
 * some sources print); the signed form is the one that equals theta(a+b, b+c, c+a).
 */
inline Rational eval_three(long long a, long long b, long long c, bool signed_form = true) {
    if (a < 0 || b < 0 || c < 0) throw DomainError("disk curvature labels must be nonnegative");
    BigInt num = multinomial(a + b + c + 1, {a, b, c, 1});
    BigInt den = binomial(a + b, a) * binomial(b + c, b) * binomial(c + a, c);
    Rational v(num, den);
    return signed_form && sign_power(a + b + c) < 0 ? -v : v;
}

/// Descartes configuration of four mutually tangent disks (alternating sum over k = 0..min).
inline Rational eval_four(long long a, long long b, long long c, long long d) {
    if (a < 0 || b < 0 || c < 0 || d < 0) throw DomainError("disk curvature labels must be nonnegative");
    const long long S = a + b + c + d;
    const long long m = std::min({a, b, c, d});
    const BigInt top = multinomial(S + 1, {a, b, c, d, 1});
    const BigInt pairs = binomial(a + b, a) * binomial(a + c, a) * binomial(a + d, a) * binomial(b + c, b) *
                         binomial(b + d, b) * binomial(c + d, c);
    Rational sum;
    for (long long k = 0; k <= m; ++k) {
        BigInt num = binomial(a, k) * binomial(b, k) * binomial(c, k) * binomial(d, k) * top;
        BigInt den = pairs * binomial(S + 1, k);
        Rational term(num, den);
        sum += sign_power(S + k) > 0 ? term : -term;
    }
    return sum;
}

/// eval_three(a,b,c) / eval_two(a,b) in closed form: (-1)^c (1+a+b+c; c) / ((a+c; c) (b+c; c)).
inline Rational ratio_three_over_two(long long a, long long b, long long c) {
    if (a < 0 || b < 0 || c < 0) throw DomainError("disk curvature labels must be nonnegative");
    Rational v(binomial(1 + a + b + c, c), binomial(a + c, c) * binomial(b + c, c));
    return sign_power(c) > 0 ? v : -v;
}

/**
 * Factor by which inserting a disk of curvature d into the region between
 * disks a, b, c multiplies the evaluation: eval_four(a,b,c,d) / eval_three(a,b,c).
 */
inline Rational insertion_ratio(long long a, long long b, long long c, long long d) {
    if (a < 0 || b < 0 || c < 0 || d < 0) throw DomainError("disk curvature labels must be nonnegative");
    if (eval_three(a, b, c).is_zero()) throw DegenerateError("three-disk evaluation vanishes; ratio undefined");
    const long long m = std::min({a, b, c, d});
    const BigInt den = binomial(a + d, d) * binomial(b + d, d) * binomial(c + d, d);
    Rational sum;
    for (long long k = 0; k <= m; ++k) {
        BigInt num = binomial(a, k) * binomial(b, k) * binomial(c, k) * binomial(1 + a + b + c + d - k, d - k);
        Rational term(num, den);
        sum += sign_power(d + k) > 0 ? term : -term;
    }
    return sum;
}

// Exact square roots and Descartes' relation ---------------------------------

/// Square root of a nonnegative rational when both numerator and denominator are perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    BigInt n = q.numerator(), d = q.denominator();
    BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

struct DescartesSolutions {
    /// b1 + b2 + b3 + 2 sqrt(disc) and b1 + b2 + b3 - 2 sqrt(disc).
    double plus = 0, minus = 0;
    std::optional<Rational> exact_plus, exact_minus;  ///< set when disc is a rational square
};

/// The two curvatures completing three mutually tangent disks to a Descartes configuration.
inline DescartesSolutions descartes_fourth(const Rational& b1, const Rational& b2, const Rational& b3) {
    Rational disc = b1 * b2 + b2 * b3 + b3 * b1;
    if (disc.sign() < 0)
        throw GeometryError("no disk is tangent to curvatures " + b1.to_string() + ", " + b2.to_string() + ", " +
                            b3.to_string() + " (negative discriminant " + disc.to_string() + ")");
    Rational sum = b1 + b2 + b3;
    DescartesSolutions out;
    double root = std::sqrt(disc.to_double());
    out.plus = sum.to_double() + 2 * root;
    out.minus = sum.to_double() - 2 * root;
    if (auto r = exact_sqrt(disc)) {
        out.exact_plus = sum + Rational(2) * *r;
        out.exact_minus = sum - Rational(2) * *r;
        out.plus = out.exact_plus->to_double();
        out.minus = out.exact_minus->to_double();
    }
    return out;
}

/// (sum b)^2 == 2 sum b^2, exactly.
inline bool satisfies_descartes(const std::array<Rational, 4>& b) {
    Rational s, q;
    for (const auto& x : b) {
        s += x;
        q += x * x;
    }
    return s * s == Rational(2) * q;
}

// Packings -------------------------------------------------------------------

struct Point {
    double x = 0, y = 0;
};

/**
 * @brief A disk, the outside of a circle (negative curvature), or a half-plane (curvature 0).
 *
 * `curvature` is the label used for network edges. Geometry is kept
 * separately because some arrangements (Ford) draw disks at a radius that
 * differs from their label curvature.
 */
struct Disk {
    Rational curvature;
    int generation = 0;
    bool is_line = false;
    Point center;       ///< circle center
    double radius = 0;  ///< geometric radius (positive)
    std::optional<std::array<Rational, 2>> exact_center;
    /// Half-plane boundary: points p with normal . p = offset; the packing lies where normal . p < offset.
    Point normal;
    double offset = 0;

    bool bounding() const { return !is_line && curvature.sign() < 0; }
};

struct Region {
    std::array<int, 3> disks{};
    int parent = -1;              ///< disk on the far side of the region, if known
    std::optional<Point> point;   ///< a point inside the region
    bool outer = false;           ///< the region is the unbounded side of its three disks
};

struct CirclePacking {
    std::vector<Disk> disks;
    std::vector<std::array<int, 2>> tangencies;  ///< sorted pairs
    std::vector<Region> regions;
};

namespace detail {

inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Where a circle of radius r tangent to `d` may have its center: a circle or a line.
struct Locus {
    bool is_line = false;
    Point c;
    double rho = 0;   // circle locus
    Point n;
    double o = 0;     // line locus n . p = o
};

inline Locus locus(const Disk& d, double r) {
    Locus l;
    if (d.is_line) {
        l.is_line = true;
        l.n = d.normal;
        l.o = d.offset - r;
    } else {
        l.c = d.center;
        l.rho = d.bounding() ? d.radius - r : d.radius + r;
    }
    return l;
}

inline std::vector<Point> intersect(const Locus& a, const Locus& b) {
    if (a.is_line && b.is_line) throw GeometryError("cannot place a disk between two parallel lines alone");
    if (a.is_line) return intersect(b, a);
    std::vector<Point> out;
    if (b.is_line) {
        double s = b.o - (b.n.x * a.c.x + b.n.y * a.c.y);
        Point foot{a.c.x + s * b.n.x, a.c.y + s * b.n.y};
        double h2 = a.rho * a.rho - s * s;
        if (h2 < -1e-9 * std::max(1.0, a.rho * a.rho)) return out;
        double h = h2 <= 1e-12 * a.rho * a.rho ? 0.0 : std::sqrt(h2);  // snap tangent loci
        Point u{-b.n.y, b.n.x};
        out.push_back({foot.x + h * u.x, foot.y + h * u.y});
        out.push_back({foot.x - h * u.x, foot.y - h * u.y});
        return out;
    }
    double d = dist(a.c, b.c);
    if (d == 0) return out;
    double along = (d * d + a.rho * a.rho - b.rho * b.rho) / (2 * d);
    double h2 = a.rho * a.rho - along * along;
    if (h2 < -1e-9 * std::max(1.0, a.rho * a.rho)) return out;
    double h = h2 <= 1e-12 * a.rho * a.rho ? 0.0 : std::sqrt(h2);
    Point e{(b.c.x - a.c.x) / d, (b.c.y - a.c.y) / d};
    Point m{a.c.x + along * e.x, a.c.y + along * e.y};
    out.push_back({m.x - h * e.y, m.y + h * e.x});
    out.push_back({m.x + h * e.y, m.y - h * e.x});
    return out;
}

/// Mismatch between the actual gap and tangency (0 when tangent).
inline double tangency_error(const Disk& a, const Disk& b) {
    if (a.is_line && b.is_line) return 0;  // parallel lines meet at infinity
    if (a.is_line || b.is_line) {
        const Disk& l = a.is_line ? a : b;
        const Disk& c = a.is_line ? b : a;
        return std::abs((l.offset - (l.normal.x * c.center.x + l.normal.y * c.center.y)) - c.radius);
    }
    double want = (a.bounding() || b.bounding()) ? std::abs(a.radius - b.radius) : a.radius + b.radius;
    return std::abs(dist(a.center, b.center) - want);
}

/// Best rational approximation with denominator at most max_den (continued fractions).
inline Rational rationalize(double x, std::int64_t max_den = 1'000'000'000) {
    if (!std::isfinite(x)) throw GeometryError("non-finite coordinate");
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(v);
        if (std::abs(a) > 9e15) break;
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den || k2 <= 0) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = v - a;
        if (frac < 1e-15) break;
        v = 1 / frac;
    }
    return Rational(BigInt(h1), BigInt(k1));
}

/// Exact tangency test for circles with exact centers and radius 1/|curvature|.
inline bool exactly_tangent(const Disk& a, const Disk& b) {
    if (a.is_line || b.is_line) return true;  // lines are checked numerically
    if (!a.exact_center || !b.exact_center) return false;
    Rational dx = (*a.exact_center)[0] - (*b.exact_center)[0];
    Rational dy = (*a.exact_center)[1] - (*b.exact_center)[1];
    Rational ra = Rational(1) / a.curvature, rb = Rational(1) / b.curvature;  // signed radii
    Rational want = ra + rb;  // internal tangency comes out as |ra| - |rb| through the sign of ra
    return dx * dx + dy * dy == want * want;
}

/// Augmented curvature-center vector (b, b x, b y); for a line (0, normal).
struct Acc {
    Rational b, bx, by;
    double db = 0, dbx = 0, dby = 0;
    bool exact = false;
};

inline Acc acc_of(const Disk& d) {
    Acc a;
    a.b = d.curvature;
    a.db = d.curvature.to_double();
    if (d.is_line) {
        a.dbx = d.normal.x;
        a.dby = d.normal.y;
        a.exact = d.normal.x == std::round(d.normal.x) && d.normal.y == std::round(d.normal.y);
        if (a.exact) {
            a.bx = Rational(static_cast<long long>(d.normal.x));
            a.by = Rational(static_cast<long long>(d.normal.y));
        }
    } else {
        double b = a.db;
        a.dbx = b * d.center.x;
        a.dby = b * d.center.y;
        if (d.exact_center) {
            a.exact = true;
            a.bx = a.b * (*d.exact_center)[0];
            a.by = a.b * (*d.exact_center)[1];
        }
    }
    return a;
}

/// The disk filling region (i, j, k) opposite to `parent`: 2 (w_i + w_j + w_k) - w_parent.
inline Acc reflect(const Acc& i, const Acc& j, const Acc& k, const Acc& p) {
    Acc r;
    r.exact = i.exact && j.exact && k.exact && p.exact;
    r.b = Rational(2) * (i.b + j.b + k.b) - p.b;
    r.db = r.b.to_double();
    r.dbx = 2 * (i.dbx + j.dbx + k.dbx) - p.dbx;
    r.dby = 2 * (i.dby + j.dby + k.dby) - p.dby;
    if (r.exact) {
        r.bx = Rational(2) * (i.bx + j.bx + k.bx) - p.bx;
        r.by = Rational(2) * (i.by + j.by + k.by) - p.by;
        r.dbx = r.bx.to_double();
        r.dby = r.by.to_double();
    }
    return r;
}

inline Disk disk_from_acc(const Acc& a, int generation) {
    if (a.b.sign() <= 0) throw GeometryError("filled region produced a non-positive curvature");
    Disk d;
    d.curvature = a.b;
    d.generation = generation;
    d.radius = 1 / a.db;
    if (a.exact) {
        d.exact_center = std::array<Rational, 2>{a.bx / a.b, a.by / a.b};
        d.center = {(*d.exact_center)[0].to_double(), (*d.exact_center)[1].to_double()};
    } else {
        d.center = {a.dbx / a.db, a.dby / a.db};
    }
    return d;
}

inline std::array<int, 2> sorted_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace detail

/**
 * Place four mutually tangent disks with the given curvatures. Lines come
 * first, then a bounding disk, then the rest. Centers are exact rationals
 * when every tangency can be verified exactly, doubles otherwise.
 */
inline std::vector<Disk> place_descartes_root(const std::array<Rational, 4>& curvatures) {
    if (!satisfies_descartes(curvatures))
        throw GeometryError("root curvatures violate Descartes' relation (sum b)^2 = 2 sum b^2");
    std::array<int, 4> order{0, 1, 2, 3};
    auto rank = [&](int i) { return curvatures[static_cast<std::size_t>(i)].is_zero() ? 0 : (curvatures[static_cast<std::size_t>(i)].sign() < 0 ? 1 : 2); };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rank(a) < rank(b); });
    int negatives = 0, lines = 0;
    for (const auto& c : curvatures) {
        negatives += c.sign() < 0;
        lines += c.is_zero();
    }
    if (negatives > 1 || lines > 2 || (negatives == 1 && lines > 0))
        throw GeometryError("root configuration is not realizable");

    std::array<Disk, 4> d;
    for (int k = 0; k < 4; ++k) {
        d[static_cast<std::size_t>(k)].curvature = curvatures[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        Disk& x = d[static_cast<std::size_t>(k)];
        x.is_line = x.curvature.is_zero();
        if (!x.is_line) x.radius = std::abs(1 / x.curvature.to_double());
    }
    // First disk
    if (d[0].is_line) {
        d[0].normal = {0, -1};
        d[0].offset = 0;
    } else {
        d[0].center = {0, 0};
    }
    // Second disk
    if (d[1].is_line) {
        d[1].normal = {0, 1};
        d[1].offset = 2 * d[2].radius;
    } else if (d[0].is_line) {
        d[1].center = {0, d[1].radius};
    } else if (d[0].bounding()) {
        d[1].center = {d[0].radius - d[1].radius, 0};
    } else {
        d[1].center = {d[0].radius + d[1].radius, 0};
    }
    // Third and fourth disks
    auto pick = [](std::vector<Point> pts, auto&& score) {
        if (pts.empty()) throw GeometryError("root disks cannot be placed tangent to each other");
        return *std::min_element(pts.begin(), pts.end(), [&](Point a, Point b) {
            double sa = score(a), sb = score(b);
            if (std::abs(sa - sb) > 1e-9) return sa < sb;
            if (std::abs(a.y - b.y) > 1e-12) return a.y > b.y;
            return a.x > b.x;
        });
    };
    if (d[0].is_line && d[1].is_line) {
        d[2].center = {0, d[2].radius};
    } else {
        d[2].center = pick(detail::intersect(detail::locus(d[0], d[2].radius), detail::locus(d[1], d[2].radius)),
                           [](Point) { return 0.0; });
    }
    {
        std::vector<Point> cand = (d[0].is_line && d[1].is_line)
                                      ? detail::intersect(detail::locus(d[0], d[3].radius), detail::locus(d[2], d[3].radius))
                                      : detail::intersect(detail::locus(d[0], d[3].radius), detail::locus(d[1], d[3].radius));
        const Disk& other = (d[0].is_line && d[1].is_line) ? d[1] : d[2];
        d[3].center = pick(cand, [&](Point p) {
            Disk probe = d[3];
            probe.center = p;
            return detail::tangency_error(probe, other);
        });
    }
    double scale = 0;
    for (const auto& x : d)
        if (!x.is_line) scale = std::max(scale, x.radius);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (detail::tangency_error(d[static_cast<std::size_t>(a)], d[static_cast<std::size_t>(b)]) > 1e-7 * std::max(1.0, scale))
                throw GeometryError("root disks could not be placed mutually tangent");

    // Try to certify exact rational centers.
    bool exact = true;
    for (auto& x : d) {
        if (x.is_line) continue;
        x.exact_center = std::array<Rational, 2>{detail::rationalize(x.center.x), detail::rationalize(x.center.y)};
    }
    for (int a = 0; a < 4 && exact; ++a)
        for (int b = a + 1; b < 4 && exact; ++b)
            exact = detail::exactly_tangent(d[static_cast<std::size_t>(a)], d[static_cast<std::size_t>(b)]);
    for (auto& x : d) {
        if (!exact) x.exact_center.reset();
        if (x.exact_center) x.center = {(*x.exact_center)[0].to_double(), (*x.exact_center)[1].to_double()};
    }
    return {d.begin(), d.end()};
}

/**
 * Apollonian packing: the root configuration followed by `depth` rounds of
 * filling every region with its inscribed disk.
 */
inline CirclePacking generate_apollonian(const std::array<Rational, 4>& root, int depth) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    CirclePacking p;
    p.disks = place_descartes_root(root);
    std::vector<detail::Acc> acc;
    for (const auto& d : p.disks) acc.push_back(detail::acc_of(d));
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) p.tangencies.push_back({a, b});
    std::vector<Region> frontier;
    for (int skip = 3; skip >= 0; --skip) {
        Region r;
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != skip) r.disks[static_cast<std::size_t>(k++)] = i;
        r.parent = skip;
        frontier.push_back(r);
    }

    std::map<std::string, int> seen;
    auto key = [](const detail::Acc& a) {
        if (a.exact) return a.b.to_string() + "|" + a.bx.to_string() + "|" + a.by.to_string();
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.9f|%.9f|%.9f", a.db, std::round(a.dbx / a.db * 1e9) / 1e9,
                      std::round(a.dby / a.db * 1e9) / 1e9);
        return std::string(buf);
    };
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (!p.disks[i].is_line) seen[key(acc[i])] = static_cast<int>(i);

    for (int g = 1; g <= depth; ++g) {
        std::vector<Region> next;
        for (const Region& r : frontier) {
            const auto [i, j, k] = r.disks;
            detail::Acc child = detail::reflect(acc[static_cast<std::size_t>(i)], acc[static_cast<std::size_t>(j)],
                                                acc[static_cast<std::size_t>(k)], acc[static_cast<std::size_t>(r.parent)]);
            auto [it, inserted] = seen.try_emplace(key(child), static_cast<int>(p.disks.size()));
            int n = it->second;
            if (inserted) {
                p.disks.push_back(detail::disk_from_acc(child, g));
                acc.push_back(child);
            }
            for (int other : {i, j, k}) p.tangencies.push_back(detail::sorted_pair(n, other));
            next.push_back(Region{{i, j, n}, k, std::nullopt, false});
            next.push_back(Region{{j, k, n}, i, std::nullopt, false});
            next.push_back(Region{{k, i, n}, j, std::nullopt, false});
        }
        frontier = std::move(next);
    }
    // Reference point of each remaining region: the center of the disk that would fill it.
    for (Region& r : frontier) {
        detail::Acc fill = detail::reflect(acc[static_cast<std::size_t>(r.disks[0])], acc[static_cast<std::size_t>(r.disks[1])],
                                           acc[static_cast<std::size_t>(r.disks[2])], acc[static_cast<std::size_t>(r.parent)]);
        r.point = Point{fill.dbx / fill.db, fill.dby / fill.db};
    }
    std::sort(p.tangencies.begin(), p.tangencies.end());
    p.tangencies.erase(std::unique(p.tangencies.begin(), p.tangencies.end()), p.tangencies.end());
    p.regions = std::move(frontier);
    return p;
}

/// Reduced fraction p/q for a Ford disk.
struct FordFraction {
    long long p, q;
};

/**
 * Ford arrangement on [0, 1]: a disk at every reduced p/q with q <= q_max,
 * label curvature q^2, drawn with the tangent radius 1/(2 q^2), plus the
 * baseline (disk 0, curvature 0). Regions are the gaps below each tangent
 * pair of Farey neighbours.
 */
inline CirclePacking generate_ford(long long q_max, std::vector<FordFraction>* fractions = nullptr) {
    if (q_max < 1) throw DomainError("q_max must be at least 1");
    CirclePacking pk;
    Disk base;
    base.is_line = true;
    base.curvature = 0;
    base.normal = {0, -1};
    base.offset = 0;
    pk.disks.push_back(base);

    std::vector<FordFraction> fr;
    for (long long q = 1; q <= q_max; ++q)
        for (long long p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1) fr.push_back({p, q});
    std::sort(fr.begin(), fr.end(), [](const FordFraction& a, const FordFraction& b) {
        return a.p * b.q < b.p * a.q || (a.p * b.q == b.p * a.q && a.q < b.q);
    });
    std::map<std::pair<long long, long long>, int> id;
    for (const auto& f : fr) {
        Disk d;
        d.curvature = Rational(f.q * f.q);
        Rational x(BigInt(f.p), BigInt(f.q)), y(BigInt(1), BigInt(2 * f.q * f.q));
        d.exact_center = std::array<Rational, 2>{x, y};
        d.center = {x.to_double(), y.to_double()};
        d.radius = y.to_double();
        d.generation = static_cast<int>(f.q);
        id[{f.p, f.q}] = static_cast<int>(pk.disks.size());
        pk.disks.push_back(d);
    }
    for (std::size_t a = 0; a < fr.size(); ++a) {
        pk.tangencies.push_back({0, id[{fr[a].p, fr[a].q}]});
        for (std::size_t b = a + 1; b < fr.size(); ++b)
            if (std::abs(fr[a].p * fr[b].q - fr[b].p * fr[a].q) == 1)
                pk.tangencies.push_back(detail::sorted_pair(id[{fr[a].p, fr[a].q}], id[{fr[b].p, fr[b].q}]));
    }
    std::sort(pk.tangencies.begin(), pk.tangencies.end());

    // Gap below each tangent pair: filled by the mediant when present, else bounded by the baseline.
    const Point base_normal{0, -1};
    for (const auto& t : pk.tangencies) {
        if (t[0] == 0) continue;
        const auto& fa = fr[static_cast<std::size_t>(t[0] - 1)];
        const auto& fb = fr[static_cast<std::size_t>(t[1] - 1)];
        long long mp = fa.p + fb.p, mq = fa.q + fb.q;
        Region r;
        if (mq <= q_max) {
            int m = id.at({mp, mq});
            r.disks = {t[0], t[1], m};
            r.parent = 0;
            // Inscribed disk of the three Ford disks, by reflecting the baseline.
            double sb = 0, sx = 0, sy = 0;
            for (int k : r.disks) {
                const Disk& d = pk.disks[static_cast<std::size_t>(k)];
                double b = 1 / d.radius;
                sb += b;
                sx += b * d.center.x;
                sy += b * d.center.y;
            }
            double b = 2 * sb;
            r.point = Point{(2 * sx - base_normal.x) / b, (2 * sy - base_normal.y) / b};
        } else {
            r.disks = {t[0], t[1], 0};
            double q2 = static_cast<double>(mq) * static_cast<double>(mq);
            r.point = Point{static_cast<double>(mp) / static_cast<double>(mq), 1 / (2 * q2)};
        }
        pk.regions.push_back(r);
    }
    if (fractions) *fractions = fr;
    return pk;
}

// Small labeled configurations (geometry fixed, labels free) -----------------

/// Two tangent disks with label curvatures a, b.
inline CirclePacking two_disk_configuration(const Rational& a, const Rational& b) {
    CirclePacking p;
    Disk d1, d2;
    d1.curvature = a;
    d1.center = {-1, 0};
    d1.radius = 1;
    d2.curvature = b;
    d2.center = {1, 0};
    d2.radius = 1;
    p.disks = {d1, d2};
    p.tangencies = {{0, 1}};
    return p;
}

/// Three mutually tangent disks (counterclockwise) with both of their regions.
inline CirclePacking three_disk_configuration(const Rational& a, const Rational& b, const Rational& c) {
    CirclePacking p;
    const std::array<Point, 3> centers{{{0, 0}, {2, 0}, {1, std::sqrt(3.0)}}};
    const std::array<Rational, 3> labels{a, b, c};
    for (std::size_t k = 0; k < 3; ++k) {
        Disk d;
        d.curvature = labels[k];
        d.center = centers[k];
        d.radius = 1;
        p.disks.push_back(d);
    }
    p.tangencies = {{0, 1}, {0, 2}, {1, 2}};
    p.regions.push_back(Region{{0, 1, 2}, -1, std::nullopt, false});
    p.regions.push_back(Region{{0, 1, 2}, -1, std::nullopt, true});
    return p;
}

/// Descartes configuration: three outer disks a, b, c around an inner disk d.
inline CirclePacking four_disk_configuration(const Rational& a, const Rational& b, const Rational& c,
                                             const Rational& d) {
    CirclePacking p = three_disk_configuration(a, b, c);
    Disk inner;
    inner.curvature = d;
    inner.center = {1, std::sqrt(3.0) / 3};
    inner.radius = 2 / std::sqrt(3.0) - 1;
    p.disks.push_back(inner);
    p.tangencies = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    p.regions = {Region{{0, 1, 3}, 2, std::nullopt, false}, Region{{1, 2, 3}, 0, std::nullopt, false},
                 Region{{2, 0, 3}, 1, std::nullopt, false}, Region{{0, 1, 2}, 3, std::nullopt, true}};
    return p;
}

// Packing to network ---------------------------------------------------------

namespace detail {

/// Tangency point of two disks, as seen from inside region `r` (needed for parallel lines).
inline Point cusp(const CirclePacking& pk, int i, int j, Point ref) {
    const Disk& a = pk.disks[static_cast<std::size_t>(i)];
    const Disk& b = pk.disks[static_cast<std::size_t>(j)];
    if (a.is_line && b.is_line) {
        Point u{-a.normal.y, a.normal.x};
        double s = (ref.x * u.x + ref.y * u.y) >= 0 ? 1 : -1;
        return {ref.x + 1e6 * s * u.x, ref.y + 1e6 * s * u.y};
    }
    if (a.is_line || b.is_line) {
        const Disk& l = a.is_line ? a : b;
        const Disk& c = a.is_line ? b : a;
        double s = l.offset - (l.normal.x * c.center.x + l.normal.y * c.center.y);
        return {c.center.x + s * l.normal.x, c.center.y + s * l.normal.y};
    }
    const Disk& from = b.bounding() ? b : a;
    const Disk& to = b.bounding() ? a : b;
    double d = dist(from.center, to.center);
    if (d == 0) throw GeometryError("concentric tangent disks");
    return {from.center.x + from.radius * (to.center.x - from.center.x) / d,
            from.center.y + from.radius * (to.center.y - from.center.y) / d};
}

}  // namespace detail

struct PackingNetwork {
    SpinNetwork network;
    std::vector<std::string> open_ends;  ///< ids of edges with a free end
};

/**
 * One vertex per region, one edge per tangency labeled by the curvature sum.
 * A tangency bordered by one region becomes an edge with a free end (listed
 * in open_ends); one bordered by no region becomes a closed loop.
 */
inline PackingNetwork packing_to_network(const CirclePacking& pk) {
    const std::size_t nd = pk.disks.size();
    auto disk_name = [](int k) { return "d" + std::to_string(k); };
    std::map<std::array<int, 2>, std::size_t> edge_of;
    PackingNetwork out;
    for (const auto& t : pk.tangencies) {
        if (t[0] < 0 || t[1] < 0 || static_cast<std::size_t>(t[0]) >= nd || static_cast<std::size_t>(t[1]) >= nd || t[0] == t[1])
            throw StructuralError("tangency references an unknown disk");
        Rational sum = pk.disks[static_cast<std::size_t>(t[0])].curvature + pk.disks[static_cast<std::size_t>(t[1])].curvature;
        std::string id = disk_name(t[0]) + "-" + disk_name(t[1]);
        if (!sum.is_integer()) throw LabelingError("edge " + id + " has non-integer label " + sum.to_string());
        if (sum.sign() < 0) throw LabelingError("edge " + id + " has negative label " + sum.to_string());
        auto key = detail::sorted_pair(t[0], t[1]);
        if (edge_of.count(key)) throw StructuralError("duplicate tangency " + id);
        edge_of[key] = out.network.add_edge(id, sum.numerator().convert_to<EdgeLabel>());
    }
    std::vector<int> uses(out.network.edges().size(), 0);
    for (const Region& r : pk.regions)
        for (int a = 0; a < 3; ++a) {
            auto key = detail::sorted_pair(r.disks[static_cast<std::size_t>(a)], r.disks[static_cast<std::size_t>((a + 1) % 3)]);
            auto it = edge_of.find(key);
            if (it == edge_of.end())
                throw StructuralError("region uses disks " + disk_name(key[0]) + " and " + disk_name(key[1]) +
                                      " which are not listed as tangent");
            ++uses[it->second];
        }
    // Closed loops must be decided before vertices attach ends.
    SpinNetwork net;
    std::vector<std::size_t> remap(out.network.edges().size());
    for (std::size_t e = 0; e < out.network.edges().size(); ++e) {
        if (uses[e] > 2) throw StructuralError("tangency " + out.network.edge(e).id + " borders more than two regions");
        remap[e] = net.add_edge(out.network.edge(e).id, out.network.edge(e).label, uses[e] == 0);
        if (uses[e] == 1) out.open_ends.push_back(out.network.edge(e).id);
    }
    for (std::size_t ri = 0; ri < pk.regions.size(); ++ri) {
        const Region& r = pk.regions[ri];
        std::array<std::array<int, 2>, 3> pairs;
        for (int a = 0; a < 3; ++a)
            pairs[static_cast<std::size_t>(a)] = detail::sorted_pair(r.disks[static_cast<std::size_t>(a)], r.disks[static_cast<std::size_t>((a + 1) % 3)]);
        Point ref;
        if (r.point) {
            ref = *r.point;
        } else {
            // Centroid of the three tangency points (for non-line triples).
            Point sum{0, 0};
            for (const auto& pr : pairs) {
                Point c = detail::cusp(pk, pr[0], pr[1], {0, 0});
                sum.x += c.x;
                sum.y += c.y;
            }
            ref = {sum.x / 3, sum.y / 3};
        }
        std::array<std::pair<double, std::size_t>, 3> by_angle;
        for (std::size_t a = 0; a < 3; ++a) {
            Point c = detail::cusp(pk, pairs[a][0], pairs[a][1], ref);
            by_angle[a] = {std::atan2(c.y - ref.y, c.x - ref.x), remap[edge_of.at(pairs[a])]};
        }
        std::sort(by_angle.begin(), by_angle.end());
        std::array<std::size_t, 3> edges{by_angle[0].second, by_angle[1].second, by_angle[2].second};
        if (r.outer) std::swap(edges[1], edges[2]);
        net.add_vertex_auto("r" + std::to_string(ri), edges);
    }
    out.network = std::move(net);
    return out;
}

}  // namespace skeinlab
