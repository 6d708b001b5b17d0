/**
 * @file analytic.hpp
 * @brief Continuation of the two- and three-disk values to real arguments,
 *        and uniform sampling along affine paths.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "skeinlab/errors.hpp"

namespace skeinlab {

using ComplexValue = std::complex<double>;

namespace detail {

/// e^{i pi s}, exact when 2s is an integer.
inline ComplexValue unit_phase(double s) {
    double r = std::fmod(s, 2.0);
    if (r < 0) r += 2.0;
    double twice = 2 * r;
    if (twice == std::floor(twice)) {
        switch (static_cast<int>(twice)) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            case 3: return {0, -1};
            default: break;
        }
    }
    return std::polar(1.0, std::numbers::pi * r);
}

inline bool nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

/// log|Gamma(x)| and the sign of Gamma(x); rejects poles.
inline double log_abs_gamma(double x, int& sign) {
    if (nonpositive_integer(x)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        throw PoleError(std::string("gamma pole at argument ") + buf, x);
    }
    sign = 1;
    if (x < 0 && static_cast<long long>(std::ceil(-x)) % 2 == 1) sign = -sign;
    return std::lgamma(x);
}

}  // namespace detail

/// (1 + x + y) e^{i pi (x + y)}.
inline ComplexValue delta_c(double x, double y) { return (1 + x + y) * detail::unit_phase(x + y); }

/**
 * e^{i pi (a+b+c)} Gamma(a+1) Gamma(b+1) Gamma(c+1) Gamma(a+b+c+2)
 *   / (Gamma(a+b+1) Gamma(b+c+1) Gamma(c+a+1)).
 * Any gamma argument at a nonpositive integer raises PoleError.
 */
inline ComplexValue theta_c(double a, double b, double c) {
    const double up[] = {a + 1, b + 1, c + 1, a + b + c + 2};
    const double down[] = {a + b + 1, b + c + 1, c + a + 1};
    double log_mag = 0;
    int sign = 1;
    for (double x : up) {
        int s = 1;
        log_mag += detail::log_abs_gamma(x, s);
        sign *= s;
    }
    for (double x : down) {
        int s = 1;
        log_mag -= detail::log_abs_gamma(x, s);
        sign *= s;
    }
    double mag = std::exp(log_mag);
    if (!std::isfinite(mag)) throw DomainError("theta continuation overflows at these arguments");
    return static_cast<double>(sign) * mag * detail::unit_phase(a + b + c);
}

/// x(t) = coefficient * t + constant.
struct AffineComponent {
    double coefficient = 0, constant = 0;
    double at(double t) const { return coefficient * t + constant; }
};

/// Uniform grid t0, ..., t1 (steps + 1 points) along an affine path.
struct SamplePath {
    std::vector<AffineComponent> components;
    double t0 = 0, t1 = 1;
    int steps = 1;
};

enum class ContinuedFunction { delta, theta };

struct Sample {
    double t;
    ComplexValue value;
};

namespace detail {

inline double parse_number(std::string_view s, std::string_view whole) {
    std::string text(s);
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
        throw DomainError("bad number '" + text + "' in path component '" + std::string(whole) + "'");
    return v;
}

/// One affine expression in x, e.g. "2*x+1", "-x/2", "0.5", "3x".
inline AffineComponent parse_affine(std::string_view expr) {
    std::string s;
    for (char ch : expr)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw DomainError("empty path component");
    AffineComponent out;
    std::size_t i = 0;
    while (i < s.size()) {
        double sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw DomainError("expected '+' or '-' in path component '" + std::string(expr) + "'");
        }
        // A sign right after a mantissa's 'e' belongs to the exponent.
        auto exponent_sign = [&](std::size_t j) {
            return j >= i + 2 && (s[j - 1] == 'e' || s[j - 1] == 'E') &&
                   std::isdigit(static_cast<unsigned char>(s[j - 2]));
        };
        std::size_t j = i;
        while (j < s.size() && ((s[j] != '+' && s[j] != '-') || exponent_sign(j))) ++j;
        std::string_view term(s.data() + i, j - i);
        if (term.empty()) throw DomainError("dangling sign in path component '" + std::string(expr) + "'");
        // term := factor (('*' | '/') factor)* with factors numbers or x; "3x" means 3*x.
        double coeff = sign;
        int xs = 0;
        std::size_t k = 0;
        char op = '*';
        while (k < term.size()) {
            std::size_t m = k;
            while (m < term.size() && term[m] != '*' && term[m] != '/') ++m;
            std::string_view f = term.substr(k, m - k);
            if (f.empty()) throw DomainError("missing factor in path component '" + std::string(expr) + "'");
            bool has_x = f.back() == 'x';
            if (has_x) {
                if (op == '/') throw DomainError("division by x is not affine: '" + std::string(expr) + "'");
                ++xs;
                f.remove_suffix(1);
            }
            if (!f.empty()) {
                double v = parse_number(f, expr);
                if (op == '/') {
                    if (v == 0) throw DomainError("division by zero in path component '" + std::string(expr) + "'");
                    coeff /= v;
                } else {
                    coeff *= v;
                }
            }
            if (m < term.size()) op = term[m];
            k = m + 1;
            if (m + 1 == term.size() && m < term.size())
                throw DomainError("trailing operator in path component '" + std::string(expr) + "'");
        }
        if (xs > 1) throw DomainError("path component '" + std::string(expr) + "' is not affine in x");
        (xs == 1 ? out.coefficient : out.constant) += coeff;
        i = j;
    }
    return out;
}

}  // namespace detail

/// Parse "a,b,c" where every entry is affine in x, e.g. "1,x,x" or "x,2*x+1".
inline std::vector<AffineComponent> parse_path(std::string_view text) {
    std::vector<AffineComponent> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(detail::parse_affine(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                             : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Evaluate one continued function at a point; arity is checked.
inline ComplexValue evaluate_continued(ContinuedFunction f, const std::vector<double>& args) {
    if (f == ContinuedFunction::delta) {
        if (args.size() != 2) throw DomainError("delta takes 2 arguments, got " + std::to_string(args.size()));
        return delta_c(args[0], args[1]);
    }
    if (args.size() != 3) throw DomainError("theta takes 3 arguments, got " + std::to_string(args.size()));
    return theta_c(args[0], args[1], args[2]);
}

/// Values at t_k = t0 + k (t1 - t0) / steps, k = 0..steps.
inline std::vector<Sample> sample(ContinuedFunction f, const SamplePath& path) {
    if (path.steps < 1) throw DomainError("steps must be at least 1");
    if (!(path.t0 < path.t1)) throw DomainError("path range needs t0 < t1");
    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(path.steps) + 1);
    std::vector<double> args(path.components.size());
    for (int k = 0; k <= path.steps; ++k) {
        double t = k == path.steps ? path.t1 : path.t0 + (path.t1 - path.t0) * k / path.steps;
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = path.components[i].at(t);
        try {
            out.push_back({t, evaluate_continued(f, args)});
        } catch (const PoleError& e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", t);
            throw PoleError(std::string("pole on the sample grid at t=") + buf + ": " + e.what(), e.argument());
        }
    }
    return out;
}

/// "t,re,im" header and one "%.12g" row per sample.
inline std::string samples_to_csv(const std::vector<Sample>& samples) {
    std::string out = "t,re,im\n";
    char buf[128];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", s.t, s.value.real() + 0.0, s.value.imag() + 0.0);
        out += buf;
    }
    return out;
}

/// Argand-plane polyline with an axis cross, scaled into a fixed 800x800 viewBox.
inline std::string samples_to_svg(const std::vector<Sample>& samples) {
    double extent = 1;
    for (const auto& s : samples) extent = std::max({extent, std::abs(s.value.real()), std::abs(s.value.imag())});
    const double half = 380, scale = half / extent;
    auto px = [&](double re) { return 400 + re * scale; };
    auto py = [&](double im) { return 400 - im * scale; };
    std::ostringstream os;
    char buf[96];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    os << "<line x1=\"0\" y1=\"400\" x2=\"800\" y2=\"400\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"400\" y1=\"0\" x2=\"400\" y2=\"800\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    std::snprintf(buf, sizeof buf, "%.6g", extent);
    os << "<text x=\"785\" y=\"395\" font-size=\"12\" text-anchor=\"end\">" << buf << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", px(samples[i].value.real()), py(samples[i].value.imag()));
        os << buf;
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

}  // namespace skeinlab
