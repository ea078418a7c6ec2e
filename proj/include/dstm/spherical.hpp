#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dstm/error.hpp"
#include "dstm/rng.hpp"

namespace dstm {

/// n unit-norm points in d real dimensions.
struct SphericalCode {
    std::size_t dim = 0;
    std::vector<std::vector<double>> points;

    std::size_t n() const { return points.size(); }
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline void normalize(std::vector<double>& a) {
    const double n = norm(a);
    if (n > 0.0)
        for (auto& v : a) v /= n;
}

}  // namespace detail

/// Minimum pairwise angular separation, in degrees.
inline double min_angle_deg(const SphericalCode& code) {
    if (code.n() < 2) throw ConfigError("min_angle: need at least two points");
    double max_dot = -1.0;
    for (std::size_t i = 0; i + 1 < code.n(); ++i)
        for (std::size_t j = i + 1; j < code.n(); ++j)
            max_dot = std::max(max_dot, detail::dot(code.points[i], code.points[j]));
    max_dot = std::clamp(max_dot, -1.0, 1.0);
    return std::acos(max_dot) * 180.0 / std::numbers::pi;
}

/// Plain-text point file: one point per line, whitespace-separated
/// coordinates, '#' starts a comment line. Rows must share a common radius
/// (within 1e-6); they are normalized to unit norm on load.
inline SphericalCode load_sphere(std::istream& in) {
    SphericalCode code;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        std::vector<double> p;
        double v;
        while (row >> v) p.push_back(v);
        std::string trailing;
        if (!row.eof() && !(row >> trailing).eof())
            throw ParseError("sphere file line " + std::to_string(lineno) + ": bad token");
        if (p.empty()) continue;
        if (code.dim == 0) code.dim = p.size();
        if (p.size() != code.dim)
            throw ParseError("sphere file line " + std::to_string(lineno) + ": expected " +
                             std::to_string(code.dim) + " coordinates, got " +
                             std::to_string(p.size()));
        code.points.push_back(std::move(p));
    }
    if (code.n() < 2) throw ParseError("sphere file: need at least two points");
    const double r0 = detail::norm(code.points.front());
    for (const auto& p : code.points) {
        const double r = detail::norm(p);
        if (!(std::abs(r - r0) <= 1e-6))
            throw ConstellationError("sphere file: inconsistent radii (" + std::to_string(r0) +
                                     " vs " + std::to_string(r) + ")");
    }
    if (r0 <= 0.0) throw ConstellationError("sphere file: zero-radius point");
    for (auto& p : code.points) detail::normalize(p);
    return code;
}

inline SphericalCode load_sphere(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sphere file: " + path);
    return load_sphere(in);
}

inline void save_sphere(std::ostream& out, const SphericalCode& code) {
    out.precision(17);
    for (const auto& p : code.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ' ';
            out << p[i];
        }
        out << '\n';
    }
}

inline void save_sphere(const std::string& path, const SphericalCode& code) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write sphere file: " + path);
    save_sphere(out, code);
    if (!out) throw ConfigError("write failed: " + path);
}

namespace detail {

inline SphericalCode random_sphere(std::size_t d, std::size_t n, Rng& rng) {
    SphericalCode code;
    code.dim = d;
    code.points.assign(n, std::vector<double>(d));
    for (auto& p : code.points) {
        do {
            for (auto& v : p) v = rng.gaussian();
        } while (norm(p) < 1e-6);
        normalize(p);
    }
    return code;
}

/// One packing attempt: repulsion descent with a hardening exponent, then a
/// maximin polish that pushes apart only the currently closest pairs.
inline SphericalCode pack_once(std::size_t d, std::size_t n, Rng& rng, std::size_t iterations) {
    SphericalCode code = random_sphere(d, n, rng);
    auto& pts = code.points;
    std::vector<std::vector<double>> force(n, std::vector<double>(d));

    const std::size_t t1 = iterations;
    for (std::size_t t = 0; t < t1; ++t) {
        const double frac = static_cast<double>(t) / static_cast<double>(t1);
        const double s = 2.0 + 46.0 * frac;
        const double step = 0.08 * (1.0 - frac) + 0.004;
        for (auto& f : force) std::fill(f.begin(), f.end(), 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dist2 = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    const double diff = pts[i][k] - pts[j][k];
                    dist2 += diff * diff;
                }
                dist2 = std::max(dist2, 1e-12);
                const double w = std::pow(dist2, -0.5 * (s + 2.0));
                for (std::size_t k = 0; k < d; ++k) {
                    const double diff = pts[i][k] - pts[j][k];
                    force[i][k] += w * diff;
                    force[j][k] -= w * diff;
                }
            }
        }
        double fmax = 0.0;
        for (const auto& f : force) fmax = std::max(fmax, norm(f));
        if (fmax <= 0.0) continue;
        const double scale = step / fmax;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < d; ++k) pts[i][k] += scale * force[i][k];
            normalize(pts[i]);
        }
    }

    // Polish: equalize the contact graph. Only pairs within a shrinking
    // band above the current minimum separation get pushed.
    const std::size_t t2 = std::max<std::size_t>(iterations, 500);
    for (std::size_t t = 0; t < t2; ++t) {
        const double frac = static_cast<double>(t) / static_cast<double>(t2);
        const double band = 0.05 * (1.0 - frac) + 1e-5;
        const double step = 0.02 * (1.0 - frac) + 1e-5;
        double max_dot = -1.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                max_dot = std::max(max_dot, dot(pts[i], pts[j]));
        for (auto& f : force) std::fill(f.begin(), f.end(), 0.0);
        bool any = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dij = dot(pts[i], pts[j]);
                if (dij < max_dot - band) continue;
                const double weight = 1.0 - (max_dot - dij) / band;
                any = true;
                for (std::size_t k = 0; k < d; ++k) {
                    const double diff = pts[i][k] - pts[j][k];
                    force[i][k] += weight * diff;
                    force[j][k] -= weight * diff;
                }
            }
        }
        if (!any) continue;
        double fmax = 0.0;
        for (const auto& f : force) fmax = std::max(fmax, norm(f));
        if (fmax <= 0.0) continue;
        const double scale = step / fmax;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < d; ++k) pts[i][k] += scale * force[i][k];
            normalize(pts[i]);
        }
    }
    return code;
}

}  // namespace detail

/// Best-of-restarts maximin packing of n points on the (d-1)-sphere.
/// Deterministic given (seed, iterations, restarts); restart r draws its
/// generator from derive_seed(seed, r).
inline SphericalCode optimize_sphere(std::size_t d, std::size_t n, std::uint64_t seed,
                                     std::size_t iterations = 2000, std::size_t restarts = 32) {
    if (d < 2) throw ConfigError("optimize_sphere: dimension must be at least 2");
    if (n < 2) throw ConfigError("optimize_sphere: need at least two points");
    SphericalCode best;
    double best_angle = -1.0;
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, r));
        SphericalCode cand = detail::pack_once(d, n, rng, iterations);
        const double ang = min_angle_deg(cand);
        if (ang > best_angle) {
            best_angle = ang;
            best = std::move(cand);
        }
    }
    return best;
}

}  // namespace dstm
