#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "dstm/error.hpp"
#include "dstm/matrix.hpp"
#include "dstm/spherical.hpp"

namespace dstm {

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// A joint constellation over a group of real symbol slots: L points of
/// dimension group_dim, each with squared norm equal to `power`.
/// Labels follow point order.
struct JointGroupSet {
    std::size_t group_dim = 0;
    double power = 0.0;
    std::vector<std::vector<double>> points;

    std::size_t size() const { return points.size(); }

    std::size_t bits() const {
        std::size_t b = 0;
        while ((std::size_t{1} << b) < size()) ++b;
        return b;
    }
};

/// Scale a unit-radius spherical code to the requested per-group power.
inline JointGroupSet sphere_to_joint(const SphericalCode& code, double power) {
    if (!(power > 0.0)) throw ConfigError("sphere_to_joint: power must be positive");
    if (!is_power_of_two(code.n()))
        throw ConstellationError("sphere_to_joint: point count " + std::to_string(code.n()) +
                                 " is not a power of two, cannot map bits");
    JointGroupSet set;
    set.group_dim = code.dim;
    set.power = power;
    const double radius = std::sqrt(power);
    set.points.reserve(code.n());
    for (const auto& p : code.points) {
        std::vector<double> q(p);
        for (auto& v : q) v *= radius;
        set.points.push_back(std::move(q));
    }
    return set;
}

/// n-PSK ring of radius sqrt(power), one complex symbol per group.
inline JointGroupSet psk(std::size_t n, double power) {
    if (!is_power_of_two(n)) throw ConstellationError("psk: order must be a power of two");
    if (!(power > 0.0)) throw ConfigError("psk: power must be positive");
    JointGroupSet set;
    set.group_dim = 2;
    set.power = power;
    const double radius = std::sqrt(power);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        set.points.push_back({radius * std::cos(phase), radius * std::sin(phase)});
    }
    return set;
}

/// Minimum squared Euclidean distance between distinct points of a set.
inline double min_sq_distance(const JointGroupSet& set) {
    if (set.size() < 2) throw ConfigError("min_sq_distance: need at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < set.group_dim; ++k) {
                const double diff = set.points[i][k] - set.points[j][k];
                s += diff * diff;
            }
            best = std::min(best, s);
        }
    return best;
}

/// 2M symbol-pairs (a_k, b_k): the first M put all power in a_k on a PSK
/// ring, the last M put it in b_k on a ring rotated by theta. One element of
/// every pair is zero, so Re(a_k b_k*) = 0 throughout, and each pair carries
/// squared power 1/n_groups.
struct PairwiseSet {
    std::size_t m = 0;
    double theta = 0.0;
    double power = 0.0;
    double nu = 0.0;
    std::vector<std::pair<cx, cx>> pairs;

    std::size_t size() const { return pairs.size(); }

    /// Real-vector view (Re a, Im a, Re b, Im b) for group decoding.
    JointGroupSet as_joint() const {
        JointGroupSet set;
        set.group_dim = 4;
        set.power = power;
        set.points.reserve(pairs.size());
        for (const auto& [a, b] : pairs)
            set.points.push_back({a.real(), a.imag(), b.real(), b.imag()});
        return set;
    }
};

inline PairwiseSet qo_pairwise(std::size_t m, double theta, std::size_t n_groups = 2) {
    if (m < 2) throw ConfigError("qo_pairwise: M must be at least 2");
    const double theta_max = 2.0 * std::numbers::pi / static_cast<double>(m);
    if (!(theta >= 0.0) || !(theta < theta_max))
        throw ConfigError("qo_pairwise: theta must lie in [0, 2*pi/M)");
    if (n_groups != 2 && n_groups != 3)
        throw ConfigError("qo_pairwise: supported group counts are 2 and 3");
    PairwiseSet set;
    set.m = m;
    set.theta = theta;
    set.power = 1.0 / static_cast<double>(n_groups);
    set.nu = 0.0;
    const double rho = std::sqrt(set.power);
    const double base = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (std::size_t k = 1; k <= m; ++k) {
        const double phase = base * static_cast<double>(k);
        set.pairs.push_back({cx{rho * std::cos(phase), rho * std::sin(phase)}, cx{}});
    }
    for (std::size_t k = 1; k <= m; ++k) {
        const double phase = base * static_cast<double>(k) + theta;
        set.pairs.push_back({cx{}, cx{rho * std::cos(phase), rho * std::sin(phase)}});
    }
    return set;
}

/// Rotation that maximizes the worst-case pair determinant: pi/M for even M;
/// pi/2M for odd M (3*pi/2M scores identically, the smaller is returned).
inline double theorem1_theta(std::size_t m) {
    if (m < 2) throw ConfigError("theorem1_theta: M must be at least 2");
    const double pi = std::numbers::pi;
    return (m % 2 == 0) ? pi / static_cast<double>(m) : pi / (2.0 * static_cast<double>(m));
}

/// Pair-distance determinant between two symbol-pairs, for an n_tx-antenna
/// quasi-orthogonal code: with q = |da+db|^2 * |da-db|^2 the distance Gram
/// of a codeword pair differing in this group alone has determinant
/// q^(n_tx/2).
inline double pairwise_det(const std::pair<cx, cx>& x, const std::pair<cx, cx>& y,
                           std::size_t n_tx = 4) {
    const cx da = x.first - y.first;
    const cx db = x.second - y.second;
    const double q = std::norm(da + db) * std::norm(da - db);
    return std::pow(q, static_cast<double>(n_tx) / 2.0);
}

/// Minimum pair-distance determinant over all pair combinations of the set.
inline double detmin_fast_qo(const PairwiseSet& set, std::size_t n_tx = 4) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            best = std::min(best, pairwise_det(set.pairs[i], set.pairs[j], n_tx));
    return best;
}

struct ThetaSweep {
    std::size_t m = 0;
    double grid_step = 0.0;
    std::vector<double> thetas;
    std::vector<double> scores;
    // Maximal-score plateaus as [theta_lo, theta_hi] intervals. The same-half
    // pair determinants do not move with theta, so once the cross-half
    // minimum rises above them the overall score is flat; the optimum sits
    // at the centre of that flat top.
    std::vector<std::pair<double, double>> plateaus;
    double argmax = 0.0;  // midpoint of the first plateau
    double best_score = 0.0;
};

/// Grid sweep of the rotation angle over [0, 2*pi/M) with step
/// pi/(grid_div*M), scoring the minimum pair determinant of the full set.
inline ThetaSweep sweep_theta(std::size_t m, std::size_t grid_div = 64) {
    if (m < 2) throw ConfigError("sweep_theta: M must be at least 2");
    ThetaSweep sweep;
    sweep.m = m;
    sweep.grid_step = std::numbers::pi / (static_cast<double>(grid_div) * static_cast<double>(m));
    const std::size_t steps = 2 * grid_div;
    sweep.thetas.reserve(steps);
    sweep.scores.reserve(steps);
    double best = -1.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double theta = sweep.grid_step * static_cast<double>(i);
        const double score = detmin_fast_qo(qo_pairwise(m, theta, 2), 4);
        sweep.thetas.push_back(theta);
        sweep.scores.push_back(score);
        best = std::max(best, score);
    }
    sweep.best_score = best;
    const double threshold = best * (1.0 - 1e-9);
    for (std::size_t i = 0; i < steps; ++i) {
        if (sweep.scores[i] < threshold) continue;
        std::size_t j = i;
        while (j + 1 < steps && sweep.scores[j + 1] >= threshold) ++j;
        sweep.plateaus.push_back({sweep.thetas[i], sweep.thetas[j]});
        i = j;
    }
    sweep.argmax = 0.5 * (sweep.plateaus.front().first + sweep.plateaus.front().second);
    return sweep;
}

/// Checks the constant-power / constant-nu constraints of a pairwise set.
inline void validate_pairwise(const PairwiseSet& set, double tol = 1e-12) {
    if (set.size() < 2) throw ConstellationError("pairwise set: need at least two pairs");
    for (std::size_t k = 0; k < set.size(); ++k) {
        const auto& [a, b] = set.pairs[k];
        if (!is_finite(a) || !is_finite(b))
            throw ConstellationError("pairwise set: non-finite entry");
        const double p = std::norm(a) + std::norm(b);
        if (std::abs(p - set.power) > tol)
            throw ConstellationError("pairwise set: pair " + std::to_string(k) +
                                     " violates the power constraint");
        const double nu_k = (a * std::conj(b)).real();
        if (std::abs(nu_k - set.nu) > tol)
            throw ConstellationError("pairwise set: pair " + std::to_string(k) +
                                     " violates the constant cross-term constraint");
    }
}

inline void validate_joint(const JointGroupSet& set, double tol = 1e-12) {
    if (set.size() < 2) throw ConstellationError("joint set: need at least two points");
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (set.points[k].size() != set.group_dim)
            throw ConstellationError("joint set: point " + std::to_string(k) + " has wrong dimension");
        double p = 0.0;
        for (const double v : set.points[k]) {
            if (!std::isfinite(v)) throw ConstellationError("joint set: non-finite coordinate");
            p += v * v;
        }
        if (std::abs(p - set.power) > tol)
            throw ConstellationError("joint set: point " + std::to_string(k) +
                                     " violates the power constraint");
    }
}

}  // namespace dstm
