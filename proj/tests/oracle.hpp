// oracle.hpp
//
// Brute-force reference computations for tests. Deliberately shares no code
// with the library: outcomes come from a plain integer counter, probabilities
// are multiplied out from raw pmf arrays, and tails are summed directly over
// outcomes without any law aggregation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Outcome = std::vector<unsigned>;

struct Space {
    std::vector<unsigned> sizes;
    // Either per-coordinate pmfs or one table over lexicographic outcomes.
    std::vector<std::vector<double>> pmfs;
    std::vector<double> table;

    std::vector<Outcome> outcomes() const {
        std::vector<Outcome> out;
        std::uint64_t total = 1;
        for (auto k : sizes) total *= k;
        for (std::uint64_t r = 0; r < total; ++r) {
            Outcome x(sizes.size());
            std::uint64_t rem = r;
            for (std::size_t i = sizes.size(); i-- > 0;) {
                x[i] = static_cast<unsigned>(rem % sizes[i]);
                rem /= sizes[i];
            }
            out.push_back(x);
        }
        return out;
    }

    std::vector<double> probabilities() const {
        const auto xs = outcomes();
        if (!table.empty()) return table;
        std::vector<double> p;
        for (const auto& x : xs) {
            double q = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i) q *= pmfs[i][x[i]];
            p.push_back(q);
        }
        return p;
    }
};

inline double dist(const std::vector<double>& alpha, const Outcome& x, const Outcome& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]) ? alpha[i] : 0.0;
    return d;
}

inline double dist_to_set(const std::vector<double>& alpha, const Outcome& x, const std::vector<Outcome>& a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : a) best = std::min(best, dist(alpha, x, y));
    return best;
}

struct SetQuantities {
    double p_in{0.0};
    double rho{0.0};
};

inline SetQuantities set_quantities(const Space& s, const std::vector<double>& alpha, const std::vector<Outcome>& a) {
    SetQuantities q;
    const auto xs = s.outcomes();
    const auto ps = s.probabilities();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (std::find(a.begin(), a.end(), xs[k]) != a.end()) q.p_in += ps[k];
        q.rho += ps[k] * dist_to_set(alpha, xs[k], a);
    }
    return q;
}

// P(g(X) >= t), with g evaluated outcome by outcome.
inline double tail(const Space& s, const std::function<double(const Outcome&)>& g, double t) {
    const auto xs = s.outcomes();
    const auto ps = s.probabilities();
    double p = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k)
        if (g(xs[k]) >= t) p += ps[k];
    return p;
}

inline double mean(const Space& s, const std::function<double(const Outcome&)>& g) {
    const auto xs = s.outcomes();
    const auto ps = s.probabilities();
    double m = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) m += ps[k] * g(xs[k]);
    return m;
}

// Stationary point of (2 rho + sqrt(pi/2)) exp(-2 rho^2), by bisection on
// the derivative factor 2 - 8 rho^2 - 4 rho sqrt(pi/2).
inline double gap_argmax_bisection() {
    const double c = std::sqrt(std::acos(-1.0) / 2.0);
    auto g = [c](double r) { return 2.0 - 8.0 * r * r - 4.0 * r * c; };
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
