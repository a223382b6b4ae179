// estimators.hpp
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hamconc/functionals.hpp"
#include "hamconc/hamming.hpp"
#include "hamconc/sets.hpp"
#include "hamconc/space.hpp"

namespace hamconc {

enum class TailMode { geq, gt };

// Support points within this distance of a query threshold count as equal
// to it, so values reached by different rounding paths are not split.
inline constexpr double kTieTolerance = 1e-12;

/// Exact law of a discrete random variable: strictly increasing support
/// with cumulative probabilities.
class TailCurve {
public:
    TailCurve() = default;
    // From an aggregated law (increasing values, positive masses).
    explicit TailCurve(std::span<const ValueMass> law);
    static TailCurve point_mass(double value);

    std::span<const double> support() const noexcept { return support_; }
    std::span<const double> cdf() const noexcept { return cdf_; }
    std::span<const double> pmf() const noexcept { return pmf_; }

    // P(V >= t) (geq) or P(V > t) (gt).
    double tail(double t, TailMode mode = TailMode::geq) const;
    // P(V <= s).
    double lower(double s) const;
    double expectation() const;
    double max_value() const { return support_.back(); }
    double min_value() const { return support_.front(); }

private:
    std::vector<double> support_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

double exact_tail(const TailCurve& curve, double t, TailMode mode = TailMode::geq);

struct SetStats {
    double p_in{0.0};
    double rho{0.0};
    TailCurve distance_curve;
};

// P(X in A), rho = E[d_alpha(X, A)] and the exact law of d_alpha(X, A).
// Any distribution kind is accepted.
SetStats exact_set_stats(const FiniteSpace& space, const Distribution& dist, const AlphaWeights& alpha,
                         const SetSpec& a, std::uint64_t cap = default_enumeration_cap());

struct FunctionalLaw {
    Stats stats;
    TailCurve curve;     // law of f(X)
    TailCurve centered;  // law of f(X) - mu, centred before aggregation
};

FunctionalLaw exact_functional_stats(const FiniteSpace& space, const Distribution& dist, const Functional& f,
                                     std::uint64_t cap = default_enumeration_cap());

// E[exp(lambda (f(X) - mu))].
double exact_mgf(const FiniteSpace& space, const Distribution& dist, const Functional& f, double lambda,
                 std::uint64_t cap = default_enumeration_cap());

// Hoeffding half-width sqrt(ln(2/delta) / (2N)) for a mean of [0,1] variables.
double hoeffding_half_width(std::uint64_t n_samples, double delta);

struct McEstimate {
    double estimate{0.0};
    double half_width{0.0};
    double delta{0.01};
    std::uint64_t n_samples{0};
    std::uint64_t seed{0};
    std::uint64_t substream{0};

    bool covers(double exact) const noexcept {
        return exact >= estimate - half_width && exact <= estimate + half_width;
    }
};

inline constexpr std::uint64_t kDefaultMcSamples = 100'000;
inline constexpr double kDefaultDelta = 0.01;

// Empirical frequency of {quantity(X) >= t} over n_samples i.i.d. draws.
McEstimate mc_tail(const FiniteSpace& space, const Distribution& dist,
                   const std::function<double(const Point&)>& quantity, double t,
                   std::uint64_t n_samples = kDefaultMcSamples, std::uint64_t seed = 0,
                   double delta = kDefaultDelta, std::uint64_t substream = 0);

}  // namespace hamconc
