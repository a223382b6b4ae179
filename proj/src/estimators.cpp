#include "hamconc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hamconc {

TailCurve::TailCurve(std::span<const ValueMass> law) {
    if (law.empty()) throw std::invalid_argument("TailCurve: empty law");
    double acc = 0.0;
    for (const auto& vm : law) {
        if (!support_.empty() && !(vm.value > support_.back()))
            throw std::invalid_argument("TailCurve: support must be strictly increasing");
        support_.push_back(vm.value);
        pmf_.push_back(vm.probability);
        acc += vm.probability;
        cdf_.push_back(acc);
    }
}

TailCurve TailCurve::point_mass(double value) {
    const ValueMass vm{value, 1.0};
    return TailCurve(std::span<const ValueMass>(&vm, 1));
}

double TailCurve::tail(double t, TailMode mode) const {
    // Summed from the top so small tails keep their relative precision.
    double p = 0.0;
    for (std::size_t k = support_.size(); k-- > 0;) {
        const bool in = mode == TailMode::geq ? support_[k] >= t - kTieTolerance
                                              : support_[k] > t + kTieTolerance;
        if (!in) break;
        p += pmf_[k];
    }
    return p;
}

double TailCurve::lower(double s) const {
    double p = 0.0;
    for (std::size_t k = 0; k < support_.size() && support_[k] <= s + kTieTolerance; ++k) p += pmf_[k];
    return p;
}

double TailCurve::expectation() const {
    double e = 0.0;
    for (std::size_t k = 0; k < support_.size(); ++k) e += support_[k] * pmf_[k];
    return e;
}

double exact_tail(const TailCurve& curve, double t, TailMode mode) { return curve.tail(t, mode); }

SetStats exact_set_stats(const FiniteSpace& space, const Distribution& dist, const AlphaWeights& alpha,
                         const SetSpec& a, std::uint64_t cap) {
    const SetDistance distance(alpha, a, space, cap);
    SetStats out;
    std::vector<ValueMass> raw;
    raw.reserve(space.outcome_count());
    for_each_outcome(
        space, dist,
        [&](const Point& x, std::uint64_t, double p) {
            const double d = distance(x);
            if (d == 0.0) out.p_in += p;
            out.rho += d * p;
            raw.push_back({d, p});
        },
        cap);
    out.distance_curve = TailCurve(aggregate_law(std::move(raw)));
    return out;
}

FunctionalLaw exact_functional_stats(const FiniteSpace& space, const Distribution& dist, const Functional& f,
                                     std::uint64_t cap) {
    FunctionalLaw out;
    std::vector<ValueMass> raw;
    raw.reserve(space.outcome_count());
    double mean = 0.0;
    for_each_outcome(
        space, dist,
        [&](const Point& x, std::uint64_t, double p) {
            const double v = f(x);
            mean += v * p;
            raw.push_back({v, p});
        },
        cap);
    out.stats = stats(f, space, dist, cap);
    out.curve = TailCurve(out.stats.value_distribution);
    for (auto& vm : raw) vm.value -= mean;
    out.centered = TailCurve(aggregate_law(std::move(raw)));
    return out;
}

double exact_mgf(const FiniteSpace& space, const Distribution& dist, const Functional& f, double lambda,
                 std::uint64_t cap) {
    std::vector<double> values;
    std::vector<double> probs;
    double mean = 0.0;
    for_each_outcome(
        space, dist,
        [&](const Point& x, std::uint64_t, double p) {
            values.push_back(f(x));
            probs.push_back(p);
            mean += values.back() * p;
        },
        cap);
    // Normalizing by the summed mass makes lambda = 0 give exactly 1.
    double m = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        m += probs[k] * std::exp(lambda * (values[k] - mean));
        total += probs[k];
    }
    return m / total;
}

double hoeffding_half_width(std::uint64_t n_samples, double delta) {
    if (n_samples == 0) throw std::invalid_argument("hoeffding_half_width: no samples");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n_samples)));
}

McEstimate mc_tail(const FiniteSpace& space, const Distribution& dist,
                   const std::function<double(const Point&)>& quantity, double t, std::uint64_t n_samples,
                   std::uint64_t seed, double delta, std::uint64_t substream) {
    McEstimate est;
    est.half_width = hoeffding_half_width(n_samples, delta);
    est.delta = delta;
    est.n_samples = n_samples;
    est.seed = seed;
    est.substream = substream;
    Sampler sampler(space, dist, seed, substream);
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < n_samples; ++k)
        if (quantity(sampler.next()) >= t - kTieTolerance) ++hits;
    est.estimate = static_cast<double>(hits) / static_cast<double>(n_samples);
    return est;
}

}  // namespace hamconc
