#include "hamconc/hamming.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hamconc {

AlphaWeights::AlphaWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("alpha weights: empty weight vector");
    double sq = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double w = weights_[i];
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("alpha weights: weight " + std::to_string(i) +
                                        " is negative or not finite");
        sq += w * w;
        l1_sum_ += w;
    }
    l2_norm_ = std::sqrt(sq);
}

AlphaWeights AlphaWeights::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("alpha weights: dimension must be >= 1");
    return AlphaWeights(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

bool AlphaWeights::normalized() const noexcept {
    return std::abs(l2_norm_ - 1.0) <= kNormalizedTolerance;
}

AlphaWeights normalize(const AlphaWeights& alpha) {
    if (alpha.l2_norm() <= 0.0) throw std::invalid_argument("degenerate weights");
    std::vector<double> w(alpha.weights().begin(), alpha.weights().end());
    for (auto& v : w) v /= alpha.l2_norm();
    return AlphaWeights(std::move(w));
}

void require_normalized(const AlphaWeights& alpha) {
    if (!alpha.normalized())
        throw std::invalid_argument("theorems require ||alpha||=1 (got " +
                                    std::to_string(alpha.l2_norm()) + ")");
}

double hamming_distance(const AlphaWeights& alpha, const Point& x, const Point& y) {
    const std::size_t n = alpha.dimension();
    if (x.dimension() != n || y.dimension() != n)
        throw std::invalid_argument("hamming_distance: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != y[i]) d += alpha[i];
    return d;
}

}  // namespace hamconc
