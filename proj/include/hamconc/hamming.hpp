// hamming.hpp
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace hamconc {

using Symbol = std::uint32_t;

// A point of a finite product space: one symbol index per coordinate.
struct Point {
    std::vector<Symbol> symbols;

    Point() = default;
    Point(std::initializer_list<Symbol> s) : symbols(s) {}
    explicit Point(std::vector<Symbol> s) : symbols(std::move(s)) {}

    std::size_t dimension() const noexcept { return symbols.size(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }
    Symbol& operator[](std::size_t i) { return symbols[i]; }

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// |l2_norm - 1| at or below this counts as a unit weight vector.
inline constexpr double kNormalizedTolerance = 1e-9;

/// Nonnegative coordinate weights of the alpha-Hamming distance.
///
/// Weights are kept exactly as given; the norm and sum are cached. Bound
/// evaluators that assume a unit vector check normalized() rather than
/// rescaling silently.
class AlphaWeights {
public:
    explicit AlphaWeights(std::vector<double> weights);

    // alpha_i = 1/sqrt(n): the unit Hamming distance.
    static AlphaWeights uniform(std::size_t n);

    std::span<const double> weights() const noexcept { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::size_t dimension() const noexcept { return weights_.size(); }
    double l2_norm() const noexcept { return l2_norm_; }
    double l1_sum() const noexcept { return l1_sum_; }
    bool normalized() const noexcept;

private:
    std::vector<double> weights_;
    double l2_norm_{0.0};
    double l1_sum_{0.0};
};

// Rescales to unit L2 norm. Throws std::invalid_argument("degenerate weights")
// for the all-zero vector.
AlphaWeights normalize(const AlphaWeights& alpha);

// Throws std::invalid_argument unless ||alpha|| = 1.
void require_normalized(const AlphaWeights& alpha);

// Sum of alpha_i over coordinates where x and y differ, accumulated in
// coordinate order.
double hamming_distance(const AlphaWeights& alpha, const Point& x, const Point& y);

}  // namespace hamconc
