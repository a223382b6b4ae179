// functionals.hpp
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hamconc/hamming.hpp"
#include "hamconc/sets.hpp"
#include "hamconc/space.hpp"

namespace hamconc {

// Values closer than this are the same support point of a law.
inline constexpr double kValueTolerance = 1e-12;
// Slack allowed when certifying an inequality condition.
inline constexpr double kConditionTolerance = 1e-12;
// Slack allowed on the 1/2 thresholds that define a median.
inline constexpr double kMedianTolerance = 1e-12;

struct SelfBoundingParams {
    double a{1.0};
    double b{0.0};
};

/// A real function f on the space, optionally with a coordinate-drop family
/// f_i : E^{n-1} -> R and (a, b) self-bounding parameters.
class Functional {
public:
    using Evaluator = std::function<double(const Point&)>;
    // (i, x with coordinate i removed) -> f_i(x^(i))
    using DropFamily = std::function<double(std::size_t, const Point&)>;

    explicit Functional(Evaluator f, std::string label = "f");

    static Functional constant(double c);
    // f(x) = sum_i c_i * x_i, symbol indices read as numbers.
    static Functional weighted_sum(std::vector<double> coefficients);
    // f(x) = values[rank(x)].
    static Functional table(const FiniteSpace& space, std::vector<double> values);
    // f(x) = d_alpha(x, A).
    static Functional distance_to(const AlphaWeights& alpha, const SetSpec& a, const FiniteSpace& space);

    double operator()(const Point& x) const { return eval_(x); }
    const std::string& label() const noexcept { return label_; }

    bool has_drop_family() const noexcept { return static_cast<bool>(drop_); }
    double drop(std::size_t i, const Point& reduced) const;
    Functional with_drop_family(DropFamily family) const;

    const std::optional<SelfBoundingParams>& self_bounding() const noexcept { return params_; }
    Functional with_self_bounding(SelfBoundingParams params) const;

private:
    Evaluator eval_;
    DropFamily drop_;
    std::optional<SelfBoundingParams> params_;
    std::string label_;
};

// f_i(x^(i)) = min over symbols s of f(x with coordinate i set to s). The
// lower half of the drop condition holds by construction; the upper half
// has to be certified.
Functional drop_infimum_family(const Functional& f, const FiniteSpace& space);

// {y : f(y) <= m} and {y : f(y) >= m}, with kValueTolerance on the comparison.
SetSpec sublevel_set(const Functional& f, double m);
SetSpec superlevel_set(const Functional& f, double m);

enum class Condition { lipschitz, drop, unit_drop, self_bounding };
enum class CheckMode { exhaustive, sampled };

const char* to_string(Condition c) noexcept;
const char* to_string(CheckMode m) noexcept;

/// Outcome of checking a structural condition on every point (or pair).
/// A failed certificate always names a witness that reproduces the violation.
struct Certificate {
    Condition condition{Condition::lipschitz};
    bool holds{true};
    // One point (drop, self-bounding) or an ordered pair (lipschitz).
    std::vector<Point> witness;
    // Coordinate of the violated drop inequality, when there is one.
    std::optional<std::size_t> coordinate;
    double worst_slack{0.0};
    CheckMode mode{CheckMode::exhaustive};
    std::uint64_t evaluations{0};
};

struct LipschitzOptions {
    enum class Mode { automatic, exhaustive, sampled };
    Mode mode{Mode::automatic};
    std::uint64_t max_exhaustive_pairs{1'000'000};
    std::uint64_t sample_budget{1'000'000};
    std::uint64_t seed{0};
};

// |f(x) - f(x')| <= d_alpha(x, x') over ordered pairs of distinct points.
// worst_slack is the largest |f(x) - f(x')| - d_alpha(x, x'). Automatic mode
// is exhaustive up to max_exhaustive_pairs and samples uniform pairs beyond.
// Explicit exhaustive mode over budget throws std::length_error.
Certificate check_lipschitz(const Functional& f, const AlphaWeights& alpha, const FiniteSpace& space,
                            const LipschitzOptions& options = {});

// 0 <= f(x) - f_i(x^(i)) <= alpha_i for every x and i. worst_slack is the
// largest violation margin max(-gap, gap - alpha_i).
Certificate check_drop_condition(const Functional& f, const AlphaWeights& alpha, const FiniteSpace& space);

// Same with every upper bound equal to 1: the gap condition of (a, b)
// self-bounding functions.
Certificate check_unit_drop_condition(const Functional& f, const FiniteSpace& space);

// Unit drop condition plus sum_i (f(x) - f_i(x^(i))) <= a f(x) + b at every
// x. worst_slack = max_x sum_i gap_i - a f(x) - b.
Certificate check_self_bounding(const Functional& f, const FiniteSpace& space);

struct ValueMass {
    double value{0.0};
    double probability{0.0};
};

struct Stats {
    double mean{0.0};
    // Smallest support value v with P(f <= v) >= 1/2.
    double median_lo{0.0};
    // Largest support value v with P(f >= v) >= 1/2.
    double median_hi{0.0};
    // Law of f(X): positive-mass values, increasing, ties within kValueTolerance merged.
    std::vector<ValueMass> value_distribution;
};

Stats stats(const Functional& f, const FiniteSpace& space, const Distribution& dist,
            std::uint64_t cap = default_enumeration_cap());

// Sorts, merges values within kValueTolerance (keeping the smallest as the
// representative) and drops zero-mass entries.
std::vector<ValueMass> aggregate_law(std::vector<ValueMass> samples);

}  // namespace hamconc
