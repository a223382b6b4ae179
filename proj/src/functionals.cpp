#include "hamconc/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace hamconc {

Functional::Functional(Evaluator f, std::string label) : eval_(std::move(f)), label_(std::move(label)) {
    if (!eval_) throw std::invalid_argument("Functional: empty evaluator");
}

Functional Functional::constant(double c) {
    return Functional([c](const Point&) { return c; }, "constant");
}

Functional Functional::weighted_sum(std::vector<double> coefficients) {
    return Functional(
        [c = std::move(coefficients)](const Point& x) {
            if (x.dimension() != c.size())
                throw std::invalid_argument("weighted_sum: dimension mismatch");
            double s = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * static_cast<double>(x[i]);
            return s;
        },
        "weighted_sum");
}

Functional Functional::table(const FiniteSpace& space, std::vector<double> values) {
    if (values.size() != space.outcome_count())
        throw std::invalid_argument("table functional: expected " + std::to_string(space.outcome_count()) +
                                    " values, got " + std::to_string(values.size()));
    auto data = std::make_shared<const std::vector<double>>(std::move(values));
    return Functional([space, data](const Point& x) { return (*data)[space.rank(x)]; }, "table");
}

Functional Functional::distance_to(const AlphaWeights& alpha, const SetSpec& a, const FiniteSpace& space) {
    auto dist = std::make_shared<const SetDistance>(alpha, a, space);
    return Functional([dist](const Point& x) { return (*dist)(x); }, "distance_to_set");
}

double Functional::drop(std::size_t i, const Point& reduced) const {
    if (!drop_) throw std::logic_error("functional has no drop family");
    return drop_(i, reduced);
}

Functional Functional::with_drop_family(DropFamily family) const {
    Functional g = *this;
    g.drop_ = std::move(family);
    return g;
}

Functional Functional::with_self_bounding(SelfBoundingParams params) const {
    if (!(params.a > 0.0) || !(params.b >= 0.0))
        throw std::invalid_argument("self-bounding parameters need a > 0 and b >= 0");
    Functional g = *this;
    g.params_ = params;
    return g;
}

Functional drop_infimum_family(const Functional& f, const FiniteSpace& space) {
    std::vector<std::uint32_t> sizes(space.alphabet_sizes().begin(), space.alphabet_sizes().end());
    return f.with_drop_family([f, sizes](std::size_t i, const Point& reduced) {
        double best = std::numeric_limits<double>::infinity();
        Point x = insert_coordinate(reduced, i, 0);
        for (Symbol s = 0; s < sizes.at(i); ++s) {
            x[i] = s;
            best = std::min(best, f(x));
        }
        return best;
    });
}

SetSpec sublevel_set(const Functional& f, double m) {
    return SetSpec::predicate([f, m](const Point& y) { return f(y) <= m + kValueTolerance; },
                              "sublevel set of " + f.label());
}

SetSpec superlevel_set(const Functional& f, double m) {
    return SetSpec::predicate([f, m](const Point& y) { return f(y) >= m - kValueTolerance; },
                              "superlevel set of " + f.label());
}

const char* to_string(Condition c) noexcept {
    switch (c) {
        case Condition::lipschitz: return "lipschitz";
        case Condition::drop: return "drop";
        case Condition::unit_drop: return "unit_drop";
        case Condition::self_bounding: return "self_bounding";
    }
    return "?";
}

const char* to_string(CheckMode m) noexcept {
    return m == CheckMode::exhaustive ? "exhaustive" : "sampled";
}

namespace {

struct Tabulated {
    std::vector<Point> points;
    std::vector<double> values;
};

Tabulated tabulate(const Functional& f, const FiniteSpace& space, std::uint64_t cap) {
    space.require_enumerable(cap);
    Tabulated t;
    t.points.reserve(space.outcome_count());
    Point x(std::vector<Symbol>(space.dimension(), 0));
    do {
        t.points.push_back(x);
        t.values.push_back(f(x));
    } while (space.advance(x));
    return t;
}

void record_pair(Certificate& cert, double slack, const Point& x, const Point& y) {
    if (cert.evaluations == 0 || slack > cert.worst_slack) {
        cert.worst_slack = slack;
        cert.witness = {x, y};
    }
    ++cert.evaluations;
}

Point random_point(const FiniteSpace& space, Rng& rng) {
    Point x(std::vector<Symbol>(space.dimension(), 0));
    for (std::size_t i = 0; i < space.dimension(); ++i)
        x[i] = static_cast<Symbol>(rng.below(space.alphabet_size(i)));
    return x;
}

Certificate check_drop_bounds(const Functional& f, const FiniteSpace& space, Condition condition,
                              const std::vector<double>& upper) {
    if (!f.has_drop_family())
        throw std::invalid_argument("drop condition check needs a drop family");
    Certificate cert;
    cert.condition = condition;
    cert.worst_slack = -std::numeric_limits<double>::infinity();
    Point x(std::vector<Symbol>(space.dimension(), 0));
    space.require_enumerable(default_enumeration_cap());
    do {
        const double fx = f(x);
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            const double gap = fx - f.drop(i, drop_coordinate(x, i));
            const double slack = std::max(-gap, gap - upper[i]);
            if (slack > cert.worst_slack) {
                cert.worst_slack = slack;
                cert.witness = {x};
                cert.coordinate = i;
            }
            ++cert.evaluations;
        }
    } while (space.advance(x));
    cert.holds = cert.worst_slack <= kConditionTolerance;
    if (cert.holds) {
        cert.witness.clear();
        cert.coordinate.reset();
    }
    return cert;
}

}  // namespace

Certificate check_lipschitz(const Functional& f, const AlphaWeights& alpha, const FiniteSpace& space,
                            const LipschitzOptions& options) {
    if (alpha.dimension() != space.dimension())
        throw std::invalid_argument("check_lipschitz: weights and space differ in dimension");
    Certificate cert;
    cert.condition = Condition::lipschitz;

    const std::uint64_t count = space.outcome_count();
    const bool fits = count <= options.max_exhaustive_pairs / std::max<std::uint64_t>(count, 1);
    bool exhaustive = options.mode == LipschitzOptions::Mode::exhaustive ||
                      (options.mode == LipschitzOptions::Mode::automatic && fits);
    if (options.mode == LipschitzOptions::Mode::exhaustive && !fits)
        throw std::length_error("check_lipschitz: " + std::to_string(count) + "^2 ordered pairs exceed the budget of " +
                                std::to_string(options.max_exhaustive_pairs) + "; use sampled mode");

    if (count == 1) return cert;  // no distinct pairs

    if (exhaustive) {
        cert.mode = CheckMode::exhaustive;
        const Tabulated t = tabulate(f, space, count);
        for (std::size_t a = 0; a < t.points.size(); ++a) {
            for (std::size_t b = 0; b < t.points.size(); ++b) {
                if (a == b) continue;
                const double slack = std::abs(t.values[a] - t.values[b]) -
                                     hamming_distance(alpha, t.points[a], t.points[b]);
                record_pair(cert, slack, t.points[a], t.points[b]);
            }
        }
    } else {
        cert.mode = CheckMode::sampled;
        Rng rng(options.seed);
        for (std::uint64_t k = 0; k < options.sample_budget; ++k) {
            const Point x = random_point(space, rng);
            const Point y = random_point(space, rng);
            if (x == y) continue;
            record_pair(cert, std::abs(f(x) - f(y)) - hamming_distance(alpha, x, y), x, y);
        }
    }
    cert.holds = cert.worst_slack <= kConditionTolerance;
    if (cert.holds) cert.witness.clear();
    return cert;
}

Certificate check_drop_condition(const Functional& f, const AlphaWeights& alpha, const FiniteSpace& space) {
    if (alpha.dimension() != space.dimension())
        throw std::invalid_argument("check_drop_condition: weights and space differ in dimension");
    return check_drop_bounds(f, space, Condition::drop,
                             std::vector<double>(alpha.weights().begin(), alpha.weights().end()));
}

Certificate check_unit_drop_condition(const Functional& f, const FiniteSpace& space) {
    return check_drop_bounds(f, space, Condition::unit_drop, std::vector<double>(space.dimension(), 1.0));
}

Certificate check_self_bounding(const Functional& f, const FiniteSpace& space) {
    if (!f.self_bounding()) throw std::invalid_argument("self-bounding check needs (a, b) parameters");
    Certificate unit = check_unit_drop_condition(f, space);
    if (!unit.holds) {
        unit.condition = Condition::self_bounding;
        return unit;
    }
    const auto [a, b] = *f.self_bounding();
    Certificate cert;
    cert.condition = Condition::self_bounding;
    cert.worst_slack = -std::numeric_limits<double>::infinity();
    Point x(std::vector<Symbol>(space.dimension(), 0));
    do {
        const double fx = f(x);
        double total = 0.0;
        for (std::size_t i = 0; i < space.dimension(); ++i) total += fx - f.drop(i, drop_coordinate(x, i));
        const double slack = total - a * fx - b;
        if (slack > cert.worst_slack) {
            cert.worst_slack = slack;
            cert.witness = {x};
        }
        ++cert.evaluations;
    } while (space.advance(x));
    cert.holds = cert.worst_slack <= kConditionTolerance;
    if (cert.holds) cert.witness.clear();
    return cert;
}

std::vector<ValueMass> aggregate_law(std::vector<ValueMass> samples) {
    std::sort(samples.begin(), samples.end(),
              [](const ValueMass& l, const ValueMass& r) { return l.value < r.value; });
    std::vector<ValueMass> law;
    for (const auto& s : samples) {
        if (!(s.probability > 0.0)) continue;
        if (!law.empty() && s.value - law.back().value <= kValueTolerance)
            law.back().probability += s.probability;
        else
            law.push_back(s);
    }
    return law;
}

Stats stats(const Functional& f, const FiniteSpace& space, const Distribution& dist, std::uint64_t cap) {
    Stats st;
    std::vector<ValueMass> raw;
    raw.reserve(space.outcome_count());
    for_each_outcome(
        space, dist,
        [&](const Point& x, std::uint64_t, double p) {
            const double v = f(x);
            st.mean += v * p;
            raw.push_back({v, p});
        },
        cap);
    st.value_distribution = aggregate_law(std::move(raw));
    const auto& law = st.value_distribution;

    double below = 0.0;
    st.median_lo = law.back().value;
    for (const auto& vm : law) {
        below += vm.probability;
        if (below >= 0.5 - kMedianTolerance) {
            st.median_lo = vm.value;
            break;
        }
    }
    double above = 0.0;
    st.median_hi = law.front().value;
    for (auto it = law.rbegin(); it != law.rend(); ++it) {
        above += it->probability;
        if (above >= 0.5 - kMedianTolerance) {
            st.median_hi = it->value;
            break;
        }
    }
    return st;
}

}  // namespace hamconc
