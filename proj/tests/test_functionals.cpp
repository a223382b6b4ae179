#include <doctest.h>

#include <cmath>

#include "hamconc/functionals.hpp"
#include "oracle.hpp"

using namespace hamconc;

namespace {
const double kS3 = std::sqrt(3.0);

Functional scaled_bit_sum(std::size_t n) {
    return Functional::weighted_sum(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

Functional bit_sum_with_infimum(std::size_t n) {
    return drop_infimum_family(Functional::weighted_sum(std::vector<double>(n, 1.0)), FiniteSpace::binary(n));
}

AlphaWeights random_unit_alpha(std::size_t n, Rng& rng) {
    std::vector<double> w(n);
    for (auto& v : w) v = 0.05 + rng.uniform();
    return normalize(AlphaWeights(w));
}
}  // namespace

TEST_CASE("lipschitz: constant function") {
    const auto a = normalize(AlphaWeights({0.6, 0.8}));
    const auto c = check_lipschitz(Functional::constant(3.0), a, FiniteSpace::binary(2));
    CHECK(c.holds);
    CHECK(c.condition == Condition::lipschitz);
    CHECK(std::abs(c.worst_slack + 0.6) <= 1e-12);
    CHECK(c.evaluations == 12);
}

TEST_CASE("lipschitz: scaled bit sum has zero slack") {
    const auto c = check_lipschitz(scaled_bit_sum(2), AlphaWeights::uniform(2), FiniteSpace::binary(2));
    CHECK(c.holds);
    CHECK(std::abs(c.worst_slack) <= 1e-12);
}

TEST_CASE("lipschitz: violation carries a reproducing witness") {
    const FiniteSpace s({2});
    const auto f = Functional::table(s, {0.0, 2.0});
    const AlphaWeights a({1.0});
    const auto c = check_lipschitz(f, a, s);
    CHECK_FALSE(c.holds);
    REQUIRE(c.witness.size() == 2);
    CHECK(std::abs(c.worst_slack - 1.0) <= 1e-12);
    const double d = hamming_distance(a, c.witness[0], c.witness[1]);
    CHECK(std::abs(f(c.witness[0]) - f(c.witness[1])) - d == doctest::Approx(1.0));
}

TEST_CASE("lipschitz: budget and sampled mode") {
    const FiniteSpace s({3, 3, 3});
    const auto a = AlphaWeights::uniform(3);
    const auto f = Functional::distance_to(a, SetSpec::points({{0, 0, 0}}), s);
    LipschitzOptions ex;
    ex.mode = LipschitzOptions::Mode::exhaustive;
    ex.max_exhaustive_pairs = 10;
    CHECK_THROWS_AS(check_lipschitz(f, a, s, ex), std::length_error);
    LipschitzOptions sm;
    sm.mode = LipschitzOptions::Mode::sampled;
    sm.sample_budget = 5000;
    const auto c = check_lipschitz(f, a, s, sm);
    CHECK(c.holds);
    CHECK(c.mode == CheckMode::sampled);
    // Draws that repeat a point are skipped.
    CHECK(c.evaluations <= 5000);
    CHECK(c.evaluations > 4500);
    LipschitzOptions autom;
    autom.max_exhaustive_pairs = 10;
    autom.sample_budget = 300;
    CHECK(check_lipschitz(f, a, s, autom).mode == CheckMode::sampled);
}

TEST_CASE("lipschitz: distance to any nonempty set") {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const FiniteSpace s({2, 3, 2});
        const auto a = random_unit_alpha(3, rng);
        std::vector<Point> members;
        for (std::uint64_t r = 0; r < s.outcome_count(); ++r)
            if (rng.uniform() < 0.3) members.push_back(s.unrank(r));
        if (members.empty()) members.push_back(s.unrank(rng.below(s.outcome_count())));
        const auto c = check_lipschitz(Functional::distance_to(a, SetSpec::points(members), s), a, s);
        CHECK(c.holds);
        CHECK(c.worst_slack <= 1e-12);
    }
}

TEST_CASE("drop condition: scaled bit sum with explicit family") {
    const auto s = FiniteSpace::binary(3);
    const auto f = scaled_bit_sum(3).with_drop_family([](std::size_t, const Point& r) {
        return (r[0] + r[1]) / std::sqrt(3.0);
    });
    const auto c = check_drop_condition(f, AlphaWeights::uniform(3), s);
    CHECK(c.holds);
    CHECK(c.evaluations == 24);
    // Gaps are x_i / sqrt3 in {0, 1/sqrt3}, so both sides touch.
    CHECK(std::abs(c.worst_slack) <= 1e-12);
}

TEST_CASE("drop condition: forced-to-zero family equals the infimum family") {
    const auto s = FiniteSpace::binary(3);
    const auto forced = scaled_bit_sum(3).with_drop_family(
        [f = scaled_bit_sum(3)](std::size_t i, const Point& r) { return f(insert_coordinate(r, i, 0)); });
    const auto inf = drop_infimum_family(scaled_bit_sum(3), s);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::uint64_t r = 0; r < 4; ++r) {
            const Point red = s.without(i).unrank(r);
            CHECK(std::abs(forced.drop(i, red) - inf.drop(i, red)) <= 1e-15);
            CHECK(std::abs(inf.drop(i, red) - (red[0] + red[1]) / kS3) <= 1e-12);
        }
    CHECK(check_drop_condition(forced, AlphaWeights::uniform(3), s).holds);
}

TEST_CASE("drop condition: too-large gap fails with a witness") {
    const auto s = FiniteSpace::binary(2);
    const auto f = Functional::constant(1.0).with_drop_family([](std::size_t, const Point&) { return 0.0; });
    const auto a = AlphaWeights::uniform(2);
    const auto c = check_drop_condition(f, a, s);
    CHECK_FALSE(c.holds);
    REQUIRE(c.witness.size() == 1);
    REQUIRE(c.coordinate.has_value());
    const double gap = f(c.witness[0]) - f.drop(*c.coordinate, drop_coordinate(c.witness[0], *c.coordinate));
    CHECK(gap > a[*c.coordinate]);
    CHECK(std::abs(c.worst_slack - (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-12);
    CHECK_THROWS_AS(check_drop_condition(Functional::constant(1.0), a, s), std::invalid_argument);
}

TEST_CASE("drop infimum family examples") {
    const auto s = FiniteSpace::binary(2);
    const auto c = drop_infimum_family(Functional::constant(2.5), s);
    CHECK(c.drop(0, Point{1}) == 2.5);
    const auto ind = drop_infimum_family(Functional::table(s, {0, 0, 0, 1}), s);
    CHECK(ind.drop(0, Point{0}) == 0.0);
    CHECK(ind.drop(0, Point{1}) == 0.0);
    CHECK(ind({1, 1}) - ind.drop(0, Point{1}) == 1.0);
}

TEST_CASE("drop infimum family always satisfies the lower half") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteSpace s({2, 3, 2});
        std::vector<double> values(s.outcome_count());
        for (auto& v : values) v = rng.uniform() * 3.0 - 1.0;
        const auto f = drop_infimum_family(Functional::table(s, values), s);
        // Huge weights make the upper half slack, so only the lower half can fail.
        const auto c = check_drop_condition(f, AlphaWeights({10.0, 10.0, 10.0}), s);
        CHECK(c.holds);
        for (std::uint64_t r = 0; r < s.outcome_count(); ++r) {
            const Point x = s.unrank(r);
            for (std::size_t i = 0; i < 3; ++i) CHECK(f(x) - f.drop(i, drop_coordinate(x, i)) >= 0.0);
        }
    }
}

TEST_CASE("drop condition implies lipschitz on random functions") {
    Rng rng(13);
    int drop_holds = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const FiniteSpace s({2, 2, 3});
        const auto a = random_unit_alpha(3, rng);
        std::vector<double> values(s.outcome_count());
        // Small random perturbations of a weighted sum, so some pass and some fail.
        for (std::uint64_t r = 0; r < s.outcome_count(); ++r) {
            const Point x = s.unrank(r);
            double v = 0.0;
            for (std::size_t i = 0; i < 3; ++i) v += a[i] * (x[i] ? 0.7 : 0.0);
            values[r] = v + 0.3 * (rng.uniform() - 0.5);
        }
        const auto f = drop_infimum_family(Functional::table(s, values), s);
        if (check_drop_condition(f, a, s).holds) {
            ++drop_holds;
            CHECK(check_lipschitz(f, a, s).holds);
        }
    }
    CHECK(drop_holds > 10);
}

TEST_CASE("self bounding") {
    const auto s = FiniteSpace::binary(3);
    const auto f = bit_sum_with_infimum(3);
    const auto ok = check_self_bounding(f.with_self_bounding({1.0, 0.0}), s);
    CHECK(ok.holds);
    CHECK(std::abs(ok.worst_slack) <= 1e-12);

    const auto bad = check_self_bounding(f.with_self_bounding({0.5, 0.0}), s);
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.witness.size() == 1);
    CHECK(bad.witness[0] == Point{1, 1, 1});
    CHECK(std::abs(bad.worst_slack - 1.5) <= 1e-12);

    const auto zero = Functional::constant(0.0)
                          .with_drop_family([](std::size_t, const Point&) { return 0.0; })
                          .with_self_bounding({2.0, 0.5});
    CHECK(check_self_bounding(zero, s).holds);

    CHECK_THROWS_AS(check_self_bounding(f, s), std::invalid_argument);
    CHECK_THROWS_AS(f.with_self_bounding({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(f.with_self_bounding({1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("unit drop condition") {
    const auto s = FiniteSpace::binary(4);
    CHECK(check_unit_drop_condition(bit_sum_with_infimum(4), s).holds);
    const auto doubled = drop_infimum_family(Functional::weighted_sum({2, 0, 0, 0}), s);
    CHECK_FALSE(check_unit_drop_condition(doubled, s).holds);
}

TEST_CASE("stats examples") {
    const auto s3 = FiniteSpace::binary(3);
    const auto st = stats(scaled_bit_sum(3), s3, Distribution::uniform(s3));
    CHECK(std::abs(st.mean - kS3 / 2.0) <= 1e-12);
    CHECK(std::abs(st.median_lo - 1.0 / kS3) <= 1e-12);
    CHECK(std::abs(st.median_hi - 2.0 / kS3) <= 1e-12);
    REQUIRE(st.value_distribution.size() == 4);
    const double masses[] = {0.125, 0.375, 0.375, 0.125};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(st.value_distribution[k].value - k / kS3) <= 1e-12);
        CHECK(std::abs(st.value_distribution[k].probability - masses[k]) <= 1e-12);
    }

    const auto s2 = FiniteSpace::binary(2);
    const auto pm = stats(Functional::table(s2, {5, 6, 7, 8}), s2, Distribution::joint(s2, {0, 0, 1, 0}));
    CHECK(pm.mean == 7.0);
    CHECK(pm.median_lo == 7.0);
    CHECK(pm.median_hi == 7.0);

    const auto s1 = FiniteSpace::binary(1);
    const auto bit = stats(Functional::weighted_sum({1.0}), s1, Distribution::uniform(s1));
    CHECK(bit.mean == 0.5);
    CHECK(bit.median_lo == 0.0);
    CHECK(bit.median_hi == 1.0);
}

TEST_CASE("median endpoints satisfy both median inequalities") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteSpace s({2, 3});
        std::vector<double> table(6);
        double total = 0.0;
        for (auto& p : table) total += (p = rng.uniform() < 0.2 ? 0.0 : rng.uniform());
        if (total == 0.0) continue;
        for (auto& p : table) p /= total;
        std::vector<double> values(6);
        for (auto& v : values) v = static_cast<double>(rng.below(4));
        const auto st = stats(Functional::table(s, values), s, Distribution::joint(s, table));
        CHECK(st.median_lo <= st.median_hi);
        double mean = 0.0;
        for (std::size_t r = 0; r < 6; ++r) mean += table[r] * values[r];
        CHECK(std::abs(st.mean - mean) <= 1e-10);
        for (const auto& vm : st.value_distribution) {
            if (vm.value < st.median_lo - 1e-12 || vm.value > st.median_hi + 1e-12) continue;
            double le = 0.0, ge = 0.0;
            for (std::size_t r = 0; r < 6; ++r) {
                if (values[r] <= vm.value) le += table[r];
                if (values[r] >= vm.value) ge += table[r];
            }
            CHECK(le >= 0.5 - 1e-12);
            CHECK(ge >= 0.5 - 1e-12);
        }
    }
}

TEST_CASE("aggregate_law merges near ties and drops zero mass") {
    const auto law = aggregate_law({{1.0, 0.2}, {0.0, 0.0}, {1.0 + 1e-14, 0.3}, {0.5, 0.5}});
    REQUIRE(law.size() == 2);
    CHECK(law[0].value == 0.5);
    CHECK(law[1].value == 1.0);
    CHECK(law[1].probability == doctest::Approx(0.5));
}

TEST_CASE("level sets") {
    const auto s = FiniteSpace::binary(3);
    const auto f = scaled_bit_sum(3);
    CHECK(sublevel_set(f, 1.0 / kS3).members(s).size() == 4);
    CHECK(superlevel_set(f, 2.0 / kS3).members(s).size() == 4);
    CHECK(superlevel_set(f, 3.0 / kS3).members(s).size() == 1);
}

TEST_CASE("condition names") {
    CHECK(std::string(to_string(Condition::lipschitz)) == "lipschitz");
    CHECK(std::string(to_string(Condition::self_bounding)) == "self_bounding");
    CHECK(std::string(to_string(CheckMode::sampled)) == "sampled");
}
