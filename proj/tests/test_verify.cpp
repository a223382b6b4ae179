#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "hamconc/report.hpp"
#include "hamconc/verify.hpp"
#include "oracle.hpp"

using namespace hamconc;

namespace {
const double kR2 = 1.0 / std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

Scenario make(FiniteSpace space, Distribution dist, AlphaWeights alpha, Target target) {
    auto grid = default_t_grid(alpha);
    return Scenario{std::move(space), std::move(dist), std::move(alpha), std::move(target), std::move(grid),
                    default_lambda_grid()};
}

Scenario s1() {
    const auto s = FiniteSpace::binary(2);
    return make(s, Distribution::uniform(s), AlphaWeights::uniform(2), SetTarget{SetSpec::points({{0, 0}})});
}

Functional scaled_sum(std::size_t n) {
    return Functional::weighted_sum(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

const ReportRow* find_row(const BoundReport& r, BoundId id, std::optional<double> t, Side side = Side::none,
                          std::optional<std::string> median = std::nullopt) {
    for (const auto& row : r.rows) {
        if (row.bound_id != id || row.side != side) continue;
        if (median && row.median_used != median) continue;
        if (t && !(row.t && close(*row.t, *t, 1e-12))) continue;
        return &row;
    }
    return nullptr;
}

void check_row_invariants(const BoundReport& r) {
    for (const auto& row : r.rows) {
        CHECK(row.slack == row.bound - row.lhs);
        CHECK(row.pass == (row.slack >= -kPassTolerance));
    }
    // Domination at every t: improved <= simple <= classical, improved median <= classical median.
    std::map<std::tuple<double, int, std::string>, std::map<BoundId, double>> by_t;
    for (const auto& row : r.rows)
        if (row.t) by_t[{*row.t, static_cast<int>(row.side), row.median_used.value_or("")}][row.bound_id] = row.bound;
    for (const auto& [key, b] : by_t) {
        if (b.count(BoundId::IMPROVED_SET)) {
            CHECK(b.at(BoundId::IMPROVED_SET) <= b.at(BoundId::SIMPLE_SET) + 1e-15);
            CHECK(b.at(BoundId::SIMPLE_SET) <= b.at(BoundId::MCD_SET));
        }
        if (b.count(BoundId::MEDIAN_IMPROVED))
            CHECK(b.at(BoundId::MEDIAN_IMPROVED) <= b.at(BoundId::MEDIAN_CLASSICAL));
    }
}
}  // namespace

TEST_CASE("set scenario S1") {
    const auto r = verify_set(s1());
    CHECK(r.all_pass());
    // Default 24-point grid plus rho, three set rows each, one membership row.
    CHECK(r.rows.size() == 3 * 25 + 1);
    REQUIRE(r.summary.p_in.has_value());
    CHECK(close(*r.summary.p_in, 0.25));
    CHECK(close(*r.summary.rho, kR2));
    const auto* imp = find_row(r, BoundId::IMPROVED_SET, kR2);
    REQUIRE(imp != nullptr);
    CHECK(close(imp->lhs, 0.1875));
    CHECK(close(imp->bound, std::exp(-1.0)));
    CHECK(imp->pass);
    const auto* mem = find_row(r, BoundId::MEMBERSHIP_PRODUCT, std::nullopt);
    REQUIRE(mem != nullptr);
    CHECK(close(mem->lhs, 0.1875));
    CHECK(close(mem->bound, std::exp(-1.0)));
    check_row_invariants(r);

    // Oracle: every tail row equals P(d >= t) P(A) by direct enumeration.
    const oracle::Space os{{2, 2}, {{0.5, 0.5}, {0.5, 0.5}}, {}};
    for (const auto& row : r.rows) {
        if (!row.t) continue;
        const double tail = oracle::tail(
            os, [](const oracle::Outcome& x) { return oracle::dist_to_set({kR2, kR2}, x, {{0, 0}}); }, *row.t - 1e-12);
        CHECK(close(row.lhs, tail * 0.25));
    }
}

TEST_CASE("set scenario: whole space") {
    const auto s = FiniteSpace::binary(3);
    auto sc = make(s, Distribution::uniform(s), AlphaWeights::uniform(3), SetTarget{SetSpec::whole_space()});
    const auto r = verify(sc);
    CHECK(r.all_pass());
    for (const auto& row : r.rows) CHECK(row.lhs == 0.0);
}

TEST_CASE("set scenario preconditions") {
    auto joint = s1();
    joint.dist = Distribution::joint(joint.space, {0.1, 0.2, 0.3, 0.4});
    CHECK_THROWS_AS(verify_set(joint), VerificationError);

    auto unnorm = s1();
    unnorm.alpha = AlphaWeights({1.0, 1.0});
    CHECK_THROWS_AS(verify_set(unnorm), std::invalid_argument);

    auto empty_grid = s1();
    empty_grid.t_grid.clear();
    CHECK_THROWS_AS(verify_set(empty_grid), VerificationError);

    auto unsorted = s1();
    unsorted.t_grid = {0.5, 0.2};
    CHECK_THROWS_AS(verify_set(unsorted), VerificationError);
}

TEST_CASE("median scenario: scaled bit sum on three bits") {
    const auto s = FiniteSpace::binary(3);
    auto sc = make(s, Distribution::uniform(s), AlphaWeights::uniform(3), MedianTarget{scaled_sum(3)});
    sc.t_grid.push_back(1.0 / kS3);
    std::sort(sc.t_grid.begin(), sc.t_grid.end());
    const auto r = verify_median(sc);
    REQUIRE(r.summary.medians.size() == 2);
    const auto& lo = r.summary.medians[0];
    const auto& hi = r.summary.medians[1];
    CHECK(lo.which == "lo");
    CHECK(close(lo.m, 1.0 / kS3));
    CHECK(close(hi.m, 2.0 / kS3));

    // Oracle rho for A = {f <= m}.
    const oracle::Space os{{2, 2, 2}, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}, {}};
    const std::vector<double> w(3, 1.0 / kS3);
    const std::vector<oracle::Outcome> a_lo = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    std::vector<oracle::Outcome> a_hi = a_lo;
    for (oracle::Outcome x : {oracle::Outcome{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) a_hi.push_back(x);
    CHECK(close(lo.rho, oracle::set_quantities(os, w, a_lo).rho));
    CHECK(close(lo.rho, 5.0 / (8.0 * kS3)));
    CHECK(close(hi.rho, oracle::set_quantities(os, w, a_hi).rho));
    CHECK(close(hi.rho, 1.0 / (8.0 * kS3)));
    CHECK(close(lo.gap, kS3 / 2.0 - 1.0 / kS3));

    const auto* up = find_row(r, BoundId::MEDIAN_IMPROVED, 1.0 / kS3, Side::upper, "lo");
    REQUIRE(up != nullptr);
    CHECK(close(up->lhs, 0.5));
    CHECK(close(up->bound, 2.0 * std::exp(-h_exponent(1.0 / kS3, lo.rho))));
    CHECK(up->pass);

    // Every upper-tail row holds; the shifted rows only appear past the gap.
    for (const auto& row : r.rows) {
        if (row.side == Side::upper) CHECK(row.pass);
        if (row.bound_id == BoundId::SHIFTED_MEDIAN) {
            const double gap = row.median_used == "lo" ? lo.gap : hi.gap;
            CHECK(*row.t > gap);
        }
    }
    check_row_invariants(r);
    CHECK(std::find(r.summary.certification.begin(), r.summary.certification.end(), "lipschitz:exhaustive") !=
          r.summary.certification.end());
}

TEST_CASE("median scenario: constant function passes everywhere") {
    const auto s = FiniteSpace::binary(2);
    const auto r =
        verify_median(make(s, Distribution::uniform(s), AlphaWeights::uniform(2), MedianTarget{Functional::constant(1)}));
    CHECK(r.all_pass());
    for (const auto& row : r.rows) CHECK(row.lhs == 0.0);
}

TEST_CASE("median scenario: non-lipschitz function is rejected with a witness") {
    const FiniteSpace s({2});
    try {
        verify_median(make(s, Distribution::uniform(s), AlphaWeights({1.0}), MedianTarget{Functional::table(s, {0, 2})}));
        FAIL("expected a VerificationError");
    } catch (const VerificationError& e) {
        REQUIRE(e.certificate().has_value());
        CHECK(e.certificate()->witness.size() == 2);
        CHECK_FALSE(e.certificate()->holds);
    }
}

TEST_CASE("median scenario: lower tail with the sublevel-set rho") {
    // One biased bit: the median is 1, the sublevel set is the whole space and
    // rho = 0, while P(1 - f >= 1) = 0.49 exceeds 2 e^{-2}.
    const FiniteSpace s({2});
    auto sc = make(s, Distribution::product(s, {{0.49, 0.51}}), AlphaWeights({1.0}),
                   MedianTarget{Functional::weighted_sum({1.0})});
    sc.t_grid = {0.5, 1.0};
    const auto r = verify_median(sc);
    CHECK(r.summary.medians[0].m == 1.0);
    CHECK(r.summary.medians[0].rho == 0.0);
    CHECK(close(r.summary.medians[0].rho_superlevel, 0.49));
    const auto* low = find_row(r, BoundId::MEDIAN_IMPROVED, 1.0, Side::lower, "lo");
    REQUIRE(low != nullptr);
    CHECK(close(low->lhs, 0.49));
    CHECK(close(low->bound, 2.0 * std::exp(-2.0)));
    CHECK_FALSE(low->pass);
    CHECK_FALSE(r.all_pass());
    // With rho from the superlevel set {f >= m} the same lower-tail row holds.
    CHECK(low->lhs <= median_tail_bound(1.0, r.summary.medians[0].rho_superlevel));
    for (const auto& row : r.rows) {
        if (row.side == Side::upper) CHECK(row.pass);
        if (row.bound_id == BoundId::MEDIAN_CLASSICAL) CHECK(row.pass);
    }
}

TEST_CASE("gap scenario") {
    const auto s = FiniteSpace::binary(3);
    const auto r = verify_gap(make(s, Distribution::uniform(s), AlphaWeights::uniform(3), GapTarget{scaled_sum(3)}));
    CHECK(r.all_pass());
    CHECK(r.rows.size() == 4);
    const auto* lo = find_row(r, BoundId::GAP_IMPROVED, std::nullopt, Side::none, "lo");
    REQUIRE(lo != nullptr);
    CHECK(close(lo->lhs, 0.28868, 1e-5));
    CHECK(close(lo->bound, gap_bound(5.0 / (8.0 * kS3))));
    CHECK(lo->bound > 0.28868);
    for (const auto& row : r.rows) {
        if (row.bound_id == BoundId::GAP_IMPROVED) {
            CHECK(row.bound <= 1.5503);
            CHECK(row.bound < gap_bound_classical());
        }
    }

    const FiniteSpace b({2});
    const auto sym = verify_gap(
        make(b, Distribution::uniform(b), AlphaWeights({1.0}), GapTarget{Functional::table(b, {0.25, 0.25})}));
    for (const auto& row : sym.rows) CHECK(row.lhs == 0.0);
}

TEST_CASE("median target certified through a drop family") {
    const auto s = FiniteSpace::binary(3);
    const auto f = drop_infimum_family(scaled_sum(3), s);
    const auto r = verify_gap(make(s, Distribution::uniform(s), AlphaWeights::uniform(3), GapTarget{f}));
    CHECK(r.summary.certification.front() == "lipschitz:via-drop-condition");
}

TEST_CASE("drop scenario: scaled bit sum") {
    const auto s = FiniteSpace::binary(3);
    const auto f = drop_infimum_family(scaled_sum(3), s);
    const auto r = verify_drop_functional(make(s, Distribution::uniform(s), AlphaWeights::uniform(3), MeanTarget{f}));
    CHECK(r.all_pass());
    const auto* up = find_row(r, BoundId::DROP_MEAN_TAIL, 1.0 / kS3, Side::upper);
    // 1/sqrt3 is not on the default grid; evaluate the law directly.
    if (up == nullptr) {
        auto sc = make(s, Distribution::uniform(s), AlphaWeights::uniform(3), MeanTarget{f});
        sc.t_grid = {1.0 / kS3};
        const auto r2 = verify_drop_functional(sc);
        up = nullptr;
        for (const auto& row : r2.rows)
            if (row.bound_id == BoundId::DROP_MEAN_TAIL && row.side == Side::upper) {
                CHECK(close(row.lhs, 0.125));
                CHECK(close(row.bound, std::exp(-2.0 / 3.0)));
                CHECK(row.pass);
            }
    }
    const ReportRow* zero = nullptr;
    for (const auto& row : r.rows)
        if (row.bound_id == BoundId::MGF && row.lambda == 0.0) zero = &row;
    REQUIRE(zero != nullptr);
    CHECK(zero->lhs == 1.0);
    CHECK(zero->bound == 1.0);
    CHECK(zero->slack == 0.0);
    CHECK(zero->pass);
    check_row_invariants(r);
}

TEST_CASE("drop scenario: perfectly correlated bits") {
    // X1 = X2, f = (x1 + x2)/sqrt2. The drop condition holds, but the law of
    // f - mu is +-1/sqrt2 with mass 1/2 each.
    const auto s = FiniteSpace::binary(2);
    const auto f = drop_infimum_family(scaled_sum(2), s);
    auto sc = make(s, Distribution::joint(s, {0.5, 0.0, 0.0, 0.5}), AlphaWeights::uniform(2), MeanTarget{f});
    sc.t_grid = {0.5, kR2};
    sc.lambda_grid = {0.0, 1.0};
    const auto r = verify_drop_functional(sc);
    CHECK(r.summary.certification.front() == "drop:holds");
    const auto* half = find_row(r, BoundId::DROP_MEAN_TAIL, 0.5, Side::upper);
    REQUIRE(half != nullptr);
    CHECK(close(half->lhs, 0.5));
    CHECK(half->pass);
    const auto* edge = find_row(r, BoundId::DROP_MEAN_TAIL, kR2, Side::upper);
    REQUIRE(edge != nullptr);
    CHECK(close(edge->lhs, 0.5));
    CHECK(close(edge->bound, std::exp(-1.0)));
    CHECK_FALSE(edge->pass);
    for (const auto& row : r.rows)
        if (row.bound_id == BoundId::MGF && row.lambda == 1.0) {
            CHECK(close(row.lhs, std::cosh(kR2)));
            CHECK_FALSE(row.pass);
        }
}

TEST_CASE("drop scenario: self-bounding comparison") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto s = FiniteSpace::binary(n);
        const auto f = drop_infimum_family(Functional::weighted_sum(std::vector<double>(n, 1.0)), s)
                           .with_self_bounding({1.0, 0.0});
        const auto r = verify_drop_functional(make(s, Distribution::uniform(s), AlphaWeights::uniform(n), MeanTarget{f}));
        CHECK(r.all_pass());
        std::size_t sb = 0;
        for (const auto& row : r.rows) {
            if (row.bound_id == BoundId::SB_UPPER || row.bound_id == BoundId::SB_LOWER) ++sb;
            if (n > 1) CHECK(row.bound_id != BoundId::DROP_MEAN_TAIL);
        }
        CHECK(sb >= 2 * 24);
    }
    const auto s = FiniteSpace::binary(2);
    const auto f = drop_infimum_family(Functional::weighted_sum({1.0, 1.0}), s).with_self_bounding({1.0, 0.0});
    CHECK_THROWS_AS(
        verify_drop_functional(make(s, Distribution::joint(s, {0.25, 0.25, 0.25, 0.25}), AlphaWeights::uniform(2),
                                    MeanTarget{f})),
        VerificationError);
}

TEST_CASE("drop scenario: failing drop condition is rejected") {
    const auto s = FiniteSpace::binary(2);
    const auto f = drop_infimum_family(Functional::weighted_sum({3.0, 0.0}), s);
    CHECK_THROWS_AS(
        verify_drop_functional(make(s, Distribution::uniform(s), AlphaWeights::uniform(2), MeanTarget{f})),
        VerificationError);
}

TEST_CASE("random scenarios are deterministic and well formed") {
    for (auto kind : {TargetKind::set, TargetKind::median, TargetKind::gap, TargetKind::drop}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto a = random_scenario(seed, {}, kind);
            const auto b = random_scenario(seed, {}, kind);
            CHECK(a.kind() == kind);
            CHECK(scenario_canonical_json(a) == scenario_canonical_json(b));
            CHECK(std::abs(a.alpha.l2_norm() - 1.0) <= 1e-9);
            CHECK(a.space.outcome_count() <= kMaxRandomOutcomes);
            CHECK(a.space.dimension() <= 4);
            if (kind == TargetKind::set) {
                const auto members = std::get<SetTarget>(a.target).set.members(a.space);
                CHECK(!members.empty());
                CHECK(members.size() < a.space.outcome_count());
            }
            if (kind != TargetKind::drop) CHECK(a.dist.is_product());
        }
    }
    CHECK(scenario_canonical_json(random_scenario(1, {}, TargetKind::set)) !=
          scenario_canonical_json(random_scenario(2, {}, TargetKind::set)));
}

TEST_CASE("soundness sweeps for the valid claims") {
    const ScenarioLimits limits{4, 3, 0.5};
    const auto set = run_sweep(TargetKind::set, 300, 11, limits);
    CHECK(set.all_pass());
    const auto gap = run_sweep(TargetKind::gap, 300, 11, limits);
    CHECK(gap.all_pass());
    CHECK(gap.max_gap_bound <= 1.5503);
    const auto drop = run_sweep(TargetKind::drop, 300, 11, ScenarioLimits{4, 3, 0.0});
    CHECK(drop.all_pass());
    CHECK(drop.joint_scenarios == 0);

    // Upper median tails and every classical row hold.
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto r = verify(random_scenario(trial_seed(11, i), limits, TargetKind::median));
        check_row_invariants(r);
        for (const auto& row : r.rows) {
            if (row.side == Side::upper || row.bound_id == BoundId::MEDIAN_CLASSICAL) CHECK(row.pass);
            if (row.bound_id == BoundId::MEDIAN_IMPROVED && row.side == Side::lower) {
                const auto& ms = row.median_used == "lo" ? r.summary.medians[0] : r.summary.medians[1];
                CHECK(row.lhs <= median_tail_bound(*row.t, ms.rho_superlevel) + kPassTolerance);
            }
        }
    }
}

TEST_CASE("sweeps are independent of thread count") {
    const auto a = run_sweep(TargetKind::drop, 60, 5, {}, 1);
    const auto b = run_sweep(TargetKind::drop, 60, 5, {}, 4);
    CHECK(a.passed == b.passed);
    CHECK(a.rows == b.rows);
    CHECK(a.worst_slack == b.worst_slack);
    CHECK(a.failing_seeds == b.failing_seeds);
}
