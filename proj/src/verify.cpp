#include "hamconc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hamconc/report.hpp"

namespace hamconc {

const char* to_string(TargetKind kind) noexcept {
    switch (kind) {
        case TargetKind::set: return "set";
        case TargetKind::median: return "median";
        case TargetKind::gap: return "gap";
        case TargetKind::drop: return "drop";
    }
    return "?";
}

std::optional<TargetKind> parse_target_kind(std::string_view name) {
    for (TargetKind k : {TargetKind::set, TargetKind::median, TargetKind::gap, TargetKind::drop})
        if (name == to_string(k)) return k;
    if (name == "mean") return TargetKind::drop;
    return std::nullopt;
}

const char* to_string(Side side) noexcept {
    switch (side) {
        case Side::none: return "";
        case Side::upper: return "upper";
        case Side::lower: return "lower";
    }
    return "?";
}

TargetKind Scenario::kind() const noexcept {
    switch (target.index()) {
        case 0: return TargetKind::set;
        case 1: return TargetKind::median;
        case 2: return TargetKind::gap;
        default: return TargetKind::drop;
    }
}

std::vector<double> default_t_grid(const AlphaWeights& alpha) {
    constexpr int kPoints = 24;
    const double lo = 0.05;
    const double hi = std::max(1.2 * alpha.l1_sum(), 2.0 * lo);
    std::vector<double> grid(kPoints);
    for (int k = 0; k < kPoints; ++k) grid[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (kPoints - 1));
    return grid;
}

std::vector<double> default_lambda_grid() { return {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}; }

namespace {

bool is_probability_bound(BoundId id) {
    return id != BoundId::MGF && id != BoundId::GAP_CLASSICAL && id != BoundId::GAP_IMPROVED;
}

class ReportBuilder {
public:
    explicit ReportBuilder(const Scenario& sc) : kind_(sc.kind()) {
        report_.scenario_json = scenario_canonical_json(sc);
        report_.fingerprint = fingerprint_of(report_.scenario_json);
    }

    ReportRow& add(BoundId id, double lhs, double bound) {
        ReportRow row;
        row.target_kind = kind_;
        row.median_used = median_;
        row.bound_id = id;
        row.lhs = lhs;
        row.bound = bound;
        row.slack = bound - lhs;
        row.pass = row.slack >= -kPassTolerance;
        row.vacuous = is_probability_bound(id) && bound > 1.0;
        report_.rows.push_back(std::move(row));
        return report_.rows.back();
    }

    void set_median(std::optional<std::string> which) { median_ = std::move(which); }
    ReportSummary& summary() { return report_.summary; }

    BoundReport finish() {
        auto& s = report_.summary;
        s.rows = report_.rows.size();
        s.failures = 0;
        s.worst_slack.clear();
        for (const auto& r : report_.rows) {
            if (!r.pass) ++s.failures;
            auto it = std::find_if(s.worst_slack.begin(), s.worst_slack.end(),
                                   [&](const auto& e) { return e.first == r.bound_id; });
            if (it == s.worst_slack.end()) s.worst_slack.emplace_back(r.bound_id, r.slack);
            else it->second = std::min(it->second, r.slack);
        }
        return std::move(report_);
    }

private:
    TargetKind kind_;
    std::optional<std::string> median_;
    BoundReport report_;
};

void require_grids(const Scenario& sc, bool need_lambda) {
    auto check = [](const std::vector<double>& g, const char* name, bool positive) {
        if (g.empty()) throw VerificationError(std::string(name) + " grid is empty");
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (!std::isfinite(g[k]) || (positive ? !(g[k] > 0.0) : !(g[k] >= 0.0)))
                throw VerificationError(std::string(name) + " grid values must be " +
                                        (positive ? "positive" : "nonnegative"));
            if (k > 0 && !(g[k] > g[k - 1]))
                throw VerificationError(std::string(name) + " grid must be strictly increasing");
        }
    };
    check(sc.t_grid, "t", true);
    if (need_lambda) check(sc.lambda_grid, "lambda", false);
}

void require_product(const Scenario& sc, const char* what) {
    if (!sc.dist.is_product())
        throw VerificationError(std::string(what) + " requires independent coordinates (product distribution)");
}

std::vector<double> grid_with(const Scenario& sc, std::initializer_list<double> extra) {
    std::vector<double> g = sc.t_grid;
    if (sc.insert_derived_t)
        for (double v : extra)
            if (v > 0.0 && std::isfinite(v)) g.push_back(v);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

const Functional& target_function(const Scenario& sc) {
    return std::visit(
        [](const auto& t) -> const Functional& {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, SetTarget>) throw VerificationError("target has no function");
            else return t.f;
        },
        sc.target);
}

// Establishes |f(x) - f(x')| <= d_alpha(x, x'): through the drop condition
// when a drop family is supplied (it implies the Lipschitz bound), otherwise
// by checking pairs.
std::string certify_lipschitz(const Scenario& sc, const Functional& f) {
    if (f.has_drop_family()) {
        const Certificate drop = check_drop_condition(f, sc.alpha, sc.space);
        if (drop.holds) return "lipschitz:via-drop-condition";
    }
    LipschitzOptions opt = sc.caps.lipschitz;
    opt.seed = sc.seed;
    const Certificate cert = check_lipschitz(f, sc.alpha, sc.space, opt);
    if (!cert.holds)
        throw VerificationError("f is not 1-Lipschitz for d_alpha (worst slack " + format_number(cert.worst_slack) +
                                    ")",
                                cert);
    return std::string("lipschitz:") + to_string(cert.mode);
}

struct MedianContext {
    FunctionalLaw law;
    std::vector<MedianSummary> medians;
};

MedianContext median_context(const Scenario& sc, const Functional& f, ReportSummary& summary) {
    require_product(sc, "median concentration");
    require_normalized(sc.alpha);
    summary.certification.push_back(certify_lipschitz(sc, f));
    MedianContext ctx;
    ctx.law = exact_functional_stats(sc.space, sc.dist, f, sc.caps.enumeration);
    const Stats& st = ctx.law.stats;
    summary.mean = st.mean;
    summary.median_lo = st.median_lo;
    summary.median_hi = st.median_hi;
    for (const auto& [which, m] : {std::pair{"lo", st.median_lo}, std::pair{"hi", st.median_hi}}) {
        MedianSummary ms;
        ms.which = which;
        ms.m = m;
        const SetStats below = exact_set_stats(sc.space, sc.dist, sc.alpha, sublevel_set(f, m), sc.caps.enumeration);
        const SetStats above = exact_set_stats(sc.space, sc.dist, sc.alpha, superlevel_set(f, m), sc.caps.enumeration);
        ms.rho = below.rho;
        ms.p_sublevel = below.p_in;
        ms.rho_superlevel = above.rho;
        ms.gap = std::abs(st.mean - m);
        ctx.medians.push_back(ms);
    }
    summary.medians = ctx.medians;
    return ctx;
}

}  // namespace

BoundReport verify_set(const Scenario& sc) {
    const auto* target = std::get_if<SetTarget>(&sc.target);
    if (target == nullptr) throw VerificationError("verify_set needs a set target");
    require_product(sc, "the set inequality");
    require_normalized(sc.alpha);
    require_grids(sc, false);

    ReportBuilder rb(sc);
    const SetStats ss = exact_set_stats(sc.space, sc.dist, sc.alpha, target->set, sc.caps.enumeration);
    rb.summary().p_in = ss.p_in;
    rb.summary().rho = ss.rho;
    rb.summary().certification.push_back("independence:product");

    for (double t : grid_with(sc, {ss.rho})) {
        const double lhs = ss.distance_curve.tail(t) * ss.p_in;
        rb.add(BoundId::MCD_SET, lhs, mcdiarmid_set_bound(t)).t = t;
        rb.add(BoundId::SIMPLE_SET, lhs, simple_set_bound(t)).t = t;
        rb.add(BoundId::IMPROVED_SET, lhs, improved_set_bound(t, ss.rho)).t = t;
    }
    rb.add(BoundId::MEMBERSHIP_PRODUCT, (1.0 - ss.p_in) * ss.p_in, membership_product_bound(ss.rho));
    return rb.finish();
}

BoundReport verify_median(const Scenario& sc) {
    if (sc.kind() != TargetKind::median && sc.kind() != TargetKind::gap)
        throw VerificationError("verify_median needs a median or gap target");
    require_grids(sc, false);
    const Functional& f = target_function(sc);
    ReportBuilder rb(sc);
    const MedianContext ctx = median_context(sc, f, rb.summary());
    const TailCurve& law = ctx.law.curve;

    for (const auto& ms : ctx.medians) {
        rb.set_median(ms.which);
        for (double t : grid_with(sc, {ms.rho, ms.gap})) {
            const double upper = law.tail(ms.m + t);
            const double lower = law.lower(ms.m - t);
            for (const auto& [side, lhs] : {std::pair{Side::upper, upper}, std::pair{Side::lower, lower}}) {
                auto& improved = rb.add(BoundId::MEDIAN_IMPROVED, lhs, median_tail_bound(t, ms.rho));
                improved.t = t;
                improved.side = side;
                auto& classical = rb.add(BoundId::MEDIAN_CLASSICAL, lhs, median_tail_classical(t));
                classical.t = t;
                classical.side = side;
                if (t > ms.gap) {
                    auto& shifted = rb.add(BoundId::SHIFTED_MEDIAN, lhs, shifted_median_bound(t, ms.gap));
                    shifted.t = t;
                    shifted.side = side;
                }
            }
        }
    }
    return rb.finish();
}

BoundReport verify_gap(const Scenario& sc) {
    if (sc.kind() != TargetKind::gap && sc.kind() != TargetKind::median)
        throw VerificationError("verify_gap needs a gap or median target");
    const Functional& f = target_function(sc);
    ReportBuilder rb(sc);
    const MedianContext ctx = median_context(sc, f, rb.summary());
    for (const auto& ms : ctx.medians) {
        rb.set_median(ms.which);
        rb.add(BoundId::GAP_IMPROVED, ms.gap, gap_bound(ms.rho));
        rb.add(BoundId::GAP_CLASSICAL, ms.gap, gap_bound_classical());
    }
    return rb.finish();
}

BoundReport verify_drop_functional(const Scenario& sc) {
    const auto* target = std::get_if<MeanTarget>(&sc.target);
    if (target == nullptr) throw VerificationError("verify_drop_functional needs a drop (mean) target");
    const Functional& f = target->f;
    if (!f.has_drop_family()) throw VerificationError("drop target needs a coordinate-drop family");
    require_normalized(sc.alpha);
    require_grids(sc, true);
    const auto& params = f.self_bounding();
    if (params && !sc.dist.is_product())
        throw VerificationError("self-bounding comparison bounds require independent coordinates");

    const Certificate drop = check_drop_condition(f, sc.alpha, sc.space);
    const Certificate unit = check_unit_drop_condition(f, sc.space);
    std::optional<Certificate> sb;
    if (params) sb = check_self_bounding(f, sc.space);
    if (!drop.holds && !(sb && sb->holds))
        throw VerificationError("drop condition 0 <= f(x) - f_i(x^(i)) <= alpha_i fails (worst slack " +
                                    format_number(drop.worst_slack) + ")",
                                drop);

    ReportBuilder rb(sc);
    auto& summary = rb.summary();
    summary.certification.push_back(drop.holds ? "drop:holds" : "drop:fails");
    summary.certification.push_back(unit.holds ? "unit-drop:holds" : "unit-drop:fails");
    if (sb) summary.certification.push_back(sb->holds ? "self-bounding:holds" : "self-bounding:fails");
    summary.certification.push_back(sc.dist.is_product() ? "independence:product" : "independence:joint");

    const FunctionalLaw law = exact_functional_stats(sc.space, sc.dist, f, sc.caps.enumeration);
    const double mu = law.stats.mean;
    summary.mean = mu;
    summary.median_lo = law.stats.median_lo;
    summary.median_hi = law.stats.median_hi;
    const double n = static_cast<double>(sc.space.dimension());
    const bool sb_rows = sb && sb->holds && params->a * mu + params->b > 0.0 && mu >= 0.0;

    for (double t : grid_with(sc, {})) {
        const double upper = law.centered.tail(t);
        const double lower = law.centered.lower(-t);
        for (const auto& [side, lhs] : {std::pair{Side::upper, upper}, std::pair{Side::lower, lower}}) {
            auto tag = [&](ReportRow& r) {
                r.t = t;
                r.side = side;
            };
            if (drop.holds) tag(rb.add(BoundId::DROP_MEAN_TAIL, lhs, drop_mean_tail_bound(t)));
            if (unit.holds) tag(rb.add(BoundId::DROP_MEAN_TAIL_SCALED, lhs, drop_mean_tail_scaled(t, n)));
            if (sb_rows) {
                const double bound = side == Side::upper ? sb_upper_bound(t, mu, params->a, params->b)
                                                         : sb_lower_bound(t, mu, params->a, params->b);
                tag(rb.add(side == Side::upper ? BoundId::SB_UPPER : BoundId::SB_LOWER, lhs, bound));
            }
        }
    }
    if (drop.holds) {
        for (double lambda : sc.lambda_grid) {
            const double m = exact_mgf(sc.space, sc.dist, f, lambda, sc.caps.enumeration);
            rb.add(BoundId::MGF, m, mgf_bound(lambda)).lambda = lambda;
        }
    }
    return rb.finish();
}

BoundReport verify(const Scenario& sc) {
    switch (sc.kind()) {
        case TargetKind::set: return verify_set(sc);
        case TargetKind::median: return verify_median(sc);
        case TargetKind::gap: return verify_gap(sc);
        case TargetKind::drop: return verify_drop_functional(sc);
    }
    throw VerificationError("unknown target kind");
}

// ---------------------------------------------------------------------------
// Random scenarios

namespace {

std::vector<double> random_simplex(Rng& rng, std::size_t k, bool allow_zeros) {
    std::vector<double> w(k);
    const bool uniform = rng.below(4) == 0;
    const bool sparse = allow_zeros && rng.below(4) == 0;
    double total = 0.0;
    for (auto& v : w) {
        v = uniform ? 1.0 : -std::log(1.0 - rng.uniform());  // Exp(1) gives a flat Dirichlet
        if (sparse && rng.below(2) == 0) v = 0.0;
        total += v;
    }
    if (total == 0.0) {
        w[rng.below(k)] = 1.0;
        total = 1.0;
    }
    for (auto& v : w) v /= total;
    return w;
}

AlphaWeights random_alpha(Rng& rng, std::size_t n) {
    if (rng.below(4) == 0) return AlphaWeights::uniform(n);
    std::vector<double> w(n);
    for (auto& v : w) v = 0.05 + rng.uniform();
    if (n >= 2 && rng.below(10) == 0) w[rng.below(n)] = 0.0;
    return normalize(AlphaWeights(std::move(w)));
}

Point random_point(const FiniteSpace& space, Rng& rng) {
    Point x(std::vector<Symbol>(space.dimension(), 0));
    for (std::size_t i = 0; i < space.dimension(); ++i)
        x[i] = static_cast<Symbol>(rng.below(space.alphabet_size(i)));
    return x;
}

// A function with |f(x) - f(y)| <= d_alpha(x, y), tabulated over the space.
Functional random_lipschitz(Rng& rng, const FiniteSpace& space, const AlphaWeights& alpha) {
    const std::size_t n = space.dimension();
    const auto count = space.outcome_count();
    std::vector<double> values(count);
    switch (rng.below(4)) {
        case 0: {
            // sum_i c_i g_i(x_i) with g_i in [0,1] and |c_i| <= alpha_i.
            std::vector<std::vector<double>> g(n);
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i) {
                const bool tight = rng.below(2) == 0;
                const double s = tight ? (rng.below(2) ? 1.0 : -1.0) : 2.0 * rng.uniform() - 1.0;
                c[i] = s * alpha[i];
                for (std::uint32_t k = 0; k < space.alphabet_size(i); ++k)
                    g[i].push_back(tight ? static_cast<double>(rng.below(2)) : rng.uniform());
            }
            for (std::uint64_t r = 0; r < count; ++r) {
                const Point x = space.unrank(r);
                double v = 0.0;
                for (std::size_t i = 0; i < n; ++i) v += c[i] * g[i][x[i]];
                values[r] = v;
            }
            break;
        }
        case 1:
        case 2: {
            // Inf- or sup-convolution of random anchor values with d_alpha.
            const bool inf = rng.below(2) == 0;
            const std::size_t anchors = 1 + rng.below(std::min<std::uint64_t>(count, 6));
            std::vector<Point> ys;
            std::vector<double> vs;
            for (std::size_t k = 0; k < anchors; ++k) {
                ys.push_back(random_point(space, rng));
                vs.push_back(rng.uniform() * alpha.l1_sum());
            }
            for (std::uint64_t r = 0; r < count; ++r) {
                const Point x = space.unrank(r);
                double v = inf ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < anchors; ++k) {
                    const double d = hamming_distance(alpha, x, ys[k]);
                    v = inf ? std::min(v, vs[k] + d) : std::max(v, vs[k] - d);
                }
                values[r] = v;
            }
            break;
        }
        default: {
            // s * d_alpha(x, B) for a random nonempty B and s in (0, 1].
            std::vector<Point> members;
            const std::size_t size = 1 + rng.below(std::min<std::uint64_t>(count, 8));
            for (std::size_t k = 0; k < size; ++k) members.push_back(random_point(space, rng));
            const SetDistance dist(alpha, SetSpec::points(members), space);
            const double s = rng.below(2) ? 1.0 : 1.0 - rng.uniform();
            for (std::uint64_t r = 0; r < count; ++r) values[r] = s * dist(space.unrank(r));
            break;
        }
    }
    return Functional::table(space, std::move(values));
}

SetSpec random_proper_set(Rng& rng, const FiniteSpace& space) {
    const auto count = space.outcome_count();
    for (;;) {
        const double q = 0.05 + 0.6 * rng.uniform();
        std::vector<Point> members;
        for (std::uint64_t r = 0; r < count; ++r)
            if (rng.uniform() < q) members.push_back(space.unrank(r));
        if (!members.empty() && members.size() < count) return SetSpec::points(std::move(members));
    }
}

void check_limits(const ScenarioLimits& limits) {
    if (limits.max_n == 0 || limits.max_alphabet < 2)
        throw std::invalid_argument("random_scenario: need max_n >= 1 and max_alphabet >= 2");
    if (std::pow(static_cast<double>(limits.max_alphabet), static_cast<double>(limits.max_n)) >
        static_cast<double>(kMaxRandomOutcomes))
        throw std::invalid_argument("random_scenario: limits allow more than 4096 outcomes");
    if (!(limits.joint_fraction >= 0.0 && limits.joint_fraction <= 1.0))
        throw std::invalid_argument("random_scenario: joint_fraction must lie in [0, 1]");
}

}  // namespace

Scenario random_scenario(std::uint64_t seed, const ScenarioLimits& limits, TargetKind kind) {
    check_limits(limits);

    Rng rng(seed);
    const std::size_t n = 1 + rng.below(limits.max_n);
    std::vector<std::uint32_t> sizes(n);
    for (auto& k : sizes) k = 2 + static_cast<std::uint32_t>(rng.below(limits.max_alphabet - 1));
    FiniteSpace space(sizes);
    AlphaWeights alpha = random_alpha(rng, n);

    const bool joint = kind == TargetKind::drop && rng.uniform() < limits.joint_fraction;
    Distribution dist = [&] {
        if (joint) return Distribution::joint(space, random_simplex(rng, space.outcome_count(), true));
        std::vector<std::vector<double>> pmfs;
        for (auto k : sizes) pmfs.push_back(random_simplex(rng, k, true));
        return Distribution::product(space, std::move(pmfs));
    }();

    Target target = [&]() -> Target {
        switch (kind) {
            case TargetKind::set: return SetTarget{random_proper_set(rng, space)};
            case TargetKind::median: return MedianTarget{random_lipschitz(rng, space, alpha)};
            case TargetKind::gap: return GapTarget{random_lipschitz(rng, space, alpha)};
            case TargetKind::drop:
                return MeanTarget{drop_infimum_family(random_lipschitz(rng, space, alpha), space)};
        }
        throw std::logic_error("unknown target kind");
    }();

    Scenario sc{std::move(space), std::move(dist), alpha, std::move(target), default_t_grid(alpha),
                default_lambda_grid(), seed};
    return sc;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 of (seed, trial)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

struct TrialOutcome {
    bool pass{true};
    bool joint{false};
    std::size_t rows{0};
    double worst_slack{std::numeric_limits<double>::infinity()};
    double max_gap{0.0};
    double max_gap_bound{0.0};
    std::string message;
};

TrialOutcome run_trial(TargetKind kind, std::uint64_t seed, const ScenarioLimits& limits) {
    TrialOutcome out;
    try {
        const Scenario sc = random_scenario(seed, limits, kind);
        out.joint = !sc.dist.is_product();
        const BoundReport rep = verify(sc);
        out.rows = rep.rows.size();
        out.pass = rep.all_pass();
        for (const auto& r : rep.rows) {
            out.worst_slack = std::min(out.worst_slack, r.slack);
            if (r.bound_id == BoundId::GAP_IMPROVED) {
                out.max_gap = std::max(out.max_gap, r.lhs);
                out.max_gap_bound = std::max(out.max_gap_bound, r.bound);
            }
            if (!r.pass && out.message.empty())
                out.message = std::string(to_string(r.bound_id)) + " lhs=" + format_number(r.lhs) +
                              " bound=" + format_number(r.bound);
        }
    } catch (const std::exception& e) {
        out.pass = false;
        out.message = std::string("error: ") + e.what();
    }
    return out;
}

}  // namespace

SweepResult run_sweep(TargetKind kind, std::size_t trials, std::uint64_t seed, const ScenarioLimits& limits,
                      unsigned threads) {
    if (trials == 0) throw std::invalid_argument("run_sweep: trials must be >= 1");
    check_limits(limits);
    std::vector<TrialOutcome> outcomes(trials);
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < trials; i += workers)
                    outcomes[i] = run_trial(kind, trial_seed(seed, i), limits);
            });
    }
    SweepResult res;
    res.kind = kind;
    res.trials = trials;
    res.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials; ++i) {
        const auto& o = outcomes[i];
        if (o.pass) ++res.passed;
        else {
            res.failing_seeds.push_back(trial_seed(seed, i));
            res.failure_messages.push_back(o.message);
        }
        if (o.joint) ++res.joint_scenarios;
        res.rows += o.rows;
        res.worst_slack = std::min(res.worst_slack, o.worst_slack);
        res.max_gap = std::max(res.max_gap, o.max_gap);
        res.max_gap_bound = std::max(res.max_gap_bound, o.max_gap_bound);
    }
    return res;
}

}  // namespace hamconc
