// verify.hpp
//
// Scenario-level harness. A Scenario binds a space, a law, weights and one
// target (a set or a function); the verify_* entry points compute every
// exact left-hand side by enumeration, evaluate each applicable bound and
// record one row per comparison.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hamconc/bounds.hpp"
#include "hamconc/estimators.hpp"
#include "hamconc/functionals.hpp"
#include "hamconc/hamming.hpp"
#include "hamconc/sets.hpp"
#include "hamconc/space.hpp"

namespace hamconc {

// A row passes when bound - lhs >= -kPassTolerance.
inline constexpr double kPassTolerance = 1e-12;

enum class TargetKind { set, median, gap, drop };

const char* to_string(TargetKind kind) noexcept;
std::optional<TargetKind> parse_target_kind(std::string_view name);

struct SetTarget {
    SetSpec set;
};
struct MedianTarget {
    Functional f;
};
struct GapTarget {
    Functional f;
};
// Mean concentration for a function with a coordinate-drop family.
struct MeanTarget {
    Functional f;
};

using Target = std::variant<SetTarget, MedianTarget, GapTarget, MeanTarget>;

struct Caps {
    std::uint64_t enumeration{default_enumeration_cap()};
    LipschitzOptions lipschitz{};
};

struct Scenario {
    FiniteSpace space;
    Distribution dist;
    AlphaWeights alpha;
    Target target;
    std::vector<double> t_grid;
    std::vector<double> lambda_grid;
    std::uint64_t seed{0};
    // Add rho and |m - mu| to the t grid when they are defined and positive.
    bool insert_derived_t{true};
    Caps caps{};

    TargetKind kind() const noexcept;
};

// 24 geometric points from 0.05 to 1.2 * sum(alpha).
std::vector<double> default_t_grid(const AlphaWeights& alpha);
// {0, 0.5, 1, 2, 4, 8}
std::vector<double> default_lambda_grid();

enum class Side { none, upper, lower };
const char* to_string(Side side) noexcept;

struct ReportRow {
    TargetKind target_kind{TargetKind::set};
    std::optional<std::string> median_used;  // "lo" or "hi"
    Side side{Side::none};
    std::optional<double> t;
    std::optional<double> lambda;
    double lhs{0.0};
    BoundId bound_id{BoundId::MCD_SET};
    double bound{0.0};
    double slack{0.0};
    bool pass{true};
    bool vacuous{false};
};

struct MedianSummary {
    std::string which;  // "lo" or "hi"
    double m{0.0};
    double rho{0.0};             // E d(X, {f <= m})
    double rho_superlevel{0.0};  // E d(X, {f >= m}), diagnostic only
    double p_sublevel{0.0};
    double gap{0.0};             // |mu - m|
};

struct ReportSummary {
    std::size_t rows{0};
    std::size_t failures{0};
    // Smallest slack per bound, in order of first appearance.
    std::vector<std::pair<BoundId, double>> worst_slack;
    std::optional<double> p_in;
    std::optional<double> rho;
    std::optional<double> mean;
    std::optional<double> median_lo;
    std::optional<double> median_hi;
    std::vector<MedianSummary> medians;
    // How the hypotheses were established, e.g. "lipschitz:exhaustive".
    std::vector<std::string> certification;
};

struct BoundReport {
    std::string fingerprint;
    std::string scenario_json;  // canonical serialization the fingerprint hashes
    std::vector<ReportRow> rows;
    ReportSummary summary;

    bool all_pass() const noexcept { return summary.failures == 0; }
};

/// A scenario that does not meet the hypotheses of the checks it asks for.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what, std::optional<Certificate> cert = std::nullopt)
        : std::runtime_error(what), certificate_(std::move(cert)) {}
    const std::optional<Certificate>& certificate() const noexcept { return certificate_; }

private:
    std::optional<Certificate> certificate_;
};

// P(d(X,A) >= t) P(A) against MCD_SET, SIMPLE_SET, IMPROVED_SET per t, and
// P(not A) P(A) against MEMBERSHIP_PRODUCT. Needs a product law.
BoundReport verify_set(const Scenario& scenario);

// Upper and lower median tails at both median endpoints against
// MEDIAN_IMPROVED and MEDIAN_CLASSICAL, plus SHIFTED_MEDIAN for t > |m - mu|.
// Needs a product law and a certified Lipschitz f (directly, or through a
// drop family satisfying the drop condition).
BoundReport verify_median(const Scenario& scenario);

// |mu - m| at both median endpoints against GAP_IMPROVED and GAP_CLASSICAL.
BoundReport verify_gap(const Scenario& scenario);

// Centered tails against DROP_MEAN_TAIL and the MGF against exp(lambda^2/8)
// when the drop condition holds (any law); DROP_MEAN_TAIL_SCALED when the
// unit drop condition holds; SB_UPPER/SB_LOWER when (a, b) are given, the
// function is certified self-bounding and the law is a product.
BoundReport verify_drop_functional(const Scenario& scenario);

// Dispatches on the target kind.
BoundReport verify(const Scenario& scenario);

struct ScenarioLimits {
    std::size_t max_n{4};
    std::uint32_t max_alphabet{3};
    // Share of drop-kind scenarios drawn with a non-product joint table.
    double joint_fraction{0.5};
};

inline constexpr std::uint64_t kMaxRandomOutcomes = 4096;

// Random scenario, fully determined by (seed, limits, kind). Weights are
// unit vectors; sets are nonempty proper subsets; functions are Lipschitz
// by construction and, for the drop kind, carry the drop-infimum family.
Scenario random_scenario(std::uint64_t seed, const ScenarioLimits& limits, TargetKind kind);

// Seed of trial i in a sweep started from seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct SweepResult {
    TargetKind kind{TargetKind::set};
    std::size_t trials{0};
    std::size_t passed{0};
    std::size_t joint_scenarios{0};
    std::size_t rows{0};
    double worst_slack{0.0};
    // Largest |mu - m| and largest GAP_IMPROVED value seen (gap sweeps).
    double max_gap{0.0};
    double max_gap_bound{0.0};
    std::vector<std::uint64_t> failing_seeds;
    std::vector<std::string> failure_messages;

    bool all_pass() const noexcept { return passed == trials; }
};

// Runs `trials` random scenarios, spread over `threads` workers (0 = all
// hardware threads). Results are reduced in trial order.
SweepResult run_sweep(TargetKind kind, std::size_t trials, std::uint64_t seed, const ScenarioLimits& limits,
                      unsigned threads = 0);

}  // namespace hamconc
