// bounds.hpp
//
// Closed-form tail, moment and gap bounds for functions of independent (or,
// for the drop-condition family, dependent) coordinates under a unit weight
// vector alpha. All functions are pure. Tail bounds are returned uncapped:
// values above 1 are valid but vacuous, and flagging them is left to callers.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamconc {

enum class BoundId {
    MCD_SET,                // exp(-t^2/2), classical set inequality
    IMPROVED_SET,           // exp(-h(t, rho))
    SIMPLE_SET,             // exp(-t^2)
    MEMBERSHIP_PRODUCT,     // exp(-2 rho^2), bounds P(X not in A) P(X in A)
    MEDIAN_CLASSICAL,       // 2 exp(-t^2/2)
    MEDIAN_IMPROVED,        // 2 exp(-h(t, rho))
    MEAN_TAIL,              // exp(-2 t^2)
    MGF,                    // exp(lambda^2/8)
    SHIFTED_MEDIAN,         // exp(-2 (t - |m - mu|)^2), t > |m - mu|
    GAP_CLASSICAL,          // sqrt(2 pi)
    GAP_IMPROVED,           // (2 rho + sqrt(pi/2)) exp(-2 rho^2)
    SB_UPPER,               // exp(-t^2 / (2 (a mu + b + a t)))
    SB_LOWER,               // exp(-t^2 / (2 (a mu + b + t/3)))
    DROP_MEAN_TAIL,         // exp(-2 t^2)
    DROP_MEAN_TAIL_SCALED,  // exp(-2 t^2 / n)
};

inline constexpr BoundId kAllBoundIds[] = {
    BoundId::MCD_SET,         BoundId::IMPROVED_SET,  BoundId::SIMPLE_SET,     BoundId::MEMBERSHIP_PRODUCT,
    BoundId::MEDIAN_CLASSICAL, BoundId::MEDIAN_IMPROVED, BoundId::MEAN_TAIL,     BoundId::MGF,
    BoundId::SHIFTED_MEDIAN,  BoundId::GAP_CLASSICAL, BoundId::GAP_IMPROVED,   BoundId::SB_UPPER,
    BoundId::SB_LOWER,        BoundId::DROP_MEAN_TAIL, BoundId::DROP_MEAN_TAIL_SCALED,
};

// "MCD_SET" etc.
std::string_view to_string(BoundId id) noexcept;
// Accepts the enum spelling or the kebab-case CLI name ("mcd-set").
std::optional<BoundId> parse_bound_id(std::string_view name);
// Kebab-case CLI name ("improved-set").
std::string cli_name(BoundId id);

/// Piecewise exponent of the improved set inequality:
///   h(t) = 2 rho^2                    for 0 < t < rho
///   h(t) = t^2 + (t - 2 rho)^2        for t >= rho
/// Continuous at t = rho. Throws std::domain_error for t <= 0 or rho < 0.
double h_exponent(double t, double rho);

double mcdiarmid_set_bound(double t);
double simple_set_bound(double t);
double improved_set_bound(double t, double rho);
double membership_product_bound(double rho);

double median_tail_bound(double t, double rho);
double median_tail_classical(double t);

double mean_tail_bound(double t);
double mgf_bound(double lambda);
// Only valid for t > gap >= 0; throws std::domain_error("outside validity region") otherwise.
double shifted_median_bound(double t, double gap);

double gap_bound(double rho);
double gap_bound_classical();

double sb_upper_bound(double t, double mu, double a, double b);
double sb_lower_bound(double t, double mu, double a, double b);

double drop_mean_tail_bound(double t);
double drop_mean_tail_scaled(double t, double n);

// Location and value of max over rho >= 0 of gap_bound, from the stationary
// point 2 - 8 rho^2 - 4 rho sqrt(pi/2) = 0.
struct GapMaximum {
    double rho;
    double value;
};
GapMaximum gap_bound_maximum();

}  // namespace hamconc
