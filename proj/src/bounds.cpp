#include "hamconc/bounds.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hamconc {

namespace {

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("t must be a positive finite number");
}

void require_rho(double rho) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::domain_error("rho must be a finite number >= 0");
}

const double kSqrtHalfPi = std::sqrt(std::numbers::pi / 2.0);

}  // namespace

std::string_view to_string(BoundId id) noexcept {
    switch (id) {
        case BoundId::MCD_SET: return "MCD_SET";
        case BoundId::IMPROVED_SET: return "IMPROVED_SET";
        case BoundId::SIMPLE_SET: return "SIMPLE_SET";
        case BoundId::MEMBERSHIP_PRODUCT: return "MEMBERSHIP_PRODUCT";
        case BoundId::MEDIAN_CLASSICAL: return "MEDIAN_CLASSICAL";
        case BoundId::MEDIAN_IMPROVED: return "MEDIAN_IMPROVED";
        case BoundId::MEAN_TAIL: return "MEAN_TAIL";
        case BoundId::MGF: return "MGF";
        case BoundId::SHIFTED_MEDIAN: return "SHIFTED_MEDIAN";
        case BoundId::GAP_CLASSICAL: return "GAP_CLASSICAL";
        case BoundId::GAP_IMPROVED: return "GAP_IMPROVED";
        case BoundId::SB_UPPER: return "SB_UPPER";
        case BoundId::SB_LOWER: return "SB_LOWER";
        case BoundId::DROP_MEAN_TAIL: return "DROP_MEAN_TAIL";
        case BoundId::DROP_MEAN_TAIL_SCALED: return "DROP_MEAN_TAIL_SCALED";
    }
    return "?";
}

std::string cli_name(BoundId id) {
    std::string s(to_string(id));
    for (auto& c : s) c = (c == '_') ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::optional<BoundId> parse_bound_id(std::string_view name) {
    for (BoundId id : kAllBoundIds)
        if (name == to_string(id) || name == cli_name(id)) return id;
    return std::nullopt;
}

double h_exponent(double t, double rho) {
    require_positive_t(t);
    require_rho(rho);
    if (t < rho) return 2.0 * rho * rho;
    const double u = t - 2.0 * rho;
    return t * t + u * u;
}

double mcdiarmid_set_bound(double t) {
    require_positive_t(t);
    return std::exp(-0.5 * t * t);
}

double simple_set_bound(double t) {
    require_positive_t(t);
    return std::exp(-t * t);
}

double improved_set_bound(double t, double rho) { return std::exp(-h_exponent(t, rho)); }

double membership_product_bound(double rho) {
    require_rho(rho);
    return std::exp(-2.0 * rho * rho);
}

double median_tail_bound(double t, double rho) { return 2.0 * improved_set_bound(t, rho); }

double median_tail_classical(double t) { return 2.0 * mcdiarmid_set_bound(t); }

double mean_tail_bound(double t) {
    require_positive_t(t);
    return std::exp(-2.0 * t * t);
}

double mgf_bound(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::domain_error("lambda must be a finite number >= 0");
    return std::exp(lambda * lambda / 8.0);
}

double shifted_median_bound(double t, double gap) {
    require_positive_t(t);
    if (!(gap >= 0.0)) throw std::domain_error("gap must be >= 0");
    if (!(t > gap)) throw std::domain_error("outside validity region: shifted median bound needs t > |m - mu|");
    const double u = t - gap;
    return std::exp(-2.0 * u * u);
}

double gap_bound(double rho) {
    require_rho(rho);
    return (2.0 * rho + kSqrtHalfPi) * std::exp(-2.0 * rho * rho);
}

double gap_bound_classical() { return std::sqrt(2.0 * std::numbers::pi); }

double sb_upper_bound(double t, double mu, double a, double b) {
    require_positive_t(t);
    const double denom = a * mu + b + a * t;
    if (!(a > 0.0) || !(b >= 0.0) || !(mu >= 0.0) || !(denom > 0.0))
        throw std::domain_error("self-bounding bound needs a > 0, b >= 0, mu >= 0");
    return std::exp(-t * t / (2.0 * denom));
}

double sb_lower_bound(double t, double mu, double a, double b) {
    require_positive_t(t);
    const double denom = a * mu + b + t / 3.0;
    if (!(a > 0.0) || !(b >= 0.0) || !(mu >= 0.0) || !(denom > 0.0))
        throw std::domain_error("self-bounding bound needs a > 0, b >= 0, mu >= 0");
    return std::exp(-t * t / (2.0 * denom));
}

double drop_mean_tail_bound(double t) { return mean_tail_bound(t); }

double drop_mean_tail_scaled(double t, double n) {
    require_positive_t(t);
    if (!(n >= 1.0)) throw std::domain_error("n must be >= 1");
    return std::exp(-2.0 * t * t / n);
}

GapMaximum gap_bound_maximum() {
    // Positive root of 8 rho^2 + 4 sqrt(pi/2) rho - 2 = 0.
    const double p = 4.0 * kSqrtHalfPi;
    const double rho = (-p + std::sqrt(p * p + 64.0)) / 16.0;
    return {rho, gap_bound(rho)};
}

}  // namespace hamconc
