// report.hpp
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hamconc/verify.hpp"

namespace hamconc {

// 17 significant digits ("%.17g"): round-trips every double. Non-finite
// values format as "null".
std::string format_number(double v);

// RFC 4180 field: quoted when it holds a comma, quote, CR or LF, with
// embedded quotes doubled.
std::string csv_field(std::string_view s);

/// Minimal pretty-printing JSON emitter. Numbers go through format_number so
/// that the text, and therefore any hash of it, is reproducible.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null();
    JsonWriter& numbers(const std::vector<double>& vs);
    // Splices an already serialized JSON value, re-indented to the current depth.
    JsonWriter& raw(std::string_view json);

    const std::string& str() const noexcept { return out_; }

private:
    void prefix();
    void open(char c);
    void close(char c);
    void write_string(std::string_view s);

    std::string out_;
    std::vector<bool> has_items_;
    bool after_key_{false};
};

// Deterministic serialization of everything that determines a report:
// space, law, weights, the target tabulated over the space (set members
// by rank, function and drop-family values by rank), grids and seed.
std::string scenario_canonical_json(const Scenario& scenario);

// "fnv1a64:" + 16 hex digits of the FNV-1a hash of the text.
std::string fingerprint_of(std::string_view canonical);

// {fingerprint, rng, scenario, rows[], summary}
std::string report_to_json(const BoundReport& report);

// Header plus one line per row; same columns and number formatting as the
// JSON rows.
std::string report_to_csv(const BoundReport& report);

inline constexpr const char* kCsvHeader =
    "target_kind,median_used,side,t,lambda,lhs,bound_id,bound,slack,pass,vacuous";

}  // namespace hamconc
