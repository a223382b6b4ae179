#include "hamconc/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hamconc {

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

void JsonWriter::prefix() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!has_items_.empty()) {
        if (has_items_.back()) out_ += ',';
        has_items_.back() = true;
        out_ += '\n';
        out_.append(2 * has_items_.size(), ' ');
    }
}

void JsonWriter::open(char c) {
    prefix();
    out_ += c;
    has_items_.push_back(false);
}

void JsonWriter::close(char c) {
    if (has_items_.empty()) throw std::logic_error("JsonWriter: unbalanced close");
    const bool any = has_items_.back();
    has_items_.pop_back();
    if (any) {
        out_ += '\n';
        out_.append(2 * has_items_.size(), ' ');
    }
    out_ += c;
    if (has_items_.empty()) out_ += '\n';
}

JsonWriter& JsonWriter::begin_object() { open('{'); return *this; }
JsonWriter& JsonWriter::end_object() { close('}'); return *this; }
JsonWriter& JsonWriter::begin_array() { open('['); return *this; }
JsonWriter& JsonWriter::end_array() { close(']'); return *this; }

JsonWriter& JsonWriter::key(std::string_view k) {
    prefix();
    write_string(k);
    out_ += ": ";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::raw(std::string_view json) {
    prefix();
    while (!json.empty() && json.back() == '\n') json.remove_suffix(1);
    for (char c : json) {
        out_ += c;
        if (c == '\n') out_.append(2 * has_items_.size(), ' ');
    }
    if (has_items_.empty()) out_ += '\n';
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    prefix();
    out_ += format_number(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    prefix();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    prefix();
    write_string(s);
    return *this;
}

void JsonWriter::write_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_ += c;
                }
        }
    }
    out_ += '"';
}

JsonWriter& JsonWriter::null() {
    prefix();
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::numbers(const std::vector<double>& vs) {
    begin_array();
    for (double v : vs) value(v);
    return end_array();
}

namespace {

std::vector<double> tabulate(const Functional& f, const FiniteSpace& space) {
    std::vector<double> out;
    out.reserve(space.outcome_count());
    Point x(std::vector<Symbol>(space.dimension(), 0));
    do out.push_back(f(x));
    while (space.advance(x));
    return out;
}

void write_functional(JsonWriter& w, const Functional& f, const FiniteSpace& space) {
    w.key("values").numbers(tabulate(f, space));
    w.key("drop_family");
    if (f.has_drop_family()) {
        w.begin_array();
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            const FiniteSpace reduced = space.without(i);
            std::vector<double> row;
            Point y(std::vector<Symbol>(reduced.dimension(), 0));
            do row.push_back(f.drop(i, y));
            while (reduced.advance(y));
            w.numbers(row);
        }
        w.end_array();
    } else {
        w.null();
    }
    w.key("self_bounding");
    if (f.self_bounding()) {
        w.begin_object().key("a").value(f.self_bounding()->a).key("b").value(f.self_bounding()->b).end_object();
    } else {
        w.null();
    }
}

void write_optional(JsonWriter& w, const std::optional<double>& v) {
    if (v) w.value(*v);
    else w.null();
}

}  // namespace

std::string scenario_canonical_json(const Scenario& sc) {
    JsonWriter w;
    w.begin_object();
    w.key("space").begin_object().key("alphabet_sizes").begin_array();
    for (auto k : sc.space.alphabet_sizes()) w.value(static_cast<std::uint64_t>(k));
    w.end_array().end_object();

    w.key("distribution").begin_object();
    if (sc.dist.is_product()) {
        w.key("kind").value("product").key("pmfs").begin_array();
        for (const auto& pmf : sc.dist.pmfs()) w.numbers(pmf);
        w.end_array();
    } else {
        w.key("kind").value("joint").key("joint_table").numbers(sc.dist.table());
    }
    w.end_object();

    w.key("alpha").begin_object().key("weights").numbers({sc.alpha.weights().begin(), sc.alpha.weights().end()});
    w.end_object();

    w.key("target").begin_object().key("kind").value(to_string(sc.kind()));
    std::visit(
        [&](const auto& target) {
            using T = std::decay_t<decltype(target)>;
            if constexpr (std::is_same_v<T, SetTarget>) {
                w.key("members").begin_array();
                for (const auto& y : target.set.members(sc.space, sc.caps.enumeration))
                    w.value(sc.space.rank(y));
                w.end_array();
            } else {
                write_functional(w, target.f, sc.space);
            }
        },
        sc.target);
    w.end_object();

    w.key("grids").begin_object().key("t").numbers(sc.t_grid).key("lambda").numbers(sc.lambda_grid).end_object();
    w.key("insert_derived_t").value(sc.insert_derived_t);
    w.key("seed").value(sc.seed);
    w.end_object();
    return w.str();
}

std::string fingerprint_of(std::string_view canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_to_json(const BoundReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("fingerprint").value(report.fingerprint);
    w.key("rng").value(kRngAlgorithm);
    w.key("scenario").raw(report.scenario_json);
    w.key("rows").begin_array();
    for (const auto& r : report.rows) {
        w.begin_object();
        w.key("target_kind").value(to_string(r.target_kind));
        w.key("median_used");
        if (r.median_used) w.value(*r.median_used);
        else w.null();
        w.key("side");
        if (r.side == Side::none) w.null();
        else w.value(to_string(r.side));
        w.key("t");
        write_optional(w, r.t);
        w.key("lambda");
        write_optional(w, r.lambda);
        w.key("lhs").value(r.lhs);
        w.key("bound_id").value(to_string(r.bound_id));
        w.key("bound").value(r.bound);
        w.key("slack").value(r.slack);
        w.key("pass").value(r.pass);
        w.key("vacuous").value(r.vacuous);
        w.end_object();
    }
    w.end_array();

    const auto& s = report.summary;
    w.key("summary").begin_object();
    w.key("all_pass").value(report.all_pass());
    w.key("rows").value(static_cast<std::uint64_t>(s.rows));
    w.key("failures").value(static_cast<std::uint64_t>(s.failures));
    w.key("worst_slack").begin_object();
    for (const auto& [id, slack] : s.worst_slack) w.key(to_string(id)).value(slack);
    w.end_object();
    w.key("p_in");
    write_optional(w, s.p_in);
    w.key("rho");
    write_optional(w, s.rho);
    w.key("mean");
    write_optional(w, s.mean);
    w.key("median_lo");
    write_optional(w, s.median_lo);
    w.key("median_hi");
    write_optional(w, s.median_hi);
    w.key("medians").begin_array();
    for (const auto& m : s.medians) {
        w.begin_object();
        w.key("which").value(m.which);
        w.key("m").value(m.m);
        w.key("rho").value(m.rho);
        w.key("rho_superlevel").value(m.rho_superlevel);
        w.key("p_sublevel").value(m.p_sublevel);
        w.key("gap").value(m.gap);
        w.end_object();
    }
    w.end_array();
    w.key("certification").begin_array();
    for (const auto& c : s.certification) w.value(c);
    w.end_array();
    w.end_object();
    w.end_object();

    return w.str();
}

std::string report_to_csv(const BoundReport& report) {
    std::string out = kCsvHeader;
    out += "\r\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : report.rows) {
        out += csv_field(to_string(r.target_kind));
        out += ',';
        out += csv_field(r.median_used.value_or(""));
        out += ',';
        out += r.side == Side::none ? "" : to_string(r.side);
        out += ',';
        out += opt(r.t);
        out += ',';
        out += opt(r.lambda);
        out += ',';
        out += format_number(r.lhs);
        out += ',';
        out += csv_field(to_string(r.bound_id));
        out += ',';
        out += format_number(r.bound);
        out += ',';
        out += format_number(r.slack);
        out += ',';
        out += r.pass ? "true" : "false";
        out += ',';
        out += r.vacuous ? "true" : "false";
        out += "\r\n";
    }
    return out;
}

}  // namespace hamconc
