#include "hamconc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hamconc/bounds.hpp"
#include "hamconc/report.hpp"
#include "hamconc/scenario_file.hpp"
#include "hamconc/verify.hpp"

namespace hamconc {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundParams {
    std::optional<double> t, rho, lambda, gap, mu, a, b, n;
};

double need(const std::optional<double>& v, const char* name, const std::string& bound) {
    if (!v) throw UsageError(bound + " needs --" + name);
    return *v;
}

// "h" selects the exponent itself; everything else is a BoundId.
double evaluate(const std::string& name, const BoundParams& p) {
    if (name == "h") return h_exponent(need(p.t, "t", name), need(p.rho, "rho", name));
    const auto id = parse_bound_id(name);
    if (!id) throw UsageError("unknown bound '" + name + "'");
    switch (*id) {
        case BoundId::MCD_SET: return mcdiarmid_set_bound(need(p.t, "t", name));
        case BoundId::SIMPLE_SET: return simple_set_bound(need(p.t, "t", name));
        case BoundId::IMPROVED_SET: return improved_set_bound(need(p.t, "t", name), need(p.rho, "rho", name));
        case BoundId::MEMBERSHIP_PRODUCT: return membership_product_bound(need(p.rho, "rho", name));
        case BoundId::MEDIAN_CLASSICAL: return median_tail_classical(need(p.t, "t", name));
        case BoundId::MEDIAN_IMPROVED: return median_tail_bound(need(p.t, "t", name), need(p.rho, "rho", name));
        case BoundId::MEAN_TAIL: return mean_tail_bound(need(p.t, "t", name));
        case BoundId::MGF: return mgf_bound(need(p.lambda, "lambda", name));
        case BoundId::SHIFTED_MEDIAN: return shifted_median_bound(need(p.t, "t", name), need(p.gap, "gap", name));
        case BoundId::GAP_CLASSICAL: return gap_bound_classical();
        case BoundId::GAP_IMPROVED: return gap_bound(need(p.rho, "rho", name));
        case BoundId::SB_UPPER:
            return sb_upper_bound(need(p.t, "t", name), need(p.mu, "mu", name), need(p.a, "a", name),
                                  need(p.b, "b", name));
        case BoundId::SB_LOWER:
            return sb_lower_bound(need(p.t, "t", name), need(p.mu, "mu", name), need(p.a, "a", name),
                                  need(p.b, "b", name));
        case BoundId::DROP_MEAN_TAIL: return drop_mean_tail_bound(need(p.t, "t", name));
        case BoundId::DROP_MEAN_TAIL_SCALED: return drop_mean_tail_scaled(need(p.t, "t", name), need(p.n, "n", name));
    }
    throw UsageError("unknown bound '" + name + "'");
}

void add_param_options(CLI::App* cmd, BoundParams& p) {
    cmd->add_option("--t", p.t, "Deviation t > 0");
    cmd->add_option("--rho", p.rho, "Mean distance to the set, rho >= 0");
    cmd->add_option("--lambda", p.lambda, "MGF argument, lambda >= 0");
    cmd->add_option("--gap", p.gap, "|m - mu| for the shifted median bound");
    cmd->add_option("--mu", p.mu, "Mean, for the self-bounding bounds");
    cmd->add_option("--a", p.a, "Self-bounding parameter a > 0");
    cmd->add_option("--b", p.b, "Self-bounding parameter b >= 0");
    cmd->add_option("--n", p.n, "Dimension n >= 1 for the scaled drop bound");
}

struct Range {
    double lo, hi;
    std::size_t steps;
};

Range parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("malformed range '" + text + "', expected a:b:steps");
    try {
        std::size_t used = 0;
        Range r{};
        r.lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("lo");
        r.hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("hi");
        const long long steps = std::stoll(parts[2], &used);
        if (used != parts[2].size() || steps < 1) throw std::invalid_argument("steps");
        r.steps = static_cast<std::size_t>(steps);
        if (r.hi < r.lo) throw std::invalid_argument("order");
        return r;
    } catch (const std::exception&) {
        throw UsageError("malformed range '" + text + "', expected a:b:steps with a <= b and steps >= 1");
    }
}

double range_point(const Range& r, std::size_t k) {
    if (r.steps == 1) return r.lo;
    return r.lo + (r.hi - r.lo) * static_cast<double>(k) / static_cast<double>(r.steps - 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

int cmd_eval_bound(const std::string& name, const BoundParams& p, std::ostream& out) {
    const double v = evaluate(name, p);
    out << "bound\t" << name << '\n';
    const std::pair<const char*, const std::optional<double>*> fields[] = {
        {"t", &p.t}, {"rho", &p.rho}, {"lambda", &p.lambda}, {"gap", &p.gap},
        {"mu", &p.mu}, {"a", &p.a}, {"b", &p.b}, {"n", &p.n}};
    for (const auto& [key, val] : fields)
        if (*val) out << key << '\t' << format_number(**val) << '\n';
    out << "value\t" << format_number(v) << '\n';
    return kExitPass;
}

int cmd_verify(const std::string& file, const std::string& format, const std::string& out_path,
               const std::optional<std::uint64_t>& seed, std::ostream& out, std::ostream& err) {
    Scenario sc = load_scenario_file(file);
    if (seed) sc.seed = *seed;
    BoundReport report;
    try {
        report = verify(sc);
    } catch (const VerificationError& e) {
        err << "error: " << e.what() << '\n';
        if (e.certificate() && !e.certificate()->witness.empty()) {
            err << "witness:";
            for (const auto& x : e.certificate()->witness) {
                err << " (";
                for (std::size_t i = 0; i < x.dimension(); ++i) err << (i ? "," : "") << x[i];
                err << ')';
            }
            if (e.certificate()->coordinate) err << " coordinate " << *e.certificate()->coordinate;
            err << '\n';
        }
        return kExitUsage;
    }
    write_output(format == "csv" ? report_to_csv(report) : report_to_json(report), out_path, out);
    if (report.all_pass()) return kExitPass;
    err << report.summary.failures << " row(s) failed:\n";
    for (const auto& r : report.rows) {
        if (r.pass) continue;
        err << "  " << to_string(r.bound_id);
        if (r.median_used) err << " median=" << *r.median_used;
        if (r.side != Side::none) err << " side=" << to_string(r.side);
        if (r.t) err << " t=" << format_number(*r.t);
        if (r.lambda) err << " lambda=" << format_number(*r.lambda);
        err << " lhs=" << format_number(r.lhs) << " bound=" << format_number(r.bound) << '\n';
    }
    return kExitRowFailed;
}

int cmd_sweep(const std::string& kind_name, std::size_t trials, std::uint64_t seed, const ScenarioLimits& limits,
              unsigned threads, std::ostream& out) {
    const auto kind = parse_target_kind(kind_name);
    if (!kind) throw UsageError("unknown kind '" + kind_name + "', expected set|median|gap|drop");
    if (trials == 0) throw UsageError("--trials must be >= 1");
    const SweepResult r = run_sweep(*kind, trials, seed, limits, threads);
    out << to_string(r.kind) << ": " << r.passed << '/' << r.trials << " pass, worst slack "
        << format_number(r.worst_slack) << ", " << r.rows << " rows";
    if (*kind == TargetKind::drop) out << ", " << r.joint_scenarios << " joint";
    if (*kind == TargetKind::gap)
        out << ", max gap " << format_number(r.max_gap) << ", max gap bound " << format_number(r.max_gap_bound);
    out << ", seed " << seed << '\n';
    for (std::size_t k = 0; k < r.failing_seeds.size(); ++k)
        out << "  failing seed " << r.failing_seeds[k] << ": " << r.failure_messages[k] << '\n';
    return r.all_pass() ? kExitPass : kExitRowFailed;
}

int cmd_curves(const std::string& bound_set, const std::string& t_range, const std::string& rho_range,
               const std::string& lambda_range, const BoundParams& fixed, const std::string& out_path,
               std::ostream& out) {
    const auto bounds = split_list(bound_set);
    if (bounds.empty()) throw UsageError("--bound-set is empty");
    for (const auto& b : bounds)
        if (b != "h" && !parse_bound_id(b)) throw UsageError("unknown bound '" + b + "'");
    const int given = !t_range.empty() + !rho_range.empty() + !lambda_range.empty();
    if (given != 1) throw UsageError("give exactly one of --t-range, --rho-range, --lambda-range");
    const char* axis = !t_range.empty() ? "t" : !rho_range.empty() ? "rho" : "lambda";
    const Range range = parse_range(!t_range.empty() ? t_range : !rho_range.empty() ? rho_range : lambda_range);

    std::string csv = axis;
    for (const auto& b : bounds) csv += "," + csv_field(b);
    csv += "\r\n";
    for (std::size_t k = 0; k < range.steps; ++k) {
        const double x = range_point(range, k);
        BoundParams p = fixed;
        if (axis[0] == 't') p.t = x;
        else if (axis[0] == 'r') p.rho = x;
        else p.lambda = x;
        csv += format_number(x);
        for (const auto& b : bounds) {
            csv += ',';
            try {
                csv += format_number(evaluate(b, p));
            } catch (const std::domain_error&) {
                // Outside the bound's domain: leave the cell empty.
            }
        }
        csv += "\r\n";
    }
    write_output(csv, out_path, out);
    return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Concentration bounds for weighted Hamming distances: evaluate, verify, sweep, tabulate"};
    app.require_subcommand(1);
    app.fallthrough();  // subcommands accept the global --seed
    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "Seed (overrides the scenario seed for verify)");

    BoundParams eval_params;
    std::string eval_name;
    auto* eval = app.add_subcommand("eval-bound", "Evaluate one bound at given parameters");
    eval->add_option("bound", eval_name, "Bound name, e.g. h, improved-set, gap-improved")->required();
    add_param_options(eval, eval_params);

    std::string scenario_path, format = "json", out_path;
    auto* ver = app.add_subcommand("verify", "Verify every applicable bound on a scenario file");
    ver->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    ver->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    ver->add_option("--out", out_path, "Output path (default stdout)");

    std::string kind = "set";
    std::size_t trials = 100;
    std::uint64_t sweep_seed = 0;
    ScenarioLimits limits;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Randomized soundness sweep");
    sweep->add_option("--kind", kind, "set|median|gap|drop");
    sweep->add_option("--trials", trials, "Number of random scenarios");
    sweep->add_option("--max-n", limits.max_n, "Largest dimension");
    sweep->add_option("--max-alphabet", limits.max_alphabet, "Largest alphabet size (>= 2)");
    sweep->add_option("--joint-fraction", limits.joint_fraction, "Share of joint tables for --kind drop");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

    std::string bound_set, t_range, rho_range, lambda_range, curves_out;
    BoundParams curve_params;
    auto* curves = app.add_subcommand("curves", "Tabulate bounds over a range as CSV");
    curves->add_option("--bound-set", bound_set, "Comma-separated bound names")->required();
    curves->add_option("--t-range", t_range, "a:b:steps");
    curves->add_option("--rho-range", rho_range, "a:b:steps");
    curves->add_option("--lambda-range", lambda_range, "a:b:steps");
    curves->add_option("--out", curves_out, "Output CSV path (default stdout)");
    add_param_options(curves, curve_params);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*eval) return cmd_eval_bound(eval_name, eval_params, out);
        if (*ver) return cmd_verify(scenario_path, format, out_path, seed, out, err);
        if (*sweep) {
            if (seed) sweep_seed = *seed;
            return cmd_sweep(kind, trials, sweep_seed, limits, threads, out);
        }
        if (*curves) return cmd_curves(bound_set, t_range, rho_range, lambda_range, curve_params, curves_out, out);
    } catch (const ScenarioFileError& e) {
        err << "scenario error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "bad parameters: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hamconc
