#include "hamconc/scenario_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hamconc {

namespace {

using json = nlohmann::json;

const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ScenarioFileError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ScenarioFileError(path + "." + key, "missing required key");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioFileError(path, "expected a number");
    return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ScenarioFileError(path, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
    if (!v.is_array()) throw ScenarioFileError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

std::vector<Point> points(const json& set, const FiniteSpace& space, const std::string& path) {
    const json& pts = member(set, "points", path);
    if (!pts.is_array()) throw ScenarioFileError(path + ".points", "expected an array of points");
    std::vector<Point> out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string p = path + ".points[" + std::to_string(k) + "]";
        if (!pts[k].is_array()) throw ScenarioFileError(p, "expected an array of symbol indices");
        Point x;
        for (std::size_t i = 0; i < pts[k].size(); ++i)
            x.symbols.push_back(static_cast<Symbol>(count(pts[k][i], p + "[" + std::to_string(i) + "]")));
        if (!space.contains(x)) throw ScenarioFileError(p, "point is not in the space");
        out.push_back(std::move(x));
    }
    if (out.empty()) throw ScenarioFileError(path + ".points", "set must be nonempty");
    return out;
}

Functional functional(const json& spec, const FiniteSpace& space, const AlphaWeights& alpha,
                      const std::string& path) {
    const json& type = member(spec, "type", path);
    if (type == "table") {
        auto values = numbers(member(spec, "values", path), path + ".values");
        if (values.size() != space.outcome_count())
            throw ScenarioFileError(path + ".values", "expected one value per outcome (" +
                                                          std::to_string(space.outcome_count()) + ")");
        return Functional::table(space, std::move(values));
    }
    if (type == "weighted_sum") {
        auto c = numbers(member(spec, "coefficients", path), path + ".coefficients");
        if (c.size() != space.dimension())
            throw ScenarioFileError(path + ".coefficients", "expected one coefficient per coordinate");
        return Functional::weighted_sum(std::move(c));
    }
    if (type == "distance_to_set") {
        return Functional::distance_to(alpha, SetSpec::points(points(member(spec, "set", path), space, path + ".set")),
                                       space);
    }
    throw ScenarioFileError(path + ".type", "expected \"table\", \"weighted_sum\" or \"distance_to_set\"");
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioFileError("$", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioFileError("$", "expected an object");

    // space
    const json& sizes_json = member(member(doc, "space", "$"), "alphabet_sizes", "$.space");
    if (!sizes_json.is_array() || sizes_json.empty())
        throw ScenarioFileError("$.space.alphabet_sizes", "expected a nonempty array");
    std::vector<std::uint32_t> sizes;
    for (std::size_t i = 0; i < sizes_json.size(); ++i) {
        const auto k = count(sizes_json[i], "$.space.alphabet_sizes[" + std::to_string(i) + "]");
        if (k == 0) throw ScenarioFileError("$.space.alphabet_sizes[" + std::to_string(i) + "]", "must be >= 1");
        sizes.push_back(static_cast<std::uint32_t>(k));
    }
    FiniteSpace space(sizes);

    // caps
    Caps caps;
    if (auto it = doc.find("caps"); it != doc.end()) {
        if (auto c = it->find("enumeration"); c != it->end()) caps.enumeration = count(*c, "$.caps.enumeration");
        if (auto c = it->find("lipschitz_pairs"); c != it->end())
            caps.lipschitz.max_exhaustive_pairs = count(*c, "$.caps.lipschitz_pairs");
        if (auto c = it->find("lipschitz_samples"); c != it->end())
            caps.lipschitz.sample_budget = count(*c, "$.caps.lipschitz_samples");
    }
    if (space.outcome_count() > caps.enumeration)
        throw ScenarioFileError("$.space.alphabet_sizes", "outcome count " + std::to_string(space.outcome_count()) +
                                                              " exceeds enumeration cap " +
                                                              std::to_string(caps.enumeration));

    // distribution
    const json& dj = member(doc, "distribution", "$");
    const json& kind = member(dj, "kind", "$.distribution");
    std::optional<Distribution> dist;
    try {
        if (kind == "product") {
            const json& pm = member(dj, "pmfs", "$.distribution");
            if (!pm.is_array()) throw ScenarioFileError("$.distribution.pmfs", "expected an array of pmfs");
            std::vector<std::vector<double>> pmfs;
            for (std::size_t i = 0; i < pm.size(); ++i)
                pmfs.push_back(numbers(pm[i], "$.distribution.pmfs[" + std::to_string(i) + "]"));
            dist = Distribution::product(space, std::move(pmfs));
        } else if (kind == "uniform") {
            dist = Distribution::uniform(space);
        } else if (kind == "joint") {
            dist = Distribution::joint(space, numbers(member(dj, "joint_table", "$.distribution"),
                                                      "$.distribution.joint_table"));
        } else {
            throw ScenarioFileError("$.distribution.kind", "expected \"product\", \"uniform\" or \"joint\"");
        }
    } catch (const std::invalid_argument& e) {
        throw ScenarioFileError("$.distribution", e.what());
    }

    // alpha
    const json& aj = member(doc, "alpha", "$");
    std::optional<AlphaWeights> alpha;
    try {
        alpha.emplace(numbers(member(aj, "weights", "$.alpha"), "$.alpha.weights"));
    } catch (const std::invalid_argument& e) {
        throw ScenarioFileError("$.alpha.weights", e.what());
    }
    if (alpha->dimension() != space.dimension())
        throw ScenarioFileError("$.alpha.weights", "expected one weight per coordinate");
    bool normalize_flag = false;
    if (auto it = aj.find("normalize"); it != aj.end()) {
        if (!it->is_boolean()) throw ScenarioFileError("$.alpha.normalize", "expected a boolean");
        normalize_flag = it->get<bool>();
    }
    if (normalize_flag) {
        try {
            alpha = normalize(*alpha);
        } catch (const std::invalid_argument& e) {
            throw ScenarioFileError("$.alpha.weights", e.what());
        }
    }
    if (!alpha->normalized())
        throw ScenarioFileError("$.alpha.weights", "theorems require ||alpha||=1 (set \"normalize\": true)");

    // target
    const json& tj = member(doc, "target", "$");
    const json& tk = member(tj, "kind", "$.target");
    const auto target_kind = tk.is_string() ? parse_target_kind(tk.get<std::string>()) : std::nullopt;
    if (!target_kind) throw ScenarioFileError("$.target.kind", "expected \"set\", \"median\", \"gap\" or \"drop\"");

    Target target = SetTarget{SetSpec::whole_space()};
    if (*target_kind == TargetKind::set) {
        target = SetTarget{SetSpec::points(points(member(tj, "set", "$.target"), space, "$.target.set"))};
    } else {
        Functional f = functional(member(tj, "functional", "$.target"), space, *alpha, "$.target.functional");
        if (auto it = tj.find("drop_family"); it != tj.end()) {
            if (*it != "infimum") throw ScenarioFileError("$.target.drop_family", "expected \"infimum\"");
            f = drop_infimum_family(f, space);
        }
        if (auto it = tj.find("self_bounding"); it != tj.end()) {
            SelfBoundingParams p{number(member(*it, "a", "$.target.self_bounding"), "$.target.self_bounding.a"),
                                 number(member(*it, "b", "$.target.self_bounding"), "$.target.self_bounding.b")};
            try {
                f = f.with_self_bounding(p);
            } catch (const std::invalid_argument& e) {
                throw ScenarioFileError("$.target.self_bounding", e.what());
            }
        }
        switch (*target_kind) {
            case TargetKind::median: target = MedianTarget{std::move(f)}; break;
            case TargetKind::gap: target = GapTarget{std::move(f)}; break;
            default:
                if (!f.has_drop_family())
                    throw ScenarioFileError("$.target.drop_family", "drop targets need a drop family");
                target = MeanTarget{std::move(f)};
        }
    }

    // grids
    std::vector<double> t_grid = default_t_grid(*alpha);
    std::vector<double> lambda_grid = default_lambda_grid();
    if (auto it = doc.find("grids"); it != doc.end()) {
        if (auto g = it->find("t"); g != it->end()) t_grid = numbers(*g, "$.grids.t");
        if (auto g = it->find("lambda"); g != it->end()) lambda_grid = numbers(*g, "$.grids.lambda");
    }
    auto check_grid = [](const std::vector<double>& g, const std::string& path, bool positive) {
        if (g.empty()) throw ScenarioFileError(path, "grid must be nonempty");
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (positive ? !(g[k] > 0.0) : !(g[k] >= 0.0))
                throw ScenarioFileError(path, positive ? "grid values must be > 0" : "grid values must be >= 0");
            if (k > 0 && !(g[k] > g[k - 1])) throw ScenarioFileError(path, "grid must be strictly increasing");
        }
    };
    check_grid(t_grid, "$.grids.t", true);
    check_grid(lambda_grid, "$.grids.lambda", false);

    std::uint64_t seed = 0;
    if (auto it = doc.find("seed"); it != doc.end()) seed = count(*it, "$.seed");

    return Scenario{std::move(space), std::move(*dist), std::move(*alpha), std::move(target),
                    std::move(t_grid), std::move(lambda_grid), seed, true, caps};
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioFileError(path, "cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace hamconc
