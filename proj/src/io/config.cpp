#include "magcouple/io/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "magcouple/core/types.hpp"
#include "magcouple/errors.hpp"
#include "magcouple/sweep/sweep.hpp"

namespace magcouple {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { raise(ErrorKind::Config, msg); }

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
    if (!obj.is_object())
        bad(fmt::format("{} must be an object", where));
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key == a;
        if (!ok)
            bad(fmt::format("unknown key '{}' in {}", key, where));
    }
}

const json& require(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        bad(fmt::format("missing key '{}' in {}", key, where));
    return *it;
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number())
        bad(fmt::format("{} must be a number", where));
    return v.get<double>();
}

double number_at(const json& obj, const char* key, const std::string& where)
{
    return number(require(obj, key, where), fmt::format("'{}' in {}", key, where));
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return std::nullopt;
    return number(*it, fmt::format("'{}' in {}", key, where));
}

std::string string_at(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (!v.is_string())
        bad(fmt::format("'{}' in {} must be a string", key, where));
    return v.get<std::string>();
}

std::size_t count_at(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        bad(fmt::format("'{}' in {} must be a non-negative integer", key, where));
    return v.get<std::size_t>();
}

GridSpec parse_grid(const json& j, const std::string& where)
{
    check_keys(j, {"start", "stop", "count"}, where);
    GridSpec g{number_at(j, "start", where), number_at(j, "stop", where), count_at(j, "count", where)};
    if (g.count == 0)
        bad(fmt::format("{} needs count >= 1", where));
    if (g.count > 1 && !(g.stop > g.start))
        bad(fmt::format("{} needs stop > start", where));
    return g;
}

json grid_json(const GridSpec& g) { return json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}}; }

std::array<std::string, 2> parse_pair(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        bad(fmt::format("{} must be a list of two mode labels", where));
    return {j[0].get<std::string>(), j[1].get<std::string>()};
}

ModeEntry parse_mode(const json& j, std::size_t index)
{
    std::string where = fmt::format("modes[{}]", index);
    check_keys(j, {"label", "omega", "material", "alpha", "beta", "lambda"}, where);
    ModeEntry m;
    m.label = string_at(j, "label", where);
    where = fmt::format("mode '{}'", m.label);
    const bool has_omega = j.contains("omega");
    const bool has_material = j.contains("material");
    if (has_omega == has_material)
        bad(fmt::format("{}: give exactly one of 'omega' or 'material'", where));
    const bool has_beta = j.contains("beta");
    const bool has_lambda = j.contains("lambda");
    if (has_beta == has_lambda)
        bad(fmt::format("{}: give exactly one of 'beta' or 'lambda'", where));
    m.omega = optional_number(j, "omega", where);
    if (has_material)
        m.material = string_at(j, "material", where);
    m.alpha = number_at(j, "alpha", where);
    m.beta = optional_number(j, "beta", where);
    m.lambda = optional_number(j, "lambda", where);
    return m;
}

}  // namespace

std::vector<double> GridSpec::points() const { return linspace(start, stop, count); }

RunConfig parse_config(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        bad(fmt::format("not a valid document: {}", e.what()));
    }
    check_keys(root, {"version", "materials", "modes", "couplings", "field_grid", "freq_grid", "thickness", "noise",
                      "fit", "freq_scale"},
               "config");
    RunConfig c;
    const json& version = require(root, "version", "config");
    if (!version.is_number_integer() || version.get<int>() != kConfigVersion)
        bad(fmt::format("unsupported config version {}, expected {}", version.dump(), kConfigVersion));

    if (auto it = root.find("materials"); it != root.end()) {
        if (!it->is_object())
            bad("'materials' must be an object");
        for (const auto& [name, m] : it->items()) {
            const std::string where = fmt::format("material '{}'", name);
            check_keys(m, {"gamma", "four_pi_m"}, where);
            KittelMaterial mat{number_at(m, "gamma", where), number_at(m, "four_pi_m", where)};
            try {
                mat.validate();
            } catch (const Error& e) {
                bad(fmt::format("{}: {}", where, e.detail()));
            }
            c.materials[name] = mat;
        }
    }

    const json& modes = require(root, "modes", "config");
    if (!modes.is_array() || modes.empty())
        bad("'modes' must be a non-empty list");
    for (std::size_t i = 0; i < modes.size(); ++i)
        c.modes.push_back(parse_mode(modes[i], i));

    if (auto it = root.find("couplings"); it != root.end()) {
        if (!it->is_array())
            bad("'couplings' must be a list");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = fmt::format("couplings[{}]", i);
            const json& cj = (*it)[i];
            check_keys(cj, {"modes", "g"}, where);
            const auto pair = parse_pair(require(cj, "modes", where), where + ".modes");
            c.couplings.push_back({pair[0], pair[1], number_at(cj, "g", where)});
        }
    }
    if (auto it = root.find("field_grid"); it != root.end())
        c.field_grid = parse_grid(*it, "field_grid");
    if (auto it = root.find("freq_grid"); it != root.end())
        c.freq_grid = parse_grid(*it, "freq_grid");

    if (auto it = root.find("thickness"); it != root.end()) {
        const std::string where = "thickness";
        check_keys(*it, {"slope", "intercept", "t_min", "t_max", "crosslink", "thicknesses", "thickness_pair",
                         "linked_pair"},
                   where);
        ThicknessBlock t;
        t.model = {number_at(*it, "slope", where), number_at(*it, "intercept", where), number_at(*it, "t_min", where),
                   number_at(*it, "t_max", where)};
        const json& cl = require(*it, "crosslink", where);
        check_keys(cl, {"m", "c"}, "thickness.crosslink");
        t.crosslink = {number_at(cl, "m", "thickness.crosslink"), number_at(cl, "c", "thickness.crosslink")};
        const json& ts = require(*it, "thicknesses", where);
        if (!ts.is_array() || ts.empty())
            bad("'thicknesses' must be a non-empty list");
        for (const auto& v : ts)
            t.thicknesses.push_back(number(v, "thicknesses entry"));
        if (auto p = it->find("thickness_pair"); p != it->end())
            t.thickness_pair = parse_pair(*p, "thickness.thickness_pair");
        if (auto p = it->find("linked_pair"); p != it->end())
            t.linked_pair = parse_pair(*p, "thickness.linked_pair");
        c.thickness = t;
    }

    if (auto it = root.find("noise"); it != root.end()) {
        check_keys(*it, {"sigma", "seed"}, "noise");
        NoiseSpec n;
        n.sigma = number_at(*it, "sigma", "noise");
        if (!(n.sigma >= 0.0))
            bad("'sigma' in noise must be >= 0");
        const json& seed = require(*it, "seed", "noise");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
            bad("'seed' in noise must be a non-negative integer");
        n.seed = seed.get<std::uint64_t>();
        c.noise = n;
    }

    if (auto it = root.find("fit"); it != root.end()) {
        check_keys(*it, {"method", "params", "n_ridges", "min_separation", "refine", "max_iterations"}, "fit");
        FitBlock f;
        if (it->contains("method"))
            f.method = string_at(*it, "method", "fit");
        if (f.method != "map" && f.method != "branches")
            bad(fmt::format("fit method '{}' is not 'map' or 'branches'", f.method));
        if (auto p = it->find("params"); p != it->end()) {
            if (!p->is_array())
                bad("'params' in fit must be a list");
            for (std::size_t i = 0; i < p->size(); ++i) {
                const std::string where = fmt::format("fit.params[{}]", i);
                const json& pj = (*p)[i];
                check_keys(pj, {"name", "lower", "upper", "initial"}, where);
                FitParamEntry e{string_at(pj, "name", where), number_at(pj, "lower", where),
                                number_at(pj, "upper", where), optional_number(pj, "initial", where)};
                if (!(e.lower <= e.upper))
                    bad(fmt::format("{}: lower bound exceeds upper bound", where));
                f.params.push_back(e);
            }
        }
        if (it->contains("n_ridges"))
            f.n_ridges = count_at(*it, "n_ridges", "fit");
        if (auto v = optional_number(*it, "min_separation", "fit"))
            f.min_separation = *v;
        if (auto r = it->find("refine"); r != it->end()) {
            if (!r->is_boolean())
                bad("'refine' in fit must be true or false");
            f.refine = r->get<bool>();
        }
        if (it->contains("max_iterations")) {
            f.max_iterations = count_at(*it, "max_iterations", "fit");
            if (f.max_iterations < 1)
                bad("'max_iterations' in fit must be >= 1");
        }
        c.fit = f;
    }
    if (auto v = optional_number(root, "freq_scale", "config"))
        c.freq_scale = *v;

    // resolve references now so every command reports bad labels up front
    (void)build_template(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::Io, fmt::format("cannot read config '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string write_config(const RunConfig& c)
{
    json root;
    root["version"] = c.version;
    if (!c.materials.empty()) {
        json mats = json::object();
        for (const auto& [name, m] : c.materials)
            mats[name] = json{{"gamma", m.gamma}, {"four_pi_m", m.four_pi_m}};
        root["materials"] = mats;
    }
    json modes = json::array();
    for (const auto& m : c.modes) {
        json mj;
        mj["label"] = m.label;
        if (m.omega)
            mj["omega"] = *m.omega;
        if (m.material)
            mj["material"] = *m.material;
        mj["alpha"] = m.alpha;
        if (m.beta)
            mj["beta"] = *m.beta;
        if (m.lambda)
            mj["lambda"] = *m.lambda;
        modes.push_back(mj);
    }
    root["modes"] = modes;
    if (!c.couplings.empty()) {
        json cs = json::array();
        for (const auto& cp : c.couplings)
            cs.push_back(json{{"modes", {cp.a, cp.b}}, {"g", cp.g}});
        root["couplings"] = cs;
    }
    if (c.field_grid)
        root["field_grid"] = grid_json(*c.field_grid);
    if (c.freq_grid)
        root["freq_grid"] = grid_json(*c.freq_grid);
    if (c.thickness) {
        const auto& t = *c.thickness;
        json tj{{"slope", t.model.slope},
                {"intercept", t.model.intercept},
                {"t_min", t.model.t_min},
                {"t_max", t.model.t_max},
                {"crosslink", {{"m", t.crosslink.m}, {"c", t.crosslink.c}}},
                {"thicknesses", t.thicknesses}};
        if (t.thickness_pair)
            tj["thickness_pair"] = {(*t.thickness_pair)[0], (*t.thickness_pair)[1]};
        if (t.linked_pair)
            tj["linked_pair"] = {(*t.linked_pair)[0], (*t.linked_pair)[1]};
        root["thickness"] = tj;
    }
    if (c.noise)
        root["noise"] = json{{"sigma", c.noise->sigma}, {"seed", c.noise->seed}};
    if (c.fit) {
        const auto& f = *c.fit;
        json params = json::array();
        for (const auto& p : f.params) {
            json pj{{"name", p.name}, {"lower", p.lower}, {"upper", p.upper}};
            if (p.initial)
                pj["initial"] = *p.initial;
            params.push_back(pj);
        }
        root["fit"] = json{{"method", f.method},
                           {"params", params},
                           {"n_ridges", f.n_ridges},
                           {"min_separation", f.min_separation},
                           {"refine", f.refine},
                           {"max_iterations", f.max_iterations}};
    }
    root["freq_scale"] = c.freq_scale;
    return root.dump(2) + "\n";
}

KittelMaterial resolve_material(const RunConfig& config, const std::string& name)
{
    if (auto it = config.materials.find(name); it != config.materials.end())
        return it->second;
    if (name == "yig")
        return kYig;
    if (name == "permalloy")
        return kPermalloy;
    bad(fmt::format("unknown material key '{}'", name));
}

std::size_t mode_index(const RunConfig& config, const std::string& label)
{
    for (std::size_t i = 0; i < config.modes.size(); ++i)
        if (config.modes[i].label == label)
            return i;
    bad(fmt::format("unknown mode label '{}'", label));
}

SystemTemplate build_template(const RunConfig& config)
{
    SystemTemplate t;
    for (std::size_t i = 0; i < config.modes.size(); ++i) {
        const ModeEntry& m = config.modes[i];
        for (std::size_t k = 0; k < i; ++k)
            if (config.modes[k].label == m.label)
                bad(fmt::format("duplicate mode label '{}'", m.label));
        TemplateMode tm;
        tm.spec.label = m.label;
        tm.spec.alpha = m.alpha;
        tm.spec.beta = m.beta ? *m.beta : lambda_to_beta(*m.lambda);
        if (m.omega)
            tm.spec.omega = *m.omega;
        else
            tm.material = resolve_material(config, *m.material);
        t.modes.push_back(tm);
    }
    for (const auto& c : config.couplings) {
        const std::size_t a = mode_index(config, c.a);
        const std::size_t b = mode_index(config, c.b);
        if (a == b)
            bad(fmt::format("coupling of mode '{}' to itself", c.a));
        if (t.coupling(a, b) != 0.0)
            bad(fmt::format("coupling '{}'-'{}' listed twice", c.a, c.b));
        t.couplings.push_back({a, b, c.g});
    }
    try {
        t.validate();
    } catch (const Error& e) {
        bad(e.detail());
    }
    return t;
}

SweepCouplings sweep_couplings(const RunConfig& config)
{
    SweepCouplings pairs;
    if (config.thickness && config.thickness->thickness_pair) {
        const auto& p = *config.thickness->thickness_pair;
        pairs.thickness_pair = {mode_index(config, p[0]), mode_index(config, p[1])};
    }
    if (config.thickness && config.thickness->linked_pair) {
        const auto& p = *config.thickness->linked_pair;
        pairs.linked_pair = {mode_index(config, p[0]), mode_index(config, p[1])};
    }
    const std::size_t n = config.modes.size();
    for (auto p : {pairs.thickness_pair, pairs.linked_pair})
        if (p.first >= n || p.second >= n)
            bad("thickness sweep needs the canonical three-mode layout or explicit pairs");
    return pairs;
}

}  // namespace magcouple
