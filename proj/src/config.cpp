#include "timo/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace timo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            fail(path, "unknown key \"" + item.key() + "\"");
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) fail(path, "missing required key \"" + key + "\"");
    return obj.at(key);
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path,
                 double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::uint64_t integer_at_least(const json& v, std::uint64_t minimum, const std::string& path) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        fail(path, "expected an integer >= " + std::to_string(minimum));
    }
    if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
        fail(path, "expected an integer >= " + std::to_string(minimum));
    }
    const auto value = v.get<std::uint64_t>();
    if (value < minimum) fail(path, "expected an integer >= " + std::to_string(minimum));
    return value;
}

}  // namespace

double parse_pi_expression(const json& value, const std::string& path) {
    if (value.is_number()) return value.get<double>();
    if (!value.is_string()) fail(path, "expected a number or a pi-literal string");

    std::string text = value.get<std::string>();
    text.erase(std::remove_if(text.begin(), text.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               text.end());
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (text.empty()) fail(path, "empty expression");

    const std::size_t pi_pos = text.find("pi");
    auto parse_number = [&](const std::string& s) {
        std::size_t consumed = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(s, &consumed);
        } catch (const std::exception&) {
            fail(path, "cannot parse \"" + s + "\" as a number");
        }
        if (consumed != s.size()) fail(path, "trailing characters in \"" + s + "\"");
        return parsed;
    };

    if (pi_pos == std::string::npos) return parse_number(text);

    std::string prefix = text.substr(0, pi_pos);
    std::string suffix = text.substr(pi_pos + 2);
    if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();

    double coefficient = 1.0;
    if (prefix == "-") {
        coefficient = -1.0;
    } else if (!prefix.empty() && prefix != "+") {
        coefficient = parse_number(prefix);
    }

    double divisor = 1.0;
    if (!suffix.empty()) {
        if (suffix.front() != '/') fail(path, "expected \"/<number>\" after pi");
        divisor = parse_number(suffix.substr(1));
        if (divisor == 0.0) fail(path, "division by zero");
    }
    return coefficient * std::numbers::pi / divisor;
}

namespace {

ParameterField parse_field(const json& obj, double length, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    const json& kind_value = require(obj, "kind", path);
    if (!kind_value.is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = kind_value.get<std::string>();

    if (kind == "constant") {
        reject_unknown_keys(obj, {"kind", "value"}, path);
        return ParameterField::constant(require_number(obj, "value", path), length);
    }
    if (kind == "sinusoid") {
        reject_unknown_keys(obj, {"kind", "base", "amplitude", "frequency", "phase"}, path);
        const double base = require_number(obj, "base", path);
        const double amplitude = require_number(obj, "amplitude", path);
        const double frequency =
            parse_pi_expression(require(obj, "frequency", path), path + ".frequency");
        const double phase = obj.contains("phase")
                                 ? parse_pi_expression(obj.at("phase"), path + ".phase")
                                 : 0.0;
        return ParameterField::sinusoid(base, amplitude, frequency, phase, length);
    }
    if (kind == "tabulated") {
        reject_unknown_keys(obj, {"kind", "samples"}, path);
        const json& samples = require(obj, "samples", path);
        if (!samples.is_array() || samples.size() < 2) {
            fail(path + ".samples", "expected an array of at least 2 numbers");
        }
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& v : samples) {
            if (!v.is_number()) fail(path + ".samples", "expected numbers");
            values.push_back(v.get<double>());
        }
        return ParameterField::tabulated(std::move(values), length);
    }
    fail(path + ".kind", "unknown field kind \"" + kind + "\"");
}

BeamParameters parse_beam(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, {"length", "rho", "i_rho", "k_shear", "ei", "gamma", "delta"},
                        path);
    const double length = require_number(obj, "length", path);
    if (!(length > 0.0)) fail(path + ".length", "beam length must be positive");
    return BeamParameters{parse_field(require(obj, "rho", path), length, path + ".rho"),
                          parse_field(require(obj, "i_rho", path), length, path + ".i_rho"),
                          parse_field(require(obj, "k_shear", path), length, path + ".k_shear"),
                          parse_field(require(obj, "ei", path), length, path + ".ei"),
                          parse_field(require(obj, "gamma", path), length, path + ".gamma"),
                          parse_field(require(obj, "delta", path), length, path + ".delta"),
                          length};
}

LyapunovWeights parse_weights(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, {"n0", "n1", "n2", "alpha1", "alpha2", "alpha3"}, path);
    LyapunovWeights w{require_number(obj, "n0", path), require_number(obj, "n1", path),
                      require_number(obj, "n2", path), require_number(obj, "alpha1", path),
                      require_number(obj, "alpha2", path), require_number(obj, "alpha3", path)};
    for (const double v : {w.n0, w.n1, w.n2, w.alpha1, w.alpha2, w.alpha3}) {
        if (!(v > 0.0)) fail(path, "all six weights must be strictly positive");
    }
    return w;
}

DecayGate parse_gate(const json& value, const std::string& path) {
    if (!value.is_string()) fail(path, "expected \"strict\" or \"relaxed\"");
    const std::string gate = value.get<std::string>();
    if (gate == "strict") return DecayGate::Strict;
    if (gate == "relaxed") return DecayGate::Relaxed;
    fail(path, "expected \"strict\" or \"relaxed\", got \"" + gate + "\"");
}

SearchConfig parse_search(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj,
                        {"initial", "lower_bound", "upper_bound", "max_iterations",
                         "tolerance", "seed", "gate", "grid_points"},
                        path);
    SearchConfig config;
    if (obj.contains("initial")) {
        config.initial = parse_weights(obj.at("initial"), path + ".initial");
    }
    config.lower_bound = number_or(obj, "lower_bound", path, config.lower_bound);
    config.upper_bound = number_or(obj, "upper_bound", path, config.upper_bound);
    if (!(config.lower_bound > 0.0) || !(config.upper_bound > config.lower_bound)) {
        fail(path, "bounds must satisfy 0 < lower_bound < upper_bound");
    }
    if (obj.contains("max_iterations")) {
        config.max_iterations = static_cast<std::size_t>(
            integer_at_least(obj.at("max_iterations"), 1, path + ".max_iterations"));
    }
    config.tolerance = number_or(obj, "tolerance", path, config.tolerance);
    if (!(config.tolerance > 0.0)) fail(path + ".tolerance", "must be positive");
    if (obj.contains("seed")) {
        config.seed = integer_at_least(obj.at("seed"), 0, path + ".seed");
    }
    if (obj.contains("gate")) config.gate = parse_gate(obj.at("gate"), path + ".gate");
    if (obj.contains("grid_points")) {
        config.grid_points = static_cast<std::size_t>(
            integer_at_least(obj.at("grid_points"), 2, path + ".grid_points"));
    }
    return config;
}

InitialCondition::Component parse_ic_component(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    const json& kind_value = require(obj, "kind", path);
    if (!kind_value.is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = kind_value.get<std::string>();
    InitialCondition::Component component;
    if (kind == "zero") {
        reject_unknown_keys(obj, {"kind"}, path);
        component.kind = InitialCondition::Kind::Zero;
    } else if (kind == "raised_cosine") {
        reject_unknown_keys(obj, {"kind", "scale"}, path);
        component.kind = InitialCondition::Kind::RaisedCosine;
        component.scale = number_or(obj, "scale", path, 1.0);
    } else if (kind == "tabulated") {
        reject_unknown_keys(obj, {"kind", "samples"}, path);
        component.kind = InitialCondition::Kind::Tabulated;
        const json& samples = require(obj, "samples", path);
        if (!samples.is_array() || samples.size() < 2) {
            fail(path + ".samples", "expected an array of at least 2 numbers");
        }
        for (const auto& v : samples) {
            if (!v.is_number()) fail(path + ".samples", "expected numbers");
            component.samples.push_back(v.get<double>());
        }
    } else {
        fail(path + ".kind", "unknown initial-condition kind \"" + kind + "\"");
    }
    return component;
}

InitialCondition parse_initial_condition(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    reject_unknown_keys(obj, {"z1", "z2", "z3", "z4"}, path);
    InitialCondition ic = InitialCondition::raised_cosine_default();
    const std::array<const char*, 4> keys{"z1", "z2", "z3", "z4"};
    for (std::size_t i = 0; i < 4; ++i) {
        if (obj.contains(keys[i])) {
            ic.components[i] = parse_ic_component(obj.at(keys[i]), path + "." + keys[i]);
        }
    }
    return ic;
}

json field_to_json(const ParameterField& field) {
    json out;
    if (const auto* c = std::get_if<ParameterField::Constant>(&field.repr())) {
        out["kind"] = "constant";
        out["value"] = c->value;
    } else if (const auto* s = std::get_if<ParameterField::Sinusoid>(&field.repr())) {
        out["kind"] = "sinusoid";
        out["base"] = s->base;
        out["amplitude"] = s->amplitude;
        out["frequency"] = s->frequency;
        out["phase"] = s->phase;
    } else {
        const auto& t = std::get<ParameterField::Tabulated>(field.repr());
        out["kind"] = "tabulated";
        out["samples"] = t.samples;
    }
    return out;
}

json ic_component_to_json(const InitialCondition::Component& component) {
    json out;
    switch (component.kind) {
        case InitialCondition::Kind::Zero:
            out["kind"] = "zero";
            break;
        case InitialCondition::Kind::RaisedCosine:
            out["kind"] = "raised_cosine";
            out["scale"] = component.scale;
            break;
        case InitialCondition::Kind::Tabulated:
            out["kind"] = "tabulated";
            out["samples"] = component.samples;
            break;
    }
    return out;
}

}  // namespace

RunConfig RunConfig::from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("top level: expected a JSON object");
    reject_unknown_keys(
        doc, {"beam", "weights", "search", "discretization", "initial_condition", "output"},
        "top level");

    RunConfig config{parse_beam(require(doc, "beam", "top level"), "beam"),
                     std::nullopt,
                     std::nullopt,
                     {},
                     InitialCondition::raised_cosine_default(),
                     {}};

    if (doc.contains("weights")) {
        config.weights = parse_weights(doc.at("weights"), "weights");
    }
    if (doc.contains("search")) {
        config.search = parse_search(doc.at("search"), "search");
    }
    if (doc.contains("discretization")) {
        const json& d = doc.at("discretization");
        if (!d.is_object()) fail("discretization", "expected an object");
        reject_unknown_keys(d, {"n_elements", "dt", "t_end"}, "discretization");
        if (d.contains("n_elements")) {
            config.discretization.n_elements = static_cast<std::size_t>(
                integer_at_least(d.at("n_elements"), 2, "discretization.n_elements"));
        }
        config.discretization.dt =
            number_or(d, "dt", "discretization", config.discretization.dt);
        config.discretization.t_end =
            number_or(d, "t_end", "discretization", config.discretization.t_end);
        if (!(config.discretization.dt > 0.0)) fail("discretization.dt", "must be positive");
        if (!(config.discretization.t_end >= config.discretization.dt)) {
            fail("discretization.t_end", "must be >= dt");
        }
    }
    if (doc.contains("initial_condition")) {
        config.initial_condition =
            parse_initial_condition(doc.at("initial_condition"), "initial_condition");
    }
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        if (!o.is_object()) fail("output", "expected an object");
        reject_unknown_keys(o, {"directory", "dump_system"}, "output");
        if (o.contains("directory")) {
            if (!o.at("directory").is_string()) fail("output.directory", "expected a string");
            config.output.directory = o.at("directory").get<std::string>();
        }
        if (o.contains("dump_system")) {
            if (!o.at("dump_system").is_boolean()) fail("output.dump_system", "expected a bool");
            config.output.dump_system = o.at("dump_system").get<bool>();
        }
    }
    return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("invalid JSON in ") + path + ": " + err.what());
    }
    return from_json(doc);
}

json RunConfig::to_json() const {
    json doc;
    doc["beam"]["length"] = beam.length;
    doc["beam"]["rho"] = field_to_json(beam.rho);
    doc["beam"]["i_rho"] = field_to_json(beam.i_rho);
    doc["beam"]["k_shear"] = field_to_json(beam.k_shear);
    doc["beam"]["ei"] = field_to_json(beam.ei);
    doc["beam"]["gamma"] = field_to_json(beam.gamma);
    doc["beam"]["delta"] = field_to_json(beam.delta);
    if (weights) {
        doc["weights"] = {{"n0", weights->n0},         {"n1", weights->n1},
                          {"n2", weights->n2},         {"alpha1", weights->alpha1},
                          {"alpha2", weights->alpha2}, {"alpha3", weights->alpha3}};
    }
    if (search) {
        json s;
        if (search->initial) {
            s["initial"] = {{"n0", search->initial->n0},         {"n1", search->initial->n1},
                            {"n2", search->initial->n2},         {"alpha1", search->initial->alpha1},
                            {"alpha2", search->initial->alpha2}, {"alpha3", search->initial->alpha3}};
        }
        s["lower_bound"] = search->lower_bound;
        s["upper_bound"] = search->upper_bound;
        s["max_iterations"] = search->max_iterations;
        s["tolerance"] = search->tolerance;
        s["seed"] = search->seed;
        s["gate"] = search->gate == DecayGate::Strict ? "strict" : "relaxed";
        s["grid_points"] = search->grid_points;
        doc["search"] = std::move(s);
    }
    doc["discretization"] = {{"n_elements", discretization.n_elements},
                             {"dt", discretization.dt},
                             {"t_end", discretization.t_end}};
    const std::array<const char*, 4> keys{"z1", "z2", "z3", "z4"};
    for (std::size_t i = 0; i < 4; ++i) {
        doc["initial_condition"][keys[i]] = ic_component_to_json(initial_condition.components[i]);
    }
    doc["output"] = {{"directory", output.directory}, {"dump_system", output.dump_system}};
    return doc;
}

}  // namespace timo
