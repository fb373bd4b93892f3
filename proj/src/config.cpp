#include "fraccol/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fraccol/errors.hpp"

namespace fraccol {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
    throw DomainError("config: " + what);
}

const json& require(const json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end()) schema_error(std::string(where) + ": missing required key \"" + key + "\"");
    return *it;
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) schema_error(std::string(what) + " must be a number");
    return j.get<double>();
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) schema_error(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) schema_error(std::string(what) + " must be a string");
    return j.get<std::string>();
}

CoefficientFn parse_coefficient(const json& j, const char* name) {
    if (j.is_number()) return CoefficientFn::constant(j.get<double>());
    if (!j.is_object())
        schema_error(std::string("coefficient ") + name + " must be a number or an object");
    const std::string kind = as_string(require(j, "kind", name), "coefficient kind");
    if (kind == "constant") return CoefficientFn::constant(as_number(require(j, "value", name), "value"));
    if (kind == "linear")
        return CoefficientFn::linear(as_number(require(j, "intercept", name), "intercept"),
                                     as_number(require(j, "slope", name), "slope"));
    if (kind == "sine")
        return CoefficientFn::sine(as_number(require(j, "offset", name), "offset"),
                                   as_number(require(j, "amplitude", name), "amplitude"),
                                   as_number(require(j, "frequency", name), "frequency"));
    if (kind == "polynomial") {
        const json& c = require(j, "coefficients", name);
        if (!c.is_array() || c.empty())
            schema_error("polynomial coefficients must be a nonempty array");
        std::vector<double> coeffs;
        for (const auto& v : c) coeffs.push_back(as_number(v, "polynomial coefficient"));
        return CoefficientFn::polynomial(std::move(coeffs));
    }
    schema_error(std::string("unknown coefficient kind \"") + kind + "\" for " + name);
}

CollocationRule parse_rule(const json& top) {
    const int m = as_int(require(top, "m", "config"), "m");
    const auto it = top.find("points");
    if (it == top.end() || it->is_string()) {
        const std::string name = it == top.end() ? "chebyshev" : it->get<std::string>();
        return make_points(parse_point_family(name), m);
    }
    if (it->is_array()) {
        std::vector<double> pts;
        for (const auto& v : *it) pts.push_back(as_number(v, "collocation point"));
        if (static_cast<int>(pts.size()) != m)
            schema_error("points array length must equal m");
        return make_custom_points(pts);
    }
    schema_error("points must be a family name or an array of reals");
}

SourceSpec parse_source(const json& j) {
    SourceSpec spec;
    const std::string kind = as_string(require(j, "kind", "source"), "source.kind");
    if (kind == "zero") {
        spec.kind = SourceSpec::Kind::zero;
    } else if (kind == "manufactured_sin_poly") {
        spec.kind = SourceSpec::Kind::manufactured_sin_poly;
        spec.degree = as_int(require(j, "degree", "source"), "source.degree");
        if (spec.degree < 1) schema_error("source.degree must be >= 1");
    } else {
        schema_error("unknown source kind \"" + kind + "\"");
    }
    return spec;
}

InitialSpec parse_initial(const json& j) {
    InitialSpec spec;
    const std::string kind = as_string(require(j, "kind", "initial"), "initial.kind");
    if (kind == "zero") {
        spec.kind = InitialSpec::Kind::zero;
    } else if (kind == "sine") {
        spec.kind = InitialSpec::Kind::sine;
        spec.amplitude = as_number(require(j, "amplitude", "initial"), "initial.amplitude");
        spec.frequency = as_int(require(j, "frequency", "initial"), "initial.frequency");
    } else {
        schema_error("unknown initial kind \"" + kind + "\"");
    }
    return spec;
}

SemilinearSpec parse_semilinear(const json& j) {
    SemilinearSpec spec;
    const std::string kind = as_string(require(j, "kind", "semilinear"), "semilinear.kind");
    if (kind == "sin_coupling") {
        spec.kind = SemilinearSpec::Kind::sin_coupling;
        spec.degree = as_int(require(j, "degree", "semilinear"), "semilinear.degree");
    } else if (kind == "sin_forcing") {
        spec.kind = SemilinearSpec::Kind::sin_forcing;
    } else {
        schema_error("unknown semilinear kind \"" + kind + "\"");
    }
    spec.amplitude = as_number(require(j, "amplitude", "semilinear"), "semilinear.amplitude");
    if (j.contains("mu")) spec.mu = as_number(j.at("mu"), "semilinear.mu");
    return spec;
}

}  // namespace

ProblemConfig parse_problem_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        schema_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) schema_error("top level must be an object");

    ProblemConfig cfg;
    cfg.alpha = as_number(require(j, "alpha", "config"), "alpha");
    if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) schema_error("alpha must lie in (0, 1]");

    cfg.rule = parse_rule(j);

    const json& jm = require(j, "mesh", "config");
    cfg.mesh = make_graded_mesh(as_int(require(jm, "M", "mesh"), "mesh.M"),
                                as_number(require(jm, "T", "mesh"), "mesh.T"),
                                jm.contains("r") ? as_number(jm.at("r"), "mesh.r") : 1.0);

    const json& js = require(j, "space", "config");
    cfg.grid = make_grid(as_int(require(js, "N", "space"), "space.N"),
                         js.contains("xl") ? as_number(js.at("xl"), "space.xl") : 0.0,
                         js.contains("xr") ? as_number(js.at("xr"), "space.xr") : 1.0);
    if (js.contains("a")) cfg.coeff.a = parse_coefficient(js.at("a"), "a");
    if (js.contains("b")) cfg.coeff.b = parse_coefficient(js.at("b"), "b");
    if (js.contains("c")) cfg.coeff.c = parse_coefficient(js.at("c"), "c");

    cfg.source = parse_source(require(j, "source", "config"));
    if (j.contains("initial")) cfg.initial = parse_initial(j.at("initial"));
    if (j.contains("semilinear")) cfg.semilinear = parse_semilinear(j.at("semilinear"));

    if (j.contains("tolerances")) {
        const json& jt = j.at("tolerances");
        if (!jt.is_object()) schema_error("tolerances must be an object");
        if (cfg.semilinear) {
            if (jt.contains("semilinear_tol")) {
                cfg.semilinear->tol = as_number(jt.at("semilinear_tol"), "tolerances.semilinear_tol");
                if (!(cfg.semilinear->tol > 0.0)) schema_error("semilinear_tol must be positive");
            }
            if (jt.contains("semilinear_max_iter")) {
                cfg.semilinear->max_iter =
                    as_int(jt.at("semilinear_max_iter"), "tolerances.semilinear_max_iter");
                if (cfg.semilinear->max_iter < 1) schema_error("semilinear_max_iter must be >= 1");
            }
        }
    }
    return cfg;
}

ProblemConfig load_problem_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot read file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_config(ss.str());
}

namespace {

SourceTerm resolve_source(const ProblemConfig& cfg, const TridiagonalMatrix& lh) {
    switch (cfg.source.kind) {
        case SourceSpec::Kind::zero:
            return SourceTerm::zero(cfg.grid.N);
        case SourceSpec::Kind::manufactured_sin_poly:
            return SourceTerm::manufactured_sin_poly(cfg.grid, lh, cfg.source.degree, cfg.alpha);
    }
    throw DomainError("config: unreachable source kind");
}

InitialCondition resolve_initial(const ProblemConfig& cfg) {
    switch (cfg.initial.kind) {
        case InitialSpec::Kind::zero:
            return InitialCondition::zero();
        case InitialSpec::Kind::sine:
            return InitialCondition::sine(cfg.initial.amplitude, cfg.initial.frequency);
    }
    throw DomainError("config: unreachable initial kind");
}

}  // namespace

SubdiffusionProblem build_linear_problem(const ProblemConfig& cfg) {
    const TridiagonalMatrix lh = assemble_operator(cfg.grid, cfg.coeff);
    return SubdiffusionProblem{cfg.alpha,        cfg.rule,  cfg.mesh,
                               cfg.grid,         cfg.coeff, resolve_source(cfg, lh),
                               resolve_initial(cfg)};
}

SemilinearProblem build_semilinear_problem(const ProblemConfig& cfg) {
    if (!cfg.semilinear) throw DomainError("config: no semilinear block present");
    const SemilinearSpec& spec = *cfg.semilinear;
    const TridiagonalMatrix lh = assemble_operator(cfg.grid, cfg.coeff);
    SemilinearSource src =
        spec.kind == SemilinearSpec::Kind::sin_coupling
            ? SemilinearSource::sin_coupling(cfg.grid, lh, spec.amplitude, spec.degree, cfg.alpha,
                                             spec.mu)
            : SemilinearSource::sin_forcing(resolve_source(cfg, lh), spec.amplitude, spec.mu);
    return SemilinearProblem{cfg.alpha, cfg.rule,        cfg.mesh,
                             cfg.grid,  cfg.coeff,       std::move(src),
                             resolve_initial(cfg), spec.tol, spec.max_iter};
}

}  // namespace fraccol
