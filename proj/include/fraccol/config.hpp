#pragma once

#include <optional>
#include <string>

#include "fraccol/semilinear.hpp"
#include "fraccol/stepper.hpp"

namespace fraccol {

/// Deferred source descriptors: actual SourceTerm / SemilinearSource objects
/// need the assembled spatial operator, so parsing stores specs and
/// build_*_problem resolves them.
struct SourceSpec {
    enum class Kind { zero, manufactured_sin_poly } kind = Kind::zero;
    int degree = 1;  // manufactured_sin_poly
};

struct InitialSpec {
    enum class Kind { zero, sine } kind = Kind::zero;
    double amplitude = 1.0;
    int frequency = 1;
};

struct SemilinearSpec {
    enum class Kind { sin_coupling, sin_forcing } kind = Kind::sin_coupling;
    double amplitude = 0.0;
    int degree = 1;                  // sin_coupling: exact-solution degree
    std::optional<double> mu;        // default |amplitude|
    double tol = 1e-11;
    int max_iter = 100;
};

struct ProblemConfig {
    double alpha = 0.5;
    CollocationRule rule;
    TemporalMesh mesh;
    SpatialGrid grid;
    EllipticCoefficients coeff;
    SourceSpec source;
    InitialSpec initial;
    std::optional<SemilinearSpec> semilinear;
};

/// Parse a JSON problem description. Schema violations, unknown kinds, and
/// out-of-range values throw DomainError. See README for the schema.
ProblemConfig parse_problem_config(const std::string& json_text);

/// Read a file into a string (DomainError if unreadable) and parse it.
ProblemConfig load_problem_config(const std::string& path);

/// Resolve the linear problem (assembles the spatial operator for
/// manufactured sources).
SubdiffusionProblem build_linear_problem(const ProblemConfig& config);

/// Resolve the semilinear problem; requires config.semilinear.
SemilinearProblem build_semilinear_problem(const ProblemConfig& config);

}  // namespace fraccol
