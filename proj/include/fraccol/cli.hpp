#pragma once

#include <string>
#include <vector>

namespace fraccol {

/// Exit codes shared by all commands: 0 success, 1 mathematical-certificate
/// failure (real negative eigenvalue, non-positive charpoly coefficient,
/// singular step, non-convergence), 2 usage or config error. Commands write
/// to args.out when set, else stdout, and return the exit code; DomainError
/// and WellPosednessError thrown here are mapped by the binary's main.

struct SpectrumArgs {
    int m = 1;
    double alpha = 0.5;
    std::string points = "chebyshev";    // family name, used when custom_points empty
    std::vector<double> custom_points;   // explicit theta set (overrides points)
    int alpha_sweep = 0;                 // n > 0: alpha = i/(n+1), i = 1..n
    std::string out;
};
int cmd_spectrum(const SpectrumArgs& args);

struct ScanArgs {
    int m_max = 20;
    std::vector<std::string> families = {"chebyshev", "equidistant", "lobatto"};
    std::vector<double> alpha_grid;      // empty: 0.05, 0.10, ..., 0.95
    std::string out;
};
int cmd_scan(const ScanArgs& args);

struct CharpolyArgs {
    int m = 2;
    double alpha = 0.5;
    std::string points = "chebyshev";
    std::vector<double> custom_points;
    std::string out;
};
int cmd_charpoly(const CharpolyArgs& args);

struct SolveArgs {
    std::string config_path;
    std::string out_prefix = "solution";  // writes <prefix>.csv and <prefix>.json
};
int cmd_solve(const SolveArgs& args);

}  // namespace fraccol
