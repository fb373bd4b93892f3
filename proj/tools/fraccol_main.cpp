#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "fraccol/cli.hpp"
#include "fraccol/errors.hpp"

namespace {

constexpr int kExitCertificateFailure = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fraccol: continuous collocation for time-fractional subdiffusion — "
        "well-posedness certificates and solvers"};
    app.require_subcommand(1);

    fraccol::SpectrumArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Eigenvalues of the collocation matrix M as CSV");
    spectrum->add_option("--m", spectrum_args.m, "Number of collocation points");
    spectrum->add_option("--alpha", spectrum_args.alpha, "Fractional order in (0, 1]");
    spectrum->add_option("--points", spectrum_args.points,
                         "Point family: chebyshev | equidistant | lobatto");
    spectrum->add_option("--theta", spectrum_args.custom_points,
                         "Explicit collocation points (overrides --points)");
    spectrum->add_option("--alpha-sweep", spectrum_args.alpha_sweep,
                         "Sweep alpha over n equispaced interior points of (0, 1)");
    spectrum->add_option("--out", spectrum_args.out, "Output CSV path (default stdout)");

    fraccol::ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand(
        "scan", "Eigenvalue certificate scan over families, m, and alpha (JSON)");
    scan->add_option("--m-max", scan_args.m_max, "Scan m = 1..m_max (cap 20)");
    scan->add_option("--families", scan_args.families,
                     "Families to scan (default: chebyshev equidistant lobatto)");
    scan->add_option("--alpha-grid", scan_args.alpha_grid,
                     "Alpha values (default: 0.05, 0.10, ..., 0.95)");
    scan->add_option("--out", scan_args.out, "Output JSON path (default stdout)");

    fraccol::CharpolyArgs charpoly_args;
    CLI::App* charpoly = app.add_subcommand(
        "charpoly", "Characteristic-polynomial coefficients of det(M_alpha - lambda W) (JSON)");
    charpoly->add_option("--m", charpoly_args.m, "Number of collocation points (cap 16)");
    charpoly->add_option("--alpha", charpoly_args.alpha, "Fractional order in (0, 1]");
    charpoly->add_option("--points", charpoly_args.points,
                         "Point family: chebyshev | equidistant | lobatto");
    charpoly->add_option("--theta", charpoly_args.custom_points,
                         "Explicit collocation points (overrides --points)");
    charpoly->add_option("--out", charpoly_args.out, "Output JSON path (default stdout)");

    fraccol::SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "Solve a configured problem; writes <prefix>.csv and <prefix>.json");
    solve->add_option("--config", solve_args.config_path, "Problem config JSON path")
        ->required();
    solve->add_option("--out", solve_args.out_prefix,
                      "Output prefix (default \"solution\")");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (spectrum->parsed()) return fraccol::cmd_spectrum(spectrum_args);
        if (scan->parsed()) return fraccol::cmd_scan(scan_args);
        if (charpoly->parsed()) return fraccol::cmd_charpoly(charpoly_args);
        if (solve->parsed()) return fraccol::cmd_solve(solve_args);
    } catch (const fraccol::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const fraccol::WellPosednessError& e) {
        std::fprintf(stderr, "certificate failure: %s\n", e.what());
        return kExitCertificateFailure;
    } catch (const fraccol::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCertificateFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitCertificateFailure;
    }
    return kExitUsage;
}
