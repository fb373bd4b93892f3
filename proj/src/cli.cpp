#include "fraccol/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fraccol/config.hpp"
#include "fraccol/errors.hpp"
#include "fraccol/semilinear.hpp"
#include "fraccol/stepper.hpp"
#include "fraccol/wellposed.hpp"

namespace fraccol {

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file " + path);
    out << content;
    if (!out) throw DomainError("failed writing output file " + path);
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CollocationRule rule_from(const std::string& points, const std::vector<double>& custom, int m) {
    if (!custom.empty()) {
        if (m != 0 && m != static_cast<int>(custom.size()))
            throw DomainError("explicit point set length disagrees with --m");
        return make_custom_points(custom);
    }
    return make_points(parse_point_family(points), m);
}

std::vector<double> sweep_alphas(double alpha, int sweep_n) {
    std::vector<double> alphas;
    if (sweep_n > 0) {
        for (int i = 1; i <= sweep_n; ++i)
            alphas.push_back(static_cast<double>(i) / (sweep_n + 1));
    } else {
        alphas.push_back(alpha);
    }
    return alphas;
}

int thread_budget(int work_items) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("FRACCOL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 256) n = static_cast<unsigned>(v);
    }
    if (static_cast<int>(n) > work_items) n = static_cast<unsigned>(std::max(work_items, 1));
    return static_cast<int>(n);
}

}  // namespace

int cmd_spectrum(const SpectrumArgs& args) {
    const CollocationRule rule = rule_from(args.points, args.custom_points, args.m);
    const std::vector<double> alphas = sweep_alphas(args.alpha, args.alpha_sweep);

    std::string csv = "family,m,alpha,index,re,im,is_real,is_real_negative\n";
    bool any_real_negative = false;
    const std::string family = point_family_name(rule.family);
    for (const double a : alphas) {
        const SpectrumReport rep = spectrum(rule, a);
        const SpectrumOptions opt{};
        for (std::size_t idx = 0; idx < rep.eigenvalues.size(); ++idx) {
            const std::complex<double> ev = rep.eigenvalues[idx];
            const bool is_real =
                std::fabs(ev.imag()) <= opt.imag_tol * std::max(1.0, std::abs(ev));
            const bool is_neg = is_real && ev.real() < -opt.negative_tol;
            any_real_negative = any_real_negative || is_neg;
            csv += family;
            csv += ',';
            csv += std::to_string(rule.m);
            csv += ',';
            csv += fmt17(a);
            csv += ',';
            csv += std::to_string(idx);
            csv += ',';
            csv += fmt17(ev.real());
            csv += ',';
            csv += fmt17(ev.imag());
            csv += ',';
            csv += is_real ? '1' : '0';
            csv += ',';
            csv += is_neg ? '1' : '0';
            csv += '\n';
        }
    }
    write_output(args.out, csv);
    return any_real_negative ? 1 : 0;
}

int cmd_scan(const ScanArgs& args) {
    if (args.m_max < 1 || args.m_max > 20)
        throw DomainError("scan: --m-max must lie in 1..20 (eigenvalue solver cap)");
    std::vector<PointFamily> families;
    for (const auto& name : args.families) families.push_back(parse_point_family(name));
    if (families.empty()) throw DomainError("scan: at least one family required");

    std::vector<double> alphas = args.alpha_grid;
    if (alphas.empty())
        for (int i = 1; i <= 19; ++i) alphas.push_back(0.05 * i);
    for (const double a : alphas)
        if (!(a > 0.0) || a > 1.0) throw DomainError("scan: alpha grid values must lie in (0, 1]");

    struct Row {
        PointFamily family;
        int m;
        double alpha;
        double min_real_part;
        int real_count;
        bool has_real_negative;
        bool all_real_parts_positive;
        bool parity_ok;  // odd m: one real, positive; even m: zero real
    };
    struct Task {
        PointFamily family;
        int m;
        double alpha;
    };
    std::vector<Task> tasks;
    for (const PointFamily fam : families)
        for (int m = 1; m <= args.m_max; ++m)
            for (const double a : alphas) tasks.push_back({fam, m, a});

    std::vector<Row> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                const Task& t = tasks[i];
                const CollocationRule rule = make_points(t.family, t.m);
                const SpectrumReport rep = spectrum(rule, t.alpha);
                const SpectrumOptions opt{};
                int positive_real = 0;
                for (const auto& ev : rep.eigenvalues)
                    if (std::fabs(ev.imag()) <= opt.imag_tol * std::max(1.0, std::abs(ev)) &&
                        ev.real() > 0.0)
                        ++positive_real;
                const bool parity = (t.m % 2 == 1)
                                        ? (rep.real_eigenvalue_count == 1 && positive_real == 1)
                                        : (rep.real_eigenvalue_count == 0);
                rows[i] = Row{t.family,
                              t.m,
                              t.alpha,
                              rep.min_real_part,
                              rep.real_eigenvalue_count,
                              rep.has_real_negative,
                              rep.all_real_parts_positive,
                              parity};
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    const int nthreads = thread_budget(static_cast<int>(tasks.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    json report;
    report["m_max"] = args.m_max;
    report["alpha_grid"] = alphas;
    bool any_real_negative = false;
    json jfam = json::object();
    for (const PointFamily fam : families) {
        bool no_neg = true, all_pos = true, odd_ok = true, even_ok = true;
        for (const Row& r : rows) {
            if (r.family != fam) continue;
            no_neg = no_neg && !r.has_real_negative;
            all_pos = all_pos && r.all_real_parts_positive;
            if (r.m % 2 == 1)
                odd_ok = odd_ok && r.parity_ok;
            else
                even_ok = even_ok && r.parity_ok;
        }
        jfam[point_family_name(fam)] = {
            {"no_real_negative", no_neg},
            {"all_real_parts_positive", all_pos},
            {"odd_m_exactly_one_positive_real", odd_ok},
            {"even_m_zero_real", even_ok},
        };
    }
    report["families"] = jfam;
    json jrows = json::array();
    for (const Row& r : rows) {
        any_real_negative = any_real_negative || r.has_real_negative;
        jrows.push_back({{"family", point_family_name(r.family)},
                         {"m", r.m},
                         {"alpha", r.alpha},
                         {"min_real_part", r.min_real_part},
                         {"real_eigenvalue_count", r.real_count},
                         {"has_real_negative", r.has_real_negative},
                         {"all_real_parts_positive", r.all_real_parts_positive},
                         {"parity_ok", r.parity_ok}});
    }
    report["rows"] = jrows;
    report["any_real_negative"] = any_real_negative;
    write_output(args.out, report.dump(2) + "\n");
    return any_real_negative ? 1 : 0;
}

int cmd_charpoly(const CharpolyArgs& args) {
    const CollocationRule rule = rule_from(args.points, args.custom_points, args.m);
    const CharPolyReport rep = charpoly_subsets(rule, args.alpha);
    json out;
    out["family"] = point_family_name(rule.family);
    out["m"] = rule.m;
    out["alpha"] = args.alpha;
    out["theta"] = rule.theta;
    out["coefficients"] = rep.coefficients;
    out["all_positive"] = rep.all_positive;
    out["cross_check_residual"] = rep.cross_check_residual;
    out["det_w"] = vandermonde_det(rule);
    write_output(args.out, out.dump(2) + "\n");
    return rep.all_positive ? 0 : 1;
}

int cmd_solve(const SolveArgs& args) {
    if (args.config_path.empty()) throw DomainError("solve: --config is required");
    const ProblemConfig cfg = load_problem_config(args.config_path);

    json report;
    const SpectrumReport cert = spectrum(cfg.rule, cfg.alpha);
    report["wellposed"] = {{"has_real_negative", cert.has_real_negative},
                           {"all_real_parts_positive", cert.all_real_parts_positive},
                           {"real_eigenvalue_count", cert.real_eigenvalue_count},
                           {"min_real_part", cert.min_real_part}};
    report["alpha"] = cfg.alpha;
    report["m"] = cfg.rule.m;
    report["family"] = point_family_name(cfg.rule.family);
    report["mesh"] = {{"M", cfg.mesh.M}, {"T", cfg.mesh.T}, {"r", cfg.mesh.r}};
    report["space"] = {{"N", cfg.grid.N}, {"xl", cfg.grid.xl}, {"xr", cfg.grid.xr}};

    const PiecewiseSolution* sol = nullptr;
    ResidualReport residual;
    std::function<std::vector<double>(double)> exact;

    std::optional<SubdiffusionProblem> linear_problem;
    std::optional<SolveReport> linear_report;
    std::optional<SemilinearProblem> semi_problem;
    std::optional<SemilinearSolveReport> semi_report;

    if (cfg.semilinear) {
        semi_problem = build_semilinear_problem(cfg);
        semi_report = solve_semilinear(*semi_problem);
        sol = &semi_report->solution;
        residual = semilinear_residual(*sol, *semi_problem);
        json steps = json::array();
        int total_iters = 0;
        for (const auto& st : semi_report->steps) {
            steps.push_back({{"k", st.k},
                             {"iterations", st.iterations},
                             {"final_update", st.final_update},
                             {"contraction_bound", st.contraction_bound},
                             {"check_failed", st.check_failed}});
            total_iters += st.iterations;
        }
        report["semilinear"] = {{"C_M", semi_report->C_M},
                                {"any_check_failed", semi_report->any_check_failed},
                                {"total_iterations", total_iters},
                                {"converged", true},
                                {"steps", steps}};
        if (semi_problem->source.has_exact())
            exact = [&p = *semi_problem](double t) { return p.source.exact(t); };
    } else {
        linear_problem = build_linear_problem(cfg);
        linear_report = solve(*linear_problem);
        sol = &linear_report->solution;
        residual = collocation_residual(*sol, *linear_problem);
        report["max_solve_residual"] = linear_report->max_solve_residual;
        if (linear_problem->source.has_exact())
            exact = [&p = *linear_problem](double t) { return p.source.exact(t); };
    }

    report["residual"] = {{"max_abs", residual.max_abs},
                          {"scale", residual.scale},
                          {"ok", residual.max_abs <= 1e-8 * residual.scale}};

    if (exact) {
        double err = 0.0;
        for (int k = 0; k <= cfg.mesh.M; ++k) {
            const std::vector<double> ex = exact(cfg.mesh.nodes[static_cast<std::size_t>(k)]);
            for (int i = 0; i < cfg.grid.N; ++i)
                err = std::max(err, std::fabs(sol->U[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] -
                                              ex[static_cast<std::size_t>(i)]));
        }
        report["error_vs_exact"] = err;
    }

    std::string csv = "t,x,u\n";
    for (int k = 0; k <= cfg.mesh.M; ++k) {
        const std::string t = fmt17(cfg.mesh.nodes[static_cast<std::size_t>(k)]);
        for (int i = 0; i < cfg.grid.N; ++i) {
            csv += t;
            csv += ',';
            csv += fmt17(cfg.grid.x(i));
            csv += ',';
            csv += fmt17(sol->U[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
            csv += '\n';
        }
    }
    write_output(args.out_prefix + ".csv", csv);
    write_output(args.out_prefix + ".json", report.dump(2) + "\n");
    return 0;
}

}  // namespace fraccol
