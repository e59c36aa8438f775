#include "curvipat/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <thread>

#include "curvipat/cli/output.hpp"
#include "curvipat/error.hpp"
#include "curvipat/models.hpp"
#include "curvipat/simulation.hpp"

namespace curvipat::cli {

namespace {

std::string padded(std::size_t step, std::size_t m) {
    const std::size_t width = std::to_string(m).size();
    std::string s = std::to_string(step);
    return std::string(width - s.size(), '0') + s;
}

/// Runs `jobs` on up to `threads` workers; each job writes only its own slot.
void run_parallel(std::vector<std::function<void()>>& jobs, unsigned threads) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    if (threads == 1) {
        for (auto& j : jobs) j();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) {
                try {
                    jobs[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double frobenius(const Field& W) {
    double s = 0.0;
    for (double v : W.vec()) s += v * v;
    return std::sqrt(s);
}

}  // namespace

unsigned configured_threads() {
    const char* env = std::getenv("CURVIPAT_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return 1;
    return static_cast<unsigned>(std::min<long>(v, 256));
}

RunReport cmd_run(const SimConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    const CoupledSystem system = build_system(cfg.spec, cfg.dims);
    std::vector<Field> initial = random_initial_condition(cfg.spec, system, cfg.seed, cfg.perturbation);

    std::error_code ec;
    fs::create_directories(cfg.output_dir / "snapshots", ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + cfg.output_dir.string() + ": " + ec.message());

    RunReport report;
    for (const auto& c : system.components) report.components.push_back(c.name);
    const fs::path ts_path = cfg.output_dir / "timeseries.csv";
    TimeSeriesWriter ts(ts_path, report.components);
    report.manifest.push_back(ts_path);

    SimulationOptions opt;
    opt.method = cfg.method;
    opt.snapshot_every = cfg.snapshot_every;
    opt.on_snapshot = [&](std::size_t step, double t, std::span<const Field> fields,
                          std::span<const double> means) {
        ts.row(t, means);
        const std::string tag = padded(step, cfg.m);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string base = report.components[c] + "_" + tag;
            const fs::path snap = cfg.output_dir / "snapshots" / (base + ".csv");
            write_snapshot(snap, system.disc_of(c), report.components[c], step, t, fields[c]);
            report.manifest.push_back(snap);
            if (cfg.emit_heatmap) {
                const fs::path img = cfg.output_dir / "snapshots" / (base + ".ppm");
                write_heatmap(img, fields[c]);
                report.manifest.push_back(img);
            }
        }
        report.final_means.assign(means.begin(), means.end());
    };

    log << "model " << to_string(cfg.spec.name) << ", dims";
    for (std::size_t n : cfg.dims) log << ' ' << n;
    log << ", m " << cfg.m << ", t* " << cfg.t_star << ", method " << to_string(cfg.method)
        << ", seed " << cfg.seed << '\n';

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const SimulationResult res = run_simulation(system, std::move(initial), cfg.m, cfg.t_star, opt);
        report.final_means = res.series.means.back();
    } catch (const DivergenceError& e) {
        report.diverged = true;
        report.divergence_step = e.step();
        log << "diverged: " << e.what() << '\n';
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.per_step_seconds = report.wall_seconds / static_cast<double>(cfg.m);

    log << std::setprecision(6) << "wall time " << report.wall_seconds << " s ("
        << report.per_step_seconds * 1e3 << " ms/step)\n";
    if (!report.diverged) {
        log << "final means:";
        for (std::size_t c = 0; c < report.final_means.size(); ++c)
            log << ' ' << report.components[c] << '=' << std::setprecision(10) << report.final_means[c];
        log << '\n';
    }
    log << "wrote " << report.manifest.size() << " files under " << cfg.output_dir.string() << '\n';
    return report;
}

double relative_error(std::span<const Field> W, std::span<const Field> R) {
    if (W.size() != R.size()) throw Error(ErrorKind::Shape, "relative_error: component count mismatch");
    double sum = 0.0;
    for (std::size_t c = 0; c < W.size(); ++c) {
        if (!W[c].same_shape(R[c])) throw Error(ErrorKind::Shape, "relative_error: shape mismatch");
        const auto w = W[c].vec();
        const auto r = R[c].vec();
        double d = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) d += (w[i] - r[i]) * (w[i] - r[i]);
        const double ref = frobenius(R[c]);
        const double e = ref > 0.0 ? std::sqrt(d) / ref : std::sqrt(d);
        sum += e * e;
    }
    return std::sqrt(sum);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::Usage, "loglog_slope: need at least two matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergeReport cmd_converge(const SimConfig& cfg, std::ostream& log) {
    if (cfg.m_list.size() < 2) throw Error(ErrorKind::Usage, "converge needs at least two entries in converge.m_list");
    const CoupledSystem system = build_system(cfg.spec, cfg.dims);
    const std::vector<Field> initial =
        random_initial_condition(cfg.spec, system, cfg.seed, cfg.perturbation);

    ConvergeReport report;
    report.m_ref = cfg.m_ref;
    const std::size_t nm = cfg.m_list.size();
    report.rows.resize(nm);

    bool dense = cfg.compare_dense;
    if (dense) {
        for (const auto& d : system.discs)
            if (d->unknowns() > kKronCap) dense = false;
        if (!dense) {
            report.dense_skipped = true;
            log << "dense exponential Euler skipped: more than " << kKronCap << " unknowns\n";
        }
    }

    auto run = [&](Method method, std::size_t m) {
        SimulationOptions opt;
        opt.method = method;
        return run_simulation(system, initial, m, cfg.t_star, opt).fields;
    };

    std::vector<Field> reference;
    std::vector<std::vector<Field>> split(nm), dense_out(nm), fe(nm);
    std::vector<std::size_t> fe_div(nm, 0);
    std::vector<std::function<void()>> jobs;
    jobs.emplace_back([&] { reference = run(Method::SplitExponential, cfg.m_ref); });
    for (std::size_t i = 0; i < nm; ++i) {
        const std::size_t m = cfg.m_list[i];
        jobs.emplace_back([&, i, m] { split[i] = run(Method::SplitExponential, m); });
        if (dense) jobs.emplace_back([&, i, m] { dense_out[i] = run(Method::DenseExponential, m); });
        if (cfg.compare_forward_euler)
            jobs.emplace_back([&, i, m] {
                try {
                    fe[i] = run(Method::ForwardEuler, m);
                } catch (const DivergenceError& e) {
                    fe_div[i] = e.step();
                }
            });
    }
    run_parallel(jobs, configured_threads());

    std::vector<double> ms, errs, errs_dense;
    for (std::size_t i = 0; i < nm; ++i) {
        ConvergeRow& row = report.rows[i];
        row.m = cfg.m_list[i];
        row.err_split = relative_error(split[i], reference);
        if (dense) row.err_dense = relative_error(dense_out[i], reference);
        if (cfg.compare_forward_euler) {
            row.fe_divergence_step = fe_div[i];
            if (fe_div[i] == 0) row.err_forward_euler = relative_error(fe[i], reference);
        }
        ms.push_back(static_cast<double>(row.m));
        errs.push_back(row.err_split);
        if (row.err_dense) errs_dense.push_back(*row.err_dense);
    }
    report.order = -loglog_slope(ms, errs);
    if (dense) report.order_dense = -loglog_slope(ms, errs_dense);

    log << "reference: split, m_ref " << cfg.m_ref << ", t* " << cfg.t_star << ", seed " << cfg.seed << '\n';
    log << std::setw(8) << "m" << std::setw(16) << "split";
    if (dense) log << std::setw(16) << "dense-ee";
    if (cfg.compare_forward_euler) log << std::setw(20) << "forward-euler";
    log << '\n';
    for (const auto& row : report.rows) {
        log << std::setw(8) << row.m << std::setw(16) << std::scientific << std::setprecision(4)
            << row.err_split;
        if (row.err_dense) log << std::setw(16) << *row.err_dense;
        if (cfg.compare_forward_euler) {
            if (row.err_forward_euler)
                log << std::setw(20) << *row.err_forward_euler;
            else
                log << std::setw(20) << ("diverged@" + std::to_string(row.fe_divergence_step));
        }
        log << std::defaultfloat << '\n';
    }
    log << "observed order (split): " << std::setprecision(4) << report.order << '\n';
    if (report.order_dense) log << "observed order (dense-ee): " << *report.order_dense << '\n';
    return report;
}

PropsRow operator_properties(OperatorKind kind, std::size_t n, double lambda) {
    TridiagonalOperator T;
    PropsRow row;
    row.kind = kind;
    row.n = n;
    switch (kind) {
        case OperatorKind::Rho2:
            T = build_rho(2, n, 1.0);
            row.closed_form = std::sqrt(2.0 * static_cast<double>(n) - 3.0);
            break;
        case OperatorKind::Rho3:
            T = build_rho(3, n, 1.0);
            row.closed_form = static_cast<double>(n) - 1.0;
            break;
        case OperatorKind::Phi: T = build_phi_op(n).first; break;
        case OperatorKind::Z:
            T = build_z(n, 1.0);
            row.closed_form = std::sqrt(2.0);
            break;
        case OperatorKind::Lambda: T = build_lambda(n, 1.0, lambda); break;
    }
    row.max_abs = T.max_abs();
    row.min_offdiag = std::min(*std::min_element(T.b.begin(), T.b.end()),
                               *std::min_element(T.c.begin(), T.c.end()));
    for (double r : T.row_sums()) row.max_row_sum = std::max(row.max_row_sum, std::abs(r));
    const EigenFactorization E = eig_tridiag(T);
    row.max_eigenvalue = *std::max_element(E.lambdas.begin(), E.lambdas.end());
    const auto [lo, hi] = std::minmax_element(E.xi.begin(), E.xi.end());
    row.xi_inv_norm = 1.0 / *lo;
    row.xi_cond = *hi / *lo;
    if (n <= kExpCheckCap) {
        double m = INFINITY;
        for (double t : {0.1, 1.0, 10.0}) m = std::min(m, matrix_exp_nonneg_check(T, t));
        row.exp_min = m;
    }
    return row;
}

std::vector<PropsRow> cmd_props(const SimConfig& cfg, std::ostream& log) {
    std::vector<PropsRow> rows;
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %6s %11s %11s %11s %12s %12s %12s %12s %12s\n", "kind",
                  "n", "|A|max", "min offdiag", "max|rowsum|", "max eig", "|Xi^-1|_2",
                  "cond(Xi)", "closed form", "min exp(tA)");
    log << line;
    for (OperatorKind kind : cfg.prop_kinds) {
        std::optional<PropsRow> prev;
        for (std::size_t n : cfg.prop_n) {
            rows.push_back(operator_properties(kind, n, cfg.prop_lambda));
            const PropsRow& r = rows.back();
            char cf[32] = "-", em[32] = "-";
            if (r.closed_form) std::snprintf(cf, sizeof cf, "%.10g", *r.closed_form);
            if (r.exp_min) std::snprintf(em, sizeof em, "%.4e", *r.exp_min);
            std::snprintf(line, sizeof line,
                          "%-7s %6zu %11.4e %11.4e %11.4e %12.4e %12.6g %12.6g %12s %12s", to_string(kind),
                          n, r.max_abs, r.min_offdiag, r.max_row_sum, r.max_eigenvalue,
                          r.xi_inv_norm, r.xi_cond, cf, em);
            log << line;
            if (prev && prev->n * 2 == n)
                log << "  growth x" << std::setprecision(4) << r.xi_inv_norm / prev->xi_inv_norm;
            log << '\n';
            prev = r;
        }
    }
    return rows;
}

}  // namespace curvipat::cli
