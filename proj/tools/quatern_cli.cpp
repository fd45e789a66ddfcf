// Experiment front end: pseudoinverse runs, method benchmarks, preconditioned
// Krylov comparisons, CUR image completion, Lorenz filtering, and the built-in
// selftest. All table output is CSV with a seed/tolerance comment line;
// machine-readable reports go to report.jsonl next to them.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <mutex>

#include "cli_util.hpp"
#include "quatern/cur.hpp"
#include "quatern/image_io.hpp"
#include "quatern/krylov.hpp"
#include "quatern/matrix_market.hpp"
#include "quatern/random.hpp"
#include "quatern/selftest.hpp"
#include "quatern/signal.hpp"
#include "quatern/version.hpp"

namespace quatern::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fd(double v) { return format_double(v); }

json base_report(const std::string& command, std::uint64_t seed, double tol) {
    json j;
    j["command"] = command;
    j["seed"] = seed;
    j["tol"] = tol;
    j["version"] = kVersion;
    return j;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    for (const auto& l : lines) os << l << "\n";
}

// ---------------------------------------------------------------- pinv ----

struct PinvArgs {
    std::string input;
    std::string method = "qsai";
    std::string alpha = "spectral";
    double tol = 1e-10;
    int max_iters = 500;
    std::uint64_t seed = 42;
    std::string out = ".";
};

int cmd_pinv(const PinvArgs& args) {
    const MethodSpec spec = parse_method(args.method);
    const AlphaSpec alpha = parse_alpha(args.alpha);
    const QMat a = read_qmat_file(args.input);

    OutputStager stager(args.out);
    const auto t0 = Clock::now();

    QMat x;
    json rep = base_report("pinv", args.seed, args.tol);
    rep["input"] = args.input;
    rep["method"] = spec.name;
    rep["rows"] = a.rows();
    rep["cols"] = a.cols();
    rep["alpha_mode"] = alpha.text;

    if (spec.is_qsvd) {
        x = qsvd_pinv(a);
        rep["iterations"] = 1;
        rep["converged"] = true;
        rep["matmuls"] = 0;
    } else {
        PinvConfig cfg;
        cfg.method = spec.method;
        cfg.order = spec.order;
        cfg.tol = args.tol;
        cfg.max_iters = args.max_iters;
        cfg.alpha_mode = alpha.mode;
        cfg.alpha_value = alpha.value;
        cfg.sigma_max_seed = args.seed;
        const PinvReport r = run_pinv(a, cfg);
        x = r.X;
        rep["iterations"] = r.iterations;
        rep["converged"] = r.converged;
        rep["matmuls"] = r.matmuls;
        rep["alpha"] = r.alpha_used;
        rep["final_step"] = r.step_history.empty() ? 0.0 : r.step_history.back();
    }
    const auto pe = penrose_errors(a, x);
    rep["E1"] = pe[0];
    rep["E2"] = pe[1];
    rep["E3"] = pe[2];
    rep["E4"] = pe[3];
    rep["time_s"] = seconds_since(t0);

    const std::string stem = fs::path(args.input).stem().string();
    const std::string out_name = stem + "_pinv.qmat";
    rep["output"] = (stager.dir() / out_name).string();
    write_qmat_file(stager.stage(out_name).string(), x);

    std::vector<std::string> csv;
    csv.push_back(csv_comment(args.seed, args.tol) + kVersion);
    csv.push_back("rows,cols,method,iterations,converged,matmuls,E1,E2,E3,E4,time_s");
    csv.push_back(std::to_string(a.rows()) + "," + std::to_string(a.cols()) + "," + spec.name +
                  "," + rep["iterations"].dump() + "," + (rep["converged"].get<bool>() ? "1" : "0") +
                  "," + rep["matmuls"].dump() + "," + fd(pe[0]) + "," + fd(pe[1]) + "," + fd(pe[2]) +
                  "," + fd(pe[3]) + "," + fd(rep["time_s"].get<double>()));
    write_lines(stager.stage("pinv.csv"), csv);
    write_lines(stager.stage("report.jsonl"), {rep.dump()});

    stager.commit();
    std::printf("pinv %s: %s iterations=%s E=[%.2e %.2e %.2e %.2e] -> %s\n", args.input.c_str(),
                spec.name.c_str(), rep["iterations"].dump().c_str(), pe[0], pe[1], pe[2], pe[3],
                rep["output"].get<std::string>().c_str());
    return 0;
}

// ---------------------------------------------------------------- bench ----

struct BenchArgs {
    std::string sizes = "20,40";
    std::string methods = "qns,qsai,qhpi19";
    std::string alpha = "spectral";
    double tol = 1e-10;
    int max_iters = 500;
    std::uint64_t seed = 42;
    std::string out = ".";
};

int cmd_bench(const BenchArgs& args) {
    const AlphaSpec alpha = parse_alpha(args.alpha);
    std::vector<long> sizes;
    for (const auto& s : split_list(args.sizes)) sizes.push_back(std::stol(s));
    std::vector<MethodSpec> methods;
    for (const auto& m : split_list(args.methods)) methods.push_back(parse_method(m));

    struct Cell {
        long size;
        MethodSpec spec;
        PinvReport rep;
        double qsvd_dist = 0.0;
        double time_s = 0.0;
    };
    std::vector<Cell> cells;
    for (std::size_t si = 0; si < sizes.size(); ++si)
        for (const auto& m : methods) cells.push_back(Cell{sizes[si], m, {}, 0.0, 0.0});

    // One matrix and one QSVD reference per size, shared across methods.
    std::vector<QMat> mats, refs;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        mats.push_back(random_qmat(sizes[si], sizes[si], args.seed + si));
        refs.push_back(qsvd_pinv(mats.back()));
    }

    std::vector<std::function<void()>> jobs;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        jobs.push_back([&, ci] {
            Cell& cell = cells[ci];
            const std::size_t si = ci / methods.size();
            PinvConfig cfg;
            cfg.method = cell.spec.method;
            cfg.order = cell.spec.order;
            cfg.tol = args.tol;
            cfg.max_iters = args.max_iters;
            cfg.alpha_mode = alpha.mode;
            cfg.alpha_value = alpha.value;
            const auto t0 = Clock::now();
            cell.rep = run_pinv(mats[si], cfg);
            cell.time_s = seconds_since(t0);
            cell.qsvd_dist = fro_dist(cell.rep.X, refs[si]);
        });
    run_cells(std::move(jobs));

    OutputStager stager(args.out);
    std::vector<std::string> csv, jsonl;
    csv.push_back(csv_comment(args.seed, args.tol) + kVersion);
    csv.push_back("size,method,iterations,converged,matmuls,E1,E2,E3,E4,qsvd_dist,time_s");
    for (const auto& c : cells) {
        const auto& pe = c.rep.penrose;
        csv.push_back(std::to_string(c.size) + "," + c.spec.name + "," +
                      std::to_string(c.rep.iterations) + "," + (c.rep.converged ? "1" : "0") + "," +
                      std::to_string(c.rep.matmuls) + "," + fd(pe[0]) + "," + fd(pe[1]) + "," +
                      fd(pe[2]) + "," + fd(pe[3]) + "," + fd(c.qsvd_dist) + "," + fd(c.time_s));
        json j = base_report("bench", args.seed, args.tol);
        j["size"] = c.size;
        j["method"] = c.spec.name;
        j["iterations"] = c.rep.iterations;
        j["converged"] = c.rep.converged;
        j["matmuls"] = c.rep.matmuls;
        j["E1"] = pe[0], j["E2"] = pe[1], j["E3"] = pe[2], j["E4"] = pe[3];
        j["qsvd_dist"] = c.qsvd_dist;
        j["time_s"] = c.time_s;
        jsonl.push_back(j.dump());
    }
    write_lines(stager.stage("bench.csv"), csv);
    write_lines(stager.stage("report.jsonl"), jsonl);
    stager.commit();
    std::printf("bench: %zu cells -> %s\n", cells.size(), (stager.dir() / "bench.csv").c_str());
    return 0;
}

// -------------------------------------------------------------- precond ----

struct PrecondArgs {
    std::string matrix;  // Matrix Market file; empty = default path or builtin
    std::string sizes = "3,6";
    std::string precond = "both";  // none | qsai | both
    double rr_tol = 1e-6;
    int k_max = 3000;
    std::uint64_t seed = 42;
    std::string out = ".";
};

int cmd_precond(const PrecondArgs& args) {
    Eigen::MatrixXd seed_matrix;
    std::string matrix_label;
    if (!args.matrix.empty()) {
        seed_matrix = parse_matrix_market_file(args.matrix);
        matrix_label = args.matrix;
    } else if (fs::exists("data/saylr1.mtx")) {
        seed_matrix = parse_matrix_market_file("data/saylr1.mtx");
        matrix_label = "data/saylr1.mtx";
    } else {
        seed_matrix = synthetic_reservoir_matrix();
        matrix_label = "synthetic-reservoir-238";
    }

    std::vector<long> ms;
    for (const auto& s : split_list(args.sizes)) ms.push_back(std::stol(s));

    OutputStager stager(args.out);
    std::vector<std::string> csv, jsonl;
    csv.push_back(csv_comment(args.seed, args.rr_tol) + kVersion + " matrix=" + matrix_label);
    csv.push_back(
        "m,solver,preconditioned,iterations,converged,rr_final,true_rr,precond_iterations,"
        "build_time_s,solve_time_s");

    for (long m : ms) {
        const QuatSystem sys = build_saylr1_system(seed_matrix, m, args.seed);
        for (const bool prec : {false, true}) {
            if (prec && args.precond == "none") continue;
            if (!prec && args.precond == "qsai") continue;
            for (const auto solver : {KrylovSolver::GlQfom, KrylovSolver::GlQgmres}) {
                KrylovConfig cfg;
                cfg.solver = solver;
                cfg.rr_tol = args.rr_tol;
                cfg.k_max = args.k_max;
                if (prec) cfg.precond = QsaiPrecondConfig{};
                const KrylovReport rep = solver == KrylovSolver::GlQfom
                                             ? gl_qfom(sys.A, sys.B, cfg)
                                             : gl_qgmres(sys.A, sys.B, cfg);
                const std::string name = solver == KrylovSolver::GlQfom ? "gl_qfom" : "gl_qgmres";
                csv.push_back(std::to_string(m) + "," + name + "," + (prec ? "1" : "0") + "," +
                              std::to_string(rep.iterations) + "," + (rep.converged ? "1" : "0") +
                              "," + fd(rep.final_rr) + "," + fd(rep.true_rr) + "," +
                              std::to_string(rep.precond_iterations) + "," +
                              fd(rep.precond_build_seconds) + "," + fd(rep.solve_seconds));
                json j = base_report("precond", args.seed, args.rr_tol);
                j["matrix"] = matrix_label;
                j["m"] = m;
                j["solver"] = name;
                j["preconditioned"] = prec;
                j["iterations"] = rep.iterations;
                j["converged"] = rep.converged;
                j["rr_final"] = rep.final_rr;
                j["true_rr"] = rep.true_rr;
                j["build_time_s"] = rep.precond_build_seconds;
                j["solve_time_s"] = rep.solve_seconds;
                jsonl.push_back(j.dump());
                std::printf("precond m=%ld %s prec=%d: it=%d conv=%d rr=%.3e\n", m, name.c_str(),
                            prec ? 1 : 0, rep.iterations, rep.converged ? 1 : 0, rep.final_rr);
            }
        }
    }
    write_lines(stager.stage("precond.csv"), csv);
    write_lines(stager.stage("report.jsonl"), jsonl);
    stager.commit();
    return 0;
}

// ------------------------------------------------------------------ cur ----

struct CurArgs {
    std::string input;
    std::string mask;  // optional PGM; generated from seed otherwise
    double missing_fraction = 0.7;
    long rank = 60;
    int iters = 25;
    std::string method = "qsai";
    std::string u_mode = "opt";
    double blur_sigma = 0.5;
    std::string select = "uniform";
    bool redraw = false;
    std::uint64_t seed = 42;
    std::string out = ".";
};

PinvBackend to_backend(const std::string& name) {
    if (name == "qsvd") return PinvBackend::Qsvd;
    if (name == "qns") return PinvBackend::Qns;
    if (name == "qsai") return PinvBackend::Qsai;
    if (name == "qrapid") return PinvBackend::Qrapid;
    if (name == "qhpi19") return PinvBackend::Qhpi19;
    throw std::invalid_argument("unknown pinv backend '" + name + "'");
}

int cmd_cur(const CurArgs& args) {
    const QuatImage truth = read_ppm(args.input);

    Eigen::MatrixXd mask;
    const bool generated_mask = args.mask.empty();
    if (generated_mask)
        mask = random_mask(truth.height, truth.width, args.missing_fraction, args.seed);
    else
        mask = read_pgm_mask(args.mask);

    CurConfig cfg;
    cfg.rank = args.rank;
    cfg.iters = args.iters;
    cfg.backend = to_backend(args.method);
    cfg.u_mode = args.u_mode == "cross" ? UMode::Cross : UMode::Opt;
    if (args.blur_sigma > 0.0) cfg.gaussian_sigma = args.blur_sigma;
    cfg.selection = args.select == "leverage" ? Selection::Leverage : Selection::UniformRandom;
    cfg.redraw_each_sweep = args.redraw;
    cfg.select_seed = args.seed + 1;
    cfg.mask_seed = args.seed;
    cfg.missing_fraction = args.missing_fraction;

    OutputStager stager(args.out);
    const auto t0 = Clock::now();

    const QMat zero = QMat::Zero(truth.height, truth.width);
    const QuatImage masked{truth.height, truth.width, real_mask_apply(mask, truth.pixels, zero)};
    const CompletionResult res = impute_reconstruct(masked, mask, cfg, &truth);
    const double elapsed = seconds_since(t0);

    std::vector<std::string> csv;
    csv.push_back(csv_comment(args.seed, 0.0) + kVersion + " backend=" + args.method +
                  " rank=" + std::to_string(args.rank));
    csv.push_back("iter,psnr_db,ssim");
    for (const auto& hm : res.history) {
        const double capped = std::isinf(hm.psnr_db) ? 999.0 : hm.psnr_db;
        csv.push_back(std::to_string(hm.iter) + "," + fd(capped) + "," + fd(hm.ssim));
    }
    write_lines(stager.stage("metrics.csv"), csv);
    write_ppm(stager.stage("completed.ppm").string(), res.completed);
    write_ppm(stager.stage("masked.ppm").string(), masked);
    if (generated_mask) write_pgm_mask(stager.stage("mask.pgm").string(), mask);

    json j = base_report("cur", args.seed, cfg.pinv_tol);
    j["input"] = args.input;
    j["backend"] = args.method;
    j["rank"] = args.rank;
    j["iters"] = args.iters;
    j["u_mode"] = args.u_mode;
    j["blur_sigma"] = args.blur_sigma;
    j["missing_fraction"] = args.missing_fraction;
    j["psnr_final"] = res.history.empty() ? json() : json(res.history.back().psnr_db);
    j["ssim_final"] = res.history.empty() ? json() : json(res.history.back().ssim);
    j["masked_psnr"] = psnr(masked, truth);
    j["time_s"] = elapsed;
    write_lines(stager.stage("report.jsonl"), {j.dump()});

    stager.commit();
    if (!res.history.empty())
        std::printf("cur %s: rank=%ld backend=%s PSNR=%.2f dB SSIM=%.4f (%.1f s)\n",
                    args.input.c_str(), args.rank, args.method.c_str(), res.history.back().psnr_db,
                    res.history.back().ssim, elapsed);
    return 0;
}

// --------------------------------------------------------------- lorenz ----

struct LorenzArgs {
    std::string dts = "0.02,0.05";
    int order = 31;
    long tau = 1;
    double noise = 1e-3;
    std::string methods = "qsvd,qns,qsai";
    bool dump_signal = false;
    std::uint64_t seed = 42;
    std::string out = ".";
};

int cmd_lorenz(const LorenzArgs& args) {
    std::vector<double> dts;
    for (const auto& s : split_list(args.dts)) dts.push_back(std::stod(s));
    std::vector<std::string> methods = split_list(args.methods);

    struct Cell {
        double dt;
        std::string method;
        double epsilon = 0.0;
        double time_s = 0.0;
    };
    std::vector<Cell> cells;
    for (double dt : dts)
        for (const auto& m : methods) cells.push_back(Cell{dt, m, 0.0, 0.0});

    // Integrate once per dt; the sweep cells share the frame.
    std::vector<SignalFrame> frames;
    std::vector<FilterSystem> systems;
    for (double dt : dts) {
        LorenzParams p;
        p.dt = dt;
        frames.push_back(make_signal_frame(lorenz_integrate(p), args.tau, args.noise, args.seed));
        systems.push_back(build_filter_system(frames.back(), args.order));
    }

    std::vector<std::function<void()>> jobs;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        jobs.push_back([&, ci] {
            Cell& c = cells[ci];
            const std::size_t di = ci / methods.size();
            const auto t0 = Clock::now();
            const FilterResult fr = solve_filter(systems[di], to_backend(c.method));
            c.time_s = seconds_since(t0);
            c.epsilon = fr.epsilon;
        });
    run_cells(std::move(jobs));

    OutputStager stager(args.out);
    std::vector<std::string> csv, jsonl;
    csv.push_back(csv_comment(args.seed, 1e-10) + kVersion + " order=" + std::to_string(args.order));
    csv.push_back("dt,backend,time_s,epsilon");
    for (const auto& c : cells) {
        csv.push_back(fd(c.dt) + "," + c.method + "," + fd(c.time_s) + "," + fd(c.epsilon));
        json j = base_report("lorenz", args.seed, 1e-10);
        j["dt"] = c.dt;
        j["backend"] = c.method;
        j["order"] = args.order;
        j["epsilon"] = c.epsilon;
        j["time_s"] = c.time_s;
        jsonl.push_back(j.dump());
    }
    write_lines(stager.stage("lorenz.csv"), csv);
    write_lines(stager.stage("report.jsonl"), jsonl);

    if (args.dump_signal)
        for (std::size_t di = 0; di < dts.size(); ++di) {
            std::vector<std::string> dump;
            dump.push_back("t,u,v,w");
            const SignalFrame& f = frames[di];
            for (std::size_t i = 0; i < f.t.size(); ++i)
                dump.push_back(fd(f.t[i]) + "," + fd(f.s[i].x) + "," + fd(f.s[i].y) + "," +
                               fd(f.s[i].z));
            write_lines(stager.stage("signal_dt" + std::to_string(di) + ".csv"), dump);
        }

    stager.commit();
    for (const auto& c : cells)
        std::printf("lorenz dt=%.3f %-6s epsilon=%.3e (%.2f s)\n", c.dt, c.method.c_str(),
                    c.epsilon, c.time_s);
    return 0;
}

// ------------------------------------------------------------- selftest ----

int cmd_selftest() {
    const SelftestResult res = run_selftest();
    std::printf("alpha = %.6e (rel err %.2e) %s\n", res.alpha, res.alpha_rel_err,
                res.alpha_ok ? "ok" : "FAIL");
    for (const auto& e : res.entries) {
        const std::string want =
            e.expected_iterations ? "/" + std::to_string(e.expected_iterations) : std::string();
        std::printf("%-7s iterations=%d%s entry_dev=%.2e E=[%.2e %.2e %.2e %.2e] %s\n",
                    e.method.c_str(), e.iterations, want.c_str(), e.max_entry_dev, e.penrose[0],
                    e.penrose[1], e.penrose[2], e.penrose[3],
                    e.entries_ok && e.iterations_ok ? "ok" : "FAIL");
    }
    std::printf("selftest %s\n", res.passed ? "PASSED" : "FAILED");
    return res.passed ? 0 : 1;
}

}  // namespace
}  // namespace quatern::cli

int main(int argc, char** argv) {
    using namespace quatern::cli;
    CLI::App app{"quatern: quaternion pseudoinverse methods and experiments"};
    app.require_subcommand(1);

    PinvArgs pinv_args;
    auto* sub_pinv = app.add_subcommand("pinv", "pseudoinverse of a QMAT file");
    sub_pinv->add_option("input", pinv_args.input, "QMAT input path")->required();
    sub_pinv->add_option("--method", pinv_args.method, "qns|qsai|qhpi19|qrapid[:N]|qhon:p|qsvd");
    sub_pinv->add_option("--tol", pinv_args.tol, "step tolerance");
    sub_pinv->add_option("--max-iters", pinv_args.max_iters, "iteration cap");
    sub_pinv->add_option("--alpha", pinv_args.alpha, "spectral|frobenius|<value>");
    sub_pinv->add_option("--seed", pinv_args.seed, "seed for the sigma_max start vector");
    sub_pinv->add_option("--out", pinv_args.out, "output directory");

    BenchArgs bench_args;
    auto* sub_bench = app.add_subcommand("bench", "method sweep over random square matrices");
    sub_bench->add_option("--sizes", bench_args.sizes, "comma list of matrix sizes");
    sub_bench->add_option("--methods", bench_args.methods, "comma list of methods");
    sub_bench->add_option("--tol", bench_args.tol, "step tolerance");
    sub_bench->add_option("--max-iters", bench_args.max_iters, "iteration cap");
    sub_bench->add_option("--alpha", bench_args.alpha, "spectral|frobenius|<value>");
    sub_bench->add_option("--seed", bench_args.seed, "base seed for matrix generation");
    sub_bench->add_option("--out", bench_args.out, "output directory");

    PrecondArgs precond_args;
    auto* sub_precond =
        app.add_subcommand("precond", "Gl-QFOM/Gl-QGMRES with and without QSAI preconditioning");
    sub_precond->add_option("--matrix", precond_args.matrix,
                            "Matrix Market file (default: data/saylr1.mtx, else builtin substitute)");
    sub_precond->add_option("--sizes", precond_args.sizes, "comma list of right-hand-side widths");
    sub_precond->add_option("--precond", precond_args.precond, "none|qsai|both");
    sub_precond->add_option("--tol", precond_args.rr_tol, "relative residual tolerance");
    sub_precond->add_option("--max-iters", precond_args.k_max, "Krylov iteration cap");
    sub_precond->add_option("--seed", precond_args.seed, "seed for the right-hand side");
    sub_precond->add_option("--out", precond_args.out, "output directory");

    CurArgs cur_args;
    auto* sub_cur = app.add_subcommand("cur", "CUR low-rank image completion");
    sub_cur->add_option("--input", cur_args.input, "ground-truth PPM (P6)")->required();
    sub_cur->add_option("--mask", cur_args.mask, "observation mask PGM (P5); generated if absent");
    sub_cur->add_option("--missing-fraction", cur_args.missing_fraction,
                        "fraction removed when generating the mask");
    sub_cur->add_option("--rank", cur_args.rank, "CUR rank");
    sub_cur->add_option("--iters", cur_args.iters, "impute-reconstruct sweeps");
    sub_cur->add_option("--method", cur_args.method, "pinv backend qsvd|qns|qsai|qrapid|qhpi19");
    sub_cur->add_option("--u-mode", cur_args.u_mode, "opt|cross");
    sub_cur->add_option("--blur-sigma", cur_args.blur_sigma, "Gaussian regularizer (0 = off)");
    sub_cur->add_option("--select", cur_args.select, "uniform|leverage");
    sub_cur->add_flag("--redraw", cur_args.redraw, "redraw indices every sweep");
    sub_cur->add_option("--seed", cur_args.seed, "mask/selection seed");
    sub_cur->add_option("--out", cur_args.out, "output directory");

    LorenzArgs lorenz_args;
    auto* sub_lorenz = app.add_subcommand("lorenz", "chaotic-signal filter identification");
    sub_lorenz->add_option("--dt", lorenz_args.dts, "comma list of step sizes");
    sub_lorenz->add_option("--order", lorenz_args.order, "filter order p");
    sub_lorenz->add_option("--tau", lorenz_args.tau, "delay in samples");
    sub_lorenz->add_option("--noise", lorenz_args.noise, "noise std relative to signal RMS");
    sub_lorenz->add_option("--methods", lorenz_args.methods, "comma list of backends");
    sub_lorenz->add_flag("--dump-signal", lorenz_args.dump_signal, "write t,u,v,w CSV per dt");
    sub_lorenz->add_option("--seed", lorenz_args.seed, "noise seed");
    sub_lorenz->add_option("--out", lorenz_args.out, "output directory");

    auto* sub_selftest =
        app.add_subcommand("selftest", "verify the built-in reference problem end to end");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_pinv->parsed()) return cmd_pinv(pinv_args);
        if (sub_bench->parsed()) return cmd_bench(bench_args);
        if (sub_precond->parsed()) return cmd_precond(precond_args);
        if (sub_cur->parsed()) return cmd_cur(cur_args);
        if (sub_lorenz->parsed()) return cmd_lorenz(lorenz_args);
        if (sub_selftest->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
