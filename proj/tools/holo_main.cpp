// Command-line harness: simulate coherent-diffraction measurements, run the
// reconstruction algorithms, sweep parameter grids and tabulate errors.
//
// Exit codes: 0 success, 2 config/usage error, 3 geometry unsupported by the
// requested method, 4 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "holo/baselines.hpp"
#include "holo/measurement_io.hpp"
#include "holo/metrics.hpp"
#include "holo/pgm.hpp"
#include "holo/phantoms.hpp"
#include "holo/runconfig.hpp"
#include "holo/solvers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CellOutcome {
    double data_error = -1.0;
    double truth_error = -1.0;
    int iterations = 0;
    double wall_seconds = 0.0;
    std::string status = "ok";
};

holo::ImageGrid clamp01(const holo::ImageGrid& img) {
    holo::ImageGrid out = img;
    for (double& x : out.v) x = std::clamp(x, 0.0, 1.0);
    return out;
}

void write_raw_f64(const std::string& path, const holo::ImageGrid& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw holo::IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(img.v.data()),
              static_cast<std::streamsize>(img.size() * sizeof(double)));
}

bool is_baseline(const std::string& solver) { return solver == "inverse" || solver == "wiener"; }

void check_solver_name(const std::string& solver) {
    if (solver != "cg" && solver != "admm" && !is_baseline(solver))
        throw holo::ConfigError("unknown solver: " + solver +
                                " (expected cg, admm, inverse or wiener)");
}

// One reconstruction on an existing measurement. xhat_out receives the raw
// (unclamped) image.
CellOutcome run_solver(const std::string& solver, const holo::Measurement& meas,
                       const holo::RunConfig& cfg, const holo::ImageGrid* truth,
                       holo::ImageGrid& xhat_out, std::vector<holo::TracePoint>* trace_out) {
    CellOutcome out;
    const auto t0 = std::chrono::steady_clock::now();
    if (is_baseline(solver)) {
        holo::Layout geometry = meas.meta.to_layout();
        holo::FilterConfig fcfg = cfg.filter;
        xhat_out = solver == "inverse"
                       ? holo::inverse_filter(meas, geometry.reference, geometry, fcfg)
                       : holo::wiener_filter(meas, geometry.reference, geometry, fcfg);
        holo::ForwardOperator op(geometry);
        out.data_error = holo::data_relative_error(xhat_out, meas, op);
    } else {
        holo::Problem problem(meas);
        holo::ReconResult res =
            solver == "cg" ? holo::solve_cg(problem, cfg.solver) : holo::solve_admm(problem, cfg.solver);
        out.iterations = res.iterations;
        out.data_error = holo::data_relative_error(res.xhat, meas, problem.op);
        xhat_out = std::move(res.xhat);
        if (trace_out) *trace_out = std::move(res.trace);
    }
    if (truth) out.truth_error = holo::truth_relative_error(xhat_out, *truth);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const holo::RunConfig& cfg) {
    const holo::ImageGrid specimen = holo::load_input_image(cfg);
    const holo::Layout layout = holo::make_layout(specimen, cfg.reference, cfg.pinhole_radius,
                                                  cfg.resolved_gap(), cfg.os_x, cfg.os_y);
    holo::LayoutMeta meta{cfg.n, cfg.resolved_gap(), cfg.os_x, cfg.os_y,
                          holo::reference_kind_from_string(cfg.reference), cfg.pinhole_radius};
    const double np = cfg.np_list.empty() ? 1.0 : cfg.np_list.front();
    const holo::Measurement meas = holo::simulate_measurement(layout, meta, cfg.beamstop, np, cfg.seed);

    fs::create_directories(cfg.out_dir);
    holo::save_measurement(cfg.out_dir + "/measurement.holo", meas);
    holo::write_pgm(cfg.out_dir + "/intensity.pgm", holo::log_view_centered(meas.noisy));
    holo::write_pgm(cfg.out_dir + "/composite.pgm", clamp01(holo::compose(layout)));
    cfg.save(cfg.out_dir + "/config.json");

    std::cout << "wrote " << cfg.out_dir << "/measurement.holo (" << meas.noisy.rows << " x "
              << meas.noisy.cols << ", Np = " << np << ", masked " << meas.mask.masked_count()
              << " px, ybar = " << meas.ybar << ")\n";
    return 0;
}

// -------------------------------------------------------------- reconstruct

int cmd_reconstruct(const std::string& meas_path, const std::string& solver,
                    const std::string& truth_name, const holo::RunConfig& cfg) {
    check_solver_name(solver);
    const holo::Measurement meas = holo::load_measurement(meas_path);

    holo::ImageGrid truth;
    const holo::ImageGrid* truth_ptr = nullptr;
    if (!truth_name.empty()) {
        holo::RunConfig tcfg = cfg;
        tcfg.image = truth_name;
        tcfg.n = meas.meta.n;
        truth = holo::load_input_image(tcfg);
        truth_ptr = &truth;
    }

    holo::ImageGrid xhat;
    std::vector<holo::TracePoint> trace;
    const CellOutcome out = run_solver(solver, meas, cfg, truth_ptr, xhat, &trace);

    fs::create_directories(cfg.out_dir);
    holo::write_pgm(cfg.out_dir + "/xhat.pgm", clamp01(xhat));
    write_raw_f64(cfg.out_dir + "/xhat.f64", xhat);
    if (!trace.empty()) holo::write_trace_csv(cfg.out_dir + "/trace.csv", trace);
    cfg.save(cfg.out_dir + "/config.json");

    json report;
    report["measurement"] = meas_path;
    report["solver"] = solver;
    report["n"] = meas.meta.n;
    report["data_relative_error"] = out.data_error;
    if (out.truth_error >= 0.0) report["truth_relative_error"] = out.truth_error;
    report["masked"] = meas.mask.any_masked();
    report["iterations"] = out.iterations;
    report["wall_seconds"] = out.wall_seconds;
    std::ofstream rep(cfg.out_dir + "/report.json");
    rep << report.dump(2) << "\n";

    std::cout << solver << ": data error " << out.data_error;
    if (out.truth_error >= 0.0) std::cout << ", truth error " << out.truth_error;
    std::cout << ", " << out.iterations << " iterations\n";
    return 0;
}

// -------------------------------------------------------------------- sweep

struct SweepCell {
    std::string reference;
    double os = 2.0;
    int gap = 0;
    double np = 1.0;
    std::string solver;
};

int cmd_sweep(const holo::RunConfig& cfg) {
    const holo::ImageGrid specimen = holo::load_input_image(cfg);

    const std::vector<std::string> refs =
        cfg.reference_list.empty() ? std::vector<std::string>{cfg.reference} : cfg.reference_list;
    const std::vector<double> oss =
        cfg.os_list.empty() ? std::vector<double>{cfg.os_x} : cfg.os_list;
    const std::vector<int> gaps =
        cfg.gap_list.empty() ? std::vector<int>{cfg.resolved_gap()} : cfg.gap_list;

    std::vector<SweepCell> cells;
    for (const std::string& ref : refs)
        for (double os : oss)
            for (int gap : gaps)
                for (double np : cfg.np_list)
                    for (const std::string& solver : cfg.solvers) {
                        check_solver_name(solver);
                        cells.push_back({ref, os, gap, np, solver});
                    }

    fs::create_directories(cfg.out_dir);
    fs::create_directories(cfg.out_dir + "/images");
    cfg.save(cfg.out_dir + "/config.json");

    std::vector<std::string> rows(cells.size());
    holo::Measurement meas;  // cached per data group (cells iterate solver fastest)
    std::string group_key;
    for (size_t idx = 0; idx < cells.size(); ++idx) {
        const SweepCell& cell = cells[idx];
        const uint64_t seed = holo::cell_seed(cfg.seed, cfg.image, cfg.n, cell.gap, cell.os,
                                              cell.os, cell.reference, cfg.beamstop, cell.np);
        CellOutcome out;
        holo::ImageGrid xhat;
        try {
            std::ostringstream key;
            key << cell.reference << '|' << cell.os << '|' << cell.gap << '|' << cell.np;
            if (key.str() != group_key) {
                const holo::Layout layout = holo::make_layout(
                    specimen, cell.reference, cfg.pinhole_radius, cell.gap, cell.os, cell.os);
                holo::LayoutMeta meta{cfg.n, cell.gap, cell.os, cell.os,
                                      holo::reference_kind_from_string(cell.reference),
                                      cfg.pinhole_radius};
                meas = holo::simulate_measurement(layout, meta, cfg.beamstop, cell.np, seed);
                group_key = key.str();
            }
            out = run_solver(cell.solver, meas, cfg, &specimen, xhat, nullptr);

            std::ostringstream img_name;
            img_name << cfg.out_dir << "/images/" << cell.reference << "_os" << cell.os << "_d"
                     << cell.gap << "_np" << cell.np << "_" << cell.solver << ".pgm";
            holo::write_pgm(img_name.str(), clamp01(xhat));
        } catch (const holo::GeometryError&) {
            out.status = "error:geometry";
        } catch (const holo::ConfigError&) {
            out.status = "error:config";
        } catch (const std::exception&) {
            out.status = "error:numeric";
        }

        std::ostringstream row;
        row.precision(17);
        row << cfg.image << ',' << cfg.n << ',' << cell.gap << ',' << cell.os << ',' << cell.os
            << ',' << cell.reference << ',' << cfg.beamstop << ',' << cell.np << ','
            << cell.solver << ',' << seed << ',';
        if (out.status == "ok")
            row << out.data_error << ',' << out.truth_error << ',' << out.iterations;
        else
            row << ",,";
        row << ',' << out.wall_seconds << ',' << out.status;
        rows[idx] = row.str();
        std::cout << rows[idx] << "\n";
    }

    std::ofstream csv(cfg.out_dir + "/sweep.csv");
    csv << "# holo sweep csv v1\n";
    csv << "image,n,gap,os_x,os_y,reference,beamstop,np,solver,seed,"
           "data_error,truth_error,iterations,wall_seconds,status\n";
    for (const std::string& row : rows) csv << row << "\n";

    std::cout << "wrote " << cfg.out_dir << "/sweep.csv (" << rows.size() << " rows)\n";
    return 0;
}

// ------------------------------------------------------------------ compare

int cmd_compare(const std::vector<std::string>& reports) {
    std::cout << "solver      data_error      truth_error     iters   wall_s  source\n";
    for (const std::string& path : reports) {
        std::ifstream in(path);
        if (!in) throw holo::ConfigError("cannot open report: " + path);
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw holo::ConfigError("bad report " + path + ": " + e.what());
        }
        char line[256];
        std::snprintf(line, sizeof(line), "%-10s  %-14.6g  %-14.6g  %-6d  %-6.1f  %s",
                      j.value("solver", std::string("?")).c_str(),
                      j.value("data_relative_error", -1.0),
                      j.value("truth_relative_error", -1.0), j.value("iterations", 0),
                      j.value("wall_seconds", 0.0), path.c_str());
        std::cout << line << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- plumbing

// Options shared by the geometry/noise commands; values given on the command
// line override the config file.
struct Flags {
    std::string config_path;
    std::string image, reference;
    int n = 0, pinhole_radius = 0, gap = 0, beamstop = 0;
    double os = 0.0, os_x = 0.0, os_y = 0.0;
    std::vector<double> np;
    std::vector<std::string> solvers, references;
    std::vector<double> os_values;
    std::vector<int> gap_values;
    uint64_t seed = 0;
    std::string out_dir;
    int max_iters = 0;
    double grad_tol = 0.0, rho = 0.0, primal_tol = 0.0, wiener_lambda = 0.0;
    std::string init_mode;
};

void add_common_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config_path, "JSON config file with defaults for all flags");
    app->add_option("--image", f.image, "input image path or phantom:<disc|shepp|texture>");
    app->add_option("--n", f.n, "specimen size in pixels");
    app->add_option("--reference", f.reference, "reference kind: ura|block|pinhole|none");
    app->add_option("--pinhole-radius", f.pinhole_radius, "pinhole radius in pixels (0 = n/32)");
    app->add_option("--gap", f.gap, "specimen-reference gap d in pixels (-1 = n)");
    app->add_option("--os", f.os, "oversampling ratio for both axes");
    app->add_option("--os-x", f.os_x, "row-axis oversampling");
    app->add_option("--os-y", f.os_y, "column-axis oversampling");
    app->add_option("--beamstop", f.beamstop, "beamstop block size k (odd, 0 = none)");
    app->add_option("--np", f.np, "photon flux per pixel (0 = noiseless)");
    app->add_option("--seed", f.seed, "master RNG seed");
    app->add_option("--out", f.out_dir, "output directory");
    app->add_option("--max-iters", f.max_iters, "solver iteration cap");
    app->add_option("--grad-tol", f.grad_tol, "CG gradient RMS tolerance");
    app->add_option("--rho", f.rho, "ADMM penalty parameter");
    app->add_option("--primal-tol", f.primal_tol, "ADMM primal residual tolerance");
    app->add_option("--wiener-lambda", f.wiener_lambda, "Wiener regularizer (0 = auto)");
    app->add_option("--init", f.init_mode, "solver init: zeros|wiener-warm-start");
}

holo::RunConfig resolve_config(const CLI::App* app, const Flags& f) {
    holo::RunConfig cfg;
    if (app->count("--config")) cfg = holo::RunConfig::load(f.config_path);
    if (app->count("--image")) cfg.image = f.image;
    if (app->count("--n")) cfg.n = f.n;
    if (app->count("--reference")) cfg.reference = f.reference;
    if (app->count("--pinhole-radius")) cfg.pinhole_radius = f.pinhole_radius;
    if (app->count("--gap")) cfg.gap = f.gap;
    if (app->count("--os")) cfg.os_x = cfg.os_y = f.os;
    if (app->count("--os-x")) cfg.os_x = f.os_x;
    if (app->count("--os-y")) cfg.os_y = f.os_y;
    if (app->count("--beamstop")) cfg.beamstop = f.beamstop;
    if (app->count("--np")) cfg.np_list = f.np;
    if (app->count("--seed")) cfg.seed = f.seed;
    if (app->count("--out")) cfg.out_dir = f.out_dir;
    if (app->count("--max-iters")) cfg.solver.max_iters = f.max_iters;
    if (app->count("--grad-tol")) cfg.solver.grad_tol = f.grad_tol;
    if (app->count("--rho")) cfg.solver.rho = f.rho;
    if (app->count("--primal-tol")) cfg.solver.primal_tol = f.primal_tol;
    if (app->count("--wiener-lambda")) cfg.filter.wiener_lambda = f.wiener_lambda;
    if (app->count("--init")) {
        if (f.init_mode == "zeros")
            cfg.solver.init = holo::SolverConfig::Init::Zeros;
        else if (f.init_mode == "wiener-warm-start")
            cfg.solver.init = holo::SolverConfig::Init::WienerWarmStart;
        else
            throw holo::ConfigError("unknown init mode: " + f.init_mode);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holographic phase-retrieval toolkit"};
    app.require_subcommand(1);

    Flags f;
    std::string meas_path, solver = "cg", truth_name;
    std::vector<std::string> reports;

    CLI::App* simulate = app.add_subcommand("simulate", "generate a noisy measurement");
    add_common_flags(simulate, f);

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "reconstruct from a measurement file");
    reconstruct->add_option("measurement", meas_path, "measurement file")->required();
    reconstruct->add_option("--solver", solver, "cg|admm|inverse|wiener");
    reconstruct->add_option("--truth", truth_name, "ground-truth image for the extra error column");
    add_common_flags(reconstruct, f);

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep and write a CSV table");
    sweep->add_option("--solvers", f.solvers, "solvers to run per cell");
    sweep->add_option("--references", f.references, "reference-kind sweep axis");
    sweep->add_option("--os-values", f.os_values, "oversampling sweep axis (applied to both axes)");
    sweep->add_option("--gap-values", f.gap_values, "separation sweep axis in pixels");
    add_common_flags(sweep, f);

    CLI::App* compare = app.add_subcommand("compare", "tabulate existing reconstruction reports");
    compare->add_option("reports", reports, "report.json files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(resolve_config(simulate, f));
        if (reconstruct->parsed()) {
            holo::RunConfig cfg = resolve_config(reconstruct, f);
            if (reconstruct->count("--out") == 0 && reconstruct->count("--config") == 0)
                cfg.out_dir = "recon";
            return cmd_reconstruct(meas_path, solver, truth_name, cfg);
        }
        if (sweep->parsed()) {
            holo::RunConfig cfg = resolve_config(sweep, f);
            if (sweep->count("--solvers")) cfg.solvers = f.solvers;
            if (sweep->count("--references")) cfg.reference_list = f.references;
            if (sweep->count("--os-values")) cfg.os_list = f.os_values;
            if (sweep->count("--gap-values")) cfg.gap_list = f.gap_values;
            return cmd_sweep(cfg);
        }
        if (compare->parsed()) return cmd_compare(reports);
    } catch (const holo::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const holo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const holo::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const holo::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 4;
    } catch (const holo::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
