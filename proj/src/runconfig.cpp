#include "holo/runconfig.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "holo/pgm.hpp"
#include "holo/phantoms.hpp"
#include "holo/rng.hpp"

namespace holo {

using nlohmann::json;

namespace {

SolverConfig::Init init_from_string(const std::string& s) {
    if (s == "zeros") return SolverConfig::Init::Zeros;
    if (s == "wiener-warm-start") return SolverConfig::Init::WienerWarmStart;
    if (s == "given") return SolverConfig::Init::Given;
    throw ConfigError("unknown init mode: " + s);
}

const char* init_to_string(SolverConfig::Init init) {
    switch (init) {
        case SolverConfig::Init::Zeros: return "zeros";
        case SolverConfig::Init::WienerWarmStart: return "wiener-warm-start";
        case SolverConfig::Init::Given: return "given";
    }
    return "zeros";
}

}  // namespace

std::string RunConfig::to_json_text() const {
    json j;
    j["image"] = image;
    j["n"] = n;
    j["reference"] = reference;
    j["pinhole_radius"] = pinhole_radius;
    j["gap"] = gap;
    j["oversampling"] = {os_x, os_y};
    j["beamstop"] = beamstop;
    j["np"] = np_list;
    j["solvers"] = solvers;
    j["seed"] = seed;
    j["out"] = out_dir;
    if (!reference_list.empty()) j["reference_list"] = reference_list;
    if (!os_list.empty()) j["os_list"] = os_list;
    if (!gap_list.empty()) j["gap_list"] = gap_list;
    j["solver"] = {{"max_iters", solver.max_iters},
                   {"grad_tol", solver.grad_tol},
                   {"rho", solver.rho},
                   {"primal_tol", solver.primal_tol},
                   {"armijo_c1", solver.armijo_c1},
                   {"backtrack", solver.backtrack},
                   {"initial_step", solver.initial_step},
                   {"init", init_to_string(solver.init)}};
    j["filter"] = {{"epsilon_div", filter.epsilon_div}, {"wiener_lambda", filter.wiener_lambda}};
    return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    try {
        cfg.image = j.value("image", cfg.image);
        cfg.n = j.value("n", cfg.n);
        cfg.reference = j.value("reference", cfg.reference);
        cfg.pinhole_radius = j.value("pinhole_radius", cfg.pinhole_radius);
        cfg.gap = j.value("gap", cfg.gap);
        if (j.contains("oversampling")) {
            const auto& os = j.at("oversampling");
            if (os.is_number()) {
                cfg.os_x = cfg.os_y = os.get<double>();
            } else {
                cfg.os_x = os.at(0).get<double>();
                cfg.os_y = os.at(1).get<double>();
            }
        }
        cfg.beamstop = j.value("beamstop", cfg.beamstop);
        if (j.contains("np")) {
            const auto& np = j.at("np");
            cfg.np_list = np.is_number() ? std::vector<double>{np.get<double>()}
                                         : np.get<std::vector<double>>();
        }
        if (j.contains("solvers")) {
            const auto& s = j.at("solvers");
            cfg.solvers = s.is_string() ? std::vector<std::string>{s.get<std::string>()}
                                        : s.get<std::vector<std::string>>();
        }
        cfg.seed = j.value("seed", cfg.seed);
        cfg.out_dir = j.value("out", cfg.out_dir);
        cfg.reference_list = j.value("reference_list", cfg.reference_list);
        cfg.os_list = j.value("os_list", cfg.os_list);
        cfg.gap_list = j.value("gap_list", cfg.gap_list);
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            cfg.solver.max_iters = s.value("max_iters", cfg.solver.max_iters);
            cfg.solver.grad_tol = s.value("grad_tol", cfg.solver.grad_tol);
            cfg.solver.rho = s.value("rho", cfg.solver.rho);
            cfg.solver.primal_tol = s.value("primal_tol", cfg.solver.primal_tol);
            cfg.solver.armijo_c1 = s.value("armijo_c1", cfg.solver.armijo_c1);
            cfg.solver.backtrack = s.value("backtrack", cfg.solver.backtrack);
            cfg.solver.initial_step = s.value("initial_step", cfg.solver.initial_step);
            cfg.solver.init = init_from_string(s.value("init", std::string("zeros")));
        }
        if (j.contains("filter")) {
            const auto& f = j.at("filter");
            cfg.filter.epsilon_div = f.value("epsilon_div", cfg.filter.epsilon_div);
            cfg.filter.wiener_lambda = f.value("wiener_lambda", cfg.filter.wiener_lambda);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    if (cfg.n < 1) throw ConfigError("n must be >= 1");
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void RunConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config: " + path);
    out << to_json_text();
}

ImageGrid load_input_image(const RunConfig& cfg) {
    constexpr const char* kPrefix = "phantom:";
    if (cfg.image.rfind(kPrefix, 0) == 0) return make_phantom(cfg.image.substr(8), cfg.n);
    ImageGrid img = read_pgm(cfg.image);
    if (img.rows != cfg.n || img.cols != cfg.n)
        throw ConfigError("input image is " + std::to_string(img.rows) + "x" +
                          std::to_string(img.cols) + " but n = " + std::to_string(cfg.n));
    return img;
}

Layout make_layout(const ImageGrid& specimen, const std::string& reference, int pinhole_radius,
                   int gap, double os_x, double os_y) {
    Layout layout;
    layout.specimen = specimen;
    layout.reference =
        generate_reference(reference_kind_from_string(reference), specimen.rows, pinhole_radius);
    layout.gap = gap;
    layout.os_x = os_x;
    layout.os_y = os_y;
    layout.validate();
    return layout;
}

uint64_t cell_seed(uint64_t master_seed, const std::string& image, int n, int gap, double os_x,
                   double os_y, const std::string& reference, int beamstop, double np) {
    std::ostringstream key;
    key.precision(17);
    key << image << '|' << n << '|' << gap << '|' << os_x << '|' << os_y << '|' << reference << '|'
        << beamstop << '|' << np;
    // FNV-1a over the canonical parameter string, then mixed with the master
    uint64_t h = 1469598103934665603ULL;
    for (char ch : key.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return mix64(mix64(master_seed) ^ h);
}

}  // namespace holo
