#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holo/baselines.hpp"
#include "holo/solvers.hpp"

namespace holo {

// Full experiment description: geometry, reference, noise, solver choices
// and sweep axes. Every field has a default; the resolved config is written
// into each output directory so runs can be reproduced exactly.
struct RunConfig {
    std::string image = "phantom:disc";  // file path or phantom:<name>
    int n = 64;
    std::string reference = "ura";
    int pinhole_radius = 0;  // 0 = default n/32
    int gap = -1;            // -1 = default d = n
    double os_x = 2.0;
    double os_y = 2.0;
    int beamstop = 0;  // odd block size k, 0 = none
    std::vector<double> np_list = {1.0};
    std::vector<std::string> solvers = {"cg"};
    uint64_t seed = 1;
    std::string out_dir = "out";

    // optional sweep axes; when empty the scalar fields above are used
    std::vector<std::string> reference_list;
    std::vector<double> os_list;  // applied to both axes
    std::vector<int> gap_list;

    SolverConfig solver;
    FilterConfig filter;

    int resolved_gap() const { return gap < 0 ? n : gap; }

    std::string to_json_text() const;
    static RunConfig from_json_text(const std::string& text);
    static RunConfig load(const std::string& path);
    void save(const std::string& path) const;
};

// Load the image named by cfg.image (phantom:<name> or a PGM path) at size
// cfg.n; file images are required to already have the right size.
ImageGrid load_input_image(const RunConfig& cfg);

// Geometry for one experiment cell.
Layout make_layout(const ImageGrid& specimen, const std::string& reference, int pinhole_radius,
                   int gap, double os_x, double os_y);

// Stable per-cell RNG seed derived from the master seed and the
// data-defining parameters (solver excluded, so every solver sees the same
// measurement).
uint64_t cell_seed(uint64_t master_seed, const std::string& image, int n, int gap,
                   double os_x, double os_y, const std::string& reference, int beamstop,
                   double np);

}  // namespace holo
