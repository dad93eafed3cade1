#pragma once

#include <string>

#include "holo/detector.hpp"

namespace holo {

// Binary measurement file: a fixed header carrying the geometry
// (n, d, OS, omega1, omega2, Np, Ybar, seed, reference kind) followed by the
// raw little-endian float64 array of Ytilde, row-major.
void save_measurement(const std::string& path, const Measurement& meas);
Measurement load_measurement(const std::string& path);

}  // namespace holo
