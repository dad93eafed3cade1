#pragma once

#include <string>
#include <vector>

#include "holo/types.hpp"

namespace holo {

// Built-in synthetic test images, deterministic, values in [0,1]:
//   disc    - bright disc with an off-center hole
//   shepp   - Shepp-Logan style ellipse phantom
//   texture - procedural blob/stripe texture with sharp and smooth detail
ImageGrid make_phantom(const std::string& name, int n);

const std::vector<std::string>& phantom_names();

}  // namespace holo
