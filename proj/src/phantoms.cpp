#include "holo/phantoms.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

namespace {

ImageGrid disc_phantom(int n) {
    ImageGrid img(n, n);
    const double c = 0.5 * (n - 1);
    const double r_outer = 0.38 * n;
    const double hole_r = 0.12 * n;
    const double hx = c + 0.15 * n, hy = c - 0.1 * n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d = std::hypot(i - c, j - c);
            const double dh = std::hypot(i - hy, j - hx);
            double v = 0.0;
            if (d <= r_outer) v = 0.9;
            if (dh <= hole_r) v = 0.25;
            img.at(i, j) = v;
        }
    }
    return img;
}

struct Ellipse {
    double value, a, b, x0, y0, phi_deg;
};

// Shepp-Logan style head phantom, intensities rescaled into [0,1].
ImageGrid shepp_phantom(int n) {
    static const Ellipse ellipses[] = {
        {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
        {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
        {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
        {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
        {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
        {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
        {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
        {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
        {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},
        {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
    };
    ImageGrid img(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double y = -(2.0 * i / (n - 1) - 1.0);
            const double x = 2.0 * j / (n - 1) - 1.0;
            double v = 0.0;
            for (const Ellipse& e : ellipses) {
                const double phi = e.phi_deg * 3.14159265358979323846 / 180.0;
                const double xr = (x - e.x0) * std::cos(phi) + (y - e.y0) * std::sin(phi);
                const double yr = -(x - e.x0) * std::sin(phi) + (y - e.y0) * std::cos(phi);
                if (xr * xr / (e.a * e.a) + yr * yr / (e.b * e.b) <= 1.0) v += e.value;
            }
            img.at(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return img;
}

// Deterministic texture: smooth blobs, a diagonal gradient and a few hard
// edges, loosely in the spirit of natural-image test charts.
ImageGrid texture_phantom(int n) {
    ImageGrid img(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = static_cast<double>(i) / n;
            const double w = static_cast<double>(j) / n;
            double v = 0.35 + 0.25 * (u + w) / 2.0;
            v += 0.18 * std::sin(9.0 * u + 3.0) * std::sin(7.0 * w + 1.0);
            v += 0.22 * std::exp(-40.0 * ((u - 0.3) * (u - 0.3) + (w - 0.65) * (w - 0.65)));
            v += 0.20 * std::exp(-60.0 * ((u - 0.7) * (u - 0.7) + (w - 0.3) * (w - 0.3)));
            if (u > 0.55 && u < 0.7 && w > 0.55 && w < 0.9) v = 0.92;  // bright bar
            if (std::hypot(u - 0.2, w - 0.2) < 0.08) v = 0.08;         // dark spot
            img.at(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return img;
}

}  // namespace

const std::vector<std::string>& phantom_names() {
    static const std::vector<std::string> names = {"disc", "shepp", "texture"};
    return names;
}

ImageGrid make_phantom(const std::string& name, int n) {
    if (n < 1) throw ConfigError("phantom size must be >= 1");
    if (name == "disc") return disc_phantom(n);
    if (name == "shepp") return shepp_phantom(n);
    if (name == "texture") return texture_phantom(n);
    throw ConfigError("unknown phantom: " + name);
}

}  // namespace holo
