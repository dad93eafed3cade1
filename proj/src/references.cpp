#include "holo/references.hpp"

#include <algorithm>
#include <vector>

namespace holo {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

// chi[x] = +1 if x is a nonzero quadratic residue mod p, -1 if a nonresidue,
// 0 for x = 0.
std::vector<int> quadratic_character(int p) {
    std::vector<int> chi(static_cast<size_t>(p), -1);
    chi[0] = 0;
    for (int x = 1; x < p; ++x) chi[static_cast<size_t>(x) * x % p] = 1;
    return chi;
}

}  // namespace

void largest_twin_primes(int n, int& r, int& s) {
    for (int cand = n; cand >= 5; --cand) {
        if (is_prime(cand) && is_prime(cand - 2)) {
            r = cand;
            s = cand - 2;
            return;
        }
    }
    throw ConfigError("URA reference requires n >= 5 (no twin-prime core fits)");
}

ImageGrid ura_core(int r, int s) {
    if (!is_prime(r) || !is_prime(s) || r != s + 2)
        throw ConfigError("URA core needs twin primes r = s + 2");
    const std::vector<int> chi_r = quadratic_character(r);
    const std::vector<int> chi_s = quadratic_character(s);
    ImageGrid core(r, s);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < s; ++j) {
            if (i == 0)
                core.at(i, j) = 0.0;
            else if (j == 0)
                core.at(i, j) = 1.0;
            else
                core.at(i, j) = chi_r[static_cast<size_t>(i)] == chi_s[static_cast<size_t>(j)] ? 1.0 : 0.0;
        }
    }
    return core;
}

ImageGrid generate_reference(ReferenceKind kind, int n, int pinhole_radius) {
    if (n < 1) throw ConfigError("reference size must be >= 1");
    ImageGrid ref(n, n);
    switch (kind) {
        case ReferenceKind::None:
            break;
        case ReferenceKind::Block:
            for (double& x : ref.v) x = 1.0;
            break;
        case ReferenceKind::Pinhole: {
            int radius = pinhole_radius > 0 ? pinhole_radius : std::max(1, n / 32);
            if (2 * radius >= n) throw ConfigError("pinhole radius must be < n/2");
            const double c = 0.5 * (n - 1);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double di = i - c, dj = j - c;
                    if (di * di + dj * dj <= static_cast<double>(radius) * radius)
                        ref.at(i, j) = 1.0;
                }
            break;
        }
        case ReferenceKind::Ura: {
            int r = 0, s = 0;
            largest_twin_primes(n, r, s);
            const ImageGrid core = ura_core(r, s);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < s; ++j) ref.at(i, j) = core.at(i, j);
            break;
        }
    }
    return ref;
}

const char* to_string(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::None: return "none";
        case ReferenceKind::Pinhole: return "pinhole";
        case ReferenceKind::Block: return "block";
        case ReferenceKind::Ura: return "ura";
    }
    return "none";
}

ReferenceKind reference_kind_from_string(const std::string& name) {
    if (name == "none") return ReferenceKind::None;
    if (name == "pinhole") return ReferenceKind::Pinhole;
    if (name == "block") return ReferenceKind::Block;
    if (name == "ura") return ReferenceKind::Ura;
    throw ConfigError("unknown reference kind: " + name);
}

}  // namespace holo
