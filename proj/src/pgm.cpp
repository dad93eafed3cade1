#include "holo/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace holo {

namespace {

// next whitespace-delimited token, skipping '#' comment lines
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (!std::isspace(ch)) {
            tok.push_back(static_cast<char>(ch));
            break;
        }
    }
    while ((ch = in.get()) != EOF && !std::isspace(ch)) tok.push_back(static_cast<char>(ch));
    return tok;
}

}  // namespace

ImageGrid read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image: " + path);
    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2") throw IoError("unsupported image format (want P5/P2 PGM): " + path);

    const std::string ws = next_token(in), hs = next_token(in), ms = next_token(in);
    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(ws);
        height = std::stoi(hs);
        maxval = std::stoi(ms);
    } catch (const std::exception&) {
        throw IoError("malformed PGM header: " + path);
    }
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
        throw IoError("malformed PGM header: " + path);

    ImageGrid img(height, width);
    const double scale = 1.0 / maxval;
    if (magic == "P2") {
        for (double& x : img.v) {
            const std::string tok = next_token(in);
            if (tok.empty()) throw IoError("truncated PGM data: " + path);
            x = std::clamp(std::stoi(tok) * scale, 0.0, 1.0);
        }
    } else {
        const bool wide = maxval > 255;
        std::vector<unsigned char> raw(img.size() * (wide ? 2 : 1));
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<size_t>(in.gcount()) != raw.size()) throw IoError("truncated PGM data: " + path);
        for (size_t i = 0; i < img.size(); ++i) {
            const int value = wide ? (raw[2 * i] << 8 | raw[2 * i + 1]) : raw[i];
            img.v[i] = std::clamp(value * scale, 0.0, 1.0);
        }
    }
    return img;
}

void write_pgm(const std::string& path, const ImageGrid& img, int bits) {
    if (bits != 8 && bits != 16) throw ConfigError("PGM export supports 8 or 16 bits");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write image: " + path);
    const int maxval = bits == 8 ? 255 : 65535;
    out << "P5\n" << img.cols << ' ' << img.rows << '\n' << maxval << '\n';
    for (double x : img.v) {
        const int q = static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * maxval));
        if (bits == 16) out.put(static_cast<char>(q >> 8));
        out.put(static_cast<char>(q & 0xFF));
    }
    if (!out) throw IoError("failed writing image: " + path);
}

ImageGrid log_view_centered(const ImageGrid& intensity) {
    double vmax = 0.0;
    for (double x : intensity.v) vmax = std::max(vmax, x);
    const double denom = std::log1p(1e6);  // 6 decades of dynamic range
    ImageGrid view(intensity.rows, intensity.cols);
    for (int r = 0; r < intensity.rows; ++r) {
        for (int c = 0; c < intensity.cols; ++c) {
            const int sr = (r + intensity.rows / 2) % intensity.rows;
            const int sc = (c + intensity.cols / 2) % intensity.cols;
            const double x = intensity.at(r, c);
            view.at(sr, sc) = vmax > 0.0 ? std::log1p(std::max(x, 0.0) * 1e6 / vmax) / denom : 0.0;
        }
    }
    return view;
}

}  // namespace holo
