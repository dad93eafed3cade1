#include "holo/measurement_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace holo {

static_assert(std::endian::native == std::endian::little,
              "measurement files are little-endian; big-endian hosts need byte swaps");

namespace {

constexpr char kMagic[8] = {'H', 'O', 'L', 'O', 'M', 'E', 'A', '1'};

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

}  // namespace

void save_measurement(const std::string& path, const Measurement& meas) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write measurement: " + path);
    out.write(kMagic, sizeof(kMagic));
    put<int32_t>(out, meas.meta.n);
    put<int32_t>(out, meas.meta.gap);
    put<int32_t>(out, meas.noisy.rows);
    put<int32_t>(out, meas.noisy.cols);
    put<int32_t>(out, meas.mask.omega1);
    put<int32_t>(out, meas.mask.omega2);
    put<int32_t>(out, static_cast<int32_t>(meas.meta.ref_kind));
    put<int32_t>(out, meas.meta.pinhole_radius);
    put<double>(out, meas.meta.os_x);
    put<double>(out, meas.meta.os_y);
    put<double>(out, meas.np);
    put<double>(out, meas.ybar);
    put<uint64_t>(out, meas.seed);
    out.write(reinterpret_cast<const char*>(meas.noisy.v.data()),
              static_cast<std::streamsize>(meas.noisy.size() * sizeof(double)));
    if (!out) throw IoError("failed writing measurement: " + path);
}

Measurement load_measurement(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open measurement: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not a measurement file: " + path);

    Measurement meas;
    meas.meta.n = get<int32_t>(in);
    meas.meta.gap = get<int32_t>(in);
    const int rows = get<int32_t>(in);
    const int cols = get<int32_t>(in);
    const int omega1 = get<int32_t>(in);
    const int omega2 = get<int32_t>(in);
    const int kind = get<int32_t>(in);
    meas.meta.pinhole_radius = get<int32_t>(in);
    meas.meta.os_x = get<double>(in);
    meas.meta.os_y = get<double>(in);
    meas.np = get<double>(in);
    meas.ybar = get<double>(in);
    meas.seed = get<uint64_t>(in);
    if (!in || rows < 1 || cols < 1 || meas.meta.n < 1 || kind < 0 || kind > 3)
        throw IoError("corrupt measurement header: " + path);
    meas.meta.ref_kind = static_cast<ReferenceKind>(kind);

    meas.mask = BeamstopMask::centered(rows, cols, omega1, omega2);
    meas.noisy = ImageGrid(rows, cols);
    in.read(reinterpret_cast<char*>(meas.noisy.v.data()),
            static_cast<std::streamsize>(meas.noisy.size() * sizeof(double)));
    if (static_cast<size_t>(in.gcount()) != meas.noisy.size() * sizeof(double))
        throw IoError("truncated measurement data: " + path);
    return meas;
}

}  // namespace holo
