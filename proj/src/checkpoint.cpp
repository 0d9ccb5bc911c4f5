#include "leray/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "leray/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace leray {

namespace {

constexpr char kMagic[4] = {'L', 'R', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

void write_f64(std::ofstream& out, double x) {
    out.write(reinterpret_cast<const char*>(&x), sizeof(x));
}

double read_f64(std::ifstream& in) {
    double x = 0.0;
    in.read(reinterpret_cast<char*>(&x), sizeof(x));
    return x;
}

}  // namespace

void write_checkpoint(const std::string& path, const VectorField& f) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "checkpoint: cannot open " + path + " for writing");
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), sizeof(kVersion));
    write_f64(out, static_cast<double>(f.grid.n));
    write_f64(out, f.grid.half_width);
    for (int c = 0; c < 3; ++c)
        out.write(reinterpret_cast<const char*>(f[c].v.data()),
                  static_cast<std::streamsize>(f[c].v.size() * sizeof(double)));
    if (!out) fail(ErrorKind::io, "checkpoint: write failed for " + path);
}

VectorField read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "checkpoint: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        fail(ErrorKind::io, "checkpoint: bad magic in " + path);
    std::uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (!in || version != kVersion)
        fail(ErrorKind::io, "checkpoint: unsupported version in " + path);
    const double n_raw = read_f64(in);
    const double L = read_f64(in);
    if (!in) fail(ErrorKind::io, "checkpoint: truncated header in " + path);
    const int n = static_cast<int>(n_raw);
    if (static_cast<double>(n) != n_raw || n < 8 || n % 2 != 0 || !(L > 0.0))
        fail(ErrorKind::io, "checkpoint: invalid grid header in " + path);

    VectorField f(GridSpec::make(n, L));
    for (int c = 0; c < 3; ++c) {
        in.read(reinterpret_cast<char*>(f[c].v.data()),
                static_cast<std::streamsize>(f[c].v.size() * sizeof(double)));
        if (!in) fail(ErrorKind::io, "checkpoint: truncated payload in " + path);
    }
    return f;
}

}  // namespace leray
