#include "gmhd/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace gmhd {
namespace {

constexpr char magic[6] = {'G', 'M', 'H', 'D', '2', '\0'};
constexpr std::size_t header_bytes = 6 + 1 + 8 + 5 * 8;

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::vector<unsigned char>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    const std::uint64_t bits = get_u64(p);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void put_coefficients(std::vector<unsigned char>& out,
                      const std::vector<std::complex<double>>& c) {
    for (const auto& z : c) {
        put_f64(out, z.real());
        put_f64(out, z.imag());
    }
}

std::vector<std::complex<double>> get_coefficients(const unsigned char* p, std::size_t count) {
    std::vector<std::complex<double>> c(count);
    for (std::size_t i = 0; i < count; ++i)
        c[i] = {get_f64(p + 16 * i), get_f64(p + 16 * i + 8)};
    return c;
}

}  // namespace

void save_checkpoint(const MhdState& state, const SimParams& params, const std::string& path) {
    const auto w = spectral_values(state.w());
    const auto j = spectral_values(state.j());

    std::vector<unsigned char> buf;
    buf.reserve(header_bytes + 32 * w.size());
    buf.insert(buf.end(), magic, magic + 6);
    buf.push_back(checkpoint_version);
    put_u64(buf, static_cast<std::uint64_t>(state.grid()->n()));
    put_f64(buf, state.time());
    put_f64(buf, params.nu);
    put_f64(buf, params.eta);
    put_f64(buf, params.alpha);
    put_f64(buf, params.beta);
    put_coefficients(buf, w);
    put_coefficients(buf, j);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("checkpoint: cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw IoError("checkpoint: write failure on '" + path + "'");
}

CheckpointData load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("checkpoint: cannot open '" + path + "'");
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("checkpoint: read failure on '" + path + "'");

    if (buf.size() < header_bytes || std::memcmp(buf.data(), magic, 6) != 0)
        throw CorruptHeaderError("checkpoint: bad magic in '" + path + "'");
    if (buf[6] != checkpoint_version)
        throw VersionMismatchError("checkpoint: unsupported format version " +
                                   std::to_string(static_cast<int>(buf[6])));

    const std::uint64_t n64 = get_u64(buf.data() + 7);
    if (n64 < 8 || n64 > (1u << 16) || (n64 & (n64 - 1)) != 0)
        throw CorruptHeaderError("checkpoint: implausible grid size");
    const int n = static_cast<int>(n64);
    const std::size_t count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (buf.size() != header_bytes + 32 * count)
        throw CorruptHeaderError("checkpoint: file size does not match grid size");

    const double time = get_f64(buf.data() + 15);
    SimParams params;
    params.nu = get_f64(buf.data() + 23);
    params.eta = get_f64(buf.data() + 31);
    params.alpha = get_f64(buf.data() + 39);
    params.beta = get_f64(buf.data() + 47);
    params.n = n;
    try {
        params.validate();
    } catch (const BadSpecError& e) {
        throw CorruptHeaderError(std::string("checkpoint: invalid parameters: ") + e.what());
    }

    GridPtr grid = make_grid(n);
    auto w = get_coefficients(buf.data() + header_bytes, count);
    auto j = get_coefficients(buf.data() + header_bytes + 16 * count, count);
    MhdState state = MhdState::from_vorticity(ScalarField::from_spectral(grid, std::move(w)),
                                              ScalarField::from_spectral(grid, std::move(j)),
                                              time);
    return {std::move(state), params};
}

}  // namespace gmhd
