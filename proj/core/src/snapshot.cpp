#include "ulnse/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ulnse {

namespace {

constexpr std::array<char, 6> kMagic{'U', 'L', 'N', 'S', 'E', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw std::runtime_error("snapshot truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const ScalarField& f) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
    put_le<double>(out, f.grid().length());
    for (double v : f.values()) put_le<double>(out, v);
    if (!out) throw std::runtime_error("snapshot write failed");
}

ScalarField read_snapshot(std::istream& in) {
    std::array<char, 6> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw std::runtime_error("not a ULNSE1 snapshot");
    const auto n = get_le<std::uint32_t>(in);
    const auto L = get_le<double>(in);
    ScalarField f(Grid(static_cast<int>(n), L));
    for (double& v : f.values()) v = get_le<double>(in);
    return f;
}

void save_snapshot(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_snapshot(out, f);
}

ScalarField load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_snapshot(in);
}

}  // namespace ulnse
