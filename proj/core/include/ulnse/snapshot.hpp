#pragma once

#include <filesystem>
#include <iosfwd>

#include "ulnse/fields.hpp"

namespace ulnse {

/// Binary field snapshot: "ULNSE1", u32 n, f64 L, then n*n f64 values in
/// row-major order (index i*n + j, i along x1). Little-endian throughout.
void write_snapshot(std::ostream& out, const ScalarField& f);
ScalarField read_snapshot(std::istream& in);

void save_snapshot(const std::filesystem::path& path, const ScalarField& f);
ScalarField load_snapshot(const std::filesystem::path& path);

}  // namespace ulnse
