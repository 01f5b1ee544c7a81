#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulnse/fields.hpp"

namespace ulnse::harness {

const std::vector<std::string>& initial_generators();
const std::vector<std::string>& forcing_generators();

/// Divergence-free initial velocity scaled so that max|u| = amplitude.
///  taylor_green            sin x cos y, -cos x sin y (L a multiple of 2 pi)
///  random_bump             sum of compact stream-function bumps
///  random_band             random phases on the shell 2 <= |m| <= 6
///  rough_highfreq          energy spectrum ~ 1/k up to 2/3 of the grid cutoff
///  sinusoidal_nondecaying  a few random low modes, no decay at infinity
VectorField initial_velocity(const std::string& name, const Grid& grid, std::uint64_t seed, double amplitude);

/// Divergence-free forcing, nullopt for "none".
///  constant        amplitude * (1, 0)
///  kolmogorov      amplitude * (sin(k y), 0) with k the nearest box wavenumber
///  random_smooth   random modes |m| <= 3, max|g| = amplitude
std::optional<VectorField> forcing_field(const std::string& name, const Grid& grid, std::uint64_t seed,
                                         double amplitude, int wavenumber);

}  // namespace ulnse::harness
