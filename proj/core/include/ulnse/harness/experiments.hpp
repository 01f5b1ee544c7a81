#pragma once

#include <filesystem>
#include <optional>

#include "ulnse/harness/config.hpp"
#include "ulnse/harness/manifest.hpp"

namespace ulnse::harness {

struct RunOptions {
    /// Overrides cfg.output.
    std::optional<std::filesystem::path> out;
    /// Replaces cfg.seeds by a single seed.
    std::optional<std::uint64_t> seed;
};

/// Runs the named experiment, writing CSVs, summary.csv and manifest.json
/// into the output directory. Failures are recorded in the manifest
/// (status "failed") alongside whatever artifacts were written; the returned
/// manifest reflects that state and nothing is thrown.
RunManifest run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Directory a run writes to.
std::filesystem::path output_dir(const ExperimentConfig& cfg, const RunOptions& opts);

}  // namespace ulnse::harness
