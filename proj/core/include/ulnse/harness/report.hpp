#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ulnse/harness/manifest.hpp"

namespace ulnse::harness {

/// One claim checked by an experiment. `upper` selects value <= threshold,
/// otherwise value >= threshold.
struct SummaryRow {
    std::string claim;
    std::string metric;
    double value = 0.0;
    double threshold = 0.0;
    bool upper = true;
    /// Recorded for reference; always passes.
    bool info = false;
    bool pass() const;
};

/// Summary of a run directory without checksum validation.
std::vector<SummaryRow> summarize_run(const RunManifest& m, const std::filesystem::path& dir);

/// Recomputes the summary of a run from its CSVs after checksum validation.
std::vector<SummaryRow> summarize(const std::filesystem::path& manifest_path);
std::string format_summary(const std::string& experiment, const std::vector<SummaryRow>& rows);
/// summarize + format_summary.
std::string emit_report(const std::filesystem::path& manifest_path);

struct DiffRow {
    std::string file;
    std::string column;
    std::size_t matched = 0;
    double max_rel_diff = 0.0;
};

/// Relative differences |a - b| / max(|a|, |b|, floor) of every shared
/// column of every shared CSV at matched times. Throws on mismatched
/// experiments.
std::vector<DiffRow> compare_runs(const std::filesystem::path& manifest_a, const std::filesystem::path& manifest_b,
                                  double floor = 1e-300);
std::string format_diff(const std::vector<DiffRow>& rows);

}  // namespace ulnse::harness
