#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ulnse::harness {

struct Artifact {
    std::string path;  ///< relative to the manifest directory
    std::string sha256;
};

struct RunManifest {
    std::string experiment;
    std::string status;  ///< "ok" or "failed"
    std::string error;
    std::string code_version;
    std::string started;
    std::string finished;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<Artifact> artifacts;

    const std::string* config_value(const std::string& key) const;
};

std::string code_version();
std::string utc_timestamp();
std::string sha256_file(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

/// Throws std::runtime_error naming the first missing or modified artifact.
void verify_artifacts(const RunManifest& m, const std::filesystem::path& dir);

}  // namespace ulnse::harness
