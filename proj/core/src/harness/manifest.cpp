#include "ulnse/harness/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "ulnse/harness/csv.hpp"

#ifndef ULNSE_VERSION
#define ULNSE_VERSION "unknown"
#endif

namespace ulnse::harness {

using nlohmann::ordered_json;

const std::string* RunManifest::config_value(const std::string& key) const {
    for (const auto& [k, v] : config) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::string code_version() { return ULNSE_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    char two[3];
    for (unsigned int k = 0; k < len; ++k) {
        std::snprintf(two, sizeof two, "%02x", md[k]);
        hex += two;
    }
    return hex;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    ordered_json j;
    j["experiment"] = m.experiment;
    j["status"] = m.status;
    if (!m.error.empty()) j["error"] = m.error;
    j["code_version"] = m.code_version;
    j["started"] = m.started;
    j["finished"] = m.finished;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    ordered_json arts = ordered_json::array();
    for (const Artifact& a : m.artifacts) arts.push_back({{"path", a.path}, {"sha256", a.sha256}});
    j["artifacts"] = arts;
    write_text(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
    RunManifest m;
    try {
        const ordered_json j = ordered_json::parse(read_text(path));
        m.experiment = j.at("experiment").get<std::string>();
        m.status = j.at("status").get<std::string>();
        m.error = j.value("error", std::string());
        m.code_version = j.at("code_version").get<std::string>();
        m.started = j.at("started").get<std::string>();
        m.finished = j.at("finished").get<std::string>();
        for (const auto& [k, v] : j.at("config").items()) m.config.emplace_back(k, v.get<std::string>());
        for (const auto& a : j.at("artifacts")) {
            m.artifacts.push_back({a.at("path").get<std::string>(), a.at("sha256").get<std::string>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed manifest " + path.string() + ": " + e.what());
    }
    return m;
}

void verify_artifacts(const RunManifest& m, const std::filesystem::path& dir) {
    for (const Artifact& a : m.artifacts) {
        const auto file = dir / a.path;
        if (!std::filesystem::exists(file)) throw std::runtime_error("artifact missing: " + a.path);
        if (sha256_file(file) != a.sha256) throw std::runtime_error("checksum mismatch for artifact: " + a.path);
    }
}

}  // namespace ulnse::harness
