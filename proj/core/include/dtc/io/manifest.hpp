#pragma once

// Per-run manifest: what was run, with which parameters, and SHA-256 digests of
// every file it produced.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dtc::io {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

struct FileDigest {
  std::string path;  // relative to the manifest directory
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::json params;
  std::optional<std::uint64_t> seed;
  std::string version;
  std::string started;  // ISO 8601 UTC
  std::string finished;
  std::vector<FileDigest> outputs;
};

std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// Hashes `files` (relative to `directory`) into m.outputs and writes the manifest there.
/// Returns the manifest path.
std::string write_manifest(RunManifest& m, const std::string& directory, const std::vector<std::string>& files,
                           const std::string& name = "manifest.json");

struct Verification {
  bool ok = true;
  std::vector<std::string> problems;
};

Verification verify_manifest(const std::string& manifest_path);

}  // namespace dtc::io
