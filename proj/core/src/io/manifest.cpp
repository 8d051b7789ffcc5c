#include "dtc/io/manifest.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>

#include <openssl/evp.h>

#include "dtc/error.hpp"
#include "dtc/io/csv.hpp"

namespace dtc::io {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::Io, "SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& d : m.outputs) outputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
  nlohmann::json j = {{"command", m.command}, {"params", m.params},   {"version", m.version},
                      {"started", m.started}, {"finished", m.finished}, {"outputs", outputs}};
  j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
  return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.params = j.at("params");
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    for (const auto& o : j.at("outputs")) {
      m.outputs.push_back({o.at("path").get<std::string>(), o.at("sha256").get<std::string>()});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("manifest: ") + e.what());
  }
}

std::string write_manifest(RunManifest& m, const std::string& directory, const std::vector<std::string>& files,
                           const std::string& name) {
  m.outputs.clear();
  for (const auto& f : files) m.outputs.push_back({f, sha256_file((fs::path(directory) / f).string())});
  const std::string path = (fs::path(directory) / name).string();
  write_file(path, to_json(m).dump(2) + "\n");
  return path;
}

Verification verify_manifest(const std::string& manifest_path) {
  Verification v;
  const RunManifest m = manifest_from_json(nlohmann::json::parse(read_file(manifest_path)));
  const fs::path dir = fs::path(manifest_path).parent_path();
  for (const auto& d : m.outputs) {
    const fs::path file = dir / d.path;
    if (!fs::exists(file)) {
      v.ok = false;
      v.problems.push_back(d.path + ": missing");
      continue;
    }
    if (sha256_file(file.string()) != d.sha256) {
      v.ok = false;
      v.problems.push_back(d.path + ": digest mismatch");
    }
  }
  return v;
}

}  // namespace dtc::io
