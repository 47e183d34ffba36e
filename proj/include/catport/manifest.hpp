#pragma once

#include <cstdint>
#include <ctime>
#include <map>
#include <string>

#include "json.hpp"

#include "catport/csv.hpp"
#include "catport/version.hpp"

namespace catport {

// Provenance sidecar emitted next to every CSV: the command, its full
// parameter set, the seed, the library version, a UTC timestamp, and the
// checksum of the data file. Re-running the command with these parameters
// reproduces the checksum (the timestamp is the one field that may differ).
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters; // ordered => stable JSON
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::string timestamp; // ISO 8601 UTC
  std::string output_file;
  std::uint64_t checksum = 0; // FNV-1a 64 of the output bytes
};

inline std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string checksum_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Serialize and atomically write the manifest next to its data file; the
// conventional path is <csv path>.manifest.json.
inline void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["timestamp"] = m.timestamp;
  j["output_file"] = m.output_file;
  j["checksum"] = checksum_hex(m.checksum);
  write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace catport
