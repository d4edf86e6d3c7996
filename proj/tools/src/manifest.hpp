#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ptree::cli {

// Sidecar metadata for every file-producing run: the command, resolved
// options, seed, library version, timestamp and SHA-256 of each output.
// Re-running with the same options and seed reproduces the digests bit-exact.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config;
  std::uint64_t seed = 0;
  bool has_seed = false;

  // Writes <primary_output>.manifest.json covering all outputs.
  void write(const std::vector<std::string>& outputs) const;
};

std::string sha256_hex(const std::string& bytes);

}  // namespace ptree::cli
