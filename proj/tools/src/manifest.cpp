#include "manifest.hpp"

#include <ctime>

#include <openssl/evp.h>

#include "ptree/json_io.hpp"
#include "ptree/version.hpp"

namespace ptree::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

void RunManifest::write(const std::vector<std::string>& outputs) const {
  if (outputs.empty()) return;
  nlohmann::json j;
  j["command"] = command;
  j["argv"] = argv;
  j["config"] = config;
  if (has_seed) j["seed"] = seed;
  j["library_version"] = ptree::kVersion;
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  j["timestamp"] = stamp;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& path : outputs) {
    outs.push_back({{"path", path}, {"sha256", sha256_hex(ptree::read_file(path))}});
  }
  j["outputs"] = std::move(outs);
  ptree::write_file(outputs.front() + ".manifest.json", j.dump(2) + "\n");
}

}  // namespace ptree::cli
