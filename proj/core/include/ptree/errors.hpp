#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptree {

// Bad user input: malformed sequence, out-of-range node id, invalid config.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A rejection sampler ran out of attempts; carries diagnostics.
class feasibility_error : public std::runtime_error {
 public:
  feasibility_error(const std::string& what, std::int64_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::int64_t attempts() const { return attempts_; }

 private:
  std::int64_t attempts_;
};

}  // namespace ptree
