#pragma once

#include <stdexcept>
#include <string>

namespace lucasgcd {

// Failure categories shared across the library, kept as one enum so callers
// (and the CLI) can map any failure to a stable diagnostic string.
enum class errc {
  not_coprime,
  degenerate,
  not_coprime_to_a2,
  invalid_input,
  out_of_range,
  resource_limit,
  lambda_too_large,
  oracle_too_large,
  not_found,
  invalid_prime,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_coprime: return "not_coprime";
    case errc::degenerate: return "degenerate";
    case errc::not_coprime_to_a2: return "not_coprime_to_a2";
    case errc::invalid_input: return "invalid_input";
    case errc::out_of_range: return "out_of_range";
    case errc::resource_limit: return "resource_limit";
    case errc::lambda_too_large: return "lambda_too_large";
    case errc::oracle_too_large: return "oracle_too_large";
    case errc::not_found: return "not_found";
    case errc::invalid_prime: return "invalid_prime";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace lucasgcd
