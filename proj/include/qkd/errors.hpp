#pragma once

#include <stdexcept>
#include <string>

namespace qkd {

/// Invalid or inconsistent system configuration. The message names the
/// offending field path (e.g. "detector1.efficiency").
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the bit-error probability is requested but no sifted key
/// is generated (p_sigma == 0), so the QBER is 0/0.
class NoSiftedKeyError : public std::runtime_error {
  public:
    NoSiftedKeyError() : std::runtime_error("no sifted key: p_sigma is zero, QBER undefined") {}
};

} // namespace qkd
