#pragma once

// Text persistence for reconstruction coefficients: `#`-prefixed header lines
// followed by one decimal coefficient per line.

#include "hefp/momentrec.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hefp::cache {

inline constexpr const char* kGeneratorVersion = "momentrec-lu-refine/1";

struct CoefficientCacheFile {
  ModelId model = ModelId::Spin0;
  unsigned d = 0;
  unsigned digits = 0;
  unsigned internal_digits = 0;
  std::string generator;
  std::string residual_norm;
  std::vector<std::string> body;  // c_0 .. c_d
};

/// Raised when a cache disagrees with the requested configuration or with
/// itself; `field` names the offending header entry.
struct CacheMismatch : std::runtime_error {
  CacheMismatch(std::string field_name, const std::string& what)
      : std::runtime_error(what), field(std::move(field_name)) {}
  std::string field;
};

CoefficientCacheFile from_reconstruction(const momentrec::ReconstructionCoefficients& rec);
momentrec::ReconstructionCoefficients to_reconstruction(const CoefficientCacheFile& file);

std::string serialize(const CoefficientCacheFile& file);
CoefficientCacheFile parse(const std::string& text);

/// Writes to `path.tmp` and renames over `path`.
void write_atomic(const std::string& path, const CoefficientCacheFile& file);
CoefficientCacheFile read(const std::string& path);

/// Loads, checks the generator version and re-verifies the moment residual
/// (must reproduce the stored value within 10x or sit below the target).
momentrec::ReconstructionCoefficients load_verified(const std::string& path);

}  // namespace hefp::cache
