#include "hefp/cache_file.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hefp::cache {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

unsigned parse_unsigned(const std::string& field, const std::string& value) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw CacheMismatch(field, "cache header '" + field + "' is not an integer: " + value);
  }
}

}  // namespace

CoefficientCacheFile from_reconstruction(const momentrec::ReconstructionCoefficients& rec) {
  CoefficientCacheFile f;
  f.model = rec.model;
  f.d = rec.d;
  f.digits = rec.digits;
  f.internal_digits = rec.internal_digits;
  f.generator = kGeneratorVersion;
  f.residual_norm = to_sci(rec.residual_norm, 6);
  const unsigned sig = rec.internal_digits + 5;
  for (const auto& c : rec.c) f.body.push_back(to_sci(c, sig));
  return f;
}

momentrec::ReconstructionCoefficients to_reconstruction(const CoefficientCacheFile& f) {
  if (f.body.size() != f.d + 1) {
    throw CacheMismatch("d", "cache holds " + std::to_string(f.body.size()) +
                                 " coefficients but header says d = " + std::to_string(f.d));
  }
  PrecisionScope scope(f.internal_digits);
  momentrec::ReconstructionCoefficients rec;
  rec.model = f.model;
  rec.d = f.d;
  rec.digits = f.digits;
  rec.internal_digits = f.internal_digits;
  rec.residual_norm = parse_real(f.residual_norm);
  for (const auto& line : f.body) rec.c.push_back(parse_real(line));
  return rec;
}

std::string serialize(const CoefficientCacheFile& f) {
  std::ostringstream os;
  os << "# hefp reconstruction coefficients c_0..c_d\n"
     << "# model: " << model_name(f.model) << "\n"
     << "# d: " << f.d << "\n"
     << "# digits: " << f.digits << "\n"
     << "# internal_digits: " << f.internal_digits << "\n"
     << "# generator: " << f.generator << "\n"
     << "# residual_norm: " << f.residual_norm << "\n";
  for (const auto& line : f.body) os << line << "\n";
  return os.str();
}

CoefficientCacheFile parse(const std::string& text) {
  CoefficientCacheFile f;
  bool have_model = false, have_d = false, have_digits = false, have_internal = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      f.body.push_back(trim(line));
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = trim(line.substr(1, colon - 1));
    const std::string value = trim(line.substr(colon + 1));
    if (key == "model") {
      try {
        f.model = parse_model(value);
      } catch (const DomainError&) {
        throw CacheMismatch("model", "cache names unknown model '" + value + "'");
      }
      have_model = true;
    } else if (key == "d") {
      f.d = parse_unsigned(key, value);
      have_d = true;
    } else if (key == "digits") {
      f.digits = parse_unsigned(key, value);
      have_digits = true;
    } else if (key == "internal_digits") {
      f.internal_digits = parse_unsigned(key, value);
      have_internal = true;
    } else if (key == "generator") {
      f.generator = value;
    } else if (key == "residual_norm") {
      f.residual_norm = value;
    }
  }
  if (!have_model) throw CacheMismatch("model", "cache header lacks 'model'");
  if (!have_d) throw CacheMismatch("d", "cache header lacks 'd'");
  if (!have_digits) throw CacheMismatch("digits", "cache header lacks 'digits'");
  if (!have_internal) f.internal_digits = f.digits + PrecisionContext::kDefaultGuard;
  if (f.residual_norm.empty()) throw CacheMismatch("residual_norm", "cache header lacks 'residual_norm'");
  return f;
}

void write_atomic(const std::string& path, const CoefficientCacheFile& file) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << serialize(file);
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw std::runtime_error("failed writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

CoefficientCacheFile read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cache '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

momentrec::ReconstructionCoefficients load_verified(const std::string& path) {
  const CoefficientCacheFile f = read(path);
  if (f.generator != kGeneratorVersion) {
    throw CacheMismatch("generator", "cache generator '" + f.generator + "' differs from '" +
                                         kGeneratorVersion + "'; rebuild the cache");
  }
  momentrec::ReconstructionCoefficients rec = to_reconstruction(f);
  const BigReal stored = rec.residual_norm;
  const BigReal again = momentrec::verify_residual(rec);
  PrecisionScope scope(rec.internal_digits);
  const BigReal target = pow10(-static_cast<long>(rec.digits) + 10);
  const bool reproduces = again <= 10 * stored && stored <= 10 * again;
  if (!reproduces && !(again < target && stored < target)) {
    throw CacheMismatch("residual_norm", "re-verified residual " + to_sci(again, 3) +
                                             " does not reproduce stored " + f.residual_norm);
  }
  rec.residual_norm = again;
  return rec;
}

}  // namespace hefp::cache
