#include "hefp/cache_file.hpp"
#include "hefp/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hefp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome hefp_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string body_of(const std::string& text) {
  std::istringstream is(text);
  std::string line, body;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '#') body += line + "\n";
  }
  return body;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::string replace_header(const std::string& text, const std::string& key,
                           const std::string& value) {
  std::string out;
  for (const auto& line : lines(text)) {
    if (line.rfind("# " + key + ":", 0) == 0) {
      out += "# " + key + ": " + value + "\n";
    } else {
      out += line + "\n";
    }
  }
  return out;
}

const fs::path kDir = fs::temp_directory_path() / "hefp_cli_tests";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bracketing agreeing digits") {
  CHECK(cli::bracket_digits("1.932384796847e-06", 10) == "[1.932384796]847e-06");
  CHECK(cli::bracket_digits("-0.0139583e+00", 0) == "-0.0139583e+00");
  CHECK(cli::bracket_digits("-1.25e+00", 3) == "-[1.25]e+00");
  CHECK(cli::bracket_digits("1.25e+00", 9) == "[1.25]e+00");
}

TEST_CASE("exact") {
  auto r = hefp_run({"exact", "--model", "spin0", "--beta", "0.01", "--digits", "40"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.01,1.9323847969277552498052055884171058") != std::string::npos);

  r = hefp_run({"exact", "--model", "sd", "--beta", "0.2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const std::string v = j["rows"][0]["closed_form"];
  {
    PrecisionScope scope(60);
    CHECK(to_sci(parse_real(v), 7) == "7.981190e-04");
  }

  r = hefp_run({"exact", "--model", "spin0", "--beta", "-1"});
  CHECK(r.code == cli::kDomain);
  CHECK(r.err.find("electric case") != std::string::npos);

  r = hefp_run({"exact", "--model", "spin3", "--beta", "1"});
  CHECK(r.code == cli::kDomain);
}

TEST_CASE("exact with the oracle column marks agreement in markdown") {
  auto r = hefp_run({"exact", "--model", "spin12", "--beta", "1", "--digits", "30",
                     "--oracle", "--format", "markdown"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("| [1.6459893") != std::string::npos);
}

TEST_CASE("series") {
  auto r = hefp_run({"series", "--model", "spin0", "--moments", "3"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1].rfind("2,7/360,", 0) == 0);
}

TEST_CASE("reconstruct writes a verified, deterministic cache") {
  fs::create_directories(kDir);
  const std::string path = (kDir / "spin0_50.coeffs").string();
  fs::remove(path);
  auto r = hefp_run({"reconstruct", "--model", "spin0", "--moments", "50", "--digits", "60",
                     "--cache", path});
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(path));
  CHECK_FALSE(fs::exists(path + ".tmp"));
  const std::string first = slurp(path);
  CHECK(lines(body_of(first)).size() == 50);

  const auto file = cache::read(path);
  CHECK(file.d == 49);
  CHECK(file.digits == 60);
  CHECK(file.generator == cache::kGeneratorVersion);
  {
    PrecisionScope scope(60);
    CHECK(parse_real(file.residual_norm) < pow10(-45));
  }
  const auto rec = cache::load_verified(path);
  CHECK(rec.c.size() == 50);

  r = hefp_run({"reconstruct", "--model", "spin0", "--moments", "50", "--digits", "60",
                "--cache", path});
  REQUIRE(r.code == 0);
  CHECK(body_of(slurp(path)) == body_of(first));
}

TEST_CASE("precision rule") {
  fs::create_directories(kDir);
  const std::string path = (kDir / "refused.coeffs").string();
  fs::remove(path);
  auto r = hefp_run({"reconstruct", "--moments", "100", "--digits", "50", "--cache", path});
  CHECK(r.code == cli::kConditioning);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK_FALSE(fs::exists(path));
  CHECK_FALSE(fs::exists(path + ".tmp"));

  r = hefp_run({"reconstruct", "--moments", "35", "--digits", "30", "--force", "--cache", path});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("extrapolate from a cache, and cache mismatches") {
  fs::create_directories(kDir);
  const std::string path = (kDir / "spin0_40.coeffs").string();
  fs::remove(path);
  auto r = hefp_run({"extrapolate", "--model", "spin0", "--moments", "40", "--digits", "40",
                     "--beta", "0.01,1", "--cache", path});
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(path));
  const std::string fresh = r.out;

  // Cached values are adopted when flags are absent; output is identical.
  r = hefp_run({"extrapolate", "--beta", "0.01,1", "--cache", path});
  REQUIRE(r.code == 0);
  CHECK(r.out == fresh);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "beta,value,tail,delta,K,im_residual");
  CHECK(ls[1].find(",78,") != std::string::npos);

  r = hefp_run({"extrapolate", "--model", "sd", "--beta", "1", "--cache", path});
  CHECK(r.code == cli::kCacheMismatch);
  CHECK(r.err.find("'model'") != std::string::npos);

  r = hefp_run({"extrapolate", "--digits", "45", "--beta", "1", "--cache", path});
  CHECK(r.code == cli::kCacheMismatch);
  CHECK(r.err.find("'digits'") != std::string::npos);

  r = hefp_run({"extrapolate", "--moments", "41", "--beta", "1", "--cache", path});
  CHECK(r.code == cli::kCacheMismatch);
  CHECK(r.err.find("'d'") != std::string::npos);

  const std::string text = slurp(path);
  const std::string stale = (kDir / "stale.coeffs").string();
  std::ofstream(stale) << replace_header(text, "generator", "old/0");
  r = hefp_run({"extrapolate", "--beta", "1", "--cache", stale});
  CHECK(r.code == cli::kCacheMismatch);
  CHECK(r.err.find("'generator'") != std::string::npos);

  const std::string forged = (kDir / "forged.coeffs").string();
  std::ofstream(forged) << replace_header(text, "residual_norm", "1e-5");
  r = hefp_run({"extrapolate", "--beta", "1", "--cache", forged});
  CHECK(r.code == cli::kCacheMismatch);
  CHECK(r.err.find("'residual_norm'") != std::string::npos);

  const std::string truncated = (kDir / "short.coeffs").string();
  std::ofstream(truncated) << text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  r = hefp_run({"extrapolate", "--beta", "1", "--cache", truncated});
  CHECK(r.code == cli::kCacheMismatch);
  CHECK(r.err.find("'d'") != std::string::npos);
}

TEST_CASE("truncation flag") {
  auto r = hefp_run({"extrapolate", "--model", "sd", "--moments", "30", "--digits", "40",
                     "--truncation", "29", "--beta", "1e3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[1].find(",29,") != std::string::npos);
}

TEST_CASE("compare") {
  auto r = hefp_run({"compare", "--model", "spin0"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1);

  r = hefp_run({"compare", "--model", "spin0", "--beta", "0.01,0.1", "--digits", "300",
                "--moments", "50", "--delta", "25", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 2);
  const auto& row = j["rows"][1];
  PrecisionScope scope(300);
  const BigReal exact = parse_real(row["exact"].get<std::string>());
  CHECK(agreeing_digits(parse_real(row["delta_25"].get<std::string>()), exact) >= 16);
  CHECK(agreeing_digits(parse_real(row["pade[49/50]"].get<std::string>()), exact) >= 11);
  CHECK(agreeing_digits(parse_real(row["extrapolant"].get<std::string>()), exact) >= 3);
  for (const auto& [k, v] : row.items()) CHECK(v.is_string());
}

TEST_CASE("compare shows delta failing at large beta and annotates errors") {
  auto r = hefp_run({"compare", "--model", "sd", "--beta", "1e7", "--moments", "40",
                     "--delta", "100", "--pade-N", "1", "--pade-M", "1"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  std::vector<std::string> cells;
  std::stringstream ss(ls[1]);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 7);
  PrecisionScope scope(60);
  const BigReal exact = parse_real(cells[6]);
  CHECK(agreeing_digits(parse_real(cells[4]), exact) < 2);

  r = hefp_run({"compare", "--model", "spin0", "--beta", "1", "--moments", "30",
                "--digits", "40", "--pade-N", "0", "--pade-M", "0", "--delta", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("n/a (") == std::string::npos);
  r = hefp_run({"compare", "--model", "spin0", "--beta", "1", "--moments", "5",
                "--digits", "40", "--pade-N", "20", "--pade-M", "20"});
  CHECK(r.code == 0);
}

TEST_CASE("output is deterministic in every format") {
  for (const char* f : {"csv", "json", "markdown"}) {
    const std::vector<std::string> args = {"exact", "--model", "sd", "--beta", "0.01,1e18",
                                           "--format", f};
    CHECK(hefp_run(args).out == hefp_run(args).out);
  }
}

TEST_CASE("table") {
  auto r = hefp_run({"table", "--id", "1", "--format", "markdown"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("[1.932384796]8") != std::string::npos);
  r = hefp_run({"table", "--id", "4", "--digits", "25"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("4.156814549649017911120") != std::string::npos);
  r = hefp_run({"table", "--id", "7"});
  CHECK(r.code == cli::kDomain);
}

TEST_CASE("usage errors") {
  CHECK(hefp_run({}).code == cli::kOther);
  CHECK(hefp_run({"exact", "--bogus"}).code == cli::kOther);
  CHECK(hefp_run({"exact", "--beta", "1", "--digits", "10"}).code == cli::kDomain);
  CHECK(hefp_run({"exact", "--beta", "abc"}).code == cli::kDomain);
}

}  // TEST_SUITE
