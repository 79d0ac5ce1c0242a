#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams.

#include "hefp/heulag.hpp"
#include "hefp/numeric.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hefp::cli {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kDomain = 2,
  kConditioning = 3,
  kCacheMismatch = 4,
};

enum class Format { Csv, Json, Markdown };

struct RunConfig {
  ModelId model = ModelId::Spin0;
  unsigned digits = 50;
  unsigned moments = 50;  // d + 1
  std::optional<unsigned> truncation;
  std::vector<std::string> betas;
  Format format = Format::Csv;
  std::string cache;
  bool force = false;

  // Which of the above were given explicitly (cache values win otherwise).
  bool model_given = false;
  bool digits_given = false;
  bool moments_given = false;

  // Subcommand extras.
  bool oracle = false;     // exact: add the quadrature column
  unsigned pade_N = 49;    // compare
  unsigned pade_M = 50;
  unsigned delta_n = 35;
  unsigned table_id = 0;   // table
};

/// One rendered value. `agree` is the number of leading significant digits
/// shared with the exact value, when there is one to compare against.
struct Cell {
  std::string text;
  std::optional<unsigned> agree;
};

struct Report {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string render(const Report& report, Format format);

/// Wraps the first `n` significant digits of a decimal string in brackets.
std::string bracket_digits(const std::string& text, unsigned n);

/// Per-command drivers; each returns the report it would print.
Report cmd_exact(const RunConfig& cfg);
Report cmd_series(const RunConfig& cfg);
Report cmd_reconstruct(const RunConfig& cfg, std::ostream& err);
Report cmd_extrapolate(const RunConfig& cfg, std::ostream& err);
Report cmd_compare(const RunConfig& cfg, std::ostream& err);
Report cmd_table(const RunConfig& cfg, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hefp::cli
