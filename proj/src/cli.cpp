#include "hefp/cli.hpp"

#include "hefp/cache_file.hpp"
#include "hefp/comparators.hpp"
#include "hefp/extrapolant.hpp"
#include "hefp/momentrec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

namespace hefp::cli {

namespace {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "markdown" || s == "md") return Format::Markdown;
  throw DomainError("unknown format '" + s + "' (expected csv, json or markdown)");
}

Cell text_cell(std::string s) { return {std::move(s), std::nullopt}; }

Cell value_cell(const BigReal& v, unsigned digits, const std::optional<BigReal>& exact) {
  Cell c{to_sci(v, digits), std::nullopt};
  if (exact) c.agree = std::min(agreeing_digits(v, *exact), digits);
  return c;
}

// Runs one cell computation; failures become an annotation instead of
// aborting the whole report.
Cell guarded(const std::function<Cell()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return text_cell(std::string("n/a (") + e.what() + ")");
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += '\\';
    out += ch;
  }
  return out;
}

std::vector<BigReal> parse_betas(const std::vector<std::string>& betas) {
  std::vector<BigReal> out;
  for (const auto& b : betas) {
    BigReal v = parse_real(b);
    heulag::require_magnetic(v);
    out.push_back(v);
  }
  return out;
}

void enforce_precision_rule(const RunConfig& cfg, std::ostream& err) {
  if (cfg.moments <= cfg.digits) return;
  err << "warning: " << cfg.moments << " moments at " << cfg.digits
      << " digits breaks the rule digits >= moments\n";
  if (!cfg.force) {
    throw ConditioningError("refusing to reconstruct " + std::to_string(cfg.moments) +
                            " moments at " + std::to_string(cfg.digits) +
                            " digits; raise --digits or pass --force");
  }
}

std::string default_cache_path(const RunConfig& cfg) {
  return "hefp-" + std::string(model_name(cfg.model)) + "-m" + std::to_string(cfg.moments) +
         "-p" + std::to_string(cfg.digits) + ".coeffs";
}

momentrec::ReconstructionCoefficients fresh_reconstruction(const RunConfig& cfg,
                                                           std::ostream& err) {
  if (cfg.moments == 0) throw DomainError("--moments must be at least 1");
  enforce_precision_rule(cfg, err);
  auto rec = momentrec::reconstruct(cfg.model, cfg.moments, PrecisionContext(cfg.digits));
  for (const auto& w : rec.warnings) err << "warning: " << w << "\n";
  return rec;
}

// Loads the cache when present (checking it against explicit flags and
// adopting its values otherwise), or reconstructs and writes it.
momentrec::ReconstructionCoefficients obtain_reconstruction(RunConfig& cfg, std::ostream& err) {
  if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
    auto rec = cache::load_verified(cfg.cache);
    if (cfg.model_given && rec.model != cfg.model) {
      throw cache::CacheMismatch("model", "cache model '" + std::string(model_name(rec.model)) +
                                              "' differs from requested '" +
                                              std::string(model_name(cfg.model)) + "'");
    }
    if (cfg.moments_given && rec.d + 1 != cfg.moments) {
      throw cache::CacheMismatch("d", "cache holds " + std::to_string(rec.d + 1) +
                                          " moments (d = " + std::to_string(rec.d) +
                                          "), requested " + std::to_string(cfg.moments));
    }
    if (cfg.digits_given && rec.digits != cfg.digits) {
      throw cache::CacheMismatch("digits", "cache digits " + std::to_string(rec.digits) +
                                               " differ from requested " +
                                               std::to_string(cfg.digits));
    }
    cfg.model = rec.model;
    cfg.moments = rec.d + 1;
    cfg.digits = rec.digits;
    return rec;
  }
  auto rec = fresh_reconstruction(cfg, err);
  if (!cfg.cache.empty()) cache::write_atomic(cfg.cache, cache::from_reconstruction(rec));
  return rec;
}

// Index after the smallest |a_k beta^k|: summing through it is the optimal
// truncation of the asymptotic series.
unsigned optimal_truncation(const SeriesCoefficients& s, const BigReal& beta) {
  unsigned best = 0;
  BigReal best_term = -1;
  BigReal pw = 1;
  for (unsigned k = 0; k < s.count(); ++k) {
    BigReal t = to_real(s.reduced(k)) * pw;
    if (best_term < 0 || t < best_term) {
      best_term = t;
      best = k;
    }
    pw *= beta;
  }
  return best == 0 ? 0 : best - 1;
}

std::optional<BigReal> exact_or_none(ModelId model, const BigReal& beta,
                                     const PrecisionContext& ctx) {
  try {
    return heulag::closed_form(model, beta, ctx);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Reference tables at desk scale.

struct TableSpec {
  ModelId model;
  std::vector<std::string> betas;
};

std::vector<Cell> labelled(std::string label) { return {text_cell(std::move(label))}; }

Report partial_sum_table(unsigned id, ModelId model, unsigned show) {
  const std::vector<std::string> betas = {"0.01", "0.1", "0.2"};
  const PrecisionContext ctx(60);
  PrecisionScope scope(ctx);
  Report r;
  r.title = "Table " + std::to_string(id) + ": partial sums, model " +
            std::string(model_name(model));
  r.columns = {"d"};
  for (const auto& b : betas) r.columns.push_back("beta=" + b);
  const auto beta = parse_betas(betas);
  std::vector<std::optional<BigReal>> exact;
  for (const auto& b : beta) exact.push_back(exact_or_none(model, b, ctx));
  for (unsigned d : {1u, 2u, 5u, 9u, 20u, 50u}) {
    auto row = labelled(std::to_string(d));
    for (std::size_t j = 0; j < beta.size(); ++j) {
      row.push_back(guarded([&] {
        return value_cell(heulag::partial_sum(model, beta[j], d, ctx), show, exact[j]);
      }));
    }
    r.rows.push_back(std::move(row));
  }
  auto last = labelled("exact");
  for (const auto& e : exact) {
    last.push_back(e ? value_cell(*e, show, std::nullopt) : text_cell("n/a"));
  }
  r.rows.push_back(std::move(last));
  return r;
}

struct ComparatorRow {
  std::string label;
  std::function<BigReal(const SeriesCoefficients&, const BigReal&, const PrecisionContext&)> f;
  unsigned needs;
};

Report extrapolant_table(unsigned id, const TableSpec& spec, const std::vector<unsigned>& moments,
                         const std::vector<ComparatorRow>& comparators, unsigned show,
                         std::ostream& err) {
  Report r;
  r.title = "Table " + std::to_string(id) + ": extrapolant, model " +
            std::string(model_name(spec.model));
  r.columns = {"moments"};
  for (const auto& b : spec.betas) r.columns.push_back("beta=" + b);

  const PrecisionContext exact_ctx(60);
  std::vector<BigReal> beta;
  std::vector<std::optional<BigReal>> exact;
  {
    PrecisionScope scope(exact_ctx);
    beta = parse_betas(spec.betas);
    for (const auto& b : beta) exact.push_back(exact_or_none(spec.model, b, exact_ctx));
  }

  for (unsigned m : moments) {
    auto row = labelled(std::to_string(m));
    try {
      RunConfig cfg;
      cfg.model = spec.model;
      cfg.moments = m;
      cfg.digits = std::max(m, PrecisionContext::kMinDigits);
      const PrecisionContext ctx(cfg.digits);
      extrapolant::Extrapolant ex(fresh_reconstruction(cfg, err), std::nullopt, ctx);
      for (std::size_t j = 0; j < beta.size(); ++j) {
        row.push_back(guarded([&] {
          return value_cell(ex(beta[j]).value, std::min(show, cfg.digits), exact[j]);
        }));
      }
    } catch (const std::exception& e) {
      while (row.size() < beta.size() + 1) row.push_back(text_cell(std::string("n/a (") + e.what() + ")"));
    }
    r.rows.push_back(std::move(row));
  }

  const PrecisionContext cmp_ctx(300);
  unsigned needs = 0;
  for (const auto& c : comparators) needs = std::max(needs, c.needs);
  const SeriesCoefficients series = heulag::series(spec.model, needs);
  for (const auto& c : comparators) {
    auto row = labelled(c.label);
    for (std::size_t j = 0; j < beta.size(); ++j) {
      row.push_back(guarded([&] { return value_cell(c.f(series, beta[j], cmp_ctx), show, exact[j]); }));
    }
    r.rows.push_back(std::move(row));
  }

  auto last = labelled("exact");
  for (const auto& e : exact) last.push_back(e ? value_cell(*e, show, std::nullopt) : text_cell("n/a"));
  r.rows.push_back(std::move(last));
  return r;
}

ComparatorRow pade_row(unsigned N, unsigned M) {
  return {"pade[" + std::to_string(N) + "/" + std::to_string(M) + "]",
          [N, M](const SeriesCoefficients& s, const BigReal& b, const PrecisionContext& ctx) {
            return comparators::pade_eval(s, N, M, b, ctx);
          },
          N + M + 1};
}

ComparatorRow delta_row(unsigned n) {
  return {"delta_" + std::to_string(n),
          [n](const SeriesCoefficients& s, const BigReal& b, const PrecisionContext& ctx) {
            return comparators::weniger_delta(s, n, b, ctx);
          },
          n + 2};
}

Report terms_table(unsigned show, std::ostream& err) {
  const std::vector<std::string> betas = {"0.1", "1", "4", "1e2", "1e4", "1e7", "1e18", "1e21"};
  RunConfig cfg;
  cfg.model = ModelId::Spin0;
  cfg.moments = 200;
  cfg.digits = 200;
  const PrecisionContext ctx(cfg.digits);
  extrapolant::Extrapolant ex(fresh_reconstruction(cfg, err), std::nullopt, ctx);
  Report r;
  r.title = "Table 5: terms of the extrapolant, model spin0, 200 moments";
  r.columns = {"beta", "first term", "second term", "f", "exact"};
  PrecisionScope scope(ctx);
  for (const auto& bs : betas) {
    const BigReal b = parse_real(bs);
    const auto exact = exact_or_none(cfg.model, b, ctx);
    std::vector<Cell> row = {text_cell(bs)};
    try {
      const auto res = ex(b);
      row.push_back(value_cell(res.tail, show, std::nullopt));
      row.push_back(value_cell(res.delta, show, std::nullopt));
      row.push_back(value_cell(res.value, show, exact));
    } catch (const std::exception& e) {
      while (row.size() < 4) row.push_back(text_cell(std::string("n/a (") + e.what() + ")"));
    }
    row.push_back(exact ? value_cell(*exact, show, std::nullopt) : text_cell("n/a"));
    r.rows.push_back(std::move(row));
  }
  return r;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& cfg, std::string& model, std::string& format) {
  sub->add_option("--model", model, "spin0 | spin12 | sd");
  sub->add_option("--digits", cfg.digits, "decimal digits of working precision");
  sub->add_option("--format", format, "csv | json | markdown");
}

void add_beta(CLI::App* sub, std::vector<std::string>& betas) {
  sub->add_option("--beta", betas, "comma-separated beta values")->delimiter(',');
}

}  // namespace

// ---------------------------------------------------------------------------

std::string bracket_digits(const std::string& text, unsigned n) {
  if (n == 0) return text;
  std::string out;
  unsigned seen = 0;
  bool opened = false, closed = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    const bool digit = ch >= '0' && ch <= '9';
    const bool in_mantissa = !closed && text.find_first_of("eE") > i;
    if (digit && in_mantissa && !opened) {
      out += '[';
      opened = true;
    }
    out += ch;
    if (digit && opened && !closed && in_mantissa && ++seen == n) {
      out += ']';
      closed = true;
    }
  }
  if (opened && !closed) {
    const auto e = out.find_first_of("eE");
    out.insert(e == std::string::npos ? out.size() : e, "]");
  }
  return out;
}

std::string render(const Report& report, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < report.columns.size(); ++i) {
        os << (i ? "," : "") << csv_escape(report.columns[i]);
      }
      os << "\n";
      for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i].text);
        os << "\n";
      }
      break;
    }
    case Format::Json: {
      nlohmann::ordered_json j;
      j["title"] = report.title;
      j["columns"] = report.columns;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : report.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
          obj[report.columns[i]] = row[i].text;
        }
        j["rows"].push_back(std::move(obj));
      }
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Markdown: {
      if (!report.title.empty()) os << "### " << report.title << "\n\n";
      os << "|";
      for (const auto& c : report.columns) os << " " << md_escape(c) << " |";
      os << "\n|";
      for (std::size_t i = 0; i < report.columns.size(); ++i) os << "---|";
      os << "\n";
      for (const auto& row : report.rows) {
        os << "|";
        for (const auto& cell : row) {
          const std::string t = cell.agree ? bracket_digits(cell.text, *cell.agree) : cell.text;
          os << " " << md_escape(t) << " |";
        }
        os << "\n";
      }
      break;
    }
  }
  return os.str();
}

Report cmd_exact(const RunConfig& cfg) {
  const PrecisionContext ctx(cfg.digits);
  PrecisionScope scope(ctx);
  Report r;
  r.title = "closed form, model " + std::string(model_name(cfg.model));
  r.columns = {"beta", "closed_form"};
  if (cfg.oracle) r.columns.push_back("direct_oracle");
  const auto beta = parse_betas(cfg.betas);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const BigReal v = heulag::closed_form(cfg.model, beta[i], ctx);
    std::vector<Cell> row = {text_cell(cfg.betas[i]), value_cell(v, cfg.digits, std::nullopt)};
    if (cfg.oracle) {
      row.push_back(guarded([&] {
        return value_cell(heulag::direct_integral_oracle(cfg.model, beta[i], ctx), cfg.digits, v);
      }));
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_series(const RunConfig& cfg) {
  const PrecisionContext ctx(cfg.digits);
  PrecisionScope scope(ctx);
  const auto s = heulag::series(cfg.model, cfg.moments);
  Report r;
  r.title = "weak-field coefficients, model " + std::string(model_name(cfg.model));
  r.columns = {"k", "a_k", "decimal"};
  for (unsigned i = 0; i < s.count(); ++i) {
    r.rows.push_back({text_cell(std::to_string(first_index(cfg.model) + i)),
                      text_cell(s.reduced(i).str()),
                      value_cell(to_real(s.reduced(i)), cfg.digits, std::nullopt)});
  }
  return r;
}

Report cmd_reconstruct(const RunConfig& cfg_in, std::ostream& err) {
  RunConfig cfg = cfg_in;
  if (cfg.cache.empty()) cfg.cache = default_cache_path(cfg);
  const auto rec = fresh_reconstruction(cfg, err);
  cache::write_atomic(cfg.cache, cache::from_reconstruction(rec));
  Report r;
  r.title = "reconstruction";
  r.columns = {"field", "value"};
  auto add = [&](const std::string& k, const std::string& v) {
    r.rows.push_back({text_cell(k), text_cell(v)});
  };
  add("model", std::string(model_name(rec.model)));
  add("d", std::to_string(rec.d));
  add("moments", std::to_string(rec.d + 1));
  add("digits", std::to_string(rec.digits));
  add("internal_digits", std::to_string(rec.internal_digits));
  add("residual_norm", to_sci(rec.residual_norm, 6));
  add("cache", cfg.cache);
  return r;
}

Report cmd_extrapolate(const RunConfig& cfg_in, std::ostream& err) {
  RunConfig cfg = cfg_in;
  auto rec = obtain_reconstruction(cfg, err);
  const PrecisionContext ctx(cfg.digits);
  extrapolant::Extrapolant ex(std::move(rec), cfg.truncation, ctx);
  PrecisionScope scope(ctx);
  Report r;
  r.title = "extrapolant, model " + std::string(model_name(cfg.model)) + ", " +
            std::to_string(cfg.moments) + " moments";
  r.columns = {"beta", "value", "tail", "delta", "K", "im_residual"};
  const auto beta = parse_betas(cfg.betas);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const auto res = ex(beta[i]);
    r.rows.push_back({text_cell(cfg.betas[i]), value_cell(res.value, cfg.digits, std::nullopt),
                      value_cell(res.tail, cfg.digits, std::nullopt),
                      value_cell(res.delta, cfg.digits, std::nullopt),
                      text_cell(std::to_string(res.K)), text_cell(to_sci(res.im_residual, 6))});
  }
  return r;
}

Report cmd_compare(const RunConfig& cfg_in, std::ostream& err) {
  RunConfig cfg = cfg_in;
  const std::string pade_label =
      "pade[" + std::to_string(cfg.pade_N) + "/" + std::to_string(cfg.pade_M) + "]";
  const std::string delta_label = "delta_" + std::to_string(cfg.delta_n);
  Report r;
  r.title = "comparison, model " + std::string(model_name(cfg.model));
  r.columns = {"beta", "d*", "partial_sum", pade_label, delta_label, "extrapolant", "exact"};
  if (cfg.betas.empty()) return r;

  std::optional<extrapolant::Extrapolant> ex;
  std::string ex_error;
  try {
    auto rec = obtain_reconstruction(cfg, err);
    ex.emplace(std::move(rec), cfg.truncation, PrecisionContext(cfg.digits));
  } catch (const cache::CacheMismatch&) {
    throw;
  } catch (const std::exception& e) {
    ex_error = e.what();
  }

  const PrecisionContext ctx(cfg.digits);
  PrecisionScope scope(ctx);
  const unsigned count =
      std::max({cfg.moments, cfg.pade_N + cfg.pade_M + 1, cfg.delta_n + 2});
  const auto series = heulag::series(cfg.model, count);
  const auto beta = parse_betas(cfg.betas);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const BigReal& b = beta[i];
    const auto exact = exact_or_none(cfg.model, b, ctx);
    const unsigned dstar = optimal_truncation(series, b);
    std::vector<Cell> row = {text_cell(cfg.betas[i]), text_cell(std::to_string(dstar))};
    row.push_back(guarded(
        [&] { return value_cell(heulag::partial_sum(cfg.model, b, dstar, ctx), cfg.digits, exact); }));
    row.push_back(guarded([&] {
      return value_cell(comparators::pade_eval(series, cfg.pade_N, cfg.pade_M, b, ctx),
                        cfg.digits, exact);
    }));
    row.push_back(guarded([&] {
      return value_cell(comparators::weniger_delta(series, cfg.delta_n, b, ctx), cfg.digits,
                        exact);
    }));
    if (ex) {
      row.push_back(guarded([&] { return value_cell((*ex)(b).value, cfg.digits, exact); }));
    } else {
      row.push_back(text_cell("n/a (" + ex_error + ")"));
    }
    row.push_back(exact ? value_cell(*exact, cfg.digits, std::nullopt) : text_cell("n/a"));
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_table(const RunConfig& cfg, std::ostream& err) {
  const unsigned show = cfg.digits_given ? cfg.digits : 20;
  switch (cfg.table_id) {
    case 1: return partial_sum_table(1, ModelId::Spin0, show);
    case 2:
      return extrapolant_table(
          2,
          {ModelId::Spin0,
           {"0.01", "0.1", "0.2", "1", "4", "1e2", "1e3", "1e4", "1e7", "1e12", "1e13", "1e18"}},
          {50, 100}, {pade_row(49, 50), delta_row(25), delta_row(35), delta_row(100)}, show, err);
    case 3:
      return extrapolant_table(
          3,
          {ModelId::SpinHalf,
           {"1", "4", "10", "1e2", "1e3", "1e7", "1e8", "1e12", "1e15", "1e17"}},
          {100, 200}, {pade_row(49, 50), delta_row(30), delta_row(100)}, show, err);
    case 4: return partial_sum_table(4, ModelId::SelfDual, show);
    case 5: return terms_table(show, err);
    case 6:
      return extrapolant_table(6,
                               {ModelId::SelfDual, {"1e7", "1e9", "1e13", "1e18", "1e19", "1e20"}},
                               {100, 200}, {pade_row(49, 50), delta_row(100)}, show, err);
    default: throw DomainError("--id must be between 1 and 6");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string model, format = "csv";
  std::vector<std::string> betas;

  CLI::App app{"Heisenberg-Euler finite-part extrapolation toolkit", "hefp"};
  app.require_subcommand(1);

  auto* exact = app.add_subcommand("exact", "closed-form values");
  add_common(exact, cfg, model, format);
  add_beta(exact, betas);
  exact->add_flag("--oracle", cfg.oracle, "add the direct-quadrature column");

  auto* series = app.add_subcommand("series", "exact weak-field coefficients");
  add_common(series, cfg, model, format);
  series->add_option("--moments", cfg.moments, "number of coefficients");

  auto* recon = app.add_subcommand("reconstruct", "solve the moment problem and cache c_m");
  add_common(recon, cfg, model, format);
  recon->add_option("--moments", cfg.moments, "number of moments (d + 1)");
  recon->add_option("--cache", cfg.cache, "coefficient cache path");
  recon->add_flag("--force", cfg.force, "allow moments > digits");

  auto* extrap = app.add_subcommand("extrapolate", "evaluate the convergent extrapolant");
  add_common(extrap, cfg, model, format);
  add_beta(extrap, betas);
  extrap->add_option("--moments", cfg.moments, "number of moments (d + 1)");
  extrap->add_option("--truncation", cfg.truncation, "K, last k of the tail sum (default 2d)");
  extrap->add_option("--cache", cfg.cache, "coefficient cache path");
  extrap->add_flag("--force", cfg.force, "allow moments > digits");

  auto* compare = app.add_subcommand("compare", "partial sum, Pade, delta, extrapolant, exact");
  add_common(compare, cfg, model, format);
  add_beta(compare, betas);
  compare->add_option("--moments", cfg.moments, "number of moments (d + 1)");
  compare->add_option("--truncation", cfg.truncation, "K for the extrapolant");
  compare->add_option("--cache", cfg.cache, "coefficient cache path");
  compare->add_flag("--force", cfg.force, "allow moments > digits");
  compare->add_option("--pade-N", cfg.pade_N, "Pade numerator degree");
  compare->add_option("--pade-M", cfg.pade_M, "Pade denominator degree");
  compare->add_option("--delta", cfg.delta_n, "order n of the delta transformation");

  auto* table = app.add_subcommand("table", "reproduce a reference table at desk scale");
  add_common(table, cfg, model, format);
  table->add_option("--id", cfg.table_id, "table number 1..6")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kOther;
  }

  try {
    auto* sub = app.get_subcommands().front();
    cfg.model_given = sub->count("--model") > 0;
    cfg.digits_given = sub->count("--digits") > 0;
    cfg.moments_given = sub->get_option_no_throw("--moments") && sub->count("--moments") > 0;
    if (cfg.model_given) cfg.model = parse_model(model);
    cfg.format = parse_format(format);
    cfg.betas = betas;
    if (sub->get_name() == "reconstruct" || sub->get_name() == "extrapolate" ||
        sub->get_name() == "compare") {
      if (!cfg.digits_given && cfg.moments_given) cfg.digits = std::max(cfg.moments, cfg.digits);
    }

    Report report;
    const std::string name = sub->get_name();
    if (name == "exact") report = cmd_exact(cfg);
    else if (name == "series") report = cmd_series(cfg);
    else if (name == "reconstruct") report = cmd_reconstruct(cfg, err);
    else if (name == "extrapolate") report = cmd_extrapolate(cfg, err);
    else if (name == "compare") report = cmd_compare(cfg, err);
    else report = cmd_table(cfg, err);
    out << render(report, cfg.format);
    return kOk;
  } catch (const cache::CacheMismatch& e) {
    err << "error: cache mismatch in field '" << e.field << "': " << e.what() << "\n";
    return kCacheMismatch;
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << "\n";
    return kConditioning;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kOther;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"hefp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hefp::cli
