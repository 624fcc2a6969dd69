#include "itespec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "itespec/errors.hpp"
#include "itespec/ite_1d.hpp"
#include "itespec/ite_1d_complex.hpp"
#include "itespec/ite_nd.hpp"
#include "itespec/scattering.hpp"

#ifndef ITESPEC_VERSION
#define ITESPEC_VERSION "0.0.0"
#endif

namespace itespec::cli {
namespace {

using nlohmann::ordered_json;
using std::numbers::pi;

const char* command_name(Command c) {
  switch (c) {
    case Command::Ite1d: return "ite1d";
    case Command::Complex1d: return "complex1d";
    case Command::IteNd: return "itend";
    case Command::Weyl: return "weyl";
    case Command::Scatter: return "scatter";
  }
  return "";
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v <= 0) {
      throw UsageError("--gamma-rational expects p/q with positive integers, got '" + text + "'");
    }
    return v;
  };
  const std::string_view all(text);
  if (slash == std::string::npos) return {parse_int(all), 1};
  return {parse_int(all.substr(0, slash)), parse_int(all.substr(slash + 1))};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) throw UsageError("--grid: cannot parse '" + item + "'");
    grid.push_back(v);
  }
  if (grid.empty()) throw UsageError("--grid is empty");
  return grid;
}

Contrast make_contrast(const RunConfig& cfg) {
  if (cfg.rational) return Contrast::from_rational(cfg.rational->p, cfg.rational->q);
  if (cfg.m) return Contrast::from_index(*cfg.m);
  return Contrast::from_gamma(*cfg.gamma);
}

double index_of_refraction(const RunConfig& cfg) {
  if (cfg.m) return *cfg.m;
  const double g = cfg.rational ? static_cast<double>(cfg.rational->p) / static_cast<double>(cfg.rational->q)
                                : *cfg.gamma;
  return g * g;
}

std::vector<double> radius_grid(const RunConfig& cfg) {
  if (!cfg.grid.empty()) return cfg.grid;
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(cfg.r_max * k / 20.0);
  return grid;
}

struct Tolerances {
  OneDOptions one_d;
  NdOptions nd;
  CoincidenceOptions scatter;
};

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances t;
  if (cfg.tol) {
    t.one_d.common_zero_tol = *cfg.tol;
    t.nd.common_zero_tol = *cfg.tol;
    t.scatter.amplitude_tol = *cfg.tol;
  }
  t.nd.threads = cfg.threads;
  t.scatter.nd = t.nd;
  return t;
}

// A table is a header plus rows of already formatted cells and their JSON twins.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;
};

std::string cell_text(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

Table listing(const std::vector<RealIte>& roots) {
  Table t{{"lambda", "l", "nu", "alg_mult", "geom_mult", "kind"}, {}};
  for (const auto& r : roots) {
    t.rows.push_back({r.lambda, r.momentum ? ordered_json(*r.momentum) : ordered_json(nullptr),
                      r.nu ? ordered_json(*r.nu) : ordered_json(nullptr), r.alg_mult, r.geom_mult,
                      to_string(r.kind)});
  }
  return t;
}

Table report_table(const CountReport& rep) {
  Table t{{"r", "count", "dirichlet_diff", "weyl_pred", "residual_scaled"}, {}};
  for (std::size_t i = 0; i < rep.size(); ++i) {
    t.rows.push_back({rep.radii[i], rep.counts[i],
                      rep.dirichlet_diff.empty() ? ordered_json(nullptr) : ordered_json(rep.dirichlet_diff[i]),
                      rep.weyl[i], rep.residual_scaled[i]});
  }
  return t;
}

struct Document {
  Table table;
  ordered_json extra = ordered_json::object();
};

std::int64_t dirichlet_1d(double speed, double r) {
  return static_cast<std::int64_t>(std::floor(speed * r / pi));
}

CountReport one_d_report(const Contrast& c, const std::vector<double>& grid, CountMode mode,
                         const OneDOptions& opts) {
  check_radius_grid(grid);
  const auto roots = enumerate_real_ites_1d(c, grid.back(), opts);
  const double g = c.gamma();
  double coefficient = std::abs(1.0 - g) / pi;
  if (mode == CountMode::Algebraic && c.rational()) {
    coefficient += 2.0 / static_cast<double>(c.rational()->q) / pi;
  }
  std::vector<std::int64_t> counts, diff;
  for (double r : grid) {
    counts.push_back(count_roots(roots, r, mode));
    diff.push_back(std::abs(dirichlet_1d(1.0, r) - dirichlet_1d(g, r)));
  }
  return make_count_report(1, coefficient, grid, std::move(counts), std::move(diff));
}

CountReport nd_algebraic_report(const NdSpectrum& spec, const DimensionConfig& dim,
                                const std::vector<double>& grid) {
  CountReport geo = weyl_report(spec, dim, grid);
  std::vector<std::int64_t> counts;
  const auto all = spec.merged();
  for (double r : grid) {
    std::int64_t n = 0;
    for (const auto& root : all) {
      if (root.lambda <= r) n += root.geom_mult * root.alg_mult;
    }
    counts.push_back(n);
  }
  return make_count_report(dim.n(), geo.coefficient, grid, std::move(counts),
                           std::move(geo.dirichlet_diff));
}

ordered_json report_extra(const CountReport& rep) {
  ordered_json j;
  j["dimension"] = rep.dimension;
  j["coefficient"] = rep.coefficient;
  j["fit_coefficient"] = rep.fit_coefficient;
  return j;
}

Document build(const RunConfig& cfg, const Tolerances& tol) {
  Document doc;
  switch (cfg.command) {
    case Command::Ite1d: {
      doc.table = listing(enumerate_real_ites_1d(make_contrast(cfg), cfg.r_max, tol.one_d));
      break;
    }
    case Command::Complex1d: {
      const Contrast c = make_contrast(cfg);
      const auto grid = radius_grid(cfg);
      const auto found = enumerate_complex_ites_detailed(c, grid.back());
      const auto rep = titchmarsh_residual(c, grid, found.zeros);
      doc.table = report_table(rep);
      doc.extra = report_extra(rep);
      doc.extra["strip_bound"] = found.strip;
      doc.extra["near_imaginary_axis"] = found.near_imaginary_axis;
      doc.extra["unresolved_clusters"] = found.unresolved_clusters;
      ordered_json zeros = ordered_json::array();
      for (const auto& z : found.zeros) {
        zeros.push_back({{"re", z.z.real()}, {"im", z.z.imag()}, {"mult", z.mult}});
      }
      doc.extra["zeros"] = std::move(zeros);
      break;
    }
    case Command::IteNd: {
      if (cfg.n == 1) {
        doc.table = listing(enumerate_real_ites_1d(make_contrast(cfg), cfg.r_max, tol.one_d));
        break;
      }
      const DimensionConfig dim(cfg.n, index_of_refraction(cfg));
      doc.table = listing(enumerate_nd(dim, cfg.r_max, tol.nd).merged());
      break;
    }
    case Command::Weyl: {
      const auto grid = radius_grid(cfg);
      CountReport rep;
      if (cfg.n == 1) {
        rep = one_d_report(make_contrast(cfg), grid, cfg.mode, tol.one_d);
      } else {
        check_radius_grid(grid);
        const DimensionConfig dim(cfg.n, index_of_refraction(cfg));
        const NdSpectrum spec = enumerate_nd(dim, grid.back(), tol.nd);
        rep = cfg.mode == CountMode::Geometric ? weyl_report(spec, dim, grid)
                                               : nd_algebraic_report(spec, dim, grid);
      }
      doc.table = report_table(rep);
      doc.extra = report_extra(rep);
      break;
    }
    case Command::Scatter: {
      const DimensionConfig dim(cfg.n, index_of_refraction(cfg));
      const auto rep = verify_ite_te_coincidence(dim, cfg.r_max, tol.scatter);
      doc.table = listing(rep.ites);
      doc.extra["ite_count"] = rep.ites.size();
      doc.extra["amplitude_zero_count"] = rep.amplitude_zeros.size();
      doc.extra["max_amplitude_at_ite"] = rep.max_amplitude_at_ite;
      doc.extra["max_unitarity_defect"] = rep.max_unitarity_defect;
      ordered_json mism = ordered_json::array();
      for (const auto& m : rep.mismatches) {
        mism.push_back({{"l", m.l}, {"lambda", m.lambda}, {"reason", to_string(m.reason)}});
      }
      doc.extra["mismatches"] = std::move(mism);
      if (!rep.ok()) {
        throw NumericalError(std::to_string(rep.mismatches.size()) +
                             " mismatches between ITEs and amplitude zeros");
      }
      break;
    }
  }
  return doc;
}

void validate(const RunConfig& cfg) {
  const int given = cfg.gamma.has_value() + cfg.m.has_value() + cfg.rational.has_value();
  if (given != 1) throw UsageError("exactly one of --gamma, --m, --gamma-rational is required");
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  const bool one_d_only = cfg.command == Command::Ite1d || cfg.command == Command::Complex1d;
  if (one_d_only && cfg.n != 1) {
    throw UsageError(std::string(command_name(cfg.command)) + " is the 1D model; --n must be 1");
  }
  if (cfg.command == Command::Scatter && cfg.n < 2) throw UsageError("scatter needs --n >= 2");
  const bool uses_grid = cfg.command == Command::Weyl || cfg.command == Command::Complex1d;
  if (!uses_grid && !cfg.grid.empty()) {
    throw UsageError(std::string("--grid is not used by ") + command_name(cfg.command));
  }
  if (!(cfg.r_max > 0.0) || !std::isfinite(cfg.r_max)) throw UsageError("--rmax must be > 0");
  if (cfg.threads < 1) throw UsageError("--threads must be >= 1");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw UsageError("--tol must be > 0");
  if (cfg.gamma && !(*cfg.gamma > 0.0)) throw UsageError("--gamma must be > 0");
  if (cfg.m && !(*cfg.m > 0.0)) throw UsageError("--m must be > 0");
}

ordered_json metadata(const RunConfig& cfg, const Tolerances& tol) {
  ordered_json meta;
  meta["tool"] = "itespec";
  meta["version"] = ITESPEC_VERSION;
  meta["command"] = command_name(cfg.command);
  meta["gamma"] = cfg.rational ? static_cast<double>(cfg.rational->p) / static_cast<double>(cfg.rational->q)
                  : cfg.m      ? std::sqrt(*cfg.m)
                               : *cfg.gamma;
  meta["m"] = index_of_refraction(cfg);
  meta["rational"] = cfg.rational ? ordered_json(std::to_string(cfg.rational->p) + "/" +
                                                 std::to_string(cfg.rational->q))
                                  : ordered_json(nullptr);
  meta["n"] = cfg.n;
  meta["mode"] = cfg.mode == CountMode::Geometric ? "geom" : "alg";
  meta["rmax"] = cfg.r_max;
  meta["tolerances"] = {{"common_zero_1d", tol.one_d.common_zero_tol},
                        {"root_1d", tol.one_d.root_tol},
                        {"common_zero_nd", tol.nd.common_zero_tol},
                        {"tangency_nd", tol.nd.tangency_tol},
                        {"amplitude", tol.scatter.amplitude_tol},
                        {"match", tol.scatter.match_tol}};
  return meta;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Interior transmission eigenvalues of the unit ball", "itespec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ITESPEC_VERSION);

  RunConfig cfg;
  std::optional<std::string> rational;
  std::optional<std::string> grid;
  std::string mode = "geom";
  std::string format = "csv";
  std::optional<int> n;
  std::optional<double> rmax;

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::Ite1d, "List real ITEs of the 1D model"},
      {Command::Complex1d, "Locate complex zeros of the 1D determinant and count them"},
      {Command::IteNd, "List real ITEs of the n-dimensional ball"},
      {Command::Weyl, "Tabulate the counting function against the Weyl law"},
      {Command::Scatter, "Check ITEs against zeros of the scattering amplitude"}};
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(cmd), help);
    sub->add_option("--gamma", cfg.gamma, "wave-speed contrast gamma");
    sub->add_option("--m", cfg.m, "index of refraction (gamma = sqrt(m))");
    sub->add_option("--gamma-rational", rational, "exact contrast p/q");
    sub->add_option("--n", n, "dimension; 1 selects the 1D model");
    sub->add_option("--rmax", rmax, "largest radius");
    sub->add_option("--grid", grid, "comma separated radii");
    sub->add_option("--mode", mode, "counting mode")
        ->transform(CLI::IsMember({"geom", "geometric", "alg", "algebraic"}));
    sub->add_option("--format", format, "output format")->transform(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--tol", cfg.tol, "override the root and common-zero tolerances");
    sub->add_option("--threads", cfg.threads, "worker threads");
    subs.emplace_back(cmd, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    std::ostringstream text, ignored;
    app.exit(e, text, ignored);
    throw HelpRequested{text.str()};
  }

  for (const auto& [cmd, sub] : subs) {
    if (sub->parsed()) cfg.command = cmd;
  }
  if (rational) cfg.rational = parse_rational(*rational);
  if (grid) cfg.grid = parse_grid(*grid);
  cfg.mode = (mode == "alg" || mode == "algebraic") ? CountMode::Algebraic : CountMode::Geometric;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  const bool one_d = cfg.command == Command::Ite1d || cfg.command == Command::Complex1d;
  cfg.n = n.value_or(one_d ? 1 : 3);
  if (rmax) {
    cfg.r_max = *rmax;
  } else if (!cfg.grid.empty()) {
    cfg.r_max = cfg.grid.back();
  } else {
    throw UsageError("--rmax is required");
  }
  validate(cfg);
  return cfg;
}

std::string render(const RunConfig& cfg) {
  validate(cfg);
  const Tolerances tol = tolerances(cfg);
  Document doc;
  try {
    doc = build(cfg, tol);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  if (cfg.format == Format::Csv) {
    std::string text;
    for (std::size_t i = 0; i < doc.table.columns.size(); ++i) {
      text += (i ? "," : "") + doc.table.columns[i];
    }
    text += '\n';
    for (const auto& row : doc.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        text += cell_text(row[i]);
      }
      text += '\n';
    }
    return text;
  }

  ordered_json j;
  j["metadata"] = metadata(cfg, tol);
  j["columns"] = doc.table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : doc.table.rows) {
    ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[doc.table.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  for (auto& [key, value] : doc.extra.items()) j[key] = value;
  return j.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = render(cfg);
  } catch (const UsageError& e) {
    err << "itespec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "itespec: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  if (cfg.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file || !(file << text)) {
    err << "itespec: cannot write " << cfg.out << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "itespec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "itespec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "itespec: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace itespec::cli
