#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "cesforge/darboux.hpp"
#include "cesforge/eigensolver.hpp"
#include "cesforge/error.hpp"
#include "cesforge/factorization.hpp"
#include "cesforge/oscillator.hpp"
#include "cesforge/verification.hpp"

namespace cesforge::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { csv, jsonl };

struct RunConfig {
  std::string command;
  std::string kind = "t3";
  double gamma = 1.0;
  int n = 1;
  std::vector<double> grid;
  int states = 4;
  std::string out;
  std::string format = "csv";
  std::vector<double> gamma_range;
  std::optional<double> epsilon;
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double gauss_sign = -1.0;
};

/// Thrown for invalid flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// One output table, written either as CSV or as one JSON object per row.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

class TableWriter {
 public:
  TableWriter(std::ostream& os, Format format, std::vector<std::string> columns)
      : os_(os), format_(format), columns_(std::move(columns)) {
    if (format_ == Format::csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << '\n';
    }
  }

  void row(const std::vector<Cell>& cells) {
    if (format_ == Format::csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        os_ << csv_cell(cells[i]);
      }
      os_ << '\n';
      return;
    }
    json j = json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) j[columns_[i]] = json_cell(cells[i]);
    os_ << j.dump() << '\n';
  }

 private:
  static std::string csv_cell(const Cell& c) {
    struct {
      std::string operator()(std::monostate) const { return ""; }
      std::string operator()(double v) const { return format_number(v); }
      std::string operator()(long long v) const { return std::to_string(v); }
      std::string operator()(bool v) const { return v ? "true" : "false"; }
      std::string operator()(const std::string& s) const {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
      }
    } visitor;
    return std::visit(visitor, c);
  }

  static json json_cell(const Cell& c) {
    struct {
      json operator()(std::monostate) const { return nullptr; }
      json operator()(double v) const { return std::isfinite(v) ? json(v) : json(nullptr); }
      json operator()(long long v) const { return v; }
      json operator()(bool v) const { return v; }
      json operator()(const std::string& s) const { return s; }
    } visitor;
    return std::visit(visitor, c);
  }

  std::ostream& os_;
  Format format_;
  std::vector<std::string> columns_;
};

// Output goes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc | std::ios::binary);
      if (!file_) throw std::ios_base::failure("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (file_.is_open()) {
      file_.close();
      if (file_.fail()) throw std::ios_base::failure("error writing output file");
    }
    if (!*stream_) throw std::ios_base::failure("error writing output");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

Format parse_format(const std::string& s) { return s == "jsonl" ? Format::jsonl : Format::csv; }

bool general_family(const RunConfig& cfg) { return cfg.epsilon.has_value(); }

Grid make_grid(const RunConfig& cfg, Geometry geometry) {
  if (cfg.grid.empty()) return geometry == Geometry::line ? Grid::line_default() : Grid::radial_default();
  return Grid(cfg.grid[0], cfg.grid[1], cfg.grid[2], geometry);
}

void validate(const RunConfig& cfg, const TransformKind& kind) {
  if (!std::isfinite(cfg.gamma)) throw UsageError("--gamma must be finite");
  if (cfg.n < 0) throw UsageError("--N must be >= 0");
  if (cfg.states < 1) throw UsageError("--states must be >= 1");
  if (kind.requires_positive_gamma() && !(cfg.gamma > 0.0)) {
    throw UsageError("--gamma must be > 0 for radial kinds");
  }
  if (general_family(cfg)) {
    if (kind.tag == TransformTag::OneDim) throw UsageError("--epsilon applies to radial kinds only");
    if (cfg.alpha1 == 0.0 && cfg.alpha2 == 0.0) throw UsageError("--alpha1 and --alpha2 are both zero");
    if (cfg.gauss_sign != 1.0 && cfg.gauss_sign != -1.0) throw UsageError("--gauss-sign must be 1 or -1");
  }
}

struct CaseSetup {
  OscillatorParams params;
  PotentialModel v1;
  PhiFunction phi;
  std::optional<FactorizationSpec> spec;  // empty for the general family
};

CaseSetup setup_case(const RunConfig& cfg, const TransformKind& kind) {
  const bool line = kind.tag == TransformTag::OneDim;
  const OscillatorParams params = line ? OscillatorParams::line() : OscillatorParams::radial(cfg.gamma);
  PotentialModel v1 = base_potential(params);
  if (general_family(cfg)) {
    return {params, std::move(v1),
            general_phi(cfg.gamma, *cfg.epsilon, cfg.alpha1, cfg.alpha2, cfg.gauss_sign), std::nullopt};
  }
  PhiConstruction c = build_phi(kind, cfg.gamma, cfg.n);
  return {params, std::move(v1), std::move(c.phi), c.spec};
}

std::string case_label(const RunConfig& cfg, const TransformKind& kind) {
  std::ostringstream s;
  s << kind.name() << " gamma=" << format_number(cfg.gamma) << " N=" << cfg.n;
  return s.str();
}

int cmd_derive(const RunConfig& cfg, const TransformKind& kind, std::ostream& out) {
  if (general_family(cfg)) {
    throw UsageError("numeric-only family member: no closed form for general alpha1, alpha2");
  }
  const PhiConstruction c = build_phi(kind, cfg.gamma, cfg.n);
  const PotentialModel v2 = closed_form_v2(kind, cfg.gamma, cfg.n);
  const double eps = c.spec.epsilon;
  const char* var = v2.geometry() == Geometry::line ? "x" : "r";

  out << "case        " << case_label(cfg, kind) << '\n';
  out << "V2(" << var << ")       = " << v2.describe() << '\n';
  out << "quadratic   " << format_number(v2.quad()) << '\n';
  out << "centrifugal " << format_number(v2.centrifugal()) << '\n';
  out << "constant    " << format_number(v2.constant()) << '\n';
  for (std::size_t i = 0; i < v2.rational_terms().size(); ++i) {
    const RationalTerm& t = v2.rational_terms()[i];
    out << "rational " << i + 1 << "  p=" << format_number(t.p) << " q=" << format_number(t.q)
        << " g" << i + 1 << "=" << format_number(t.g) << '\n';
  }
  if (v2.log_term()) {
    const LogPolynomialTerm& t = *v2.log_term();
    out << "log term    -(ln F(" << -t.n << ", " << format_number(t.b) << "; " << format_number(t.c)
        << " " << var << "^2))''\n";
  }
  out << "epsilon     " << format_number(eps) << '\n';
  out << "Delta       " << format_number(-eps) << '\n';

  if (!cfg.out.empty()) {
    Sink sink(cfg.out, out);
    if (parse_format(cfg.format) == Format::jsonl) {
      json j;
      j["kind"] = kind.name();
      j["gamma"] = cfg.gamma;
      j["N"] = cfg.n;
      j["quadratic"] = v2.quad();
      j["centrifugal"] = v2.centrifugal();
      j["constant"] = v2.constant();
      j["rational_terms"] = json::array();
      for (const RationalTerm& t : v2.rational_terms()) {
        j["rational_terms"].push_back({{"p", t.p}, {"q", t.q}, {"g", t.g}});
      }
      if (v2.log_term()) {
        j["log_term"] = {{"N", v2.log_term()->n}, {"b", v2.log_term()->b}, {"C", v2.log_term()->c}};
      } else {
        j["log_term"] = nullptr;
      }
      j["epsilon"] = eps;
      j["delta"] = -eps;
      j["closed_form"] = v2.describe();
      sink.stream() << j.dump() << '\n';
    } else {
      TableWriter table(sink.stream(), Format::csv, {"term", "index", "value"});
      table.row({std::string("quadratic"), std::monostate{}, v2.quad()});
      table.row({std::string("centrifugal"), std::monostate{}, v2.centrifugal()});
      table.row({std::string("constant"), std::monostate{}, v2.constant()});
      for (std::size_t i = 0; i < v2.rational_terms().size(); ++i) {
        const RationalTerm& t = v2.rational_terms()[i];
        const long long idx = static_cast<long long>(i + 1);
        table.row({std::string("rational_p"), idx, t.p});
        table.row({std::string("rational_q"), idx, t.q});
        table.row({std::string("rational_g"), idx, t.g});
      }
      if (v2.log_term()) {
        table.row({std::string("log_N"), std::monostate{}, static_cast<long long>(v2.log_term()->n)});
        table.row({std::string("log_b"), std::monostate{}, v2.log_term()->b});
        table.row({std::string("log_C"), std::monostate{}, v2.log_term()->c});
      }
      table.row({std::string("epsilon"), std::monostate{}, eps});
      table.row({std::string("delta"), std::monostate{}, -eps});
    }
    sink.close();
  }
  return exit_ok;
}

int cmd_tabulate(const RunConfig& cfg, const TransformKind& kind, std::ostream& out,
                 std::ostream& err) {
  const CaseSetup s = setup_case(cfg, kind);
  const Grid grid = make_grid(cfg, s.params.geometry);
  const GridFunction v2 = transform(s.v1, s.phi, grid);
  if (general_family(cfg)) err << "note: numeric-only family member\n";

  Sink sink(cfg.out, out);
  const char* var = s.params.geometry == Geometry::line ? "x" : "r";
  TableWriter table(sink.stream(), parse_format(cfg.format), {var, "V1", "V2", "phi", "lnphi_prime"});
  for (std::size_t i = 0; i < v2.x.size(); ++i) {
    const double r = v2.x[i];
    table.row({r, s.v1(r), v2.values[i], s.phi(r), s.phi.log_derivative(r)});
  }
  sink.close();
  return exit_ok;
}

int cmd_spectrum(const RunConfig& cfg, const TransformKind& kind, std::ostream& out,
                 std::ostream& err) {
  const CaseSetup s = setup_case(cfg, kind);
  const Grid grid = make_grid(cfg, s.params.geometry);
  SolverOptions options;
  std::vector<double> analytic;
  RealFn v2;
  if (s.spec) {
    const PotentialModel closed = closed_form_v2(kind, cfg.gamma, cfg.n);
    v2 = [closed](double r) { return closed(r); };
    if (s.params.geometry == Geometry::radial) options.origin_exponent = partner_origin_exponent(*s.spec);
    analytic = expected_partner_levels(kind, analytic_spectrum(s.params, cfg.states).energies,
                                       s.spec->epsilon, static_cast<std::size_t>(cfg.states));
  } else {
    err << "note: numeric-only family member\n";
    const auto partner = std::make_shared<DarbouxPartner>(s.v1, s.phi, s.phi.domain());
    v2 = [partner](double r) { return (*partner)(r); };
  }
  const Spectrum numeric = solve_bound_states(v2, grid, cfg.states, options);

  Sink sink(cfg.out, out);
  TableWriter table(sink.stream(), parse_format(cfg.format), {"n", "E_analytic", "E_numeric", "deviation"});
  for (std::size_t i = 0; i < numeric.energies.size(); ++i) {
    const double e = numeric.energies[i];
    if (i < analytic.size()) {
      table.row({static_cast<long long>(i), analytic[i], e, e - analytic[i]});
    } else {
      table.row({static_cast<long long>(i), std::monostate{}, e, std::monostate{}});
    }
  }
  sink.close();
  return exit_ok;
}

int cmd_verify(const RunConfig& cfg, const TransformKind& kind, std::ostream& out) {
  if (general_family(cfg)) throw UsageError("verify needs a classified case (drop --epsilon)");
  VerifyConfig v;
  v.kind = kind;
  v.gamma = cfg.gamma;
  v.n = cfg.n;
  v.states = cfg.states;
  if (!cfg.grid.empty()) v.grid = make_grid(cfg, kind.tag == TransformTag::OneDim ? Geometry::line : Geometry::radial);
  const std::vector<CheckResult> results = verify_case(v);

  Sink sink(cfg.out, out);
  TableWriter table(sink.stream(), Format::jsonl, {"case", "check", "status", "value", "tolerance", "detail"});
  const std::string label = case_label(cfg, kind);
  for (const CheckResult& r : results) {
    table.row({label, r.name, std::string(to_string(r.status)), r.value, r.tolerance, r.detail});
  }
  sink.close();
  return all_passed(results) ? exit_ok : exit_failed;
}

struct ScanRow {
  double gamma;
  Cell nodeless;
  Cell first_node;
  std::string status;
};

ScanRow scan_point(const TransformKind& kind, double gamma, int n) {
  try {
    const PhiConstruction c = build_phi(kind, gamma, n);
    const NodeReport report = check_nodeless(c.phi, c.phi.domain());
    Cell first = std::monostate{};
    if (!report.nodes.empty()) first = report.nodes.front();
    return {gamma, report.nodeless, first, "ok"};
  } catch (const Error& e) {
    return {gamma, std::monostate{}, std::monostate{}, to_string(e.code())};
  }
}

int cmd_scan(const RunConfig& cfg, const TransformKind& kind, std::ostream& out) {
  if (cfg.gamma_range.size() != 3) throw UsageError("scan needs --gamma-range lo,hi,step");
  const double lo = cfg.gamma_range[0], hi = cfg.gamma_range[1], step = cfg.gamma_range[2];
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw UsageError("--gamma-range needs lo <= hi and step > 0");
  }
  const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw UsageError("--gamma-range has too many points");

  std::vector<std::future<ScanRow>> jobs;
  jobs.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double g = lo + static_cast<double>(i) * step;
    jobs.push_back(std::async(std::launch::async, scan_point, kind, g, cfg.n));
  }
  Sink sink(cfg.out, out);
  TableWriter table(sink.stream(), parse_format(cfg.format), {"gamma", "nodeless", "first_node", "status"});
  for (auto& job : jobs) {
    const ScanRow r = job.get();
    table.row({r.gamma, r.nodeless, r.first_node, r.status});
  }
  sink.close();
  return exit_ok;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--kind", cfg.kind, "transformation kind")
      ->check(CLI::IsMember({"t1", "t2", "t3", "t4", "1d"}))
      ->capture_default_str();
  sub->add_option("--gamma", cfg.gamma, "angular parameter gamma (> 0 for radial kinds)")->capture_default_str();
  sub->add_option("--N", cfg.n, "polynomial degree N")->capture_default_str();
  sub->add_option("--grid", cfg.grid, "lo,hi,step")->delimiter(',')->expected(3);
  sub->add_option("--states", cfg.states, "number of bound states")->capture_default_str();
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
}

void add_family(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--epsilon", cfg.epsilon, "factorization energy of a general two-term phi");
  sub->add_option("--alpha1", cfg.alpha1, "weight of the regular branch")->capture_default_str();
  sub->add_option("--alpha2", cfg.alpha2, "weight of the singular branch")->capture_default_str();
  sub->add_option("--gauss-sign", cfg.gauss_sign, "B in exp(B r^2/2)")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Partner potentials of the harmonic oscillator via Darboux transformations",
               "ces-forge"};
  app.require_subcommand(1);
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"derive", "print the closed form of V2"},
      {"tabulate", "write V1, V2, phi and (ln phi)' on a grid"},
      {"verify", "run the verification checks (JSON lines)"},
      {"scan", "sweep gamma and report nodelessness of phi"},
      {"spectrum", "numeric bound states of V2 against the predicted levels"},
  };
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, cfg);
    if (std::string(c.name) == "tabulate" || std::string(c.name) == "spectrum") add_family(sub, cfg);
    if (std::string(c.name) == "scan") {
      sub->add_option("--gamma-range", cfg.gamma_range, "lo,hi,step")->delimiter(',')->expected(3)->required();
    }
    sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    const TransformKind kind = TransformKind::parse(cfg.kind);
    validate(cfg, kind);
    if (cfg.command == "derive") return cmd_derive(cfg, kind, out);
    if (cfg.command == "tabulate") return cmd_tabulate(cfg, kind, out, err);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, kind, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, kind, out);
    if (cfg.command == "scan") return cmd_scan(cfg, kind, out);
    err << "error: unknown command\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_usage;
}

}  // namespace cesforge::cli
