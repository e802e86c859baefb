#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "nlqm/dynamics.hpp"
#include "nlqm/elliptic.hpp"
#include "nlqm/equilibria.hpp"
#include "nlqm/errors.hpp"
#include "nlqm/exact_solutions.hpp"
#include "nlqm/format.hpp"
#include "nlqm/params.hpp"
#include "nlqm/transforms.hpp"

namespace nlqm::cli {

namespace {

using nlohmann::json;

// Bad flags, missing values, unknown config keys.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A check ran to completion and did not pass.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Diagnostics {
  std::ostream& os;
  bool color;

  void error(const std::string& msg) const { tagged("error", "\033[31m", msg); }
  void warning(const std::string& msg) const { tagged("warning", "\033[33m", msg); }
  void note(const std::string& msg) const { os << msg << '\n'; }

 private:
  void tagged(const char* tag, const char* code, const std::string& msg) const {
    if (color) {
      os << code << tag << ":\033[0m " << msg << '\n';
    } else {
      os << tag << ": " << msg << '\n';
    }
  }
};

bool want_color(const std::ostream& err) {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && no_color[0] != '\0') return false;
  return &err == &std::cerr && ::isatty(STDERR_FILENO) == 1;
}

// ---------------------------------------------------------------------------
// Flags and config file
// ---------------------------------------------------------------------------

enum class Kind { number, integer, text };

struct FlagSpec {
  const char* key;  // config key and long flag name without dashes
  Kind kind;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"mu", Kind::number, "mu"},
    {"b", Kind::number, "b"},
    {"N", Kind::number, "norm N > 0"},
    {"E", Kind::number, "level-surface energy"},
    {"x0", Kind::number, "initial x"},
    {"y0", Kind::number, "initial y"},
    {"t-end", Kind::number, "end time"},
    {"dt", Kind::number, "fixed RK4 step"},
    {"tol", Kind::number, "adaptive abs/rel tolerance"},
    {"method", Kind::text, "rk4 | adaptive"},
    {"form", Kind::text, "coupled | lienard | levinson"},
    {"family", Kind::text, "sn | abel | soliton-b0 | soliton-mu0 | soliton-general"},
    {"B", Kind::number, "Abel solution constant"},
    {"k", Kind::number, "elliptic modulus in [0, 1]"},
    {"u-min", Kind::number, "first u"},
    {"u-max", Kind::number, "last u"},
    {"points", Kind::integer, "number of rows"},
    {"out", Kind::text, "output path (stdout when absent)"},
    {"format", Kind::text, "csv | json"},
};

const FlagSpec* find_flag(const std::string& key) {
  for (const auto& f : kFlags) {
    if (key == f.key) return &f;
  }
  return nullptr;
}

// Raw flag storage for one subcommand.
struct FlagSlots {
  std::map<std::string, double> numbers;
  std::map<std::string, long long> integers;
  std::map<std::string, std::string> texts;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  CLI::Option* config = nullptr;
};

void add_flags(CLI::App& app, FlagSlots& slots, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    const FlagSpec* f = find_flag(key);
    const std::string name = std::string("--") + key;
    switch (f->kind) {
      case Kind::number:
        slots.options[key] = app.add_option(name, slots.numbers[key], f->help);
        break;
      case Kind::integer:
        slots.options[key] = app.add_option(name, slots.integers[key], f->help);
        break;
      case Kind::text:
        slots.options[key] = app.add_option(name, slots.texts[key], f->help);
        break;
    }
  }
  slots.config = app.add_option("--config", slots.config_path, "JSON file of flag values");
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  return j;
}

// Flags given on the command line, overlaid on the config file. Only keys the
// subcommand accepts may appear in either.
json effective_config(const FlagSlots& slots) {
  json eff = json::object();
  if (slots.config->count() > 0) {
    const json file = read_config_file(slots.config_path);
    for (const auto& [key, value] : file.items()) {
      const FlagSpec* f = find_flag(key);
      if (f == nullptr || slots.options.count(key) == 0) {
        throw UsageError("unknown config key '" + key + "' for this command");
      }
      const bool ok = f->kind == Kind::text      ? value.is_string()
                      : f->kind == Kind::integer ? value.is_number_integer()
                                                 : value.is_number();
      if (!ok) throw UsageError("config key '" + key + "' has the wrong type");
      eff[key] = value;
    }
  }
  for (const auto& [key, opt] : slots.options) {
    if (opt->count() == 0) continue;
    switch (find_flag(key)->kind) {
      case Kind::number: eff[key] = slots.numbers.at(key); break;
      case Kind::integer: eff[key] = slots.integers.at(key); break;
      case Kind::text: eff[key] = slots.texts.at(key); break;
    }
  }
  return eff;
}

std::optional<double> opt_number(const json& c, const char* key) {
  if (!c.contains(key)) return std::nullopt;
  const double v = c.at(key).get<double>();
  if (!std::isfinite(v)) throw UsageError(std::string("--") + key + " must be finite");
  return v;
}

double need_number(const json& c, const char* key) {
  if (auto v = opt_number(c, key)) return *v;
  throw UsageError(std::string("--") + key + " is required");
}

std::optional<std::string> opt_text(const json& c, const char* key) {
  if (!c.contains(key)) return std::nullopt;
  return c.at(key).get<std::string>();
}

enum class Format { csv, json };

Format output_format(const json& c, Format fallback) {
  const auto f = opt_text(c, "format");
  if (!f) return fallback;
  if (*f == "csv") return Format::csv;
  if (*f == "json") return Format::json;
  throw UsageError("--format must be csv or json");
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

class Sink {
 public:
  Sink(std::optional<std::string> path, std::ostream& fallback) : path_(std::move(path)) {
    if (path_) {
      file_ = std::make_unique<std::ofstream>(*path_, std::ios::binary);
      if (!*file_) throw IoError("cannot open '" + *path_ + "' for writing");
      os_ = file_.get();
    } else {
      os_ = &fallback;
    }
  }

  std::ostream& stream() { return *os_; }

  void finish() {
    os_->flush();
    if (!*os_) throw IoError("write failed" + (path_ ? " for '" + *path_ + "'" : std::string()));
  }

 private:
  std::optional<std::string> path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (double v : values) {
    if (!row.empty()) row += ',';
    row += format_real(v);
  }
  row += '\n';
  return row;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

SystemForm parse_form(const std::string& s) {
  if (s == "coupled") return SystemForm::coupled_xy;
  if (s == "lienard") return SystemForm::lienard_y;
  if (s == "levinson") return SystemForm::levinson_smith_x;
  throw UsageError("--form must be coupled, lienard or levinson");
}

void write_trajectory_json(std::ostream& os, const Trajectory& tr) {
  const bool coupled = tr.form() == SystemForm::coupled_xy;
  json rows = json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    rows.push_back({tr.time(i), tr.state(i)[0], tr.state(i)[1]});
  }
  const json j = {
      {"form", to_string(tr.form())},
      {"method", to_string(tr.method())},
      {"columns", coupled ? json{"t", "x", "y"} : json{"t", "u", "du"}},
      {"rows", rows},
      {"accepted_steps", tr.stats().accepted},
      {"rejected_steps", tr.stats().rejected},
  };
  os << j.dump(2) << '\n';
}

int cmd_simulate(const json& c, std::ostream& out, const Diagnostics& diag) {
  const SystemForm form = parse_form(opt_text(c, "form").value_or("coupled"));
  const Format fmt = output_format(c, Format::csv);

  // The branch check needs only mu and b, so it comes before anything else.
  const double mu = need_number(c, "mu");
  const double b = need_number(c, "b");
  if (form == SystemForm::levinson_smith_x && nearly_equal(b, -mu)) {
    throw BranchError("levinson form requires b + mu != 0 (Lambda is undefined)");
  }
  const ModelParams p(mu, b, need_number(c, "N"));
  const double x0 = need_number(c, "x0");
  const double y0 = need_number(c, "y0");
  if (x0 < 0.0) throw DomainError("--x0 must be >= 0 (x = |gamma|^2)");
  if (form == SystemForm::levinson_smith_x && x0 == 0.0) {
    throw DomainError("levinson form is singular at x = 0; --x0 must be > 0");
  }
  if (PhaseState(0.0, x0, y0).exceeds_norm(p.N())) {
    diag.warning("|y0| > N: the initial state lies outside the norm bound");
  }

  IntegratorConfig cfg;
  const std::string method = opt_text(c, "method").value_or("adaptive");
  if (method == "rk4") {
    cfg.method = IntegrationMethod::rk4_fixed;
  } else if (method != "adaptive") {
    throw UsageError("--method must be rk4 or adaptive");
  }
  if (auto dt = opt_number(c, "dt")) cfg.dt = *dt;
  if (auto tol = opt_number(c, "tol")) cfg.abs_tol = cfg.rel_tol = *tol;
  cfg.t_end = opt_number(c, "t-end").value_or(cfg.t_end);
  cfg.validate();

  const auto init = initial_state_for(form, p, x0, y0);
  Sink sink(opt_text(c, "out"), out);
  auto emit = [&](const Trajectory& tr) {
    if (fmt == Format::csv) {
      write_trajectory_csv(sink.stream(), tr);
    } else {
      write_trajectory_json(sink.stream(), tr);
    }
    sink.finish();
  };
  try {
    emit(integrate(form, p, init, cfg));
  } catch (const IntegrationError& e) {
    emit(e.partial());
    diag.note("partial trajectory written (" + std::to_string(e.partial().size()) + " rows)");
    throw;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// equilibria
// ---------------------------------------------------------------------------

int cmd_equilibria(const json& c, std::ostream& out) {
  const ModelParams p(need_number(c, "mu"), need_number(c, "b"), need_number(c, "N"));
  const Format fmt = output_format(c, Format::json);
  std::vector<EquilibriumReport> reports;
  for (const auto& point : find_equilibria(p)) reports.push_back(classify(p, point));

  Sink sink(opt_text(c, "out"), out);
  std::ostream& os = sink.stream();
  if (fmt == Format::json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    os << arr.dump(2) << '\n';
  } else {
    os << "x,y,trace,det,re1,im1,re2,im2,class\n";
    for (const auto& r : reports) {
      std::string row = csv_row({r.point.x, r.point.y, r.trace, r.det, r.eigenvalues[0].real(),
                                 r.eigenvalues[0].imag(), r.eigenvalues[1].real(),
                                 r.eigenvalues[1].imag()});
      row.pop_back();
      os << row << ',' << to_string(r.classification) << '\n';
    }
  }
  sink.finish();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

FamilyTag parse_family(const std::string& s) {
  for (FamilyTag t : {FamilyTag::sn_family, FamilyTag::abel_bernoulli, FamilyTag::soliton_b0,
                      FamilyTag::soliton_mu0, FamilyTag::soliton_general}) {
    if (s == to_string(t)) return t;
  }
  throw UsageError("--family must be sn, abel, soliton-b0, soliton-mu0 or soliton-general");
}

SolutionFamily family_from_config(const json& c) {
  const auto name = opt_text(c, "family");
  if (!name) throw UsageError("--family is required");
  const FamilyTag tag = parse_family(*name);
  switch (tag) {
    case FamilyTag::sn_family: {
      auto f = SolutionFamily::sn(need_number(c, "mu"));
      // b and N follow from mu; explicit values must agree.
      if (auto b = opt_number(c, "b"); b && !nearly_equal(*b, f.params().b())) {
        throw BranchError("sn family: b = -2mu required");
      }
      if (auto N = opt_number(c, "N"); N && !nearly_equal(*N, f.params().N())) {
        throw BranchError("sn family: N^2 = (mu^2+1)/(2mu^2) required");
      }
      return f;
    }
    case FamilyTag::abel_bernoulli:
      return {tag, ModelParams(need_number(c, "mu"), need_number(c, "b"), need_number(c, "N")),
              need_number(c, "B")};
    case FamilyTag::soliton_b0:
      return {tag, ModelParams(need_number(c, "mu"), opt_number(c, "b").value_or(0.0),
                               need_number(c, "N"), need_number(c, "E"))};
    case FamilyTag::soliton_mu0:
      return {tag, ModelParams(opt_number(c, "mu").value_or(0.0), need_number(c, "b"),
                               need_number(c, "N"), need_number(c, "E"))};
    case FamilyTag::soliton_general:
      return {tag, ModelParams(need_number(c, "mu"), need_number(c, "b"), need_number(c, "N"),
                               opt_number(c, "E"))};
  }
  throw UsageError("unknown family");
}

int cmd_verify(const json& c, std::ostream& out, const Diagnostics& diag) {
  if (output_format(c, Format::json) != Format::json) {
    throw UsageError("verify writes JSON only");
  }
  const SolutionFamily f = family_from_config(c);
  for (const auto& w : validate_params(f.params()).warnings) diag.warning(w);

  std::vector<SystemForm> forms;
  if (auto form = opt_text(c, "form")) {
    forms = {parse_form(*form)};
  } else if (f.tag() == FamilyTag::abel_bernoulli) {
    forms = {SystemForm::lienard_y};
  } else if (f.tag() == FamilyTag::soliton_b0 || f.tag() == FamilyTag::soliton_mu0) {
    // These solve the Levinson-Smith form for their own E; they are not
    // orbits of the coupled rates in general.
    forms = {SystemForm::levinson_smith_x};
  } else {
    forms = {SystemForm::coupled_xy, SystemForm::lienard_y, SystemForm::levinson_smith_x};
  }

  const bool abel = f.tag() == FamilyTag::abel_bernoulli;
  const auto grid = abel ? abel_regular_grid(f.B(), -3.0, 3.0, 1201) : uniform_grid(-10.0, 10.0, 401);

  json j = {{"family", to_string(f.tag())}, {"params", params_to_json(f.params())}};
  if (abel) {
    j["B"] = f.B();
    j["branch"] = to_string(f.bernoulli_branch());
    j["poles"] = abel_poles(f.B());
  }
  bool pass = true;
  json checks = json::array();
  for (SystemForm form : forms) {
    json r = report_to_json(verify_residual(f, form, grid));
    r["form"] = to_string(form);
    pass = pass && r["pass"].get<bool>();
    checks.push_back(r);
  }
  j["checks"] = checks;

  const bool soliton = f.tag() == FamilyTag::soliton_b0 || f.tag() == FamilyTag::soliton_mu0 ||
                       f.tag() == FamilyTag::soliton_general;
  if (soliton) {
    const auto d = first_integral_along(f, grid);
    // Deviations are measured against the size of the cancelling terms.
    json fi = {{"first", d.first},
               {"min", d.min},
               {"max", d.max},
               {"max_abs_deviation", d.max_abs_deviation},
               {"max_scaled_deviation", d.max_scaled_deviation},
               {"tolerance", 1e-6},
               {"pass", d.max_scaled_deviation <= 1e-6}};
    // The level-surface energy this family was built from.
    const double E = f.tag() == FamilyTag::soliton_general ? 0.0 : *f.params().E();
    fi["E"] = E;
    fi["matches_E"] = std::abs(d.first - E) <= 1e-6 * std::max(1.0, std::abs(E));
    pass = pass && fi["pass"].get<bool>();
    j["first_integral"] = fi;
  }
  j["pass"] = pass;

  Sink sink(opt_text(c, "out"), out);
  sink.stream() << j.dump(2) << '\n';
  sink.finish();
  if (!pass) throw CheckFailed("residual above tolerance");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

// Rows xi = (i - 600) / 200, i = 0..1200: step 0.005 on [-3, 3] with xi = 0
// and xi = +-1 exactly on the grid.
constexpr int kFig1Rows = 1201;
constexpr double kFig1Step = 0.005;

std::string abel_cell(double N, double B, double xi) {
  try {
    return format_real(eval_abel_solution(N, B, xi));
  } catch (const PoleError&) {
    return "";  // exactly on a pole; reported on stderr
  }
}

void figure1(const std::string& prefix, const Diagnostics& diag) {
  for (double B : {1.0, 2.0}) {
    std::ostringstream poles;
    for (double pole : abel_poles(B)) poles << ' ' << format_real(pole);
    diag.note("fig1: B = " + format_real(B) + " poles at xi =" + poles.str() +
              "; rows within " + format_real(kFig1Step) + " of a pole are near-singular");
  }
  for (int N : {1, 2}) {
    std::string content = "xi,y_B1,y_B2\n";
    for (int i = 0; i < kFig1Rows; ++i) {
      const double xi = (i - 600) / 200.0;
      content += format_real(xi) + ',' + abel_cell(N, 1.0, xi) + ',' + abel_cell(N, 2.0, xi) + '\n';
    }
    const std::string path = prefix + "_N" + std::to_string(N) + ".csv";
    write_file(path, content);
    diag.note("fig1: wrote " + path);
  }
}

void figure2(const std::string& path, std::optional<double> eq30_E, const Diagnostics& diag) {
  constexpr double kCaptionE = 10.0;
  constexpr double kDefaultEq30E = 4.0;
  const double E30 = eq30_E.value_or(kDefaultEq30E);
  const SolutionFamily eq30(FamilyTag::soliton_b0, ModelParams(1.0, 0.0, 1.0, E30));
  const SolutionFamily eq32(FamilyTag::soliton_mu0, ModelParams(0.0, -2.0, 1.0, kCaptionE));
  const SolutionFamily eq33(FamilyTag::soliton_general, ModelParams(1.0, -2.0, 1.0));
  diag.warning("fig2: x_eq30 needs E < 8mu^2 = 8, so the figure-wide E = 10 is replaced by E = " +
               format_real(E30) + " (mu = 1, b = 0, N = 1)");
  diag.note("fig2: x_eq32 uses mu = 0, b = -2, N = 1, E = 10; x_eq33 uses mu = 1, b = -2, N = 1");

  std::string content = "t,x_eq30,x_eq32,x_eq33\n";
  for (int i = 0; i <= 1200; ++i) {
    const double t = i / 200.0;
    content += csv_row({t, eval_soliton(eq30, t), eval_soliton(eq32, t), eval_soliton(eq33, t)});
  }
  write_file(path, content);
  diag.note("fig2: wrote " + path);
}

int cmd_figure(const std::string& which, const json& c, const Diagnostics& diag) {
  if (output_format(c, Format::csv) != Format::csv) throw UsageError("figures are CSV only");
  if (which == "fig1") {
    if (c.contains("E")) throw UsageError("--E applies to fig2 only");
    figure1(opt_text(c, "out").value_or("fig1"), diag);
  } else if (which == "fig2") {
    figure2(opt_text(c, "out").value_or("fig2.csv"), opt_number(c, "E"), diag);
  } else {
    throw UsageError("figure must be fig1 or fig2");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// elliptic
// ---------------------------------------------------------------------------

int cmd_elliptic(const json& c, std::ostream& out) {
  const EllipticModulus k(need_number(c, "k"));
  const double u_min = opt_number(c, "u-min").value_or(0.0);
  const double u_max = opt_number(c, "u-max").value_or(10.0);
  const long long points = c.contains("points") ? c.at("points").get<long long>() : 1001;
  if (points < 2) throw UsageError("--points must be at least 2");
  if (!(u_max > u_min)) throw UsageError("--u-max must exceed --u-min");
  if (output_format(c, Format::csv) != Format::csv) throw UsageError("elliptic writes CSV only");

  Sink sink(opt_text(c, "out"), out);
  std::ostream& os = sink.stream();
  os << "u,sn,cn,dn\n";
  for (const double u : uniform_grid(u_min, u_max, static_cast<std::size_t>(points))) {
    const auto [sn, cn, dn] = jacobi_sncndn(u, k);
    os << csv_row({u, sn, cn, dn});
  }
  sink.finish();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Diagnostics diag{err, want_color(err)};

  CLI::App app{"Reduced two-state nonlinear quantum dynamics: simulation and closed forms", "nlqm"};
  app.require_subcommand(1);

  FlagSlots sim_flags, eq_flags, ver_flags, fig_flags, ell_flags;
  auto* simulate = app.add_subcommand("simulate", "integrate one of the three equivalent forms");
  add_flags(*simulate, sim_flags,
            {"mu", "b", "N", "x0", "y0", "t-end", "dt", "tol", "method", "form", "out", "format"});
  auto* equilibria = app.add_subcommand("equilibria", "fixed points and their stability");
  add_flags(*equilibria, eq_flags, {"mu", "b", "N", "out", "format"});
  auto* verify = app.add_subcommand("verify", "residuals of a closed-form family");
  add_flags(*verify, ver_flags, {"family", "mu", "b", "N", "E", "B", "form", "out", "format"});
  auto* figure = app.add_subcommand("figure", "figure data (fig1: y(xi); fig2: x(t) solitons)");
  std::string which;
  figure->add_option("which", which, "fig1 | fig2")->required();
  add_flags(*figure, fig_flags, {"E", "out", "format"});
  auto* elliptic = app.add_subcommand("elliptic", "tabulate sn, cn, dn");
  add_flags(*elliptic, ell_flags, {"k", "u-min", "u-max", "points", "out", "format"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diag.error(e.what());
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const FlagSlots& slots = sub == simulate     ? sim_flags
                             : sub == equilibria ? eq_flags
                             : sub == verify     ? ver_flags
                             : sub == figure     ? fig_flags
                                                 : ell_flags;
    json cfg = effective_config(slots);
    if (sub == figure) cfg["which"] = which;
    err << "effective config: " << json{{"command", sub->get_name()}, {"flags", cfg}}.dump()
        << '\n';

    if (sub == simulate) return cmd_simulate(cfg, out, diag);
    if (sub == equilibria) return cmd_equilibria(cfg, out);
    if (sub == verify) return cmd_verify(cfg, out, diag);
    if (sub == figure) return cmd_figure(which, cfg, diag);
    return cmd_elliptic(cfg, out);
  } catch (const UsageError& e) {
    diag.error(e.what());
    err << sub->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    diag.error(e.what());
    return kExitUsage;
  } catch (const BranchError& e) {
    diag.error(std::string("inadmissible parameters: ") + e.what());
    return kExitUsage;
  } catch (const CheckFailed& e) {
    diag.error(e.what());
    return kExitRuntime;
  } catch (const IoError& e) {
    diag.error(e.what());
    return kExitRuntime;
  } catch (const Error& e) {
    diag.error(e.what());
    return kExitRuntime;
  } catch (const nlohmann::json::exception& e) {
    diag.error(std::string("config value: ") + e.what());
    return kExitUsage;
  }
}

}  // namespace nlqm::cli
