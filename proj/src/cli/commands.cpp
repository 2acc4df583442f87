#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "renyi/cli.hpp"
#include "renyi/duality.hpp"
#include "renyi/error.hpp"
#include "renyi/evar.hpp"
#include "report.hpp"

#ifndef RENYI_VERSION
#define RENYI_VERSION "0.0.0"
#endif

namespace renyi::cli {
namespace {

constexpr const char* kTool = "renyi-risk";

struct Options {
  std::string input;
  std::string density;
  std::string output;
  std::string format = "json";
  std::string sweep_format = "csv";
  std::vector<double> alphas;
  double alpha = 0.0;
  std::vector<std::string> orders;
  std::string order;
  std::vector<std::string> qs;
  std::string grid = "1.1:10:20";
  bool emit_density = false;
};

double parse_real(const std::string& token, const std::string& what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (token.empty() || end != begin + token.size() || errno == ERANGE || !std::isfinite(v)) {
    throw SpecError("invalid " + what + " '" + token + "'");
  }
  return v;
}

EvarOptions solver_options() {
  EvarOptions opts;
  if (const char* env = std::getenv("RENYI_RISK_TOL")) {
    const double tol = parse_real(env, "RENYI_RISK_TOL");
    if (!(tol > 0.0)) throw SpecError("RENYI_RISK_TOL must be a positive decimal");
    opts.tol = tol;
  }
  return opts;
}

RiskSpec make_spec(double alpha, const std::string& order_token) {
  RiskSpec spec;
  spec.alpha = alpha;
  try {
    spec.order = parse_order(order_token);
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return spec;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw SpecError("alpha must lie in [0,1]");
}

void write_order(JsonWriter& j, Order p) {
  if (p.is_infinite()) {
    j.value("inf");
  } else {
    j.value(p.value());
  }
}

void write_input_summary(JsonWriter& j, const DiscreteDistribution& d) {
  j.key("input").begin_object();
  j.key("atoms").value(static_cast<long>(d.size()));
  j.key("essinf").value(d.essinf());
  j.key("esssup").value(d.esssup());
  j.key("mean").value(d.expectation());
  j.end_object();
}

void emit(const Options& o, const std::string& payload, std::ostream& out) {
  if (o.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + o.output + "'");
  file << payload;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw SpecError("format must be json or csv");
}

int cmd_risk(const Options& o, std::ostream& out) {
  check_format(o.format);
  for (double a : o.alphas) check_alpha(a);
  std::vector<RiskSpec> specs;
  for (double a : o.alphas) {
    for (const std::string& tok : o.orders) specs.push_back(make_spec(a, tok));
  }
  const EvarOptions opts = solver_options();
  const DiscreteDistribution d = load_distribution(o.input);

  std::vector<RiskResult> results;
  for (const RiskSpec& s : specs) results.push_back(evar(d, s, opts));

  if (o.format == "csv") {
    std::string csv = "alpha,order,value,t_star,branch\n";
    for (std::size_t k = 0; k < specs.size(); ++k) {
      csv += format_number(specs[k].alpha) + "," + to_string(specs[k].order) + "," +
             format_number(results[k].value) + "," + csv_field(results[k].t_star) + "," +
             std::string(to_string(results[k].branch)) + "\n";
    }
    emit(o, csv, out);
    return kExitOk;
  }

  JsonWriter j;
  j.begin_object();
  j.key("tool").value(kTool);
  j.key("version").value(RENYI_VERSION);
  write_input_summary(j, d);
  j.key("entries").begin_array();
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const RiskResult& r = results[k];
    j.begin_object();
    j.key("alpha").value(specs[k].alpha);
    j.key("order");
    write_order(j, specs[k].order);
    j.key("value").value(r.value);
    j.key("t_star").value(r.t_star);
    j.key("branch").value(std::string(to_string(r.branch)));
    j.key("iterations").value(static_cast<long>(r.iterations));
    j.key("residual").value(r.residual);
    if (o.emit_density) {
      j.key("density");
      if (r.density) {
        j.numbers({r.density->weights().begin(), r.density->weights().end()});
      } else {
        j.null();
      }
    }
    j.end_object();
  }
  j.end_array();
  j.end_object();
  emit(o, j.str(), out);
  return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
  if (spec == "chain") return {10.0, 3.0, 1.5, 1.0, 0.5, -0.5, -2.0};
  if (spec == "higher") return parse_grid("1.1:10:20");
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3 || spec.back() == ':') {
    throw SpecError("grid must be lo:hi:n or a preset (chain, higher)");
  }
  const double lo = parse_real(parts[0], "grid bound");
  const double hi = parse_real(parts[1], "grid bound");
  const double nd = parse_real(parts[2], "grid size");
  if (nd < 1.0 || nd != std::floor(nd) || nd > 1e6) throw SpecError("grid size must be a positive integer");
  if (!(lo > 1.0)) throw SpecError("grid lower bound must exceed 1");
  if (hi < lo) throw SpecError("grid upper bound must not be below the lower bound");
  const int n = static_cast<int>(nd);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  return out;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  check_format(o.sweep_format);
  check_alpha(o.alpha);
  const std::vector<double> grid = parse_grid(o.grid);
  const EvarOptions opts = solver_options();
  const DiscreteDistribution d = load_distribution(o.input);

  struct Row {
    double pprime;
    Order p;
    double value;
    std::optional<double> t_star;
    std::string label;
  };
  std::vector<Row> rows;
  for (double pp : grid) {
    const Order p = conjugate(Order(pp));
    const RiskResult r = evar(d, {o.alpha, p}, opts);
    rows.push_back({pp, p, r.value, r.t_star, std::string(to_string(r.branch))});
  }
  const RiskResult ref = evar(d, {o.alpha, Order(1.0)}, opts);
  rows.push_back({std::numeric_limits<double>::infinity(), Order(1.0), ref.value, ref.t_star, "avar"});
  rows.push_back({0.0, Order(0.0), d.esssup(), std::nullopt, "esssup"});

  if (o.sweep_format == "json") {
    JsonWriter j;
    j.begin_object();
    j.key("tool").value(kTool);
    j.key("version").value(RENYI_VERSION);
    write_input_summary(j, d);
    j.key("alpha").value(o.alpha);
    j.key("rows").begin_array();
    for (const Row& r : rows) {
      j.begin_object();
      j.key("pprime");
      write_order(j, Order(r.pprime));
      j.key("p");
      write_order(j, r.p);
      j.key("value").value(r.value);
      j.key("t_star").value(r.t_star);
      j.key("label").value(r.label);
      j.end_object();
    }
    j.end_array();
    j.end_object();
    emit(o, j.str(), out);
    return kExitOk;
  }
  std::string csv = "pprime,p,value,t_star,label\n";
  for (const Row& r : rows) {
    csv += format_number(r.pprime) + "," + to_string(r.p) + "," + format_number(r.value) + "," +
           csv_field(r.t_star) + "," + r.label + "\n";
  }
  emit(o, csv, out);
  return kExitOk;
}

int cmd_dualnorm(const Options& o, std::ostream& out) {
  check_alpha(o.alpha);
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw SpecError("dual norm needs alpha in (0,1)");
  const RiskSpec spec = make_spec(o.alpha, o.order);
  const Regime regime = classify(spec.order);
  if (regime != Regime::higher && regime != Regime::negative) {
    throw SpecError("dual norm needs order p > 1 or p < 0");
  }
  const Density z = load_density(o.density);
  const double p = spec.order.value();
  const DualNorm n = dual_norm(z, o.alpha, p);

  JsonWriter j;
  j.begin_object();
  j.key("tool").value(kTool);
  j.key("version").value(RENYI_VERSION);
  j.key("alpha").value(o.alpha);
  j.key("order").value(p);
  j.key("value").value(n.value);
  j.key("t_star").value(n.t_star);
  j.key("attained").value(n.t_star.has_value());
  if (regime == Regime::higher) {
    const double pprime = p / (p - 1.0);
    double moment = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) moment += z.probs()[i] * std::pow(z[i], pprime);
    const double norm = std::pow(moment, 1.0 / pprime);
    const NormBounds c = norm_equivalence_bounds(o.alpha, p);
    j.key("bounds").begin_object();
    j.key("lower").value(std::pow(1.0 - o.alpha, (pprime - 1.0) / pprime) * norm);
    j.key("upper").value(norm / c.lower);
    j.end_object();
  } else {
    j.key("affine_bound").value(dual_norm_affine_bound(z.probs(), z.weights(), o.alpha, p));
  }
  j.end_object();
  emit(o, j.str(), out);
  return kExitOk;
}

int cmd_kusuoka(const Options& o, std::ostream& out) {
  check_alpha(o.alpha);
  const RiskSpec spec = make_spec(o.alpha, o.order);
  const EvarOptions opts = solver_options();
  const DiscreteDistribution d = load_distribution(o.input);
  const RiskResult r = evar(d, spec, opts);
  const KusuokaMeasure m = kusuoka(d, spec, opts);

  JsonWriter j;
  j.begin_object();
  j.key("tool").value(kTool);
  j.key("version").value(RENYI_VERSION);
  write_input_summary(j, d);
  j.key("alpha").value(spec.alpha);
  j.key("order");
  write_order(j, spec.order);
  j.key("branch").value(std::string(to_string(r.branch)));
  j.key("value").value(r.value);
  j.key("mixture_value").value(kusuoka_evaluate(m, d));
  j.key("atoms").begin_array();
  for (const KusuokaAtom& a : m.atoms) {
    j.begin_object().key("level").value(a.level).key("mass").value(a.mass).end_object();
  }
  j.end_array();
  j.key("sigma").begin_array();
  for (const StepPoint& s : m.sigma) {
    j.begin_object().key("breakpoint").value(s.breakpoint).key("value").value(s.value).end_object();
  }
  j.end_array();
  j.end_object();
  emit(o, j.str(), out);
  return kExitOk;
}

Order parse_entropy_order(const std::string& token) {
  if (token == "0") return Order(0.0);
  try {
    return parse_order(token);
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

int cmd_entropy(const Options& o, std::ostream& out) {
  std::vector<Order> qs;
  for (const std::string& t : o.qs) qs.push_back(parse_entropy_order(t));
  const Density z = load_density(o.density);

  JsonWriter j;
  j.begin_object();
  j.key("tool").value(kTool);
  j.key("version").value(RENYI_VERSION);
  j.key("entries").begin_array();
  for (Order q : qs) {
    j.begin_object();
    j.key("q");
    write_order(j, q);
    double h = 0.0;
    try {
      h = renyi_entropy(z, q);
    } catch (const std::domain_error& e) {
      throw SpecError(e.what());
    }
    j.key("entropy").value(h);
    j.end_object();
  }
  j.end_array();
  j.end_object();
  emit(o, j.str(), out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi-entropy risk measures on discrete distributions", kTool};
  app.set_version_flag("--version", RENYI_VERSION);
  app.require_subcommand(1);
  Options o;

  auto* risk = app.add_subcommand("risk", "Risk values for every (alpha, order) pair");
  risk->add_option("-i,--input", o.input, "CSV or JSON sample file")->required();
  risk->add_option("-a,--alpha", o.alphas, "Confidence levels in [0,1]")->required()->delimiter(',');
  risk->add_option("-p,--order", o.orders, "Orders: decimal or inf")->required()->delimiter(',');
  risk->add_flag("--emit-density", o.emit_density, "Include optimal density weights");
  risk->add_option("--format", o.format, "json or csv");
  risk->add_option("-o,--output", o.output, "Write to file instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Risk values along a grid of conjugate orders");
  sweep->add_option("-i,--input", o.input, "CSV or JSON sample file")->required();
  sweep->add_option("-a,--alpha", o.alpha, "Confidence level in [0,1]")->required();
  sweep->add_option("--pprime", o.grid, "lo:hi:n with lo > 1, or preset chain|higher");
  sweep->add_option("--format", o.sweep_format, "csv or json (default csv)");
  sweep->add_option("-o,--output", o.output, "Write to file instead of stdout");

  auto* dual = app.add_subcommand("dualnorm", "Dual norm of a density");
  dual->add_option("-d,--density", o.density, "CSV or JSON density file")->required();
  dual->add_option("-a,--alpha", o.alpha, "Confidence level in (0,1)")->required();
  dual->add_option("-p,--order", o.order, "Order p > 1 or p < 0")->required();
  dual->add_option("-o,--output", o.output, "Write to file instead of stdout");

  auto* kus = app.add_subcommand("kusuoka", "Kusuoka measure of the optimal density");
  kus->add_option("-i,--input", o.input, "CSV or JSON sample file")->required();
  kus->add_option("-a,--alpha", o.alpha, "Confidence level in [0,1]")->required();
  kus->add_option("-p,--order", o.order, "Order: decimal or inf")->required();
  kus->add_option("-o,--output", o.output, "Write to file instead of stdout");

  auto* ent = app.add_subcommand("entropy", "Renyi entropies of a density");
  ent->add_option("-d,--density", o.density, "CSV or JSON density file")->required();
  ent->add_option("-q,--q", o.qs, "Orders: decimal, 0 or inf")->required()->delimiter(',');
  ent->add_option("-o,--output", o.output, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (risk->parsed()) return cmd_risk(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (dual->parsed()) return cmd_dualnorm(o, out);
    if (kus->parsed()) return cmd_kusuoka(o, out);
    if (ent->parsed()) return cmd_entropy(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const ConvergenceError& e) {
    err << "error: solver did not converge: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace renyi::cli
