// qcli: command-line access to the deformed-arithmetic library.
//
//   eval     evaluate one operation at a given q
//   table    q-integer tables (floating or exact rationals)
//   verify   run a named invariant suite, JSON report, exit 1 on failure
//   entropy  Tsallis entropy and the composition law
//   qs       quasisymmetry / doubling / snowflake experiments
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
// Randomized suites require an explicit --seed and are deterministic
// given one: the same command line produces byte-identical output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qdeform/qcompat.hpp"
#include "qdeform/qcore.hpp"
#include "qdeform/qentropy.hpp"
#include "qdeform/qint.hpp"
#include "qdeform/qmetric.hpp"
#include "qdeform/serialize.hpp"
#include "qdeform/verify.hpp"

namespace {

using nlohmann::json;
using namespace qdeform;

struct GlobalOpts {
  std::string q_text = "0.5";
  bool q_given = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::string format = "json";
  std::string out_path;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const GlobalOpts& g, const std::string& payload) {
  if (g.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw std::runtime_error("cannot open output file " + g.out_path);
  out << payload;
}

double parse_q_double(const GlobalOpts& g) {
  const BigRat r = parse_rational(g.q_text);  // accepts decimals and a/b
  return r.convert_to<double>();
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  if (!text.empty() && text.front() == '[') {
    for (const auto& v : json::parse(text)) values.push_back(v.get<double>());
    return values;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    if (tok.empty()) throw std::invalid_argument("empty number in list");
    std::size_t used = 0;
    values.push_back(std::stod(tok, &used));
    if (used != tok.size()) {
      throw std::invalid_argument("bad number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

// --- eval ------------------------------------------------------------

int run_eval(const GlobalOpts& g, const std::string& op,
             const std::string& args_text, const std::string& variant) {
  const auto args = parse_number_list(args_text);
  const QParam p(parse_q_double(g));

  const auto unary = [&](auto&& f) {
    if (args.size() != 1) {
      throw std::invalid_argument("op '" + op + "' takes exactly 1 argument");
    }
    return f(args[0]);
  };
  const auto binary = [&](auto&& f) {
    if (args.size() != 2) {
      throw std::invalid_argument("op '" + op + "' takes exactly 2 arguments");
    }
    return f(args[0], args[1]);
  };

  const BorgesVariant bv = variant == "printed" ? BorgesVariant::printed
                                                : BorgesVariant::corrected;
  double result;
  if (op == "oplus") {
    result = binary([&](double a, double b) {
      return oplus(QReal(p, a), QReal(p, b)).value();
    });
  } else if (op == "ominus") {
    result = binary([&](double a, double b) {
      return ominus(QReal(p, a), QReal(p, b)).value();
    });
  } else if (op == "neg") {
    result = unary([&](double a) { return neg(QReal(p, a)).value(); });
  } else if (op == "otimes") {
    result = binary([&](double a, double b) {
      return otimes(QReal(p, a), QReal(p, b)).value();
    });
  } else if (op == "oslash") {
    result = binary([&](double a, double b) {
      return oslash(QReal(p, a), QReal(p, b)).value();
    });
  } else if (op == "qabs") {
    result = unary([&](double a) { return q_abs(QReal(p, a)).value(); });
  } else if (op == "qdist") {
    result = binary([&](double a, double b) {
      return q_dist(QReal(p, a), QReal(p, b)).value();
    });
  } else if (op == "tau") {
    result = unary([&](double a) { return tau(p, a).value(); });
  } else if (op == "tauinv") {
    result = unary([&](double a) { return tau_inv(p, a); });
  } else if (op == "expq") {
    result = unary([&](double a) { return exp_q(QReal(p, a)).value(); });
  } else if (op == "logq") {
    result = unary([&](double a) { return log_q(QReal(p, a)).value(); });
  } else if (op == "lnq") {
    result = unary([&](double a) { return ln_q(p, a); });
  } else if (op == "borges") {
    result = binary(
        [&](double a, double b) { return borges_otimes(p, a, b, bv); });
  } else if (op == "diamond") {
    result = binary([&](double a, double b) { return lobao_diamond(p, a, b); });
  } else {
    throw std::invalid_argument("unknown op '" + op + "'");
  }

  emit(g, format_double(result) + "\n");
  return 0;
}

// --- table -----------------------------------------------------------

std::pair<long, long> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw std::invalid_argument("range must look like a..b");
  }
  const long lo = std::stol(text.substr(0, dots));
  const long hi = std::stol(text.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range");
  if (lo < -64 || hi > 64) {
    throw std::invalid_argument("range limited to |n| <= 64");
  }
  return {lo, hi};
}

int run_table(const GlobalOpts& g, const std::string& range_text, bool exact) {
  const auto [lo, hi] = parse_range(range_text);
  const QParam p(parse_q_double(g));
  const BigRat q_rat = parse_rational(g.q_text);

  struct Row {
    long n;
    std::string n_q, opposite;  // rational strings in exact mode
    double n_q_d = 0, opposite_d = 0;
    std::optional<double> inverse;
  };
  std::vector<Row> rows;
  for (long n = lo; n <= hi; ++n) {
    Row row;
    row.n = n;
    if (exact) {
      row.n_q = to_string(q_integer_closed(n, q_rat));
      row.opposite = to_string(q_integer_closed(-n, q_rat));
    } else {
      row.n_q_d = tau(p, static_cast<double>(n)).value();
      row.opposite_d = tau(p, static_cast<double>(-n)).value();
    }
    if (n != 0) row.inverse = q_inverse(n, p);
    rows.push_back(std::move(row));
  }

  if (g.format == "csv") {
    std::string out = "n,n_q,opposite,inverse\n";
    for (const Row& r : rows) {
      out += std::to_string(r.n) + ",";
      out += exact ? r.n_q : format_double(r.n_q_d);
      out += ",";
      out += exact ? r.opposite : format_double(r.opposite_d);
      out += ",";
      if (r.inverse) out += format_double(*r.inverse);
      out += "\n";
    }
    emit(g, out);
    return 0;
  }

  json jrows = json::array();
  for (const Row& r : rows) {
    json jr;
    jr["n"] = r.n;
    if (exact) {
      jr["n_q"] = r.n_q;
      jr["opposite"] = r.opposite;
    } else {
      jr["n_q"] = r.n_q_d;
      jr["opposite"] = r.opposite_d;
    }
    jr["inverse"] = r.inverse ? json(*r.inverse) : json();
    jrows.push_back(jr);
  }
  const json doc{{"q", g.q_text}, {"exact", exact}, {"rows", jrows}};
  emit(g, doc.dump(2) + "\n");
  return 0;
}

// --- verify ----------------------------------------------------------

int run_verify(const GlobalOpts& g, const std::string& suite) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) ==
      suite_names().end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  RunConfig cfg;
  if (g.q_given) {
    cfg.q = parse_q_double(g);
    cfg.q_exact = parse_rational(g.q_text);
  }
  if (suite_needs_seed(suite) && !g.seed) {
    throw std::invalid_argument("suite '" + suite +
                                "' is randomized and requires --seed");
  }
  cfg.seed = g.seed;
  cfg.samples = g.samples;
  cfg.tol = g.tol;

  const SuiteReport rep = run_suite(suite, cfg);

  if (g.format == "csv") {
    std::string out = "check,passed,max_deviation,witness\n";
    for (const CheckResult& c : rep.checks) {
      out += "\"" + c.name + "\"," + (c.passed ? "true" : "false") + "," +
             format_double(c.max_deviation) + ",\"" + c.witness + "\"\n";
    }
    emit(g, out);
  } else {
    emit(g, json(rep).dump(2) + "\n");
  }
  return rep.passed ? 0 : 1;
}

// --- entropy ---------------------------------------------------------

int run_entropy(const GlobalOpts& g, const std::string& dist_text,
                const std::string& compose_text) {
  const QParam p(parse_q_double(g));
  const DiscreteDist a(parse_number_list(dist_text));

  json doc;
  doc["q"] = parse_q_double(g);
  const double sa = tsallis_entropy(p, a);
  if (compose_text.empty()) {
    doc["s"] = sa;
  } else {
    const DiscreteDist b(parse_number_list(compose_text));
    const double sb = tsallis_entropy(p, b);
    const double joint = tsallis_entropy(p, product_dist(a, b));
    const double composed = sa + sb + p.u() * sa * sb;
    doc["s_a"] = sa;
    doc["s_b"] = sb;
    doc["s_product"] = joint;
    doc["composed"] = composed;
    doc["defect"] = std::fabs(joint - composed);
  }

  if (g.format == "csv") {
    std::string out = "key,value\n";
    for (const auto& [key, value] : doc.items()) {
      out += key + "," + format_double(value.get<double>()) + "\n";
    }
    emit(g, out);
  } else {
    emit(g, doc.dump(2) + "\n");
  }
  return 0;
}

// --- qs --------------------------------------------------------------

Interval parse_domain(const std::string& text) {
  const auto values = parse_number_list(text);
  if (values.size() != 2) throw std::invalid_argument("domain must be lo,hi");
  return Interval(values[0], values[1]);
}

int run_qs_scan(const GlobalOpts& g, const std::string& domain_text,
                const std::string& target) {
  const QParam p(parse_q_double(g));
  if (!g.seed) throw std::invalid_argument("qs scan requires --seed");
  const QSTarget t =
      target == "euclidean" ? QSTarget::euclidean : QSTarget::qdist;
  const QSReport rep = weak_qs_scan(p, parse_domain(domain_text),
                                    g.samples.value_or(100000), *g.seed, t);
  emit(g, json(rep).dump(2) + "\n");
  return 0;
}

int run_qs_eta(const GlobalOpts& g, const std::string& domain_text,
               std::size_t grid) {
  const QParam p(parse_q_double(g));
  const auto rows = eta_estimate(p, parse_domain(domain_text), grid);
  if (g.format == "csv") {
    std::string out = "t,eta\n";
    for (const EtaRow& r : rows) {
      out += format_double(r.t) + "," + format_double(r.eta_hat) + "\n";
    }
    emit(g, out);
    return 0;
  }
  const json doc{{"q", parse_q_double(g)},
                 {"domain", {parse_domain(domain_text).lo,
                             parse_domain(domain_text).hi}},
                 {"grid", grid},
                 {"rows", json(rows)}};
  emit(g, doc.dump(2) + "\n");
  return 0;
}

int run_qs_doubling(const GlobalOpts& g, double r, double x) {
  const QParam p(parse_q_double(g));
  const double ratio = doubling_ratio(p, x, r);
  const double closed =
      std::exp(r * p.log_base()) + std::exp(-r * p.log_base());
  const json doc{{"q", parse_q_double(g)},
                 {"x", x},
                 {"r", r},
                 {"ratio", ratio},
                 {"closed_form", closed}};
  emit(g, doc.dump(2) + "\n");
  return 0;
}

int run_qs_snowflake(const GlobalOpts& g, double epsilon, int depth) {
  const auto points = cantor_points(depth);
  const BoxCountReport rep = snowflake_dimension(points, epsilon, depth);
  emit(g, json(rep).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformed real arithmetic from the Tsallis composition law"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--q", g.q_text,
                 "deformation parameter in [0,1]; decimals or a/b")
      ->each([&](const std::string&) { g.q_given = true; });
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (required by randomized suites)");
  std::size_t samples_value = 0;
  auto* samples_opt =
      app.add_option("--samples", samples_value, "sample count per scan");
  double tol_value = 0;
  auto* tol_opt = app.add_option("--tol", tol_value, "tolerance override");
  app.add_option("--format", g.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "write output to a file");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one operation");
  std::string op, args_text, variant = "corrected";
  eval_cmd->add_option("--op", op, "operation name")->required();
  eval_cmd->add_option("--args", args_text, "comma-separated operands")
      ->required();
  eval_cmd->add_option("--variant", variant, "Borges variant")
      ->check(CLI::IsMember({"corrected", "printed"}));

  // table
  auto* table_cmd = app.add_subcommand("table", "q-integer table");
  std::string range_text;
  bool exact = false;
  table_cmd->add_option("--n", range_text, "range a..b, |n| <= 64")->required();
  table_cmd->add_flag("--exact", exact, "exact rational output");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
  std::string suite;
  verify_cmd->add_option("--suite", suite, "suite name")->required();

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "Tsallis entropy");
  std::string dist_text, compose_text;
  entropy_cmd->add_option("--dist", dist_text, "probabilities, csv or JSON array")
      ->required();
  entropy_cmd->add_option("--compose", compose_text,
                          "second distribution for the composition law");

  // qs
  auto* qs_cmd = app.add_subcommand("qs", "metric-measure experiments");
  qs_cmd->require_subcommand(1);
  qs_cmd->fallthrough();
  auto* scan_cmd = qs_cmd->add_subcommand("scan", "weak quasisymmetry scan");
  std::string domain_text = "-10,10", target = "qdist";
  scan_cmd->add_option("--domain", domain_text, "lo,hi");
  scan_cmd->add_option("--target", target, "euclidean|qdist")
      ->check(CLI::IsMember({"euclidean", "qdist"}));
  auto* eta_cmd = qs_cmd->add_subcommand("eta", "eta-quasisymmetry profile");
  std::string eta_domain = "0,10";
  std::size_t grid = 48;
  eta_cmd->add_option("--domain", eta_domain, "lo,hi");
  eta_cmd->add_option("--grid", grid, "lattice points per axis");
  auto* doubling_cmd = qs_cmd->add_subcommand("doubling", "doubling ratio");
  double radius = 1.0, center = 0.0;
  doubling_cmd->add_option("--r", radius, "ball radius")->required();
  doubling_cmd->add_option("--x", center, "ball center");
  auto* snow_cmd = qs_cmd->add_subcommand("snowflake", "box-count dimension");
  double epsilon = 1.0;
  int depth = 10;
  snow_cmd->add_option("--epsilon", epsilon, "snowflake exponent in (0,1]");
  snow_cmd->add_option("--depth", depth, "Cantor construction depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (seed_opt->count() > 0) g.seed = seed_value;
    if (samples_opt->count() > 0) {
      if (samples_value < 1) throw std::invalid_argument("--samples must be >= 1");
      g.samples = samples_value;
    }
    if (tol_opt->count() > 0) {
      if (!(tol_value > 0)) throw std::invalid_argument("--tol must be > 0");
      g.tol = tol_value;
    }

    if (*eval_cmd) return run_eval(g, op, args_text, variant);
    if (*table_cmd) return run_table(g, range_text, exact);
    if (*verify_cmd) return run_verify(g, suite);
    if (*entropy_cmd) return run_entropy(g, dist_text, compose_text);
    if (*qs_cmd) {
      if (*scan_cmd) return run_qs_scan(g, domain_text, target);
      if (*eta_cmd) return run_qs_eta(g, eta_domain, grid);
      if (*doubling_cmd) return run_qs_doubling(g, radius, center);
      if (*snow_cmd) return run_qs_snowflake(g, epsilon, depth);
    }
    throw std::invalid_argument("no subcommand given");
  } catch (const std::exception& e) {
    std::cerr << "qcli: " << e.what() << "\n";
    return 2;
  }
}
