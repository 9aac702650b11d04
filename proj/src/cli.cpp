#include "lambertw/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "lambertw/certify.hpp"
#include "lambertw/xyyx.hpp"

namespace lambertw::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(
             std::ceil(static_cast<double>(digits) * 3.321928094887363)) +
         4;
}

unsigned default_digits() {
  const char* env = std::getenv("LAMBERT_DEFAULT_DIGITS");
  if (env == nullptr || *env == '\0') return 34;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1 || v > 10000000) {
    throw ParseError("LAMBERT_DEFAULT_DIGITS must be a positive integer");
  }
  return static_cast<unsigned>(v);
}

std::size_t mantissa_digit_count(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) {
    if (ch == 'e' || ch == 'E') break;
    if (ch >= '0' && ch <= '9') ++n;
  }
  return n;
}

Argument parse_x(const std::string& text, unsigned digits) {
  std::string body = text;
  enum { direct, log_of, pow10 } form = direct;
  if (body.rfind("ln:", 0) == 0) {
    form = log_of;
    body = body.substr(3);
  } else if (body.rfind("pow10:", 0) == 0) {
    form = pow10;
    body = body.substr(6);
  }
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(
      bits_for_digits(digits) + 64,
      static_cast<mpfr_prec_t>(mantissa_digit_count(body)) * 4 + 32);
  Real v = Real::from_decimal(body, prec);
  try {
    switch (form) {
      case log_of: return Argument::log_of(std::move(v));
      case pow10: return Argument::pow10(std::move(v));
      default: return Argument::direct(std::move(v));
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid --x: ") + e.what());
  }
}

// Decimal rendering whose absolute resolution is 10^-digits.
std::string decimal_abs(const Real& v, unsigned digits, Rounding r) {
  if (v.is_nan()) return "nan";
  if (v.is_zero()) return "0";
  long extra = 1;
  const mpfr_exp_t e2 = v.exponent2();
  if (e2 > 0) {
    extra += static_cast<long>(
        std::ceil(static_cast<double>(e2) * 0.3010299956639812));
  }
  std::size_t sig = digits + static_cast<std::size_t>(extra);
  if (sig > 2000000) sig = 2000000;
  return v.to_decimal(sig, r);
}

std::string decimal_sig(const Real& v, unsigned sig,
                        Rounding r = Rounding::nearest) {
  if (v.is_nan()) return "";
  return v.to_decimal(sig, r);
}

Branch parse_branch(const std::string& s) {
  if (s == "0") return Branch::principal;
  if (s == "-1") return Branch::lower;
  throw ParseError("--branch must be 0 or -1");
}

void validate_domain(Branch branch, const Argument& arg) {
  try {
    if (!arg.is_log_form() && special_value(branch, arg.raw())) return;
    (void)region_of(branch, arg);
  } catch (const Error& e) {
    throw ParseError(std::string("argument outside the branch domain: ") +
                     e.what());
  }
}

void require_direct(const Argument& arg, const std::string& what) {
  if (arg.is_log_form()) {
    throw ParseError(what + " takes a plain decimal --x only");
  }
}

// ---------------------------------------------------------------------------

void run_eval(const Command& c, std::ostream& out) {
  Enclosure enc = eval_certified(*c.branch, *c.arg, c.digits);
  Real mid = mul_2si(enc.lo + enc.hi, -1);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verb"] = "eval";
  j["branch"] = to_string(*c.branch);
  j["x"] = c.x_text;
  j["digits"] = c.digits;
  j["value"] = decimal_abs(mid, c.digits, Rounding::nearest);
  j["certified"] = enc.certified;
  out << j.dump() << "\n";
}

void run_enclose(const Command& c, std::ostream& out) {
  Enclosure enc = eval_certified(*c.branch, *c.arg, c.digits);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verb"] = "enclose";
  j["branch"] = to_string(*c.branch);
  j["x"] = c.x_text;
  j["digits"] = c.digits;
  j["lo"] = decimal_abs(enc.lo, c.digits + 10, Rounding::down);
  j["hi"] = decimal_abs(enc.hi, c.digits + 10, Rounding::up);
  j["width"] = decimal_sig(enc.width_bound, 8, Rounding::up);
  j["method"] = to_string(enc.method);
  j["iterations"] = enc.iterations;
  j["precision_bits"] = static_cast<long>(enc.precision_bits);
  j["certified"] = enc.certified;
  out << j.dump() << "\n";
}

void run_constants(const Command& c, std::ostream& out) {
  Constants k = compute_constants(c.digits);
  auto mid = [](const Real& lo, const Real& hi) {
    return mul_2si(lo + hi, -1);
  };
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verb"] = "constants";
  j["digits"] = c.digits;
  j["x_star"] = decimal_sig(mid(k.x_star_lo, k.x_star_hi), c.digits);
  j["x_double_star"] =
      decimal_sig(mid(k.x_double_star_lo, k.x_double_star_hi), c.digits);
  j["x_triple_star"] =
      decimal_sig(mid(k.x_triple_star_lo, k.x_triple_star_hi), c.digits);
  j["kappa1"] = decimal_sig(k.kappa1, c.digits);
  j["kappa2"] = decimal_sig(k.kappa2, c.digits);
  out << j.dump() << "\n";
}

void run_trace(const Command& c, std::ostream& out) {
  const Branch branch = c.branch.value_or(Branch::principal);
  const mpfr_prec_t p = bits_for_digits(c.digits) + 64;
  const Argument arg = c.arg->at_precision(
      std::max(p, c.arg->raw().precision()));

  IterationTrace trace{*c.method, Region::gt_e, {}};
  if (*c.method == Method::lambda) {
    require_direct(arg, "trace --method lambda");
    trace = lambda_iterate(arg.value_at(p), c.steps);
  } else if (*c.method == Method::beta) {
    trace = beta_iterate(branch, arg, c.steps);
  } else {
    require_direct(arg, "reference-scheme traces");
    const Real x = arg.value_at(p);
    const Region region = classify(branch, x);
    trace.region = region;
    Real w = beta_start(region, arg);
    for (unsigned k = 0; k <= c.steps; ++k) {
      if (k > 0) w = reference_step(*c.method, x, w);
      Real resid = w * exp(w, Rounding::nearest, p) - x;
      trace.entries.push_back(TraceEntry{k, w, std::nullopt, resid});
    }
  }

  out << "n,iterate,apriori_bound,residual\n";
  for (const TraceEntry& e : trace.entries) {
    out << e.index << "," << decimal_abs(e.iterate, c.digits, Rounding::nearest)
        << ",";
    if (e.apriori_bound) out << decimal_sig(*e.apriori_bound, 10, Rounding::up);
    out << ",";
    if (e.residual) out << decimal_sig(*e.residual, 10);
    out << "\n";
  }
}

struct FigureSpec {
  Branch branch;
  double lo, hi;
  bool log_grid;
};

FigureSpec figure_spec(const std::string& id) {
  const double inv_e = 1.0 / std::exp(1.0);
  if (id == "1") return {Branch::principal, std::exp(1.0), 1e10, true};
  if (id == "2") return {Branch::principal, 0.0, std::exp(1.0), false};
  if (id == "3") return {Branch::principal, -inv_e, 0.0, false};
  if (id == "4a") return {Branch::lower, -inv_e, 0.0, false};
  if (id == "4b") return {Branch::lower, -0.25, 0.0, false};
  throw ParseError("--id must be one of 1, 2, 3, 4a, 4b");
}

void run_figure(const Command& c, std::ostream& out) {
  const FigureSpec spec = figure_spec(c.figure_id);
  const mpfr_prec_t p = bits_for_digits(c.digits) + 64;
  const unsigned N = c.points;
  const std::vector<unsigned> ns = {1, 2, 3, 4};

  out << "x,n,actual_error,bound\n";
  for (unsigned k = 1; k <= N; ++k) {
    double xd;
    if (spec.log_grid) {
      const double ratio = spec.hi / spec.lo;
      xd = spec.lo * std::pow(ratio, static_cast<double>(k) / (N + 1));
    } else {
      xd = spec.lo + (spec.hi - spec.lo) * static_cast<double>(k) / (N + 1);
    }
    const Real x(xd, p);
    const Argument arg = Argument::direct(x);
    const Region region = classify(spec.branch, x);
    const Real w_ref = mul_2si(
        [&] {
          Enclosure e = eval_certified(spec.branch, arg, 4 * c.digits);
          return e.lo + e.hi;
        }(),
        -1);
    IterationTrace trace = beta_iterate(spec.branch, arg, ns.back());
    for (unsigned n : ns) {
      const Real actual = abs(sub(w_ref, trace.entries[n].iterate,
                                  Rounding::nearest, p));
      const Real bound = beta_error_bound(region, arg, n);
      out << decimal_sig(x, 17) << "," << n << "," << decimal_sig(actual, 10)
          << "," << decimal_sig(bound, 10, Rounding::up) << "\n";
    }
  }
}

void run_bench(const Command& c, std::ostream& out) {
  const Branch branch = *c.branch;
  const mpfr_prec_t p0 = bits_for_digits(c.digits) + 96;
  const Argument arg = c.arg->at_precision(p0);
  const Real x = arg.value_at(p0);
  mpfr_prec_t p = p0;
  if (!x.is_zero() && x.exponent2() > 0) {
    p += static_cast<mpfr_prec_t>(x.exponent2());
  }
  const Region region = classify(branch, x);
  const Real tol = pow10_i(-static_cast<long>(c.digits), 96, Rounding::down);
  const unsigned cap = 200;

  std::vector<Method> methods = {Method::beta, Method::fsc, Method::halley};
  if (region == Region::gt_e) methods.push_back(Method::lambda);
  methods.push_back(Method::newton);
  std::sort(methods.begin(), methods.end(), [](Method a, Method b) {
    return to_string(a) < to_string(b);
  });

  const Argument argw = arg.at_precision(p);
  const Real xw = x.to_precision(p);
  const Real lx = ln(xw, Rounding::nearest, p);

  out << "x,method,iterations,wall_ms,status\n";
  for (Method m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    Real w = (m == Method::lambda) ? lx : beta_start(region, argw);
    unsigned steps = 0;
    bool converged = false;
    try {
      for (; steps <= cap; ++steps) {
        Real resid = abs(w * exp(w, Rounding::nearest, p) - xw);
        if (resid < tol) {
          const bool on_branch =
              branch == Branch::principal ? w >= -1 : w <= -1;
          converged = on_branch;
          break;
        }
        if (steps == cap) break;
        switch (m) {
          case Method::beta: w = beta_step(argw, w); break;
          case Method::lambda: w = lx - ln(w, Rounding::nearest, p); break;
          default: w = reference_step(m, xw, w); break;
        }
      }
    } catch (const NumericalError&) {
      converged = false;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
            t1 - t0)
            .count();
    char msbuf[32];
    std::snprintf(msbuf, sizeof msbuf, "%.3f", ms);
    out << decimal_sig(x, 17) << "," << to_string(m) << "," << steps << ","
        << msbuf << "," << (converged ? "converged" : "DNF") << "\n";
  }
}

void run_xyyx(const Command& c, std::ostream& out) {
  const mpfr_prec_t p = bits_for_digits(c.digits) + 64;
  const Real x = c.arg->value_at(p);
  XyResult r = evaluate_xy(x, c.digits);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verb"] = "xyyx";
  j["x"] = c.x_text;
  j["digits"] = c.digits;
  j["y_lo"] = decimal_abs(r.y.lo, c.digits + 6, Rounding::down);
  j["y_hi"] = decimal_abs(r.y.hi, c.digits + 6, Rounding::up);
  j["y_width"] = decimal_sig(r.y.width_bound, 8, Rounding::up);
  j["margin"] = decimal_abs(r.margin, c.digits, Rounding::down);
  if (r.gap) {
    j["gap"] = decimal_sig(*r.gap, std::min(c.digits, 20u));
  } else {
    j["gap"] = nullptr;
  }
  j["certified"] = r.y.certified;
  out << j.dump() << "\n";
}

}  // namespace

Command parse_args(const std::vector<std::string>& argv) {
  CLI::App app{
      "Certified evaluation of the two real branches of the Lambert W "
      "function"};
  app.name("lambertw");
  app.require_subcommand(1);

  std::string branch_s, x_s, method_s, id_s;
  unsigned digits = 0, steps = 5, points = 200;

  CLI::App* eval = app.add_subcommand("eval", "Certified decimal value");
  CLI::App* enclose = app.add_subcommand("enclose", "Certified interval");
  CLI::App* trace = app.add_subcommand("trace", "Per-step iteration table");
  CLI::App* constants =
      app.add_subcommand("constants", "Crossover constants");
  CLI::App* figure =
      app.add_subcommand("figure", "Error-vs-bound data behind the plots");
  CLI::App* bench =
      app.add_subcommand("bench", "Iterations-to-tolerance per method");
  CLI::App* xyyx = app.add_subcommand("xyyx", "Solve x^y = y^x");

  for (CLI::App* sub : {eval, enclose}) {
    sub->add_option("--branch", branch_s, "0 or -1")->required();
    sub->add_option("--x", x_s, "decimal, ln:<decimal> or pow10:<decimal>")
        ->required();
    sub->add_option("--digits", digits, "target digits");
  }
  trace->add_option("--method", method_s, "lambda|beta|newton|halley|fsc")
      ->required();
  trace->add_option("--branch", branch_s, "0 or -1 (default 0)");
  trace->add_option("--x", x_s)->required();
  trace->add_option("--n", steps, "number of steps")->required();
  trace->add_option("--digits", digits);
  constants->add_option("--digits", digits);
  figure->add_option("--id", id_s, "1|2|3|4a|4b")->required();
  figure->add_option("--points", points, "grid points per interval");
  figure->add_option("--digits", digits);
  bench->add_option("--branch", branch_s)->required();
  bench->add_option("--x", x_s)->required();
  bench->add_option("--digits", digits, "tolerance = 10^-digits");
  xyyx->add_option("--x", x_s)->required();
  xyyx->add_option("--digits", digits);

  std::vector<const char*> cargv;
  cargv.push_back("lambertw");
  for (const std::string& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  Command cmd;
  cmd.verb = app.get_subcommands().front()->get_name();
  cmd.digits = digits != 0 ? digits : default_digits();
  cmd.steps = steps;
  cmd.points = points;
  cmd.x_text = x_s;
  cmd.figure_id = id_s;

  if (!branch_s.empty()) cmd.branch = parse_branch(branch_s);
  if (!method_s.empty()) cmd.method = method_from_string(method_s);
  if (!x_s.empty()) cmd.arg = parse_x(x_s, cmd.digits);

  if (cmd.verb == "eval" || cmd.verb == "enclose") {
    validate_domain(*cmd.branch, *cmd.arg);
  } else if (cmd.verb == "trace") {
    if (!cmd.branch) cmd.branch = Branch::principal;
    if (*cmd.method == Method::lambda && *cmd.branch != Branch::principal) {
      throw ParseError("the lambda recursion applies to branch 0 only");
    }
    if (*cmd.method != Method::lambda) validate_domain(*cmd.branch, *cmd.arg);
  } else if (cmd.verb == "bench") {
    require_direct(*cmd.arg, "bench");
    validate_domain(*cmd.branch, *cmd.arg);
  } else if (cmd.verb == "xyyx") {
    require_direct(*cmd.arg, "xyyx");
  } else if (cmd.verb == "figure") {
    (void)figure_spec(cmd.figure_id);
  }
  return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (cmd.verb == "eval") {
      run_eval(cmd, out);
    } else if (cmd.verb == "enclose") {
      run_enclose(cmd, out);
    } else if (cmd.verb == "trace") {
      run_trace(cmd, out);
    } else if (cmd.verb == "constants") {
      run_constants(cmd, out);
    } else if (cmd.verb == "figure") {
      run_figure(cmd, out);
    } else if (cmd.verb == "bench") {
      run_bench(cmd, out);
    } else if (cmd.verb == "xyyx") {
      run_xyyx(cmd, out);
    } else {
      throw ParseError("unknown verb '" + cmd.verb + "'");
    }
    return kExitOk;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const CertificationError& e) {
    err << "certification error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    Command cmd = parse_args(args);
    return run(cmd, out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCertification;
  }
}

}  // namespace lambertw::cli
