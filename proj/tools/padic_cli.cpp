// padic: command-line front end for the p-adic library.
//
// Exit status: 0 success, 1 internal failure, 2 bad input, 3 domain or
// precision error, 4 integration did not converge.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "padic/json_io.hpp"
#include "padic/parse.hpp"
#include "padic/request.hpp"

using namespace padic;

namespace {

struct Globals {
  std::int64_t prime = 5;
  std::int64_t precision = 20;
  std::string format = "text";
  std::uint64_t seed = 1;
  bool approx = false;

  bool json() const { return format == "json"; }
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string digits_text(const PadicNumber& x) {
  if (x.is_zero())
    return "[]";
  std::string s = "[";
  const auto ds = x.digits();
  for (std::size_t i = 0; i < ds.size(); ++i)
    s += (i ? ", " : "") + std::to_string(ds[i]);
  return s + "]";
}

std::string valuation_text(std::int64_t v) {
  return v == kInfiniteValuation ? "inf" : std::to_string(v);
}

void print_number(const char* label, const PadicNumber& x) {
  std::cout << label << ": " << x.to_string() << '\n';
}

PadicNumber scalar(const Globals& g, const std::string& text) {
  return PadicNumber::from_rational(parse_rational(text), g.prime, g.precision);
}

std::string approx_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// "x^2 + 1" or "exp:D" for the exponential series truncated at degree D.
PadicPowerSeries function_spec(const Globals& g, const std::string& text) {
  if (text.rfind("exp:", 0) == 0) {
    const auto degree = parse_rational(text.substr(4));
    if (degree.get_den() != 1 || degree < 0 || degree > 4096)
      throw InvalidArgument("exp:D needs an integer degree in [0, 4096]");
    return PadicPowerSeries::exponential(g.prime, degree.get_num().get_si(), g.precision);
  }
  const auto coeffs = parse_polynomial(text);
  if (coeffs.empty())
    return PadicPowerSeries::zero(g.prime);
  return PadicPowerSeries::polynomial(g.prime, coeffs, g.precision);
}

PadicFunction series_function(const PadicPowerSeries& f) {
  return [f](const PadicNumber& x) { return eval_series(f, x); };
}

// "dirac:D", "mu-1" (or "mu_minus_one") or "haar".
BallMeasure measure_spec(const Globals& g, const std::string& text) {
  if (text.rfind("dirac:", 0) == 0)
    return BallMeasure::dirac(scalar(g, text.substr(6)), g.precision);
  if (text == "mu-1" || text == "mu_minus_one")
    return BallMeasure::mu_minus_one(g.prime, g.precision);
  if (text == "haar")
    return BallMeasure::haar(g.prime, g.precision);
  throw InvalidArgument("unknown measure '" + text + "' (dirac:D, mu-1, haar)");
}

Json measure_request(const std::string& text) {
  if (text == "chain" || text == "dirac_chain")
    return Json{{"kind", "dirac_chain"}};
  if (text.rfind("dirac:", 0) == 0)
    return Json{{"kind", "dirac"}, {"d", text.substr(6)}};
  if (text == "mu-1" || text == "mu_minus_one")
    return Json{{"kind", "mu_minus_one"}};
  if (text == "haar")
    return Json{{"kind", "haar"}};
  throw InvalidArgument("unknown measure '" + text + "' (chain, dirac:D, mu-1, haar)");
}

void print_report(const IntegrationReport& r) {
  std::cout << "method: " << r.method << '\n';
  for (const auto& l : r.levels)
    std::cout << "level " << l.level << ": " << l.sum.to_string()
              << "  (stabilization " << valuation_text(l.stabilization_valuation) << ")\n";
  std::cout << "converged: " << (r.converged ? "yes" : "no");
  if (r.converged_level)
    std::cout << " at level " << *r.converged_level;
  std::cout << '\n';
  std::cout << "stabilization_valuation: " << valuation_text(r.stabilization_valuation) << '\n';
  print_number("limit_estimate", r.limit_estimate);
  const auto guess = plausible_rational(r.limit_estimate);
  std::cout << "rational_estimate: " << (guess ? guess->get_str() : "none") << '\n';
}

// ---------------------------------------------------------------------------

int cmd_expand(const Globals& g, const std::string& input) {
  const PadicNumber x = scalar(g, input);
  std::optional<Rational> frac;
  try {
    frac = fractional_part(x);
  } catch (const PrecisionError&) {
  }
  if (g.json()) {
    Json j = to_json(x);
    j["norm"] = rational_json(x.norm());
    j["fractional_part"] = frac ? rational_json(*frac) : Json(nullptr);
    emit(j);
    return 0;
  }
  std::cout << "prime: " << x.prime() << '\n'
            << "valuation: " << valuation_text(x.valuation()) << '\n'
            << "digits: " << digits_text(x) << '\n'
            << "abs_precision: " << (x.is_exact_zero() ? "inf" : std::to_string(x.precision()))
            << '\n'
            << "norm: " << x.norm().get_str() << '\n'
            << "fractional_part: " << (frac ? frac->get_str() : "unresolved") << '\n';
  print_number("expansion", x);
  return 0;
}

int cmd_exp(const Globals& g, const std::string& input) {
  const PadicNumber x = scalar(g, input);
  const PadicNumber value = exp_p(x, g.precision);
  if (g.json()) {
    Json j;
    j["x"] = to_json(x);
    j["domain_margin"] = valuation_json(DomainE::margin(x));
    j["value"] = to_json(value);
    emit(j);
    return 0;
  }
  std::cout << "domain_margin: " << valuation_text(DomainE::margin(x)) << '\n';
  print_number("exp_p", value);
  return 0;
}

int cmd_char(const Globals& g, const std::string& input, const std::string& a_text) {
  const PadicNumber x = scalar(g, input);
  if (!a_text.empty()) {
    const PadicNumber a = scalar(g, a_text);
    const PadicNumber value = char_a(a, x, g.precision);
    const std::int64_t margin = DomainBa{a}.margin(x);
    if (g.json()) {
      Json j;
      j["a"] = to_json(a);
      j["x"] = to_json(x);
      j["domain_margin"] = valuation_json(margin);
      j["value"] = to_json(value);
      emit(j);
      return 0;
    }
    std::cout << "domain_margin: " << valuation_text(margin) << '\n';
    print_number("chi_a", value);
    return 0;
  }
  const CharacterPhase chi = complex_character(x);
  if (g.json()) {
    Json j;
    j["x"] = to_json(x);
    j["phase"] = rational_json(chi.phase);
    j["character"] = chi.to_string();
    if (g.approx) {
      const auto z = chi.approximate();
      j["approx"] = Json{{"re", approx_text(z.real())}, {"im", approx_text(z.imag())}};
    }
    emit(j);
    return 0;
  }
  std::cout << "phase: " << chi.phase.get_str() << '\n' << "character: " << chi.to_string() << '\n';
  if (g.approx) {
    const auto z = chi.approximate();
    std::cout << "approx: " << approx_text(z.real()) << " + " << approx_text(z.imag()) << "i\n";
  }
  return 0;
}

int cmd_integrate(const Globals& g, const std::string& f_text, const std::string& m_text,
                  std::int64_t level, std::int64_t target) {
  if (level < 1)
    throw InvalidArgument("level must be at least 1");
  if (target < 1)
    target = std::max<std::int64_t>(1, level - 2);
  const PadicFunction f = series_function(function_spec(g, f_text));
  const BallMeasure mu = measure_spec(g, m_text);
  const IntegrationReport report =
      mu.bounded() ? riemann_integrate(f, mu, level, target)
                   : volkenborn_integrate(f, g.prime, level, target, g.precision);
  if (g.json())
    emit(to_json(report));
  else
    print_report(report);
  return report.converged ? 0 : 4;
}

int cmd_line_integral(const Globals& g, const std::string& f_text, const std::string& from,
                      const std::string& to) {
  const PadicPowerSeries f = function_spec(g, f_text);
  const PadicPowerSeries F = antiderivative(f);
  const PadicNumber a = scalar(g, from), b = scalar(g, to);
  const PadicNumber value = line_integral(f, a, b);
  std::optional<std::int64_t> bound;
  if (!F.tail() || !F.tail()->vanishes) {
    const auto ta = truncation_valuation(F, a), tb = truncation_valuation(F, b);
    if (ta && tb)
      bound = std::min(*ta, *tb);
  }
  const bool exact = F.tail() && F.tail()->vanishes;
  if (g.json()) {
    Json j;
    j["antiderivative"] = to_json(F);
    j["value"] = to_json(value);
    j["truncation_valuation"] = exact ? Json(nullptr) : bound ? Json(*bound) : Json("unbounded");
    emit(j);
    return 0;
  }
  print_number("integral", value);
  std::cout << "truncation_valuation: "
            << (exact ? "exact" : bound ? std::to_string(*bound) : "unbounded") << '\n';
  return 0;
}

Json read_request(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in)
      throw InvalidArgument("cannot open request file '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("request is not valid JSON: ") + e.what());
  }
}

struct PropagatorFlags {
  std::string request_path, m = "1", a = "1", x = "0", y = "0", t0 = "0", t = "1";
  std::string potential, measures;
  std::int64_t steps = 2;
  std::int64_t riemann_level = 3;
  bool literal_potential = false;
};

int cmd_propagator(const Globals& g, const PropagatorFlags& flags) {
  Json request;
  if (!flags.request_path.empty()) {
    request = read_request(flags.request_path);
  } else {
    request["prime"] = g.prime;
    request["precision"] = g.precision;
    request["m"] = flags.m;
    request["a"] = flags.a;
    request["x"] = flags.x;
    request["y"] = flags.y;
    request["t0"] = flags.t0;
    request["t"] = flags.t;
    request["N"] = flags.steps;
    request["potential"] = flags.potential.empty() ? Json(nullptr) : Json(flags.potential);
    if (!flags.measures.empty()) {
      Json ms = Json::array();
      std::stringstream in(flags.measures);
      for (std::string item; std::getline(in, item, ',');)
        ms.push_back(measure_request(item));
      request["measures"] = std::move(ms);
    }
    request["potential_epsilon_factor"] = !flags.literal_potential;
    request["riemann_level"] = flags.riemann_level;
  }
  const Json out = run_propagator(propagator_request_from_json(request));
  if (g.json()) {
    emit(out);
    return 0;
  }
  const PadicNumber value = padic_from_json(out["value"]);
  std::cout << "method: " << out["method"].get<std::string>() << '\n'
            << "steps: " << out["steps"].get<std::int64_t>() << '\n';
  print_number("value", value);
  std::cout << "digits: " << digits_text(value) << '\n';
  if (!out["exponent_argument"].is_null())
    print_number("exponent_argument", padic_from_json(out["exponent_argument"]));
  std::cout << "domain_margin: "
            << (out["domain_margin"].is_null() ? "inf" : out["domain_margin"].dump()) << '\n';
  for (const auto& d : out["diagnostics"])
    std::cout << "step " << d["step"].get<std::int64_t>() << ": margin "
              << (d["domain_margin"].is_null() ? "inf" : d["domain_margin"].dump())
              << ", square identity " << (d["square_identity"].get<bool>() ? "ok" : "FAILED")
              << (d["point_in_unit_ball"].get<bool>() ? "" : ", point outside Z_p") << '\n';
  if (!out["stable_under_refinement"].is_null())
    std::cout << "stable_under_refinement: " << out["stable_under_refinement"].dump() << '\n';
  if (!out["riemann_stabilization"].is_null())
    std::cout << "riemann_stabilization: " << out["riemann_stabilization"].dump() << '\n';
  std::cout << "agreement: " << (out["agreement"].is_null() ? "n/a" : out["agreement"].dump())
            << '\n';
  return 0;
}

struct EvolveFlags {
  std::string psi = "1", measure, kernel = "free", y = "0", t0 = "0", t = "1", m = "1", a = "1";
  std::int64_t level = 4;
  std::int64_t target = 0;
};

int cmd_evolve(const Globals& g, const EvolveFlags& flags) {
  if (flags.level < 1)
    throw InvalidArgument("level must be at least 1");
  const std::int64_t target =
      flags.target >= 1 ? flags.target : std::max<std::int64_t>(1, flags.level - 2);
  PadicFunction kernel;
  if (flags.kernel == "one") {
    kernel = [&g](const PadicNumber&) { return PadicNumber::from_integer(1, g.prime, g.precision); };
  } else {
    const LagrangianSpec spec =
        LagrangianSpec::free_particle(scalar(g, flags.m), scalar(g, flags.a));
    spec.validate();
    kernel = free_kernel(scalar(g, flags.y), scalar(g, flags.t0), scalar(g, flags.t), spec,
                         g.precision);
  }
  const PadicFunction psi = series_function(function_spec(g, flags.psi));
  const BallMeasure mu = measure_spec(g, flags.measure);
  const IntegrationReport report = evolve_state_report(psi, kernel, mu, flags.level, target);
  if (g.json()) {
    Json j;
    j["value"] = report.converged ? to_json(report.limit_estimate) : Json(nullptr);
    j["report"] = to_json(report);
    emit(j);
  } else {
    print_report(report);
  }
  return report.converged ? 0 : 4;
}

// Randomized spot checks of the main identities.
int cmd_selftest(const Globals& g, std::int64_t count) {
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<long> small(-500, 500);
  auto rational = [&] {
    long d = 0;
    while (d == 0 || d % g.prime == 0)
      d = small(rng);
    Rational r(small(rng), d);
    r.canonicalize();
    return r;
  };
  const std::int64_t p = g.prime, k = g.precision;
  auto q = [&](const Rational& r) { return PadicNumber::from_rational(r, p, k); };

  struct Tally {
    std::int64_t passed = 0, failed = 0;
  };
  std::vector<std::pair<std::string, Tally>> tallies{
      {"propagator_iterated_equals_closed", {}},
      {"completed_square", {}},
      {"exp_homomorphism", {}},
      {"phase_additivity", {}}};
  auto record = [&](std::size_t i, bool ok) { (ok ? tallies[i].second.passed : tallies[i].second.failed)++; };

  std::uniform_int_distribution<std::int64_t> steps(2, 8), index(1, 40);
  for (std::int64_t trial = 0; trial < count; ++trial) {
    const Rational x = Rational(small(rng));
    const Rational y = x + Rational(small(rng)) * p * p * p;
    const LagrangianSpec spec = LagrangianSpec::free_particle(q(rational()), q(rational() * p));
    const auto n = steps(rng);
    const auto it = free_propagator_iterated(q(x), q(y), q(0), q(1), n, spec, k);
    const auto cl = free_propagator_closed(q(x), q(y), q(0), q(1), spec, k);
    record(0, it.value == cl.value);

    const auto sq = complete_square_step(index(rng), q(Rational(small(rng))),
                                         q(Rational(small(rng))), q(Rational(small(rng))));
    record(1, agree(sq.lhs, sq.rhs));

    const auto u = q(rational() * p), v = q(rational() * p);
    record(2, agree(exp_p(u + v, k), exp_p(u, k) * exp_p(v, k)));

    const auto r = q(rational() / p), s = q(rational() / (p * p));
    record(3, complex_character(r) + complex_character(s) == complex_character(r + s));
  }

  bool ok = true;
  for (const auto& [name, t] : tallies)
    ok = ok && t.failed == 0;
  if (g.json()) {
    Json j;
    j["seed"] = g.seed;
    j["prime"] = p;
    j["precision"] = k;
    Json checks;
    for (const auto& [name, t] : tallies)
      checks[name] = Json{{"passed", t.passed}, {"failed", t.failed}};
    j["checks"] = std::move(checks);
    j["ok"] = ok;
    emit(j);
  } else {
    for (const auto& [name, t] : tallies)
      std::cout << name << ": " << t.passed << " passed, " << t.failed << " failed\n";
    std::cout << (ok ? "ok" : "FAILED") << '\n';
  }
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic arithmetic, integration and propagators"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("-p,--prime", g.prime, "odd prime")->capture_default_str();
  app.add_option("-k,--precision", g.precision, "digits of precision")->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for selftest")->capture_default_str();
  app.add_flag("--approx", g.approx, "add a floating rendering of character values");

  std::string number, a_param;
  auto* expand = app.add_subcommand("expand", "canonical digits, norm and fractional part");
  expand->add_option("x", number, "rational n or n/d")->required();
  auto* exp = app.add_subcommand("exp", "p-adic exponential");
  exp->add_option("x", number, "rational n or n/d")->required();
  auto* chr = app.add_subcommand("char", "character phase e({x}), or chi_a(x) with --a");
  chr->add_option("x", number, "rational n or n/d")->required();
  chr->add_option("--a", a_param, "parameter a of chi_a(x) = exp_p(a x)");

  std::string f_text, measure;
  std::int64_t level = 6, target = 0;
  auto* integrate = app.add_subcommand("integrate", "Riemann or Volkenborn integration");
  integrate->add_option("--f", f_text, "polynomial in x, or exp:D")->required();
  integrate->add_option("--measure", measure, "dirac:D, mu-1 or haar")->required();
  integrate->add_option("-L,--level", level, "deepest level")->capture_default_str();
  integrate->add_option("--target", target, "agreement required (default L-2)");

  std::string from = "0", to;
  auto* line = app.add_subcommand("line-integral", "F(b) - F(a) for the primitive F of f");
  line->add_option("--f", f_text, "polynomial in x, or exp:D")->required();
  line->add_option("--from", from, "lower endpoint")->capture_default_str();
  line->add_option("--to", to, "upper endpoint")->required();

  PropagatorFlags pf;
  auto* prop = app.add_subcommand("propagator", "free or general propagator U(y,t;x,t0)");
  prop->add_option("--request", pf.request_path, "JSON request file, - for stdin");
  prop->add_option("--m", pf.m, "mass")->capture_default_str();
  prop->add_option("--a", pf.a, "character parameter")->capture_default_str();
  prop->add_option("--x", pf.x, "start point")->capture_default_str();
  prop->add_option("--y", pf.y, "end point")->capture_default_str();
  prop->add_option("--t0", pf.t0, "start time")->capture_default_str();
  prop->add_option("--t", pf.t, "end time")->capture_default_str();
  prop->add_option("-N,--steps", pf.steps, "time steps")->capture_default_str();
  prop->add_option("--potential", pf.potential, "polynomial V(x)");
  prop->add_option("--measures", pf.measures, "comma list: chain, dirac:D, mu-1");
  prop->add_option("--riemann-level", pf.riemann_level, "level of inner Riemann sums")
      ->capture_default_str();
  prop->add_flag("--literal-potential", pf.literal_potential,
                 "omit the eps factor on the potential term");

  EvolveFlags ef;
  auto* evolve = app.add_subcommand("evolve", "integral of U(y,t;x,t0) psi(x) against a measure");
  evolve->add_option("--psi", ef.psi, "polynomial psi(x)")->capture_default_str();
  evolve->add_option("--measure", ef.measure, "dirac:D, mu-1")->required();
  evolve->add_option("--kernel", ef.kernel, "free (free-particle U) or one (U = 1)")
      ->check(CLI::IsMember({"free", "one"}))
      ->capture_default_str();
  evolve->add_option("--y", ef.y, "end point")->capture_default_str();
  evolve->add_option("--t0", ef.t0, "start time")->capture_default_str();
  evolve->add_option("--t", ef.t, "end time")->capture_default_str();
  evolve->add_option("--m", ef.m, "mass")->capture_default_str();
  evolve->add_option("--a", ef.a, "character parameter")->capture_default_str();
  evolve->add_option("-L,--level", ef.level, "deepest level")->capture_default_str();
  evolve->add_option("--target", ef.target, "agreement required (default L-2)");

  std::int64_t count = 50;
  auto* selftest = app.add_subcommand("selftest", "randomized identity checks");
  selftest->add_option("--count", count, "trials per check")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    require_odd_prime(g.prime);
    if (g.precision < 1)
      throw InvalidArgument("precision must be at least 1");
    if (*expand)
      return cmd_expand(g, number);
    if (*exp)
      return cmd_exp(g, number);
    if (*chr)
      return cmd_char(g, number, a_param);
    if (*integrate)
      return cmd_integrate(g, f_text, measure, level, target);
    if (*line)
      return cmd_line_integral(g, f_text, from, to);
    if (*prop)
      return cmd_propagator(g, pf);
    if (*evolve)
      return cmd_evolve(g, ef);
    if (*selftest)
      return cmd_selftest(g, count);
  } catch (const std::exception& e) {
    if (g.json()) {
      emit(error_json(e));
    } else {
      std::cerr << "error: " << e.what();
      if (const auto* d = dynamic_cast<const DomainError*>(&e); d && d->step())
        std::cerr << " (step " << *d->step() << ")";
      std::cerr << '\n';
    }
    return exit_code(e);
  }
  return 1;
}
