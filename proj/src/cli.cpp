#include "cou/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cou/generator.hpp"
#include "cou/hermite.hpp"
#include "cou/json_io.hpp"
#include "cou/poly_parse.hpp"
#include "cou/quadrature.hpp"
#include "cou/sde.hpp"
#include "cou/semigroup.hpp"
#include "cou/verify.hpp"

namespace cou::cli {

namespace {

using nlohmann::json;

constexpr const char* kPolyGrammar =
    "Polynomial literals in z and zbar:\n"
    "  expr   := term (('+' | '-') term)*\n"
    "  term   := unary ('*' unary)*\n"
    "  unary  := ('+' | '-') unary | power\n"
    "  power  := atom ('^' integer)?          exponent 0..64\n"
    "  atom   := number | 'z' | 'zbar' | 'i' | '(' expr ')'\n"
    "Example: --phi \"z*zbar - 2\", --phi \"(1+2*i)*z^2*zbar\"";

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::optional<double> max_residual;
  std::optional<double> tolerance;
  bool pass = true;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> raw;  // printed instead of the envelope (CSV output)
};

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

json envelope(const Report& r) {
  json j = {{"command", r.command}, {"inputs", r.inputs},     {"results", r.results},
            {"pass", r.pass},       {"version", kVersion}};
  j["max_residual"] = r.max_residual ? json(*r.max_residual) : json(nullptr);
  j["tolerance"] = r.tolerance ? json(*r.tolerance) : json(nullptr);
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return j;
}

Report from_suite(std::string command, json inputs, const verify::SuiteResult& s,
                  std::optional<std::uint64_t> seed = std::nullopt) {
  Report r;
  r.command = std::move(command);
  r.inputs = std::move(inputs);
  r.results = verify::to_json(s);
  r.max_residual = s.max_residual;
  r.tolerance = s.tolerance;
  r.pass = s.pass;
  r.seed = seed;
  return r;
}

// Pass/fail from a residual and tolerance.
void judge(Report& r, double residual, double tol) {
  r.max_residual = residual;
  r.tolerance = tol;
  r.pass = std::isfinite(residual) && residual <= tol;
}

void print_pretty(const Report& r, std::ostream& err) {
  err << std::left << std::setw(14) << "command" << r.command << '\n';
  err << std::setw(14) << "pass" << (r.pass ? "true" : "false") << '\n';
  if (r.max_residual) {
    err << std::setw(14) << "max_residual" << format_double(*r.max_residual);
    if (r.tolerance) err << "  (tolerance " << format_double(*r.tolerance) << ')';
    err << '\n';
  }
  if (r.seed) err << std::setw(14) << "seed" << *r.seed << '\n';
  if (r.results.contains("suites")) {
    for (const auto& s : r.results["suites"])
      err << "  " << std::setw(22) << s["name"].get<std::string>() << std::setw(6)
          << (s["pass"].get<bool>() ? "PASS" : "FAIL") << format_double(s["max_residual"].get<double>())
          << " / " << format_double(s["tolerance"].get<double>()) << '\n';
  }
  if (r.results.contains("string")) err << "  " << r.results["string"].get<std::string>() << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

std::vector<double> with_origin(std::vector<double> times) {
  if (times.empty() || times.front() > 0.0) times.insert(times.begin(), 0.0);
  return times;
}

struct Global {
  std::optional<double> tol;
  bool pretty = false;
  double tol_or(double fallback) const { return tol.value_or(fallback); }
};

using Action = std::function<Report()>;

// ---------------------------------------------------------------- hermite

void add_hermite(CLI::App& app, Global& g, Action& action) {
  auto* cmd = app.add_subcommand("hermite", "Complex Hermite polynomials J_{m,n}");
  cmd->require_subcommand(1);

  auto* show = cmd->add_subcommand("show", "Monomial coefficients of J_{m,n}");
  auto m = std::make_shared<int>(0), n = std::make_shared<int>(0);
  show->add_option("--m", *m, "Power of z")->required()->check(CLI::Range(0, kMaxHermiteDegree));
  show->add_option("--n", *n, "Power of zbar")->required()->check(CLI::Range(0, kMaxHermiteDegree));
  show->callback([&action, m, n] {
    action = [m, n] {
      Report r;
      r.command = "hermite show";
      r.inputs = {{"m", *m}, {"n", *n}};
      const Poly j = complex_hermite(*m, *n);
      r.results = {{"poly", poly_to_json(j)}, {"string", to_string(j)}};
      return r;
    };
  });

  auto* ortho = cmd->add_subcommand("orthonormality", "Gram matrix of J_{m,n}, m + n <= max-degree, by quadrature");
  auto max_deg = std::make_shared<int>(10), order = std::make_shared<int>(0);
  ortho->add_option("--max-degree", *max_deg, "Largest total degree")->capture_default_str()->check(CLI::Range(0, 40));
  ortho->add_option("--order", *order, "Gauss-Hermite order (default max(12, max-degree + 2))");
  ortho->callback([&action, &g, max_deg, order] {
    action = [&g, max_deg, order] {
      const int k = *order > 0 ? *order : std::max(12, *max_deg + 2);
      return from_suite("hermite orthonormality", {{"max_degree", *max_deg}, {"order", k}},
                        verify::orthonormality(*max_deg, k, g.tol_or(1e-9)));
    };
  });

  auto* transform = cmd->add_subcommand("transform", "Matrices between H_k(x)H_{l-k}(y) and J_{m,l-m}");
  auto degree = std::make_shared<int>(0);
  auto format = std::make_shared<std::string>("json");
  transform->add_option("--degree", *degree, "Total degree l")->required()->check(CLI::Range(0, kMaxTransformDegree));
  transform->add_option("--format", *format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  transform->callback([&action, &g, degree, format] {
    action = [&g, degree, format] {
      const BasisTransform t(*degree);
      const int dim = t.dim();
      const double residual =
          std::max(identity_deviation(matmul(t.forward_matrix(), t.inverse_matrix(), dim), dim),
                   identity_deviation(matmul(t.inverse_matrix(), t.forward_matrix(), dim), dim));
      Report r;
      r.command = "hermite transform";
      r.inputs = {{"degree", *degree}, {"format", *format}};
      r.results = transform_to_json(t);
      judge(r, residual, g.tol_or(1e-10));
      if (*format == "csv")
        r.raw = "# forward\n" + matrix_to_csv(t.forward_matrix(), dim) + "\n# inverse\n" +
                matrix_to_csv(t.inverse_matrix(), dim);
      return r;
    };
  });

  auto* roundtrip = cmd->add_subcommand("roundtrip", "Monomial expansion round trip and creation-operator route");
  auto rt_deg = std::make_shared<int>(12);
  roundtrip->add_option("--max-degree", *rt_deg, "Largest total degree")->capture_default_str()->check(CLI::Range(0, kMaxCreationDegree));
  roundtrip->callback([&action, &g, rt_deg] {
    action = [&g, rt_deg] {
      const double tol = g.tol_or(1e-10);
      const auto a = verify::hermite_roundtrip(*rt_deg, tol), b = verify::creation_route(*rt_deg, tol);
      Report r;
      r.command = "hermite roundtrip";
      r.inputs = {{"max_degree", *rt_deg}};
      r.results = {{"suites", {verify::to_json(a), verify::to_json(b)}}};
      judge(r, std::max(a.max_residual, b.max_residual), tol);
      return r;
    };
  });
}

// ---------------------------------------------------------------- operator

void add_operator(CLI::App& app, Global& g, Action& action) {
  auto* cmd = app.add_subcommand("operator", "The generator L_theta and its carre du champ");
  cmd->require_subcommand(1);
  cmd->footer(kPolyGrammar);

  auto* eigen = cmd->add_subcommand("eigen", "Eigenvalue of J_{m,n} and the eigenrelation residual");
  auto theta = std::make_shared<double>(0.0);
  auto m = std::make_shared<int>(0), n = std::make_shared<int>(0);
  eigen->add_option("--theta", *theta, "Angle, |theta| < pi/2")->required();
  eigen->add_option("--m", *m)->required()->check(CLI::Range(0, kMaxHermiteDegree));
  eigen->add_option("--n", *n)->required()->check(CLI::Range(0, kMaxHermiteDegree));
  eigen->callback([&action, &g, theta, m, n] {
    action = [&g, theta, m, n] {
      const GeneratorParams p(*theta);
      const cplx lambda = eigenvalue(p, *m, *n);
      const Poly j = complex_hermite(*m, *n);
      const Poly target = j * lambda;
      const double scale = lambda == cplx(0.0) ? j.max_abs_coeff() : target.max_abs_coeff();
      Report r;
      r.command = "operator eigen";
      r.inputs = {{"theta", *theta}, {"m", *m}, {"n", *n}};
      r.results = {{"lambda", cjson(lambda)}};
      judge(r, max_coeff_diff(apply_generator_wirtinger(p, j), target) / scale, g.tol_or(1e-9));
      return r;
    };
  });

  auto* gamma = cmd->add_subcommand("gamma", "Carre du champ Gamma(phi, psi)");
  auto phi = std::make_shared<std::string>(), psi = std::make_shared<std::string>();
  auto gtheta = std::make_shared<double>(0.0);
  gamma->add_option("--phi", *phi, "Polynomial literal")->required();
  gamma->add_option("--psi", *psi, "Polynomial literal")->required();
  gamma->add_option("--theta", *gtheta, "Angle for the generator-form cross-check")->capture_default_str();
  gamma->callback([&action, &g, phi, psi, gtheta] {
    action = [&g, phi, psi, gtheta] {
      const GeneratorParams p(*gtheta);
      const Poly a = parse_poly(*phi), b = parse_poly(*psi);
      const Poly direct = carre_du_champ(a, b);
      Report r;
      r.command = "operator gamma";
      r.inputs = {{"phi", *phi}, {"psi", *psi}, {"theta", *gtheta}};
      r.results = {{"poly", poly_to_json(direct)}, {"string", to_string(direct)}};
      judge(r, max_coeff_diff(direct, carre_du_champ_via_generator(p, a, b)), g.tol_or(1e-10));
      return r;
    };
  });

  auto* chain = cmd->add_subcommand("chain-rule", "Diffusion chain rule on random compositions");
  auto ctheta = std::make_shared<double>(0.0);
  auto cdeg = std::make_shared<int>(3), count = std::make_shared<int>(100), slots = std::make_shared<int>(2);
  auto cseed = std::make_shared<std::uint64_t>(1);
  chain->add_option("--theta", *ctheta)->required();
  chain->add_option("--degree", *cdeg, "Degree of F and of each phi_i")->capture_default_str()->check(CLI::Range(0, 8));
  chain->add_option("--count", *count, "Random cases")->capture_default_str()->check(CLI::PositiveNumber);
  chain->add_option("--slots", *slots, "Maximum number of inner functions")->capture_default_str()->check(CLI::Range(1, 3));
  chain->add_option("--seed", *cseed)->capture_default_str();
  chain->callback([&action, &g, ctheta, cdeg, count, slots, cseed] {
    action = [&g, ctheta, cdeg, count, slots, cseed] {
      return from_suite("operator chain-rule",
                        {{"theta", *ctheta}, {"degree", *cdeg}, {"count", *count}, {"slots", *slots}},
                        verify::chain_rule(*count, *cdeg, *cdeg, *slots, {*ctheta}, *cseed, g.tol_or(1e-9)),
                        *cseed);
    };
  });

  auto* normal = cmd->add_subcommand("normality", "L* L = L L* spectrally and <L f, g> = <f, L_{-theta} g>");
  auto ntheta = std::make_shared<double>(0.0);
  auto ndeg = std::make_shared<int>(8);
  auto nseed = std::make_shared<std::uint64_t>(1);
  normal->add_option("--theta", *ntheta)->required();
  normal->add_option("--degree", *ndeg)->capture_default_str()->check(CLI::Range(0, 24));
  normal->add_option("--seed", *nseed)->capture_default_str();
  normal->callback([&action, &g, ntheta, ndeg, nseed] {
    action = [&g, ntheta, ndeg, nseed] {
      return from_suite("operator normality", {{"theta", *ntheta}, {"degree", *ndeg}},
                        verify::generator_normality(*ndeg, *ntheta, *nseed, g.tol_or(1e-9)), *nseed);
    };
  });

  auto* apply = cmd->add_subcommand("apply", "Apply L_theta to a polynomial or to J-basis coefficients");
  auto atheta = std::make_shared<double>(0.0);
  auto aphi = std::make_shared<std::string>(), input = std::make_shared<std::string>();
  apply->add_option("--theta", *atheta)->required();
  auto* phi_opt = apply->add_option("--phi", *aphi, "Polynomial literal");
  auto* in_opt = apply->add_option("--input", *input, "SpectralCoeffs JSON file");
  phi_opt->excludes(in_opt);
  apply->callback([&action, &g, atheta, aphi, input] {
    if (aphi->empty() == input->empty()) throw CLI::ValidationError("operator apply", "give exactly one of --phi or --input");
    action = [&g, atheta, aphi, input] {
      const GeneratorParams p(*atheta);
      Report r;
      r.command = "operator apply";
      r.inputs = {{"theta", *atheta}};
      if (!aphi->empty()) {
        r.inputs["phi"] = *aphi;
        const Poly f = parse_poly(*aphi);
        const Poly lf = apply_generator_wirtinger(p, f);
        r.results = {{"poly", poly_to_json(lf)}, {"string", to_string(lf)}};
        // cross-check with the spectral form
        const SpectralCoeffs spectral = apply_generator_spectral(p, expand_in_hermite(f));
        judge(r, max_coeff_diff(synthesize(spectral), lf) / (1.0 + lf.max_abs_coeff()), g.tol_or(1e-9));
      } else {
        r.inputs["input"] = *input;
        const SpectralCoeffs f = spectral_from_json(read_json_file(*input));
        r.results = spectral_to_json(apply_generator_spectral(p, f), *atheta);
      }
      return r;
    };
  });
}

// ---------------------------------------------------------------- semigroup

void add_semigroup(CLI::App& app, Global& g, Action& action) {
  auto* cmd = app.add_subcommand("semigroup", "The semigroup P_t = exp(t L_theta)");
  cmd->require_subcommand(1);
  cmd->footer(kPolyGrammar);

  auto* apply = cmd->add_subcommand("apply", "b_{m,n} -> exp(lambda_{m,n} t) b_{m,n}");
  auto theta = std::make_shared<std::optional<double>>();
  auto t = std::make_shared<double>(0.0);
  auto input = std::make_shared<std::string>();
  apply->add_option("--theta", *theta, "Angle; defaults to the input file's theta");
  apply->add_option("--t", *t, "Time >= 0")->required();
  apply->add_option("--input", *input, "SpectralCoeffs JSON file")->required();
  apply->callback([&action, theta, t, input] {
    action = [theta, t, input] {
      const json doc = read_json_file(*input);
      const std::optional<double> th = theta->has_value() ? *theta : spectral_theta(doc);
      if (!th) throw std::invalid_argument("semigroup apply: --theta missing and the input has no theta");
      const PropagatorParams p(GeneratorParams(*th), *t);
      const SpectralCoeffs f = spectral_from_json(doc);
      const SpectralCoeffs out = semigroup_spectral(p, f);
      Report r;
      r.command = "semigroup apply";
      r.inputs = {{"theta", *th}, {"t", *t}, {"input", *input}};
      r.results = spectral_to_json(out, *th);
      r.results["norm_sq_before"] = f.norm_sq();
      r.results["norm_sq_after"] = out.norm_sq();
      return r;
    };
  });

  auto* normal = cmd->add_subcommand("verify-normal", "P_t P_t* = P_t* P_t on monomials, with the fused form");
  auto ntheta = std::make_shared<double>(0.0), nt = std::make_shared<double>(1.0);
  auto ndeg = std::make_shared<int>(5);
  normal->add_option("--theta", *ntheta)->required();
  normal->add_option("--t", *nt)->required();
  normal->add_option("--degree", *ndeg, "Largest monomial degree")->capture_default_str()->check(CLI::Range(0, 10));
  normal->callback([&action, &g, ntheta, nt, ndeg] {
    action = [&g, ntheta, nt, ndeg] {
      PropagatorParams(GeneratorParams(*ntheta), *nt);
      return from_suite("semigroup verify-normal", {{"theta", *ntheta}, {"t", *nt}, {"degree", *ndeg}},
                        verify::semigroup_normality(*ndeg, {*ntheta}, {*nt}, g.tol_or(1e-8)));
    };
  });

  auto* inv = cmd->add_subcommand("invariance", "int P_t phi dgamma = int phi dgamma");
  auto itheta = std::make_shared<double>(0.0), it = std::make_shared<double>(1.0);
  auto ideg = std::make_shared<int>(8);
  auto iseed = std::make_shared<std::uint64_t>(1);
  inv->add_option("--theta", *itheta)->required();
  inv->add_option("--t", *it)->required();
  inv->add_option("--degree", *ideg)->capture_default_str()->check(CLI::Range(0, 24));
  inv->add_option("--seed", *iseed)->capture_default_str();
  inv->callback([&action, &g, itheta, it, ideg, iseed] {
    action = [&g, itheta, it, ideg, iseed] {
      PropagatorParams(GeneratorParams(*itheta), *it);
      return from_suite("semigroup invariance", {{"theta", *itheta}, {"t", *it}, {"degree", *ideg}},
                        verify::invariance(*ideg, {*itheta}, {*it}, *iseed, g.tol_or(1e-9)), *iseed);
    };
  });

  auto* mehler = cmd->add_subcommand("mehler", "P_t phi(x) by Mehler quadrature, checked against the spectral form");
  auto mtheta = std::make_shared<double>(0.0), mt = std::make_shared<double>(1.0);
  auto mphi = std::make_shared<std::string>();
  auto xre = std::make_shared<double>(0.0), xim = std::make_shared<double>(0.0);
  auto morder = std::make_shared<int>(0);
  mehler->add_option("--theta", *mtheta)->required();
  mehler->add_option("--t", *mt)->required();
  mehler->add_option("--phi", *mphi, "Polynomial literal")->required();
  mehler->add_option("--x-re", *xre)->capture_default_str();
  mehler->add_option("--x-im", *xim)->capture_default_str();
  mehler->add_option("--order", *morder, "Gauss-Hermite order (default degree + 2)");
  mehler->callback([&action, &g, mtheta, mt, mphi, xre, xim, morder] {
    action = [&g, mtheta, mt, mphi, xre, xim, morder] {
      const PropagatorParams p(GeneratorParams(*mtheta), *mt);
      const Poly phi = parse_poly(*mphi);
      const int deg = std::max(0, phi.degree());
      const QuadratureRule rule(*morder > 0 ? *morder : default_order(deg));
      const cplx x(*xre, *xim);
      const cplx value = semigroup_mehler(p, phi, x, rule);
      const cplx spectral = eval(synthesize(semigroup_spectral(p, expand_in_hermite(phi))), x);
      Report r;
      r.command = "semigroup mehler";
      r.inputs = {{"theta", *mtheta}, {"t", *mt}, {"phi", *mphi}, {"x", cjson(x)}, {"order", rule.order()}};
      r.results = {{"value", cjson(value)}, {"spectral", cjson(spectral)}};
      judge(r, std::abs(value - spectral) / std::max(1.0, std::abs(spectral)), g.tol_or(1e-8));
      return r;
    };
  });

  auto* erg = cmd->add_subcommand("ergodic", "|P_t phi(x) - int phi dgamma| against C exp(-d t cos theta)");
  auto etheta = std::make_shared<double>(0.0);
  auto ephi = std::make_shared<std::string>();
  auto exre = std::make_shared<double>(0.0), exim = std::make_shared<double>(0.0);
  auto etimes = std::make_shared<std::vector<double>>(std::vector<double>{2.0, 5.0, 10.0});
  erg->add_option("--theta", *etheta)->required();
  erg->add_option("--phi", *ephi, "Polynomial literal")->required();
  erg->add_option("--x-re", *exre)->capture_default_str();
  erg->add_option("--x-im", *exim)->capture_default_str();
  erg->add_option("--t", *etimes, "Times (repeat or comma-separate)")->delimiter(',')->capture_default_str();
  erg->callback([&action, &g, etheta, ephi, exre, exim, etimes] {
    action = [&g, etheta, ephi, exre, exim, etimes] {
      const GeneratorParams p(*etheta);
      const Poly phi = parse_poly(*ephi);
      const QuadratureRule rule(default_order(std::max(0, phi.degree())));
      const cplx x(*exre, *exim);
      const ErgodicEnvelope env = ergodic_envelope(phi, x);
      json rows = json::array();
      double worst = 0.0;
      for (double t : *etimes) {
        if (!(t > 0.0)) throw std::invalid_argument("semigroup ergodic: times must be > 0");
        const double res = ergodic_limit_residual(p, phi, x, t, rule);
        const double bound = env.bound(p, t);
        worst = std::max(worst, std::max(0.0, res - bound) / (1.0 + env.constant));
        rows.push_back({{"t", t}, {"residual", res}, {"bound", bound}});
      }
      Report r;
      r.command = "semigroup ergodic";
      r.inputs = {{"theta", *etheta}, {"phi", *ephi}, {"x", cjson(x)}, {"t", *etimes}};
      r.results = {{"mean", cjson(integrate_gamma(rule, phi))},
                   {"envelope", {{"constant", env.constant}, {"min_degree", env.min_degree}}},
                   {"times", rows}};
      judge(r, worst, g.tol_or(1e-12));
      return r;
    };
  });
}

// ---------------------------------------------------------------- sde

void add_sde(CLI::App& app, Global& g, Action& action) {
  auto* cmd = app.add_subcommand("sde", "Complex Ornstein-Uhlenbeck SDE by Monte Carlo");
  cmd->require_subcommand(1);

  auto* sim = cmd->add_subcommand("simulate", "Simulate paths; JSON moment summary or CSV path_id,t,re,im");
  auto theta = std::make_shared<double>(0.0);
  auto xre = std::make_shared<double>(0.0), xim = std::make_shared<double>(0.0);
  auto times = std::make_shared<std::vector<double>>();
  auto paths = std::make_shared<std::size_t>(1000);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto scheme = std::make_shared<std::string>("exact");
  auto dt = std::make_shared<double>(1e-3);
  auto threads = std::make_shared<int>(0);
  auto format = std::make_shared<std::string>("json");
  sim->add_option("--theta", *theta)->required();
  sim->add_option("--x0-re", *xre)->capture_default_str();
  sim->add_option("--x0-im", *xim)->capture_default_str();
  sim->add_option("--t", *times, "Observation times (repeat or comma-separate); 0 is prepended")
      ->required()->delimiter(',');
  sim->add_option("--paths", *paths)->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--seed", *seed)->capture_default_str();
  sim->add_option("--scheme", *scheme)->capture_default_str()->check(CLI::IsMember({"exact", "euler"}));
  sim->add_option("--dt", *dt, "Euler step")->capture_default_str();
  sim->add_option("--threads", *threads, "Worker threads, 0 for all cores")->capture_default_str();
  sim->add_option("--format", *format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  sim->callback([&action, &g, theta, xre, xim, times, paths, seed, scheme, dt, threads, format] {
    action = [&g, theta, xre, xim, times, paths, seed, scheme, dt, threads, format] {
      SimConfig c;
      c.params = GeneratorParams(*theta);
      c.x0 = {*xre, *xim};
      c.t_grid = with_origin(*times);
      c.n_paths = *paths;
      c.seed = *seed;
      c.scheme = *scheme == "euler" ? Scheme::euler : Scheme::exact;
      c.dt = *dt;
      c.threads = *threads;
      const PathEnsemble e = simulate(c);
      Report r;
      r.command = "sde simulate";
      r.inputs = {{"theta", *theta}, {"x0", cjson(c.x0)}, {"t", c.t_grid}, {"paths", *paths},
                  {"scheme", *scheme}, {"dt", *dt}, {"format", *format}};
      r.seed = *seed;
      if (*format == "csv") {
        std::ostringstream os;
        os << "path_id,t,re,im\n";
        for (std::size_t p = 0; p < e.n_paths(); ++p)
          for (std::size_t k = 0; k < e.n_times(); ++k) {
            const cplx z = e.state(p, k);
            os << p << ',' << format_double(c.t_grid[k]) << ',' << format_double(z.real()) << ','
               << format_double(z.imag()) << '\n';
          }
        r.raw = os.str();
        return r;
      }
      json rows = json::array();
      double worst = 0.0;
      const bool stats = c.n_paths >= 2;
      for (std::size_t k = 0; k < e.n_times(); ++k) {
        const double t = c.t_grid[k], elapsed = t - c.t_grid.front();
        const Estimate mean = estimate_pt(e, [](cplx z) { return z; }, k);
        const cplx want = exact_mean(c.params, c.x0, elapsed);
        json row = {{"t", t}, {"mean", cjson(mean.mean)}, {"mean_exact", cjson(want)}};
        if (stats && k > 0) {
          const Estimate var = estimate_variance(e, k);
          const double var_exact = exact_variance(c.params, elapsed);
          const double z_mean = std::abs(mean.mean - want) / mean.std_error;
          const double z_var = std::abs(var.mean.real() - var_exact) / var.std_error;
          row["mean_std_error"] = mean.std_error;
          row["variance"] = var.mean.real();
          row["variance_exact"] = var_exact;
          row["variance_std_error"] = var.std_error;
          row["mean_z"] = z_mean;
          row["variance_z"] = z_var;
          worst = std::max({worst, z_mean, z_var});
        }
        rows.push_back(row);
      }
      r.results = {{"times", rows}, {"std_errors", "sample-based; pass when every |z| <= tolerance"}};
      if (stats) judge(r, worst, g.tol_or(4.0));
      return r;
    };
  });

  auto* stat = cmd->add_subcommand("stationarity", "Marginal at t_burn from x0 = 0 against gamma");
  auto stheta = std::make_shared<double>(0.0);
  auto spaths = std::make_shared<std::size_t>(200000);
  auto sseed = std::make_shared<std::uint64_t>(0);
  auto tburn = std::make_shared<std::optional<double>>();
  stat->add_option("--theta", *stheta)->required();
  stat->add_option("--paths", *spaths)->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  stat->add_option("--seed", *sseed)->capture_default_str();
  stat->add_option("--t-burn", *tburn, "Burn-in time (default: smallest with exp(-t cos theta) <= 1e-6)");
  stat->callback([&action, &g, stheta, spaths, sseed, tburn] {
    action = [&g, stheta, spaths, sseed, tburn] {
      const GeneratorParams p(*stheta);
      const StationarityReport rep =
          stationarity_check(p, *spaths, tburn->has_value() ? **tburn : min_burn_time(p), *sseed);
      json moments = json::array();
      double worst = std::max(rep.ks_re, rep.ks_im) / rep.ks_threshold;
      for (const auto& m : rep.moments) {
        const double z = std::abs(m.estimate - m.expected) / m.std_error;
        worst = std::max(worst, z / 4.0);
        moments.push_back({{"name", m.name}, {"estimate", cjson(m.estimate)}, {"expected", cjson(m.expected)},
                           {"std_error", m.std_error}, {"pass", m.pass}});
      }
      Report r;
      r.command = "sde stationarity";
      r.inputs = {{"theta", *stheta}, {"paths", *spaths}, {"t_burn", rep.t_burn}};
      r.seed = *sseed;
      r.results = {{"moments", moments},      {"ks_re", rep.ks_re},
                   {"ks_im", rep.ks_im},      {"ks_threshold", rep.ks_threshold},
                   {"residual_units", "max(moment z / 4, KS / threshold)"}};
      judge(r, worst, g.tol_or(1.0));
      r.pass = r.pass && rep.pass;
      return r;
    };
  });
}

// ---------------------------------------------------------------- quad, verify-all

void add_quad(CLI::App& app, Global& g, Action& action) {
  auto* cmd = app.add_subcommand("quad", "Gauss-Hermite quadrature");
  cmd->require_subcommand(1);
  auto* self = cmd->add_subcommand("selftest", "Weight sums and moment exactness for orders 1..max-order");
  auto max_order = std::make_shared<int>(64);
  self->add_option("--max-order", *max_order)->capture_default_str()->check(CLI::Range(1, kMaxQuadratureOrder));
  self->callback([&action, &g, max_order] {
    action = [&g, max_order] {
      return from_suite("quad selftest", {{"max_order", *max_order}},
                        verify::quadrature_selftest(*max_order, g.tol_or(1e-10)));
    };
  });
}

void add_verify_all(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("verify-all", "Run every suite; residuals are reported relative to their tolerances");
  auto seed = std::make_shared<std::uint64_t>(20240611);
  auto paths = std::make_shared<std::size_t>(200000);
  cmd->add_option("--seed", *seed)->capture_default_str();
  cmd->add_option("--paths", *paths, "Monte Carlo paths for the SDE suites")->capture_default_str()->check(CLI::Range(std::size_t{100}, std::size_t{1} << 32));
  cmd->callback([&action, seed, paths] {
    action = [seed, paths] {
      const auto th = verify::standard_thetas();
      const auto ts = verify::standard_times();
      const std::uint64_t s = *seed;
      const std::vector<verify::SuiteResult> suites = {
          verify::quadrature_selftest(64),
          verify::orthonormality(10, 12),
          verify::eigenrelation(10, th),
          verify::basis_transform(16),
          verify::creation_route(12),
          verify::hermite_roundtrip(12),
          verify::generator_normality(10, kPi / 4, s),
          verify::carre_du_champ(200, 6, th, 1000, s + 2),
          verify::chain_rule(100, 3, 3, 2, th, s + 3),
          verify::spectral_vs_mehler(8, th, ts, 50, s),
          verify::semigroup_normality(5, th, ts),
          verify::semigroup_adjoint(6, th, ts, 2, s + 1),
          verify::invariance(8, th, ts, s + 6),
          verify::ergodic(6, th, {2.0, 5.0, 10.0}, 3, s + 7),
          verify::sde_moments(*paths, {0.0, kPi / 4, -kPi / 3}, {0.5, 2.0}, cplx(1.0, -0.5), s + 4),
          verify::stationarity(kPi / 4, *paths, s + 5),
      };
      Report r;
      r.command = "verify-all";
      r.inputs = {{"paths", *paths}};
      r.seed = s;
      json arr = json::array();
      double worst = 0.0;
      bool pass = true;
      for (const auto& suite : suites) {
        arr.push_back(verify::to_json(suite));
        worst = std::max(worst, suite.max_residual / suite.tolerance);
        pass = pass && suite.pass;
      }
      r.results = {{"suites", arr}, {"residual_units", "max over suites of residual / tolerance"}};
      r.max_residual = worst;
      r.tolerance = 1.0;
      r.pass = pass;
      return r;
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex Ornstein-Uhlenbeck operator: Hermite basis, generator, semigroup and SDE checks",
               "cou"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--tol", g.tol, "Override the command's tolerance");
  app.add_flag("--pretty", g.pretty, "Human-readable summary on stderr");

  Action action;
  add_hermite(app, g, action);
  add_operator(app, g, action);
  add_semigroup(app, g, action);
  add_sde(app, g, action);
  add_quad(app, g, action);
  add_verify_all(app, action);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (!action) return kUsage;

  Report report;
  try {
    report = action();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad JSON input: " << e.what() << '\n';
    return kUsage;
  }

  if (report.raw)
    out << *report.raw;
  else
    out << envelope(report).dump(2) << '\n';
  if (g.pretty) print_pretty(report, err);
  return report.pass ? kPass : kVerificationFailed;
}

}  // namespace cou::cli
