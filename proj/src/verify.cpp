#include "cou/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cou/generator.hpp"
#include "cou/hermite.hpp"
#include "cou/quadrature.hpp"
#include "cou/sde.hpp"
#include "cou/semigroup.hpp"

namespace cou::verify {

namespace {

using nlohmann::json;
using Rng = std::mt19937_64;

cplx random_complex(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

// Every monomial of total degree <= max_degree with probability 1/2, nonzero.
Poly random_poly(Rng& rng, int max_degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Poly::Terms t;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      if (u(rng) < 0.5) t.emplace(Exponent{a, b}, random_complex(rng, 1.0));
  if (t.empty()) t.emplace(Exponent{max_degree, 0}, 1.0);
  return Poly(std::move(t));
}

MultiPoly random_multipoly(Rng& rng, int slots, int max_degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MultiPoly::Terms t;
  std::vector<int> e(static_cast<std::size_t>(2 * slots), 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == e.size()) {
      if (u(rng) < 0.4) t.emplace(e, random_complex(rng, 1.0));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
    e[pos] = 0;
  };
  rec(rec, 0, max_degree);
  return MultiPoly(slots, std::move(t));
}

SuiteResult finish(std::string name, double worst, double tol, json details) {
  SuiteResult r;
  r.name = std::move(name);
  r.max_residual = worst;
  r.tolerance = tol;
  r.pass = std::isfinite(worst) && worst <= tol;
  r.details = std::move(details);
  return r;
}

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

}  // namespace

json to_json(const SuiteResult& r) {
  return {{"name", r.name},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"details", r.details}};
}

std::vector<double> standard_thetas() { return {0.0, kPi / 4, -kPi / 4, 0.49 * kPi, -0.49 * kPi}; }
std::vector<double> standard_times() { return {0.1, 1.0, 3.0}; }

SuiteResult orthonormality(int max_degree, int order, double tol) {
  const QuadratureRule rule(order);
  std::vector<Mode> modes;
  std::vector<std::vector<double>> re, im;
  for (int d = 0; d <= max_degree; ++d)
    for (int m = 0; m <= d; ++m) {
      modes.push_back({m, d - m});
      re.emplace_back();
      im.emplace_back();
      eval_on_grid(rule, complex_hermite(m, d - m), re.back(), im.back());
    }
  const auto w = rule.grid_weights();
  double worst = 0.0;
  json where = nullptr;
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = a; b < modes.size(); ++b) {
      CompensatedSum s;
      for (std::size_t k = 0; k < w.size(); ++k)
        s.add(w[k] * cplx(re[a][k], im[a][k]) * cplx(re[b][k], -im[b][k]));
      const double dev = std::abs(s.value() - (a == b ? 1.0 : 0.0));
      if (dev > worst) {
        worst = dev;
        where = {{"a", {modes[a].m, modes[a].n}}, {"b", {modes[b].m, modes[b].n}}};
      }
    }
  return finish("orthonormality", worst, tol,
                {{"max_degree", max_degree}, {"order", order}, {"basis_size", modes.size()},
                 {"worst_pair", where}});
}

SuiteResult eigenrelation(int max_degree, const std::vector<double>& thetas, double tol) {
  double worst = 0.0;
  for (double th : thetas) {
    const GeneratorParams g(th);
    for (int d = 0; d <= max_degree; ++d)
      for (int m = 0; m <= d; ++m) {
        const Poly j = complex_hermite(m, d - m);
        const cplx lambda = eigenvalue(g, m, d - m);
        const Poly target = j * lambda;
        const double scale = lambda == cplx(0.0) ? j.max_abs_coeff() : target.max_abs_coeff();
        worst = std::max(worst, max_coeff_diff(apply_generator_wirtinger(g, j), target) / scale);
      }
  }
  return finish("eigenrelation", worst, tol, {{"max_degree", max_degree}, {"thetas", thetas}});
}

SuiteResult basis_transform(int max_degree, double tol) {
  double worst = 0.0;
  json per_degree = json::array();
  for (int l = 0; l <= max_degree; ++l) {
    const BasisTransform t(l);
    const int dim = t.dim();
    const double fi = identity_deviation(matmul(t.forward_matrix(), t.inverse_matrix(), dim), dim);
    const double iff = identity_deviation(matmul(t.inverse_matrix(), t.forward_matrix(), dim), dim);
    const double uf = unitarity_deviation(t.forward_matrix(), dim);
    const double ui = unitarity_deviation(t.inverse_matrix(), dim);
    const double d = std::max({fi, iff, uf, ui});
    worst = std::max(worst, d);
    per_degree.push_back({{"degree", l}, {"inverse", std::max(fi, iff)}, {"unitarity", std::max(uf, ui)}});
  }
  return finish("basis_transform", worst, tol, {{"max_degree", max_degree}, {"per_degree", per_degree}});
}

SuiteResult creation_route(int max_degree, double tol) {
  double worst = 0.0;
  for (int d = 0; d <= max_degree; ++d)
    for (int m = 0; m <= d; ++m) {
      const Poly closed = complex_hermite(m, d - m);
      worst = std::max(worst, max_coeff_diff(complex_hermite_via_creation(m, d - m), closed) /
                                  closed.max_abs_coeff());
    }
  return finish("creation_route", worst, tol, {{"max_degree", max_degree}});
}

SuiteResult hermite_roundtrip(int max_degree, double tol) {
  double worst_exact = 0.0, worst_quad = 0.0;
  const QuadratureRule rule(default_order(max_degree));
  for (int d = 0; d <= max_degree; ++d)
    for (int a = 0; a <= d; ++a) {
      const Poly mono = Poly::monomial(a, d - a);
      const SpectralCoeffs b = monomial_to_hermite(a, d - a);
      const double scale = std::max(1.0, std::sqrt(b.norm_sq()));
      // synthesis cancels terms of size |b| max|J|; measure against that
      double terms = 1.0;
      for (const auto& [mode, v] : b.coeffs())
        terms = std::max(terms, std::abs(v) * complex_hermite(mode.m, mode.n).max_abs_coeff());
      worst_exact = std::max(worst_exact, max_coeff_diff(synthesize(b), mono) / terms);
      worst_quad = std::max(worst_quad, max_coeff_diff(project(rule, mono, max_degree), b) / scale);
    }
  return finish("hermite_roundtrip", std::max(worst_exact, worst_quad), tol,
                {{"max_degree", max_degree}, {"synthesis", worst_exact}, {"projection", worst_quad}});
}

SuiteResult spectral_vs_mehler(int degree, const std::vector<double>& thetas,
                               const std::vector<double>& times, int points, std::uint64_t seed,
                               double tol) {
  Rng rng(seed);
  const QuadratureRule rule(default_order(degree));
  double worst = 0.0;
  int evaluations = 0;
  for (double th : thetas)
    for (double t : times) {
      const PropagatorParams p(GeneratorParams(th), t);
      const Poly phi = random_poly(rng, degree);
      const Poly evolved = synthesize(semigroup_spectral(p, project(rule, phi, degree)));
      for (int k = 0; k < points; ++k) {
        const cplx x = random_complex(rng, 2.0);
        const cplx mehler = semigroup_mehler(p, phi, x, rule);
        worst = std::max(worst, std::abs(eval(evolved, x) - mehler) / std::max(1.0, std::abs(mehler)));
        ++evaluations;
      }
    }
  return finish("spectral_vs_mehler", worst, tol,
                {{"degree", degree}, {"thetas", thetas}, {"times", times}, {"points", points},
                 {"evaluations", evaluations}, {"seed", seed}});
}

SuiteResult semigroup_normality(int max_degree, const std::vector<double>& thetas,
                                const std::vector<double>& times, double tol) {
  const QuadratureRule rule(default_order(max_degree));
  const cplx xs[] = {0.0, {1.0, 0.5}, {-0.7, 1.2}};
  double worst_comm = 0.0, worst_fused = 0.0;
  json grid = json::array();
  for (double th : thetas)
    for (double t : times) {
      const PropagatorParams p(GeneratorParams(th), t);
      double cell = 0.0;
      for (int d = 0; d <= max_degree; ++d)
        for (int a = 0; a <= d; ++a)
          for (cplx x : xs) {
            const auto c = normality_commutator(p, Poly::monomial(a, d - a), x, rule);
            const double scale = 1.0 + std::abs(c.lhs);
            const double rc = std::abs(c.lhs - c.rhs) / scale, rf = std::abs(c.lhs - c.fused) / scale;
            worst_comm = std::max(worst_comm, rc);
            worst_fused = std::max(worst_fused, rf);
            cell = std::max({cell, rc, rf});
          }
      grid.push_back({{"theta", th}, {"t", t}, {"max_residual", cell}});
    }
  return finish("semigroup_normality", std::max(worst_comm, worst_fused), tol,
                {{"max_degree", max_degree}, {"order", rule.order()}, {"commutator", worst_comm},
                 {"fused", worst_fused}, {"grid", grid}});
}

SuiteResult semigroup_adjoint(int degree, const std::vector<double>& thetas,
                              const std::vector<double>& times, int trials, std::uint64_t seed,
                              double tol) {
  Rng rng(seed);
  const QuadratureRule rule(default_order(degree));
  double worst = 0.0;
  for (double th : thetas)
    for (double t : times)
      for (int k = 0; k < trials; ++k) {
        const Poly phi = random_poly(rng, degree), psi = random_poly(rng, degree);
        worst = std::max(worst, adjoint_identity_residual(PropagatorParams(GeneratorParams(th), t),
                                                          phi, psi, rule));
      }
  return finish("semigroup_adjoint", worst, tol,
                {{"degree", degree}, {"thetas", thetas}, {"times", times}, {"trials", trials},
                 {"seed", seed}});
}

SuiteResult generator_normality(int max_degree, double theta, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const GeneratorParams g(theta), adj = adjoint_params(g);
  // spectral: L* L f = L L* f on the full J basis up to max_degree
  SpectralCoeffs f;
  for (int d = 0; d <= max_degree; ++d)
    for (int m = 0; m <= d; ++m) f.set(m, d - m, random_complex(rng, 1.0));
  const SpectralCoeffs a = apply_generator_spectral(adj, apply_generator_spectral(g, f));
  const SpectralCoeffs b = apply_generator_spectral(g, apply_generator_spectral(adj, f));
  const double spectral = max_coeff_diff(a, b) / (1.0 + std::sqrt(a.norm_sq()));
  // <L phi, psi> = <phi, L_{-theta} psi> by quadrature
  const QuadratureRule rule(default_order(max_degree));
  double adjoint = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Poly phi = random_poly(rng, max_degree), psi = random_poly(rng, max_degree);
    const cplx lhs = inner_product(rule, apply_generator_wirtinger(g, phi), psi);
    const cplx rhs = inner_product(rule, phi, apply_generator_wirtinger(adj, psi));
    adjoint = std::max(adjoint, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return finish("generator_normality", std::max(spectral, adjoint), tol,
                {{"theta", theta}, {"max_degree", max_degree}, {"spectral", spectral},
                 {"adjoint", adjoint}, {"seed", seed}});
}

SuiteResult carre_du_champ(int pairs, int degree, const std::vector<double>& thetas, int points,
                           std::uint64_t seed, double tol) {
  Rng rng(seed);
  double agreement = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const GeneratorParams g(thetas[static_cast<std::size_t>(k) % thetas.size()]);
    const Poly phi = random_poly(rng, degree), psi = random_poly(rng, degree);
    agreement = std::max(agreement, max_coeff_diff(cou::carre_du_champ(g, phi, psi),
                                                   carre_du_champ_via_generator(g, phi, psi)));
  }
  double minimum = HUGE_VAL;
  const int per_poly = std::max(1, points / 10);
  for (int done = 0; done < points;) {
    const Poly phi = random_poly(rng, degree);
    const Poly gamma = cou::carre_du_champ(phi, phi);
    for (int k = 0; k < per_poly && done < points; ++k, ++done)
      minimum = std::min(minimum, eval(gamma, random_complex(rng, 2.0)).real());
  }
  constexpr double kFloor = -1e-12;
  // a negative value below the floor fails the suite regardless of agreement
  const double worst = minimum >= kFloor ? agreement : HUGE_VAL;
  return finish("carre_du_champ", worst, tol,
                {{"pairs", pairs}, {"degree", degree}, {"thetas", thetas}, {"agreement", agreement},
                 {"points", points}, {"min_gamma", minimum}, {"min_floor", kFloor}, {"seed", seed}});
}

SuiteResult chain_rule(int count, int degree_f, int degree_phi, int max_slots,
                       const std::vector<double>& thetas, std::uint64_t seed, double tol) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const int slots = 1 + k % max_slots;
    const GeneratorParams g(thetas[static_cast<std::size_t>(k) % thetas.size()]);
    const MultiPoly f = random_multipoly(rng, slots, degree_f);
    std::vector<Poly> phi;
    for (int i = 0; i < slots; ++i) phi.push_back(random_poly(rng, degree_phi));
    const auto r = diffusion_chain_rule(g, f, phi);
    worst = std::max(worst, r.residual / (1.0 + r.lhs.max_abs_coeff()));
  }
  return finish("chain_rule", worst, tol,
                {{"count", count}, {"degree_f", degree_f}, {"degree_phi", degree_phi},
                 {"max_slots", max_slots}, {"thetas", thetas}, {"seed", seed}});
}

SuiteResult invariance(int max_degree, const std::vector<double>& thetas,
                       const std::vector<double>& times, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const QuadratureRule rule(default_order(max_degree));
  double worst = 0.0;
  int cases = 0;
  for (double th : thetas)
    for (double t : times) {
      const PropagatorParams p(GeneratorParams(th), t);
      std::vector<Poly> phis;
      for (int d = 0; d <= max_degree; ++d)
        for (int a = 0; a <= d; ++a) phis.push_back(Poly::monomial(a, d - a));
      phis.push_back(random_poly(rng, max_degree));
      for (const Poly& phi : phis) {
        const double mean = std::abs(integrate_gamma(rule, phi));
        worst = std::max(worst, invariance_residual(p, phi, rule) / (1.0 + mean));
        ++cases;
      }
    }
  return finish("invariance", worst, tol,
                {{"max_degree", max_degree}, {"thetas", thetas}, {"times", times}, {"cases", cases},
                 {"seed", seed}});
}

SuiteResult ergodic(int degree, const std::vector<double>& thetas, const std::vector<double>& times,
                    int trials, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const QuadratureRule rule(default_order(degree));
  double worst = 0.0, tightest = 0.0;
  for (double th : thetas) {
    const GeneratorParams g(th);
    for (int k = 0; k < trials; ++k) {
      const Poly phi = random_poly(rng, degree);
      const cplx x = random_complex(rng, 1.5);
      const ErgodicEnvelope env = ergodic_envelope(phi, x);
      for (double t : times) {
        const double r = ergodic_limit_residual(g, phi, x, t, rule);
        const double bound = env.bound(g, t);
        worst = std::max(worst, std::max(0.0, r - bound) / (1.0 + env.constant));
        if (bound > 0) tightest = std::max(tightest, r / bound);
      }
    }
  }
  return finish("ergodic", worst, tol,
                {{"degree", degree}, {"thetas", thetas}, {"times", times}, {"trials", trials},
                 {"max_ratio_to_bound", tightest}, {"seed", seed}});
}

SuiteResult sde_moments(std::size_t n_paths, const std::vector<double>& thetas,
                        const std::vector<double>& times, cplx x0, std::uint64_t seed, double tol) {
  double worst = 0.0;
  json checks = json::array();
  for (double th : thetas) {
    SimConfig c;
    c.params = GeneratorParams(th);
    c.x0 = x0;
    c.t_grid = {0.0};
    c.t_grid.insert(c.t_grid.end(), times.begin(), times.end());
    c.n_paths = n_paths;
    c.seed = seed;
    const PathEnsemble e = sample_exact(c);
    for (std::size_t k = 1; k < c.t_grid.size(); ++k) {
      const double t = c.t_grid[k];
      const Estimate mean = estimate_pt(e, [](cplx z) { return z; }, k);
      const double var_exact = exact_variance(c.params, t);
      const double se = std::sqrt(var_exact / static_cast<double>(n_paths));
      const cplx mean_exact = exact_mean(c.params, x0, t);
      const double z_mean = std::abs(mean.mean - mean_exact) / se;
      const Estimate var = estimate_variance(e, k);
      const double z_var = std::abs(var.mean.real() - var_exact) / var.std_error;
      worst = std::max({worst, z_mean, z_var});
      checks.push_back({{"theta", th}, {"t", t}, {"mean", cjson(mean.mean)}, {"mean_exact", cjson(mean_exact)},
                        {"mean_se", se}, {"mean_z", z_mean}, {"variance", var.mean.real()},
                        {"variance_exact", var_exact}, {"variance_se", var.std_error}, {"variance_z", z_var}});
    }
  }
  return finish("sde_moments", worst, tol,
                {{"n_paths", n_paths}, {"x0", cjson(x0)}, {"seed", seed}, {"checks", checks}});
}

SuiteResult stationarity(double theta, std::size_t n_paths, std::uint64_t seed, double tol) {
  const GeneratorParams g(theta);
  const StationarityReport r = stationarity_check(g, n_paths, min_burn_time(g), seed);
  double worst = std::max(r.ks_re, r.ks_im) / r.ks_threshold;
  json moments = json::array();
  for (const auto& m : r.moments) {
    const double z = std::abs(m.estimate - m.expected) / m.std_error;
    worst = std::max(worst, z / 4.0);
    moments.push_back({{"name", m.name}, {"estimate", cjson(m.estimate)}, {"expected", cjson(m.expected)},
                       {"std_error", m.std_error}, {"z", z}, {"pass", m.pass}});
  }
  return finish("stationarity", worst, tol,
                {{"theta", theta}, {"n_paths", n_paths}, {"t_burn", r.t_burn}, {"seed", seed},
                 {"moments", moments}, {"ks_re", r.ks_re}, {"ks_im", r.ks_im},
                 {"ks_threshold", r.ks_threshold}});
}

SuiteResult quadrature_selftest(int max_order, double tol) {
  double worst = 0.0, weight_sum = 0.0;
  for (int k = 1; k <= max_order; ++k) {
    const QuadratureRule rule(k);
    CompensatedSum s;
    for (double w : rule.weights()) s.add(w);
    weight_sum = std::max(weight_sum, std::abs(s.value() - 1.0));
    // E x^p = (p-1)!! for even p, 0 for odd; checked relative to the even moment
    double even = 1.0;
    for (int p = 0; p <= std::min(2 * k - 1, 40); ++p) {
      if (p >= 2 && p % 2 == 0) even *= p - 1;
      const double scale = (p % 2 == 0) ? even : even * p;
      const double want = (p % 2 == 0) ? even : 0.0;
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += rule.weights()[i] * std::pow(rule.nodes()[i], p);
      worst = std::max(worst, std::abs(acc - want) / scale);
    }
  }
  return finish("quadrature_selftest", std::max(worst, weight_sum), tol,
                {{"max_order", max_order}, {"moment_exactness", worst}, {"weight_sum", weight_sum}});
}

}  // namespace cou::verify
