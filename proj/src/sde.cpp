#include "cou/sde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cou/kernels.hpp"
#include "cou/rng.hpp"

namespace cou {

cplx complex_normal(SplitMix64& rng) {
  const double u1 = rng.uniform_open0();
  const double u2 = rng.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

void validate(const SimConfig& config) {
  if (config.n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
  if (config.t_grid.empty()) throw std::invalid_argument("t_grid must not be empty");
  if (!(config.t_grid.front() >= 0.0)) throw std::invalid_argument("t_grid must start at >= 0");
  for (std::size_t k = 1; k < config.t_grid.size(); ++k)
    if (!(config.t_grid[k] > config.t_grid[k - 1]))
      throw std::invalid_argument("t_grid must be strictly increasing");
  if (!std::isfinite(config.t_grid.back())) throw std::invalid_argument("t_grid must be finite");
  if (config.scheme == Scheme::euler && !(config.dt > 0.0 && std::isfinite(config.dt)))
    throw std::invalid_argument("dt must be > 0 for the Euler scheme");
  if (!std::isfinite(config.noise_gain) || config.noise_gain < 0.0)
    throw std::invalid_argument("noise_gain must be finite and >= 0");
}

PathEnsemble::PathEnsemble(SimConfig config, std::vector<cplx> states)
    : config_(std::move(config)), states_(std::move(states)) {
  if (states_.size() != config_.n_paths * config_.t_grid.size())
    throw std::invalid_argument("PathEnsemble: state count does not match config");
}

namespace {

constexpr std::size_t kBlock = 512;

// One interval between grid points, advanced as `steps` identical affine updates
// z <- mult z + scale W with complex standard normal W.
struct Interval {
  cplx mult;
  double scale;
  long steps;
};

std::vector<Interval> plan(const SimConfig& config) {
  const GeneratorParams& g = config.params;
  const double c = g.cos_theta();
  std::vector<Interval> out;
  for (std::size_t k = 1; k < config.t_grid.size(); ++k) {
    const double gap = config.t_grid[k] - config.t_grid[k - 1];
    if (config.scheme == Scheme::exact) {
      out.push_back({std::exp(-g.drift() * gap),
                     config.noise_gain * std::sqrt(-std::expm1(-2.0 * gap * c)), 1});
    } else {
      const double ratio = gap / config.dt;
      const long steps = std::lround(ratio);
      if (steps < 1 || std::abs(static_cast<double>(steps) * config.dt - gap) > 1e-12 * std::max(1.0, gap))
        throw std::invalid_argument("dt does not divide the grid gap " + std::to_string(gap));
      out.push_back({1.0 - g.drift() * config.dt,
                     config.noise_gain * std::sqrt(2.0 * c * config.dt), steps});
    }
  }
  return out;
}

void run_block(const SimConfig& config, const std::vector<Interval>& intervals,
               std::size_t first, std::size_t count, std::vector<cplx>& states) {
  const std::size_t nt = config.t_grid.size();
  std::vector<SplitMix64> rng;
  rng.reserve(count);
  for (std::size_t p = 0; p < count; ++p) rng.push_back(SplitMix64::substream(config.seed, first + p));
  std::vector<double> zr(count, config.x0.real()), zi(count, config.x0.imag());
  std::vector<double> gr(count), gi(count);
  for (std::size_t p = 0; p < count; ++p) states[(first + p) * nt] = config.x0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const Interval& iv = intervals[k];
    for (long s = 0; s < iv.steps; ++s) {
      for (std::size_t p = 0; p < count; ++p) {
        const cplx w = complex_normal(rng[p]);
        gr[p] = w.real();
        gi[p] = w.imag();
      }
      kernels::affine_update(iv.mult, iv.scale, zr, zi, gr, gi);
    }
    for (std::size_t p = 0; p < count; ++p) states[(first + p) * nt + k + 1] = cplx(zr[p], zi[p]);
  }
}

PathEnsemble run(const SimConfig& config) {
  validate(config);
  const auto intervals = plan(config);
  std::vector<cplx> states(config.n_paths * config.t_grid.size());
  const std::size_t blocks = (config.n_paths + kBlock - 1) / kBlock;
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), blocks));
  auto work = [&](std::size_t start) {
    for (std::size_t b = start; b < blocks; b += static_cast<std::size_t>(threads)) {
      const std::size_t first = b * kBlock;
      run_block(config, intervals, first, std::min(kBlock, config.n_paths - first), states);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, static_cast<std::size_t>(t));
  work(0);
  for (auto& th : pool) th.join();
  return PathEnsemble(config, std::move(states));
}

}  // namespace

PathEnsemble sample_exact(const SimConfig& config) {
  if (config.scheme != Scheme::exact) throw std::invalid_argument("sample_exact: scheme must be exact");
  return run(config);
}

PathEnsemble sample_euler(const SimConfig& config) {
  if (config.scheme != Scheme::euler) throw std::invalid_argument("sample_euler: scheme must be euler");
  return run(config);
}

PathEnsemble simulate(const SimConfig& config) { return run(config); }

namespace {

Estimate mean_and_error(const std::vector<cplx>& values) {
  const auto n = values.size();
  CompensatedSum s;
  for (const cplx& v : values) s.add(v);
  const cplx mean = s.value() / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  CompensatedSum d;
  for (const cplx& v : values) d.add(std::norm(v - mean));
  const double var = d.value().real() / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

Estimate estimate_pt(const PathEnsemble& ensemble, const Evaluable& phi, std::size_t t_index) {
  if (t_index >= ensemble.n_times()) throw std::out_of_range("estimate_pt: bad time index");
  std::vector<cplx> v(ensemble.n_paths());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = phi(ensemble.state(p, t_index));
  return mean_and_error(v);
}

Estimate estimate_variance(const PathEnsemble& ensemble, std::size_t t_index) {
  const Estimate m = estimate_pt(ensemble, [](cplx z) { return z; }, t_index);
  std::vector<cplx> v(ensemble.n_paths());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = std::norm(ensemble.state(p, t_index) - m.mean);
  Estimate out = mean_and_error(v);
  // Bessel correction for the estimated mean.
  const auto n = static_cast<double>(ensemble.n_paths());
  if (n > 1) out.mean *= n / (n - 1.0);
  return out;
}

cplx exact_mean(const GeneratorParams& params, cplx x0, double t) {
  return std::exp(-params.drift() * t) * x0;
}

double exact_variance(const GeneratorParams& params, double t) {
  return -2.0 * std::expm1(-2.0 * t * params.cos_theta());
}

double euler_second_moment(const GeneratorParams& params, cplx x0, double t, double dt) {
  const long steps = std::lround(t / dt);
  const double a = std::norm(1.0 - params.drift() * dt);
  const double inject = 4.0 * params.cos_theta() * dt;
  double e = std::norm(x0);
  for (long k = 0; k < steps; ++k) e = a * e + inject;
  return e;
}

double min_burn_time(const GeneratorParams& params) {
  double t = std::log(1e6) / params.cos_theta();
  while (!(std::exp(-t * params.cos_theta()) <= 1e-6)) t = std::nextafter(t, HUGE_VAL);
  return t;
}

double ks_distance_normal(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = normal_cdf(values[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

StationarityReport stationarity_check(const GeneratorParams& params, std::size_t n_paths,
                                      double t_burn, std::uint64_t seed) {
  if (!(std::exp(-t_burn * params.cos_theta()) <= 1e-6))
    throw std::invalid_argument("stationarity_check: t_burn too small, need e^{-t_burn cos(theta)} <= 1e-6");
  SimConfig config;
  config.params = params;
  config.x0 = 0.0;
  config.t_grid = {0.0, t_burn};
  config.n_paths = n_paths;
  config.seed = seed;
  config.scheme = Scheme::exact;
  const PathEnsemble ens = sample_exact(config);

  StationarityReport r;
  r.theta = params.theta();
  r.n_paths = n_paths;
  r.t_burn = t_burn;
  r.seed = seed;
  auto check = [&](std::string name, const Evaluable& f, cplx expected) {
    const Estimate e = estimate_pt(ens, f, 1);
    r.moments.push_back({std::move(name), e.mean, expected, e.std_error,
                         std::abs(e.mean - expected) <= 4.0 * e.std_error});
  };
  check("E[z]", [](cplx z) { return z; }, 0.0);
  check("E[z^2]", [](cplx z) { return z * z; }, 0.0);
  check("E[|z|^2]", [](cplx z) { return cplx(std::norm(z)); }, 2.0);

  std::vector<double> re(n_paths), im(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) {
    re[p] = ens.state(p, 1).real();
    im[p] = ens.state(p, 1).imag();
  }
  r.ks_re = ks_distance_normal(std::move(re));
  r.ks_im = ks_distance_normal(std::move(im));
  r.ks_threshold = 1.63 / std::sqrt(static_cast<double>(n_paths));
  r.pass = r.ks_re <= r.ks_threshold && r.ks_im <= r.ks_threshold;
  for (const auto& m : r.moments) r.pass = r.pass && m.pass;
  return r;
}

}  // namespace cou
