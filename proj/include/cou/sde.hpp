#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cou/generator.hpp"
#include "cou/quadrature.hpp"

namespace cou {

enum class Scheme { exact, euler };

/// Simulation of dZ = -e^{i theta} Z dt + sqrt(2 cos theta) dzeta with
/// zeta = B_1 + i B_2 a complex Brownian motion.
struct SimConfig {
  GeneratorParams params{0.0};
  cplx x0 = 0.0;
  /// Strictly increasing observation times; the state at t_grid[0] is x0.
  std::vector<double> t_grid{0.0};
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::exact;
  /// Euler step; must divide every grid gap to 1e-12.
  double dt = 1e-3;
  /// Multiplies the noise coefficient; 0 gives the deterministic drift ODE (test hook).
  double noise_gain = 1.0;
  /// Worker threads, 0 for hardware concurrency. Results do not depend on it.
  int threads = 0;
};

/// Throws std::invalid_argument when a field violates its constraint.
void validate(const SimConfig& config);

/// n_paths x |t_grid| states, path-major.
class PathEnsemble {
public:
  PathEnsemble(SimConfig config, std::vector<cplx> states);

  const SimConfig& config() const { return config_; }
  std::size_t n_paths() const { return config_.n_paths; }
  std::size_t n_times() const { return config_.t_grid.size(); }
  cplx state(std::size_t path, std::size_t t_index) const {
    return states_[path * n_times() + t_index];
  }
  const std::vector<cplx>& states() const { return states_; }

private:
  SimConfig config_;
  std::vector<cplx> states_;
};

/// Exact transition: Z_{t+D} = e^{-e^{i theta} D} Z_t + sqrt(1 - e^{-2 D cos theta}) W.
PathEnsemble sample_exact(const SimConfig& config);
/// Euler-Maruyama: Z <- Z - e^{i theta} Z dt + sqrt(2 cos theta) sqrt(dt) W.
PathEnsemble sample_euler(const SimConfig& config);
/// Dispatches on config.scheme.
PathEnsemble simulate(const SimConfig& config);

struct Estimate {
  cplx mean;
  double std_error;  ///< sqrt(sum |x - mean|^2 / (n (n - 1)))
};

/// Monte Carlo mean of phi(Z_t) over paths at grid index t_index.
Estimate estimate_pt(const PathEnsemble& ensemble, const Evaluable& phi, std::size_t t_index);
/// Sample E|Z_t - mean|^2 with its standard error.
Estimate estimate_variance(const PathEnsemble& ensemble, std::size_t t_index);

/// Closed-form transition moments from x0 after time t.
cplx exact_mean(const GeneratorParams& params, cplx x0, double t);
double exact_variance(const GeneratorParams& params, double t);

/// E|Z_t|^2 of the Euler chain itself (step dt, t a multiple of dt), by its
/// exact second-moment recursion E' = |1 - e^{i theta} dt|^2 E + 4 cos(theta) dt.
double euler_second_moment(const GeneratorParams& params, cplx x0, double t, double dt);

struct MomentCheck {
  std::string name;
  cplx estimate;
  cplx expected;
  double std_error;
  bool pass;  ///< |estimate - expected| <= 4 std_error
};

struct StationarityReport {
  double theta = 0.0;
  std::size_t n_paths = 0;
  double t_burn = 0.0;
  std::uint64_t seed = 0;
  std::vector<MomentCheck> moments;  ///< E z, E z^2, E|z|^2 against 0, 0, 2
  double ks_re = 0.0;                ///< Kolmogorov-Smirnov distance of Re z to N(0,1)
  double ks_im = 0.0;
  double ks_threshold = 0.0;  ///< 1.63 / sqrt(n_paths)
  bool pass = false;
};

/// Smallest t_burn with e^{-t_burn cos theta} <= 1e-6.
double min_burn_time(const GeneratorParams& params);

/// Runs the exact sampler from x0 = 0 to t_burn and compares the marginal with gamma.
/// Throws std::invalid_argument when e^{-t_burn cos theta} > 1e-6.
StationarityReport stationarity_check(const GeneratorParams& params, std::size_t n_paths,
                                      double t_burn, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between the empirical CDF of `values` and N(0,1).
double ks_distance_normal(std::vector<double> values);

}  // namespace cou
