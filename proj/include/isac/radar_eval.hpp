#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isac/random.hpp"
#include "isac/scenario.hpp"
#include "isac/sgcdf.hpp"

namespace isac {

struct EchoBatch {
  CMatrix received;     // M_R x L
  CMatrix transmitted;  // M_T x L
  double noise_power = 0.0;
};

/// X = W S with S (streams x L) scaled-orthonormal rows, (1/L) S S^H = I
/// exactly, so the sample covariance of X equals W W^H. Throws DomainError
/// when L < number of streams.
CMatrix synthesize_waveform(const CMatrix& w, int snapshots, Rng& rng);

/// Y = (sum_t alpha_t G(theta_t)) X + N with N i.i.d. CN(0, noise_scale^2
/// sigma^2). noise_scale = 0 gives the noiseless echo.
EchoBatch synthesize_echo(const Scenario& scenario, const CMatrix& x,
                          Rng& rng, double noise_scale = 1.0);

struct MusicResult {
  std::vector<double> angles;  // rad, ascending, exactly `num_targets`
  bool degraded = false;       // fewer distinct peaks than targets
};

/// MUSIC pseudospectrum 1 / ||E_n^H a(theta)||^2 on a uniform grid over
/// [-90, 90] deg (endpoints included).
struct MusicSpectrum {
  std::vector<double> angles_deg;
  std::vector<double> null_spectrum;  // ||E_n^H a||^2, minima are peaks
};

MusicSpectrum music_spectrum(const EchoBatch& echo, int num_targets,
                             double grid_deg, double spacing = 0.5);

/// Peak picking of the `num_targets` strongest local maxima, each refined by
/// a parabola through the null spectrum at the peak and its two neighbours.
/// Requires num_targets < M_R.
MusicResult music_estimate(const EchoBatch& echo, int num_targets,
                           double grid_deg = 0.02, double spacing = 0.5);

struct EstimationReport {
  std::vector<double> estimated_angles;  // rad, sorted
  std::vector<double> true_angles;       // rad, sorted
  std::vector<double> squared_errors;    // rad^2, per target
  double rmse = 0.0;   // sqrt(sum_t err_t^2), rad
  double rcrlb = 0.0;  // sqrt(tr F^-1), rad
  bool degraded = false;
};

struct MonteCarloOptions {
  int trials = 30;
  double grid_deg = 0.02;
  double noise_scale = 1.0;
  std::optional<std::uint64_t> seed;  // defaults to the scenario seed
};

struct MonteCarloReport {
  std::vector<EstimationReport> trials;
  /// sqrt(mean over trials of sum_t err_t^2): the error of the stacked
  /// angle vector, commensurate with rcrlb.
  double rmse = 0.0;
  double rcrlb = 0.0;
  int degraded_trials = 0;
};

/// Sorted-order association of estimates with the true angles.
EstimationReport score_estimate(const std::vector<double>& estimated,
                                const std::vector<Target>& targets,
                                double rcrlb);

/// Independent trials; trial i draws its waveform and noise from substreams
/// keyed by (seed, i), so results do not depend on execution order.
MonteCarloReport monte_carlo(const Scenario& scenario,
                             const DesignResult& design,
                             const MonteCarloOptions& opts);

}  // namespace isac
