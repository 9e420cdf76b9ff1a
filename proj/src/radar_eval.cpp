#include "isac/radar_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isac {

CMatrix synthesize_waveform(const CMatrix& w, int snapshots, Rng& rng) {
  const auto streams = w.cols();
  if (snapshots < streams) {
    throw DomainError("snapshots must be >= number of streams");
  }
  const CMatrix g = rng.complex_normal(snapshots, static_cast<int>(streams));
  const Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix q =
      qr.householderQ() * CMatrix::Identity(snapshots, streams);  // L x N
  const CMatrix s = std::sqrt(static_cast<double>(snapshots)) * q.adjoint();
  return w * s;
}

EchoBatch synthesize_echo(const Scenario& scenario, const CMatrix& x,
                          Rng& rng, double noise_scale) {
  if (x.rows() != scenario.array.num_tx) {
    throw DimensionError("waveform rows differ from num_tx");
  }
  CMatrix channel = CMatrix::Zero(scenario.array.num_rx, scenario.array.num_tx);
  for (const auto& t : scenario.targets) {
    channel += t.rcs * target_channel(t.angle, scenario.array);
  }
  EchoBatch echo;
  echo.transmitted = x;
  echo.noise_power = scenario.noise_power * noise_scale * noise_scale;
  echo.received = channel * x;
  if (noise_scale != 0.0) {
    const double sigma = std::sqrt(echo.noise_power);
    echo.received +=
        sigma * rng.complex_normal(scenario.array.num_rx,
                                   static_cast<int>(x.cols()));
  }
  return echo;
}

MusicSpectrum music_spectrum(const EchoBatch& echo, int num_targets,
                             double grid_deg, double spacing) {
  const auto m_r = echo.received.rows();
  const auto l = echo.received.cols();
  if (num_targets < 1 || num_targets >= m_r) {
    throw DomainError("MUSIC needs 1 <= targets < receive antennas");
  }
  if (!(grid_deg > 0.0)) throw DomainError("grid resolution must be > 0");

  const CMatrix cov = echo.received * echo.received.adjoint() /
                      static_cast<double>(l);
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov);
  // Eigenvalues ascending: the first M_R - T vectors span the noise subspace.
  const CMatrix noise_basis = eig.eigenvectors().leftCols(m_r - num_targets);

  const int n = static_cast<int>(std::llround(180.0 / grid_deg));
  MusicSpectrum sp;
  sp.angles_deg.resize(n + 1);
  sp.null_spectrum.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double deg = (i == n) ? 90.0 : -90.0 + i * grid_deg;
    sp.angles_deg[i] = std::min(deg, 90.0);
    const CVector a =
        steering(deg2rad(sp.angles_deg[i]), static_cast<int>(m_r), spacing);
    sp.null_spectrum[i] = (noise_basis.adjoint() * a).squaredNorm();
  }
  return sp;
}

MusicResult music_estimate(const EchoBatch& echo, int num_targets,
                           double grid_deg, double spacing) {
  const MusicSpectrum sp =
      music_spectrum(echo, num_targets, grid_deg, spacing);
  const auto& d = sp.null_spectrum;
  const int n = static_cast<int>(d.size());

  // Local minima of the null spectrum are local maxima of the pseudospectrum.
  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    const bool left = i == 0 || d[i] < d[i - 1];
    const bool right = i == n - 1 || d[i] <= d[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](int a, int b) { return d[a] < d[b]; });

  MusicResult out;
  if (static_cast<int>(peaks.size()) < num_targets) out.degraded = true;
  for (int p = 0; p < num_targets; ++p) {
    if (peaks.empty()) break;
    const int i = p < static_cast<int>(peaks.size()) ? peaks[p] : peaks[0];
    double deg = sp.angles_deg[i];
    if (i > 0 && i < n - 1) {
      const double curv = d[i - 1] - 2.0 * d[i] + d[i + 1];
      if (curv > 0.0) {
        const double offset =
            std::clamp(0.5 * (d[i - 1] - d[i + 1]) / curv, -0.5, 0.5);
        deg += offset * (sp.angles_deg[i + 1] - sp.angles_deg[i]);
      }
    }
    out.angles.push_back(deg2rad(deg));
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

EstimationReport score_estimate(const std::vector<double>& estimated,
                                const std::vector<Target>& targets,
                                double rcrlb) {
  EstimationReport r;
  r.estimated_angles = estimated;
  std::sort(r.estimated_angles.begin(), r.estimated_angles.end());
  for (const auto& t : targets) r.true_angles.push_back(t.angle);
  std::sort(r.true_angles.begin(), r.true_angles.end());
  if (r.estimated_angles.size() != r.true_angles.size()) {
    throw DimensionError("estimate count differs from target count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < r.true_angles.size(); ++i) {
    const double e = r.estimated_angles[i] - r.true_angles[i];
    r.squared_errors.push_back(e * e);
    total += e * e;
  }
  r.rmse = std::sqrt(total);
  r.rcrlb = rcrlb;
  return r;
}

MonteCarloReport monte_carlo(const Scenario& scenario,
                             const DesignResult& design,
                             const MonteCarloOptions& opts) {
  if (opts.trials < 1) throw DomainError("trials must be >= 1");
  const std::uint64_t seed = opts.seed.value_or(scenario.seed);
  MonteCarloReport rep;
  rep.rcrlb = design.rcrlb;
  double sum_sq = 0.0;
  for (int i = 0; i < opts.trials; ++i) {
    Rng wave_rng = Rng::substream(seed, Stream::kWaveform, i);
    Rng noise_rng = Rng::substream(seed, Stream::kNoise, i);
    const CMatrix x =
        synthesize_waveform(design.w_star, scenario.snapshots, wave_rng);
    const EchoBatch echo =
        synthesize_echo(scenario, x, noise_rng, opts.noise_scale);
    const MusicResult est =
        music_estimate(echo, scenario.num_targets(), opts.grid_deg,
                       scenario.array.spacing);
    EstimationReport r =
        score_estimate(est.angles, scenario.targets, design.rcrlb);
    r.degraded = est.degraded;
    if (r.degraded) ++rep.degraded_trials;
    sum_sq += r.rmse * r.rmse;
    rep.trials.push_back(std::move(r));
  }
  rep.rmse = std::sqrt(sum_sq / opts.trials);
  return rep;
}

}  // namespace isac
