#include "metaplectica/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metaplectica {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEdgeThreshold = 1e-6;
constexpr double kSmallF = 1e-6;

void check_admissible(const WaveGrid& psi, const char* where) {
  if (edge_energy_fraction(psi) > kEdgeThreshold)
    throw std::runtime_error(std::string(where) + ": field energy at the grid edge (aliasing risk)");
  if (spectral_edge_fraction(psi) > kEdgeThreshold)
    throw std::runtime_error(std::string(where) + ": spectral energy at the band edge (unresolved field)");
}

}  // namespace

WaveGrid fresnel_propagate(const WaveGrid& psi, double f, PropagationMethod method,
                           kernels::ExecPolicy policy) {
  if (f == 0.0 || !std::isfinite(f))
    throw std::invalid_argument("fresnel_propagate: f must be finite and nonzero");
  if (std::abs(f) <= kSmallF) return psi;  // identity limit

  check_admissible(psi, "fresnel_propagate");
  if (method == PropagationMethod::quadrature) {
    // Kernel frequency reaches L/|f| at maximal separation; it must stay
    // below the grid Nyquist rate pi/dx.
    const double f_min = psi.n() * psi.dx() * psi.dx() / kPi;
    if (std::abs(f) < f_min)
      throw std::runtime_error("fresnel_propagate: quadrature kernel oscillation exceeds Nyquist");
  }

  std::vector<Complex> out = method == PropagationMethod::quadrature
                                 ? kernels::fresnel_quadrature(psi, f, policy)
                                 : kernels::fresnel_spectral(psi, f);
  WaveGrid result(std::move(out), psi.x0(), psi.dx());
  if (edge_energy_fraction(result) > kEdgeThreshold)
    throw std::runtime_error("fresnel_propagate: propagated field reached the grid edge");
  return result;
}

WaveGrid quadratic_phase(const WaveGrid& psi, double f) {
  if (f == 0.0 || !std::isfinite(f))
    throw std::invalid_argument("quadratic_phase: f must be finite and nonzero");
  WaveGrid out = psi;
  const double c = -0.5 / f;
  for (int i = 0; i < out.n(); ++i) {
    const double x = out.x(i);
    out[i] *= std::polar(1.0, c * x * x);
  }
  return out;
}

BeamXi beam_xi(const GaussianBeam& beam, double z) {
  if (beam.xi0.imag() == 0.0)
    throw std::invalid_argument("beam_xi: Im xi0 must be nonzero");
  BeamXi out;
  out.xi = Complex(z - beam.z0, 0.0) - beam.xi0;
  const Complex inv = 1.0 / out.xi;
  out.inv_xi1 = inv.real();
  out.inv_xi2 = -inv.imag();
  return out;
}

double gouy_phase(const GaussianBeam& beam, double z) {
  if (beam.xi0.imag() == 0.0)
    throw std::invalid_argument("gouy_phase: Im xi0 must be nonzero");
  // xi(z) = u + i v with constant v = -Im xi0, so arg(1/xi) = -atan2(v, u)
  // never crosses a branch cut; anchoring at u -> -inf gives -+pi.
  const double u = z - beam.z0 - beam.xi0.real();
  const double v = -beam.xi0.imag();
  const double anchor = v > 0.0 ? -kPi : kPi;
  return 0.5 * (-std::atan2(v, u) - anchor);
}

double gouy_total_sweep(const GaussianBeam& beam) {
  if (beam.xi0.imag() == 0.0)
    throw std::invalid_argument("gouy_total_sweep: Im xi0 must be nonzero");
  // arg(1/xi) runs from -+pi to 0 as z sweeps the axis.
  return beam.xi0.imag() < 0.0 ? 0.5 * kPi : -0.5 * kPi;
}

WaveGrid beam_field(const GaussianBeam& beam, double z, const WaveGrid& layout) {
  const BeamXi bx = beam_xi(beam, z);
  WaveGrid out(std::vector<Complex>(static_cast<std::size_t>(layout.n())), layout.x0(),
               layout.dx());
  const Complex pref = 1.0 / std::sqrt(bx.xi);
  const Complex half_inv_xi = 0.5 * (1.0 / bx.xi);
  for (int i = 0; i < out.n(); ++i) {
    const double x = out.x(i);
    out[i] = pref * std::exp(Complex(0.0, 1.0) * half_inv_xi * (x * x));
  }
  normalize(out);
  return out;
}

std::vector<double> gouy_trace_numeric(const WaveGrid& psi0,
                                       const std::vector<double>& z_samples) {
  if (z_samples.size() < 2)
    throw std::invalid_argument("gouy_trace_numeric: need at least two z samples");
  for (std::size_t i = 1; i < z_samples.size(); ++i)
    if (!(z_samples[i] > z_samples[i - 1]))
      throw std::invalid_argument("gouy_trace_numeric: z samples must be strictly increasing");
  const double mid = psi0.x0() + 0.5 * psi0.n() * psi0.dx();
  if (std::abs(mid) > 1e-9 * psi0.length())
    throw std::invalid_argument("gouy_trace_numeric: grid must be centered on x = 0");

  const int axis = psi0.n() / 2;
  std::vector<double> raw;
  raw.reserve(z_samples.size());
  WaveGrid cur = psi0;
  raw.push_back(std::arg(cur[axis]));
  for (std::size_t i = 1; i < z_samples.size(); ++i) {
    cur = fresnel_propagate(cur, z_samples[i] - z_samples[i - 1], PropagationMethod::spectral);
    raw.push_back(std::arg(cur[axis]));
  }
  return unwrap_phases(raw);
}

std::vector<double> fringe_pattern(const WaveGrid& psi_beam, const WaveGrid& psi_ref) {
  if (!psi_beam.same_layout(psi_ref))
    throw std::invalid_argument("fringe_pattern: grid layout mismatch");
  std::vector<double> out(static_cast<std::size_t>(psi_beam.n()));
  for (int i = 0; i < psi_beam.n(); ++i)
    out[static_cast<std::size_t>(i)] = std::norm(psi_beam[i] + psi_ref[i]);
  return out;
}

FringeResult fringe_demo(const FringeConfig& cfg) {
  if (!(cfg.waist_b > 0.0) || !(cfg.z_dist > 0.0) || !(cfg.tilt_k > 0.0))
    throw std::invalid_argument("fringe_demo: waist_b, z_dist, tilt_k must be positive");

  const WaveGrid layout(cfg.grid_n, -cfg.grid_half, cfg.grid_half);
  const GaussianBeam beam{0.0, Complex(0.0, cfg.waist_b)};
  const WaveGrid waist = beam_field(beam, 0.0, layout);
  const WaveGrid before = fresnel_propagate(waist, -cfg.z_dist, PropagationMethod::spectral);
  const WaveGrid after = fresnel_propagate(waist, cfg.z_dist, PropagationMethod::spectral);

  // Tilted plane-wave reference at the beam's on-axis magnitude.
  const double aref = std::abs(before[layout.n() / 2]);
  WaveGrid ref(std::vector<Complex>(static_cast<std::size_t>(layout.n())), layout.x0(),
               layout.dx());
  for (int i = 0; i < ref.n(); ++i) ref[i] = std::polar(aref, cfg.tilt_k * ref.x(i));

  FringeResult res;
  res.period = 2.0 * kPi / cfg.tilt_k;
  res.intensity_before = fringe_pattern(before, ref);
  res.intensity_after = fringe_pattern(after, ref);
  res.x.resize(static_cast<std::size_t>(layout.n()));
  for (int i = 0; i < layout.n(); ++i) res.x[static_cast<std::size_t>(i)] = layout.x(i);

  // Windowed cross-correlation of the DC-removed patterns.
  const int lo = static_cast<int>(std::ceil((-cfg.window_half - layout.x0()) / layout.dx()));
  const int hi = static_cast<int>(std::floor((cfg.window_half - layout.x0()) / layout.dx()));
  if (hi - lo < 16) throw std::invalid_argument("fringe_demo: correlation window too small");
  const int wn = hi - lo + 1;
  std::vector<double> sb(static_cast<std::size_t>(wn)), sa(static_cast<std::size_t>(wn));
  double mb = 0.0, ma = 0.0;
  for (int i = 0; i < wn; ++i) {
    mb += res.intensity_before[static_cast<std::size_t>(lo + i)];
    ma += res.intensity_after[static_cast<std::size_t>(lo + i)];
  }
  mb /= wn;
  ma /= wn;
  for (int i = 0; i < wn; ++i) {
    sb[static_cast<std::size_t>(i)] = res.intensity_before[static_cast<std::size_t>(lo + i)] - mb;
    sa[static_cast<std::size_t>(i)] = res.intensity_after[static_cast<std::size_t>(lo + i)] - ma;
  }

  // Search lags up to half a period: the true displacement is a quarter.
  const int max_lag = std::max(4, static_cast<int>(std::round(0.5 * res.period / layout.dx())));
  int best = 0;
  double best_c = -1e300;
  std::vector<double> corr(static_cast<std::size_t>(2 * max_lag + 1));
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (int i = 0; i < wn; ++i) {
      const int j = i + lag;
      if (j < 0 || j >= wn) continue;
      c += sb[static_cast<std::size_t>(j)] * sa[static_cast<std::size_t>(i)];
    }
    corr[static_cast<std::size_t>(lag + max_lag)] = c;
    if (c > best_c) {
      best_c = c;
      best = lag;
    }
  }
  double refine = 0.0;
  if (best > -max_lag && best < max_lag) {
    const double cm = corr[static_cast<std::size_t>(best - 1 + max_lag)];
    const double c0 = corr[static_cast<std::size_t>(best + max_lag)];
    const double cp = corr[static_cast<std::size_t>(best + 1 + max_lag)];
    const double denom = cm - 2.0 * c0 + cp;
    if (denom != 0.0) refine = 0.5 * (cm - cp) / denom;
  }
  res.shift_estimate = (best + refine) * layout.dx();
  return res;
}

}  // namespace metaplectica
