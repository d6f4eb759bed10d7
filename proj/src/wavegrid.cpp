#include "metaplectica/wavegrid.hpp"

#include <algorithm>
#include <cmath>

#include "metaplectica/kernels.hpp"

namespace metaplectica {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(int n, double dx) {
  if (n < 16 || n % 2 != 0)
    throw std::invalid_argument("WaveGrid: n must be even and >= 16");
  if (!(dx > 0.0) || !std::isfinite(dx))
    throw std::invalid_argument("WaveGrid: dx must be positive and finite");
}

}  // namespace

WaveGrid::WaveGrid(int n, double x_min, double x_max)
    : psi_(n > 0 ? static_cast<std::size_t>(n) : 0), x0_(x_min), dx_((x_max - x_min) / n) {
  validate(n, dx_);
}

WaveGrid::WaveGrid(std::vector<Complex> samples, double x0, double dx)
    : psi_(std::move(samples)), x0_(x0), dx_(dx) {
  validate(n(), dx_);
}

bool WaveGrid::same_layout(const WaveGrid& o, double tol) const {
  return n() == o.n() && std::abs(x0_ - o.x0_) <= tol && std::abs(dx_ - o.dx_) <= tol;
}

WaveGrid gaussian_probe(const WaveGrid& layout, double center, double width, double k0) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_probe: width must be positive");
  WaveGrid out(std::vector<Complex>(static_cast<std::size_t>(layout.n())), layout.x0(),
               layout.dx());
  const double amp = std::pow(kPi, -0.25) / std::sqrt(width);
  for (int i = 0; i < out.n(); ++i) {
    const double u = (out.x(i) - center) / width;
    out[i] = std::polar(amp * std::exp(-0.5 * u * u), k0 * out.x(i));
  }
  return out;
}

WaveGrid hermite_probe(const WaveGrid& layout, int m, double width) {
  if (m < 0) throw std::invalid_argument("hermite_probe: order must be >= 0");
  if (!(width > 0.0)) throw std::invalid_argument("hermite_probe: width must be positive");
  WaveGrid out(std::vector<Complex>(static_cast<std::size_t>(layout.n())), layout.x0(),
               layout.dx());
  for (int i = 0; i < out.n(); ++i) {
    const double u = out.x(i) / width;
    double h0 = 1.0, h1 = 2.0 * u;
    double h = m == 0 ? h0 : h1;
    for (int j = 2; j <= m; ++j) {
      h = 2.0 * u * h1 - 2.0 * (j - 1) * h0;
      h0 = h1;
      h1 = h;
    }
    out[i] = h * std::exp(-0.5 * u * u);
  }
  normalize(out);
  return out;
}

Complex inner_product(const WaveGrid& a, const WaveGrid& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("inner_product: grid layout mismatch");
  Complex acc{0.0, 0.0};
  for (int i = 0; i < a.n(); ++i) acc += std::conj(a[i]) * b[i];
  return acc * a.dx();
}

double norm(const WaveGrid& a) {
  double acc = 0.0;
  for (const Complex& c : a.samples()) acc += std::norm(c);
  return std::sqrt(acc * a.dx());
}

void normalize(WaveGrid& a) {
  const double nrm = norm(a);
  if (nrm < 1e-300) throw std::domain_error("normalize: zero field");
  const double s = 1.0 / nrm;
  for (Complex& c : a.samples()) c *= s;
}

double centroid_q(const WaveGrid& a) {
  double wsum = 0.0, xsum = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    const double w = std::norm(a[i]);
    wsum += w;
    xsum += w * a.x(i);
  }
  if (wsum < 1e-300) throw std::domain_error("centroid_q: zero field");
  return xsum / wsum;
}

double centroid_p(const WaveGrid& a) {
  std::vector<Complex> v(a.samples());
  kernels::fft_inplace(v, -1);
  const std::vector<double> k = kernels::fourier_wavenumbers(a.n(), a.dx());
  double wsum = 0.0, ksum = 0.0;
  for (int j = 0; j < a.n(); ++j) {
    const double w = std::norm(v[static_cast<std::size_t>(j)]);
    wsum += w;
    ksum += w * k[static_cast<std::size_t>(j)];
  }
  if (wsum < 1e-300) throw std::domain_error("centroid_p: zero field");
  return ksum / wsum;
}

double parity_asymmetry(const WaveGrid& a) {
  const double mid = a.x0() + 0.5 * a.n() * a.dx();
  if (std::abs(mid) > 1e-9 * a.length())
    throw std::invalid_argument("parity_asymmetry: grid not centered on x = 0");
  double diff = 0.0, total = 0.0;
  for (int i = 1; i < a.n(); ++i) {
    const Complex d = a[i] - a[a.n() - i];
    diff += std::norm(d);
    total += std::norm(a[i]);
  }
  if (total < 1e-300) throw std::domain_error("parity_asymmetry: zero field");
  return std::sqrt(diff / total);
}

namespace {

double band_fraction(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  const int band = std::max(2, n / 32);
  double total = 0.0;
  for (const Complex& c : v) total += std::norm(c);
  if (total < 1e-300) return 0.0;
  double edge = 0.0;
  for (int i = 0; i < band; ++i)
    edge += std::norm(v[static_cast<std::size_t>(i)]) +
            std::norm(v[static_cast<std::size_t>(n - 1 - i)]);
  return edge / total;
}

}  // namespace

double edge_energy_fraction(const WaveGrid& a) { return band_fraction(a.samples()); }

double spectral_edge_fraction(const WaveGrid& a) {
  std::vector<Complex> v(a.samples());
  kernels::fft_inplace(v, -1);
  // FFT order wraps the band edge into the middle of the array.
  std::vector<Complex> centered(v.size());
  const int n = a.n();
  for (int j = 0; j < n; ++j)
    centered[static_cast<std::size_t>((j + n / 2) % n)] = v[static_cast<std::size_t>(j)];
  return band_fraction(centered);
}

std::vector<double> unwrap_phases(const std::vector<double>& wrapped) {
  std::vector<double> out(wrapped.size());
  if (wrapped.empty()) return out;
  out[0] = wrapped[0];
  for (std::size_t i = 1; i < wrapped.size(); ++i) {
    double delta = wrapped[i] - wrapped[i - 1];
    while (delta > kPi) delta -= 2.0 * kPi;
    while (delta < -kPi) delta += 2.0 * kPi;
    if (std::abs(delta) > kPi / 2.0)
      throw std::domain_error("unwrap_phases: phase step exceeds pi/2; sample more finely");
    out[i] = out[i - 1] + delta;
  }
  return out;
}

}  // namespace metaplectica
