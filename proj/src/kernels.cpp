#include "metaplectica/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace metaplectica::kernels {

namespace {

constexpr double kPi = 3.14159265358979323846;

// FFTW plan creation is not thread-safe; execution on the planned buffer is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void fft_inplace(std::vector<Complex>& v, int sign) {
  if (v.empty()) return;
  fftw_complex* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(v.size()), data, data,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft_inplace: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

std::vector<double> fourier_wavenumbers(int n, double dx) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double dk = 2.0 * kPi / (n * dx);
  for (int j = 0; j < n; ++j) {
    const int wrapped = j < (n + 1) / 2 ? j : j - n;
    k[static_cast<std::size_t>(j)] = dk * wrapped;
  }
  return k;
}

std::vector<Complex> fresnel_quadrature(const WaveGrid& in, double f, ExecPolicy policy) {
  if (f == 0.0) throw std::invalid_argument("fresnel_quadrature: f must be nonzero");
  const int n = in.n();
  const double dx = in.dx();

  // The kernel depends on x_j - x_i = (j - i) dx only; tabulating it keeps
  // the sum a plain complex multiply-accumulate.
  std::vector<Complex> table(static_cast<std::size_t>(2 * n - 1));
  const double inv2f = 1.0 / (2.0 * f);
  for (int m = -(n - 1); m <= n - 1; ++m) {
    const double u = m * dx;
    table[static_cast<std::size_t>(m + n - 1)] = std::polar(1.0, u * u * inv2f);
  }

  // Trapezoid weights folded into a copy of the input.
  std::vector<Complex> w(in.samples());
  w.front() *= 0.5;
  w.back() *= 0.5;

  const Complex pref =
      std::polar(1.0 / std::sqrt(2.0 * kPi * std::abs(f)), f > 0.0 ? -kPi / 4.0 : kPi / 4.0) * dx;

  std::vector<Complex> out(static_cast<std::size_t>(n));
  const Complex* tab = table.data();
  const Complex* src = w.data();

  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      Complex acc{0.0, 0.0};
      const Complex* row = tab + (n - 1 - i);
      for (int j = 0; j < n; ++j) acc += src[j] * row[j];
      out[static_cast<std::size_t>(i)] = pref * acc;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Complex acc{0.0, 0.0};
      const Complex* row = tab + (n - 1 - i);
      for (int j = 0; j < n; ++j) acc += src[j] * row[j];
      out[static_cast<std::size_t>(i)] = pref * acc;
    }
  }
  return out;
}

std::vector<Complex> fresnel_spectral(const WaveGrid& in, double f) {
  if (f == 0.0) throw std::invalid_argument("fresnel_spectral: f must be nonzero");
  const int n = in.n();
  std::vector<Complex> v(in.samples());
  fft_inplace(v, -1);
  const std::vector<double> k = fourier_wavenumbers(n, in.dx());
  for (int j = 0; j < n; ++j) {
    const double kj = k[static_cast<std::size_t>(j)];
    v[static_cast<std::size_t>(j)] *= std::polar(1.0, -0.5 * f * kj * kj);
  }
  fft_inplace(v, +1);
  const double scale = 1.0 / n;
  for (auto& c : v) c *= scale;
  return v;
}

}  // namespace metaplectica::kernels
