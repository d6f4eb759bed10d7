#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace metaplectica {

using Complex = std::complex<double>;

/**
 * Uniformly sampled complex field on the half-open interval
 * [x0, x0 + n*dx). Sample i sits at x0 + i*dx; for the symmetric grids
 * used throughout ([-L, L) with even n), x = 0 is exactly sample n/2 and
 * the mirror of sample i is sample n - i.
 *
 * Invariants: n >= 16 and even, dx > 0.
 */
class WaveGrid {
 public:
  WaveGrid(int n, double x_min, double x_max);
  WaveGrid(std::vector<Complex> samples, double x0, double dx);

  int n() const { return static_cast<int>(psi_.size()); }
  double x0() const { return x0_; }
  double dx() const { return dx_; }
  double x(int i) const { return x0_ + i * dx_; }
  double length() const { return n() * dx_; }

  std::vector<Complex>& samples() { return psi_; }
  const std::vector<Complex>& samples() const { return psi_; }
  Complex& operator[](int i) { return psi_[i]; }
  const Complex& operator[](int i) const { return psi_[i]; }

  bool same_layout(const WaveGrid& o, double tol = 1e-12) const;

 private:
  std::vector<Complex> psi_;
  double x0_;
  double dx_;
};

/** Normalized Gaussian pi^-1/4 w^-1/2 exp(-(x-c)^2/(2 w^2) + i k0 x). */
WaveGrid gaussian_probe(const WaveGrid& layout, double center = 0.0, double width = 1.0,
                        double k0 = 0.0);

/** Normalized Hermite-Gaussian H_m((x)/w) exp(-x^2/(2 w^2)), m >= 0. */
WaveGrid hermite_probe(const WaveGrid& layout, int m, double width = 1.0);

/** sum conj(a_i) b_i dx; layouts must match. */
Complex inner_product(const WaveGrid& a, const WaveGrid& b);

double norm(const WaveGrid& a);

/** Scales to unit norm; throws on (near-)zero field. */
void normalize(WaveGrid& a);

/** Position centroid <x> weighted by |psi|^2. */
double centroid_q(const WaveGrid& a);

/** Momentum centroid <k> computed from the FFT power spectrum. */
double centroid_p(const WaveGrid& a);

/** Relative L2 deviation between psi(x) and psi(-x); requires a symmetric grid. */
double parity_asymmetry(const WaveGrid& a);

/** Fraction of total |psi|^2 inside the outer band (n/32 samples per side). */
double edge_energy_fraction(const WaveGrid& a);

/** Same measure in the frequency domain (outer band of the FFT spectrum). */
double spectral_edge_fraction(const WaveGrid& a);

/**
 * Nearest-branch continuation of a sampled phase sequence. Throws
 * std::domain_error when a wrapped increment exceeds pi/2 (sampling too
 * coarse to unwrap reliably).
 */
std::vector<double> unwrap_phases(const std::vector<double>& wrapped);

}  // namespace metaplectica
