#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <utility>

namespace metaplectica::pauli {

/** Blade bitmasks: bit 0 = e1, bit 1 = e2, bit 2 = e3. */
inline constexpr unsigned kScalar = 0;
inline constexpr unsigned kE1 = 1;
inline constexpr unsigned kE2 = 2;
inline constexpr unsigned kE3 = 4;
inline constexpr unsigned kE12 = 3;
inline constexpr unsigned kE13 = 5;
inline constexpr unsigned kE23 = 6;
inline constexpr unsigned kE123 = 7;

/**
 * Element of the real geometric algebra over three Euclidean directions,
 * stored as eight blade coefficients indexed by bitmask. e_i e_i = 1 and
 * distinct directions anticommute.
 */
class Multivector {
 public:
  Multivector() { comps_.fill(0.0); }

  static Multivector scalar(double v);
  static Multivector basis_vector(int i);  // i in {1, 2, 3}
  static Multivector basis_blade(unsigned mask);

  double coeff(unsigned mask) const { return comps_.at(mask); }
  double& coeff(unsigned mask) { return comps_.at(mask); }
  double scalar_part() const { return comps_[0]; }

  /** Largest |coefficient| outside the listed grade. */
  double off_grade(int grade) const;
  double max_abs() const;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(double s, const Multivector& m);
  bool operator==(const Multivector& o) const { return comps_ == o.comps_; }

  std::string str() const;

 private:
  std::array<double, 8> comps_;
};

/** Full geometric product. */
Multivector operator*(const Multivector& a, const Multivector& b);

/** Reverses every blade: grades 2 and 3 flip sign. */
Multivector reversion(const Multivector& m);

/** Scalar part of reversion(g) * g; equals 1 for a rotor. */
double versor_norm(const Multivector& g);

/**
 * cos(angle/2) + sin(angle/2) * plane for a unit bivector plane
 * (plane * plane = -1). Exact integer multiples of pi take a table path, so
 * a full turn gives exactly -1 and a double turn exactly +1.
 */
Multivector rotor(const Multivector& plane, double angle);

/** reversion(g) v g for a grade-1 v; a rotation of the direction vector. */
Multivector rotate_vector(const Multivector& g, const Multivector& v);

/** Columns are the rotated basis directions; orthogonal with determinant 1. */
Eigen::Matrix3d rotation_matrix(const Multivector& g);

/** (1 + e3)/2, idempotent exactly in floating point. */
Multivector spin_up_projector();

/**
 * (g0 + g1 e23 + g2 e13 + g3 e12) * (1 + e3)/2 with g0 = Re psi1,
 * g1 = Im psi2, g2 = Re psi2, g3 = Im psi1: the two-component complex
 * spinor written as an element of the left ideal of the projector.
 */
Multivector embed_spinor(std::complex<double> psi1, std::complex<double> psi2);

/** Inverse of embed_spinor; requires phi * (1+e3)/2 = phi. */
std::pair<std::complex<double>, std::complex<double>> extract_spinor(const Multivector& phi);

/** reversion(g) * psi for psi in the projector's left ideal. */
Multivector rotate_spinor(const Multivector& g, const Multivector& psi);

/**
 * arm1 + rotate_spinor(rotor(plane, angle), arm2): the interference of a
 * held arm with an arm carried around by a rotor. At angle 2*pi the second
 * arm returns with a flipped sign.
 */
Multivector recombine(const Multivector& arm1, const Multivector& arm2, const Multivector& plane,
                      double angle);

}  // namespace metaplectica::pauli
