#include "metaplectica/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace metaplectica::pauli {

namespace {

/* Swaps needed to merge two index lists in canonical order. */
int reorder_sign(unsigned a, unsigned b) {
  unsigned x = a >> 1;
  int sum = 0;
  while (x != 0) {
    sum += std::popcount(x & b);
    x >>= 1;
  }
  return (sum % 2 == 0) ? 1 : -1;
}

const char* blade_name(unsigned mask) {
  switch (mask) {
    case kScalar:
      return "1";
    case kE1:
      return "e1";
    case kE2:
      return "e2";
    case kE3:
      return "e3";
    case kE12:
      return "e12";
    case kE13:
      return "e13";
    case kE23:
      return "e23";
    default:
      return "e123";
  }
}

constexpr unsigned kPrintOrder[8] = {kScalar, kE1, kE2, kE3, kE12, kE13, kE23, kE123};

void require_grade(const Multivector& m, int grade, const char* what) {
  if (m.off_grade(grade) > 1e-12 * std::max(1.0, m.max_abs())) {
    throw std::invalid_argument(std::string(what) + ": unexpected blade grades");
  }
}

void require_in_ideal(const Multivector& psi, const char* what) {
  const Multivector residual = psi * spin_up_projector() - psi;
  if (residual.max_abs() > 1e-9 * std::max(1.0, psi.max_abs())) {
    throw std::invalid_argument(std::string(what) +
                                ": element is not in the projector's left ideal");
  }
}

}  // namespace

Multivector Multivector::scalar(double v) {
  Multivector m;
  m.coeff(kScalar) = v;
  return m;
}

Multivector Multivector::basis_vector(int i) {
  if (i < 1 || i > 3) {
    throw std::invalid_argument("basis_vector: index must be 1, 2 or 3");
  }
  return basis_blade(1u << (i - 1));
}

Multivector Multivector::basis_blade(unsigned mask) {
  if (mask > 7) {
    throw std::invalid_argument("basis_blade: mask must be below 8");
  }
  Multivector m;
  m.coeff(mask) = 1.0;
  return m;
}

double Multivector::off_grade(int grade) const {
  double worst = 0.0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    if (std::popcount(mask) != grade) {
      worst = std::max(worst, std::abs(comps_[mask]));
    }
  }
  return worst;
}

double Multivector::max_abs() const {
  double worst = 0.0;
  for (double v : comps_) {
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

Multivector Multivector::operator-() const { return -1.0 * *this; }

Multivector& Multivector::operator+=(const Multivector& o) {
  for (unsigned mask = 0; mask < 8; ++mask) {
    comps_[mask] += o.comps_[mask];
  }
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  for (unsigned mask = 0; mask < 8; ++mask) {
    comps_[mask] -= o.comps_[mask];
  }
  return *this;
}

Multivector operator*(double s, const Multivector& m) {
  Multivector out = m;
  for (unsigned mask = 0; mask < 8; ++mask) {
    out.coeff(mask) *= s;
  }
  return out;
}

std::string Multivector::str() const {
  std::string out;
  for (unsigned mask : kPrintOrder) {
    const double v = comps_[mask];
    if (v == 0.0) {
      continue;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", std::abs(v));
    std::string term = buf;
    if (mask != kScalar) {
      term = (term == "1") ? blade_name(mask) : term + "*" + blade_name(mask);
    }
    if (out.empty()) {
      out = (v < 0 ? "-" : "") + term;
    } else {
      out += (v < 0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  Multivector out;
  for (unsigned ma = 0; ma < 8; ++ma) {
    const double ca = a.coeff(ma);
    if (ca == 0.0) {
      continue;
    }
    for (unsigned mb = 0; mb < 8; ++mb) {
      const double cb = b.coeff(mb);
      if (cb == 0.0) {
        continue;
      }
      out.coeff(ma ^ mb) += reorder_sign(ma, mb) * ca * cb;
    }
  }
  return out;
}

Multivector reversion(const Multivector& m) {
  Multivector out = m;
  for (unsigned mask = 0; mask < 8; ++mask) {
    const int grade = std::popcount(mask);
    if (grade == 2 || grade == 3) {
      out.coeff(mask) = -out.coeff(mask);
    }
  }
  return out;
}

double versor_norm(const Multivector& g) { return (reversion(g) * g).scalar_part(); }

Multivector rotor(const Multivector& plane, double angle) {
  require_grade(plane, 2, "rotor");
  const Multivector sq = plane * plane;
  if (std::abs(sq.scalar_part() + 1.0) > 1e-9 || sq.off_grade(0) > 1e-9) {
    throw std::invalid_argument("rotor: plane must be a unit bivector");
  }
  double c = 0.0;
  double s = 0.0;
  const double t = angle / M_PI;
  if (std::nearbyint(t) == t && std::abs(t) < 1e9) {
    // integer multiple of pi: half-angle cos/sin are exactly 0 or +-1
    const long k = static_cast<long>(std::nearbyint(t));
    static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
    const long r = ((k % 4) + 4) % 4;
    c = kCos[r];
    s = kSin[r];
  } else {
    c = std::cos(0.5 * angle);
    s = std::sin(0.5 * angle);
  }
  return Multivector::scalar(c) + s * plane;
}

Multivector rotate_vector(const Multivector& g, const Multivector& v) {
  require_grade(v, 1, "rotate_vector");
  return reversion(g) * v * g;
}

Eigen::Matrix3d rotation_matrix(const Multivector& g) {
  Eigen::Matrix3d m;
  for (int i = 1; i <= 3; ++i) {
    const Multivector col = rotate_vector(g, Multivector::basis_vector(i));
    for (int j = 1; j <= 3; ++j) {
      m(j - 1, i - 1) = col.coeff(1u << (j - 1));
    }
  }
  return m;
}

Multivector spin_up_projector() {
  Multivector m;
  m.coeff(kScalar) = 0.5;
  m.coeff(kE3) = 0.5;
  return m;
}

Multivector embed_spinor(std::complex<double> psi1, std::complex<double> psi2) {
  Multivector even;
  even.coeff(kScalar) = psi1.real();
  even.coeff(kE23) = psi2.imag();
  even.coeff(kE13) = psi2.real();
  even.coeff(kE12) = psi1.imag();
  return even * spin_up_projector();
}

std::pair<std::complex<double>, std::complex<double>> extract_spinor(const Multivector& phi) {
  require_in_ideal(phi, "extract_spinor");
  const std::complex<double> psi1(2.0 * phi.coeff(kScalar), 2.0 * phi.coeff(kE12));
  const std::complex<double> psi2(2.0 * phi.coeff(kE13), 2.0 * phi.coeff(kE23));
  return {psi1, psi2};
}

Multivector rotate_spinor(const Multivector& g, const Multivector& psi) {
  require_in_ideal(psi, "rotate_spinor");
  return reversion(g) * psi;
}

Multivector recombine(const Multivector& arm1, const Multivector& arm2, const Multivector& plane,
                      double angle) {
  return arm1 + rotate_spinor(rotor(plane, angle), arm2);
}

}  // namespace metaplectica::pauli
