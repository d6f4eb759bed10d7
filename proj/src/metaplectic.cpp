#include "metaplectica/metaplectic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace metaplectica {

namespace {

constexpr double kShadowTol = 1e-9;
constexpr double kLoopTol = 1e-10;
constexpr double kOverlapFloor = 0.9;  // fraction of |a||b| below which states are not proportional

WaveGrid apply_quadratic(const WaveGrid& psi, double coef) {
  std::vector<Complex> out(psi.samples());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = psi.x(i);
    out[i] *= std::polar(1.0, -0.5 * coef * x * x);
  }
  return WaveGrid(std::move(out), psi.x0(), psi.dx());
}

WaveGrid apply_scaling(const WaveGrid& psi, double d) {
  if (!std::isfinite(d) || d == 0.0) {
    throw std::invalid_argument("scaling: factor must be finite and nonzero");
  }
  const Complex pref = 1.0 / std::sqrt(Complex(d, 0.0));
  const std::size_t n = psi.n();
  std::vector<Complex> vals(psi.samples());
  double mag = d;
  if (d < 0.0) {
    // psi(x) -> psi(-x) via the periodic mirror i -> (n - i) mod n, which is
    // exact on a symmetric half-open grid away from the wrap sample.
    const double mid = psi.x0() + 0.5 * static_cast<double>(n) * psi.dx();
    if (std::abs(mid) > 1e-9 * (std::abs(psi.x0()) + 1.0)) {
      throw std::invalid_argument("scaling: negative factor needs a centered grid");
    }
    std::vector<Complex> mirrored(n);
    for (std::size_t i = 0; i < n; ++i) {
      mirrored[i] = vals[(n - i) % n];
    }
    vals = std::move(mirrored);
    mag = -d;
  }
  for (auto& v : vals) {
    v *= pref;
  }
  return WaveGrid(std::move(vals), mag * psi.x0(), mag * psi.dx());
}

Complex proportional_overlap(const WaveGrid& a, const WaveGrid& b, const char* where) {
  const Complex ov = inner_product(a, b);
  if (std::abs(ov) < kOverlapFloor * norm(a) * norm(b)) {
    throw std::domain_error(std::string(where) + ": states are not proportional");
  }
  return ov;
}

int overlap_sign(const Complex& ov, const char* where) {
  if (std::abs(ov.imag()) > 0.5 * std::abs(ov.real())) {
    throw std::domain_error(std::string(where) + ": overlap sign is ambiguous");
  }
  return ov.real() > 0.0 ? 1 : -1;
}

}  // namespace

Eigen::Matrix2d factor_matrix(const MetaplecticFactor& f) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  if (const auto* fr = std::get_if<FresnelP2>(&f)) {
    m(0, 1) = fr->coef;
  } else if (const auto* qu = std::get_if<QuadraticQ2>(&f)) {
    m(1, 0) = -qu->coef;
  } else {
    const double d = std::get<ScalingOp>(f).d;
    m(0, 0) = 1.0 / d;
    m(1, 1) = d;
  }
  return m;
}

MetaplecticElement::MetaplecticElement(std::vector<MetaplecticFactor> factors,
                                       Eigen::Matrix2d shadow)
    : factors_(std::move(factors)), shadow_(std::move(shadow)) {
  Eigen::Matrix2d prod = Eigen::Matrix2d::Identity();
  for (const auto& f : factors_) {
    prod = prod * factor_matrix(f);
  }
  if ((prod - shadow_).cwiseAbs().maxCoeff() > kShadowTol) {
    throw std::invalid_argument("MetaplecticElement: factors do not multiply to the shadow");
  }
}

MetaplecticElement lift(const SymplecticMatrix& s) {
  if (s.r() != 1) {
    throw std::invalid_argument("lift: only 2x2 shadows are supported");
  }
  if (!is_symplectic(s.matrix())) {
    throw std::invalid_argument("lift: matrix is not symplectic");
  }
  const Eigen::Matrix2d m = s.matrix();
  const double d = m(1, 1);
  if (std::abs(d) < 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw std::domain_error("lift: lower-right block is singular");
  }
  std::vector<MetaplecticFactor> factors;
  factors.push_back(FresnelP2{m(0, 1) / d});
  factors.push_back(ScalingOp{d});
  factors.push_back(QuadraticQ2{-m(1, 0) / d});
  return MetaplecticElement(std::move(factors), m);
}

MetaplecticElement lift_system(const OpticalSystem& sys) {
  const auto& els = sys.elements();
  std::vector<MetaplecticFactor> factors(els.size(), FresnelP2{0.0});
  for (std::size_t k = 0; k < els.size(); ++k) {
    MetaplecticFactor f;
    if (const auto* lens = std::get_if<Lens>(&els[k])) {
      f = QuadraticQ2{1.0 / lens->f};
    } else {
      f = FresnelP2{std::get<Free>(els[k]).d};
    }
    // element k acts k-th from the right, so its factor sits mirrored in
    // operator-product order
    factors[els.size() - 1 - k] = f;
  }
  Eigen::Matrix2d shadow = system_matrix(sys).matrix();
  return MetaplecticElement(std::move(factors), std::move(shadow));
}

WaveGrid apply(const MetaplecticElement& m, const WaveGrid& psi, PropagationMethod method,
               kernels::ExecPolicy policy) {
  WaveGrid state = psi;
  const auto& factors = m.factors();
  for (std::size_t k = factors.size(); k-- > 0;) {
    const auto& f = factors[k];
    if (const auto* fr = std::get_if<FresnelP2>(&f)) {
      if (fr->coef != 0.0) {
        state = fresnel_propagate(state, fr->coef, method, policy);
      }
    } else if (const auto* qu = std::get_if<QuadraticQ2>(&f)) {
      if (qu->coef != 0.0) {
        state = apply_quadratic(state, qu->coef);
      }
    } else {
      const double d = std::get<ScalingOp>(f).d;
      if (d != 1.0) {
        state = apply_scaling(state, d);
      }
    }
  }
  return state;
}

double global_phase(const WaveGrid& out, const WaveGrid& ref) {
  return std::arg(proportional_overlap(ref, out, "global_phase"));
}

int cocycle_sign(const MetaplecticElement& ma, const MetaplecticElement& mb,
                 const MetaplecticElement& mab, const WaveGrid& probe, PropagationMethod method) {
  const WaveGrid separate = apply(ma, apply(mb, probe, method), method);
  const WaveGrid joint = apply(mab, probe, method);
  const Complex ov = proportional_overlap(separate, joint, "cocycle_sign");
  return overlap_sign(ov, "cocycle_sign");
}

int cocycle_sign(const SymplecticMatrix& sa, const SymplecticMatrix& sb, const WaveGrid& probe,
                 PropagationMethod method) {
  const SymplecticMatrix sab(sa.matrix() * sb.matrix());
  return cocycle_sign(lift(sa), lift(sb), lift(sab), probe, method);
}

HolonomyResult holonomy_loop(const OpticalSystem& loop, const WaveGrid& probe,
                             PropagationMethod method) {
  const Eigen::MatrixXd sm = system_matrix(loop).matrix();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(sm.rows(), sm.cols());
  if ((sm - eye).cwiseAbs().maxCoeff() > kLoopTol) {
    throw std::domain_error("holonomy_loop: optical loop does not close");
  }
  if (parity_asymmetry(probe) > 1e-6) {
    throw std::invalid_argument("holonomy_loop: probe must be even-symmetric");
  }
  const WaveGrid out = apply(lift_system(loop), probe, method);
  const Complex ov = proportional_overlap(probe, out, "holonomy_loop");
  HolonomyResult res;
  res.sign = overlap_sign(ov, "holonomy_loop");
  res.phase = std::arg(ov);
  return res;
}

}  // namespace metaplectica
