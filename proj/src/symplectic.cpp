#include "metaplectica/symplectic.hpp"

#include <cmath>

namespace metaplectica {

namespace {

void validate_element(const OpticalElement& e) {
  if (const Lens* lens = std::get_if<Lens>(&e)) {
    if (lens->f == 0.0 || !std::isfinite(lens->f))
      throw std::invalid_argument("Lens: focal length must be finite and nonzero");
  } else {
    const Free& fr = std::get<Free>(e);
    if (fr.d < 0.0 || !std::isfinite(fr.d))
      throw std::invalid_argument("Free: distance must be finite and >= 0");
  }
}

std::optional<Mat2Q> element_matrix_exact(const OpticalElement& e) {
  if (const Lens* lens = std::get_if<Lens>(&e)) {
    const auto f = Rational::from_double(lens->f);
    if (!f || f->is_zero()) return std::nullopt;
    return Mat2Q{Rational(1), Rational(0), -(Rational(1) / *f), Rational(1)};
  }
  const auto d = Rational::from_double(std::get<Free>(e).d);
  if (!d) return std::nullopt;
  return Mat2Q{Rational(1), *d, Rational(0), Rational(1)};
}

}  // namespace

OpticalSystem::OpticalSystem(std::vector<OpticalElement> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("OpticalSystem: empty element list");
  for (const auto& e : elements_) validate_element(e);
}

OpticalSystem OpticalSystem::then(const OpticalSystem& next) const {
  std::vector<OpticalElement> all = elements_;
  all.insert(all.end(), next.elements_.begin(), next.elements_.end());
  return OpticalSystem(std::move(all));
}

OpticalSystem OpticalSystem::repeated(int count) const {
  if (count < 1) throw std::invalid_argument("OpticalSystem::repeated: count must be >= 1");
  std::vector<OpticalElement> all;
  all.reserve(elements_.size() * static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    all.insert(all.end(), elements_.begin(), elements_.end());
  return OpticalSystem(std::move(all));
}

OpticalSystem lens_system(double f) {
  return OpticalSystem({Free{f}, Lens{f}, Free{f}});
}

bool is_symplectic(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0) return false;
  const int r = static_cast<int>(m.rows()) / 2;
  const Eigen::MatrixXd a = m.topLeftCorner(r, r);
  const Eigen::MatrixXd b = m.topRightCorner(r, r);
  const Eigen::MatrixXd c = m.bottomLeftCorner(r, r);
  const Eigen::MatrixXd d = m.bottomRightCorner(r, r);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(r, r);
  const auto near_zero = [tol](const Eigen::MatrixXd& x) {
    return x.cwiseAbs().maxCoeff() <= tol;
  };
  return near_zero(a * d.transpose() - b * c.transpose() - id) &&
         near_zero(a.transpose() * c - c.transpose() * a) &&
         near_zero(a * b.transpose() - b * a.transpose()) &&
         near_zero(b.transpose() * d - d.transpose() * b) &&
         near_zero(c * d.transpose() - d * c.transpose());
}

SymplecticMatrix elementary_matrix(const OpticalElement& e) {
  validate_element(e);
  Eigen::MatrixXd m(2, 2);
  if (const Lens* lens = std::get_if<Lens>(&e)) {
    m << 1.0, 0.0, -1.0 / lens->f, 1.0;
  } else {
    m << 1.0, std::get<Free>(e).d, 0.0, 1.0;
  }
  return SymplecticMatrix(m);
}

SymplecticMatrix compose(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  if (a.r() != b.r())
    throw std::invalid_argument("compose: dimension mismatch");
  return SymplecticMatrix(a.matrix() * b.matrix());
}

SymplecticMatrix system_matrix(const OpticalSystem& sys) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  for (const auto& e : sys.elements())
    m = elementary_matrix(e).matrix() * m;
  return SymplecticMatrix(m);
}

std::optional<Mat2Q> system_matrix_exact(const OpticalSystem& sys) {
  Mat2Q m = Mat2Q::identity();
  for (const auto& e : sys.elements()) {
    const auto em = element_matrix_exact(e);
    if (!em) return std::nullopt;
    m = *em * m;
  }
  return m;
}

std::vector<RayVector> trace_ray(const OpticalSystem& sys, const RayVector& r0) {
  std::vector<RayVector> out;
  out.reserve(sys.size() + 1);
  out.push_back(r0);
  RayVector r = r0;
  for (const auto& e : sys.elements()) {
    if (const Lens* lens = std::get_if<Lens>(&e)) {
      r = RayVector{r.q, r.p - r.q / lens->f};
    } else {
      r = RayVector{r.q + std::get<Free>(e).d * r.p, r.p};
    }
    out.push_back(r);
  }
  return out;
}

double phase_space_angle(const std::vector<RayVector>& snapshots) {
  if (snapshots.size() < 2)
    throw std::invalid_argument("phase_space_angle: need at least two snapshots");
  constexpr double kPi = 3.14159265358979323846;
  double accum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const RayVector& v = snapshots[i];
    if (std::hypot(v.q, v.p) == 0.0)
      throw std::domain_error("phase_space_angle: snapshot at phase-space origin");
    const double theta = std::atan2(v.p, v.q);
    if (i > 0) {
      double delta = theta - prev;
      while (delta > kPi) delta -= 2.0 * kPi;
      while (delta < -kPi) delta += 2.0 * kPi;
      if (std::abs(delta) > kPi - 1e-9)
        throw std::domain_error("phase_space_angle: consecutive snapshots are antipodal");
      accum += delta;
    }
    prev = theta;
  }
  return accum;
}

CanonicalFactors canonical_decompose(const SymplecticMatrix& s, double cond_limit) {
  const int r = s.r();
  const Eigen::MatrixXd d = s.D();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin == 0.0 || smax / smin > cond_limit)
    throw std::domain_error("canonical_decompose: D block singular or ill-conditioned");

  const Eigen::MatrixXd dinv = d.partialPivLu().solve(Eigen::MatrixXd::Identity(r, r));
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(r, r);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(r, r);

  CanonicalFactors out;
  out.s1.resize(2 * r, 2 * r);
  out.s1 << id, s.B() * dinv, zero, id;
  out.s2.resize(2 * r, 2 * r);
  out.s2 << dinv.transpose(), zero, zero, d;
  out.s3.resize(2 * r, 2 * r);
  out.s3 << id, zero, dinv * s.C(), id;
  return out;
}

}  // namespace metaplectica
