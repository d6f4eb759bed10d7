#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "metaplectica/rational.hpp"

namespace metaplectica {

/**
 * Dense 2r x 2r real matrix acting on phase-space column vectors
 * (q_1..q_r, p_1..p_r), partitioned into r x r blocks [[A, B], [C, D]].
 */
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2 || m_.rows() % 2 != 0)
      throw std::invalid_argument("SymplecticMatrix: dimension must be even and >= 2");
  }

  static SymplecticMatrix identity(int r) {
    return SymplecticMatrix(Eigen::MatrixXd::Identity(2 * r, 2 * r));
  }

  int r() const { return static_cast<int>(m_.rows()) / 2; }
  const Eigen::MatrixXd& matrix() const { return m_; }

  Eigen::Block<const Eigen::MatrixXd> A() const { return m_.topLeftCorner(r(), r()); }
  Eigen::Block<const Eigen::MatrixXd> B() const { return m_.topRightCorner(r(), r()); }
  Eigen::Block<const Eigen::MatrixXd> C() const { return m_.bottomLeftCorner(r(), r()); }
  Eigen::Block<const Eigen::MatrixXd> D() const { return m_.bottomRightCorner(r(), r()); }

 private:
  Eigen::MatrixXd m_;
};

struct RayVector {
  double q = 0.0;
  double p = 0.0;
};

/** Thin lens of focal length f (f != 0). */
struct Lens {
  double f;
};

/** Free flight over distance d (d >= 0). */
struct Free {
  double d;
};

using OpticalElement = std::variant<Lens, Free>;

/** Ordered, nonempty element list; earlier elements act on the ray first. */
class OpticalSystem {
 public:
  explicit OpticalSystem(std::vector<OpticalElement> elements);

  const std::vector<OpticalElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /** Concatenation: this system followed by `next`. */
  OpticalSystem then(const OpticalSystem& next) const;
  /** The system repeated `count` times (count >= 1). */
  OpticalSystem repeated(int count) const;

 private:
  std::vector<OpticalElement> elements_;
};

/** Thin lens flanked by focal-length free flights: [Free(f), Lens(f), Free(f)]. */
OpticalSystem lens_system(double f);

/** Block-condition test: A D^T - B C^T = I plus the four symmetry conditions. */
bool is_symplectic(const Eigen::MatrixXd& m, double tol = 1e-10);

/** 2x2 ray matrix of a single element. */
SymplecticMatrix elementary_matrix(const OpticalElement& e);

/** Matrix product; dimensions must agree. */
SymplecticMatrix compose(const SymplecticMatrix& a, const SymplecticMatrix& b);

/**
 * Product of the element matrices with the last element leftmost, i.e. the
 * matrix that carries an input ray through the whole system.
 */
SymplecticMatrix system_matrix(const OpticalSystem& sys);

/**
 * Exact-rational system matrix. Available when every element parameter is
 * representable as a small rational (e.g. f = 1, d = 3/2); empty otherwise.
 */
std::optional<Mat2Q> system_matrix_exact(const OpticalSystem& sys);

/** Ray snapshots: r0, then the ray after each element (size() + 1 entries). */
std::vector<RayVector> trace_ray(const OpticalSystem& sys, const RayVector& r0);

/**
 * Accumulated signed phase-space winding angle of a snapshot trajectory,
 * summed from atan2 increments wrapped to (-pi, pi). Positive increments are
 * counter-clockwise in the (q, p) plane; a focusing pass with f > 0 winds
 * clockwise (negative). Throws std::domain_error when a snapshot sits at the
 * origin or two consecutive snapshots are (numerically) antipodal.
 */
double phase_space_angle(const std::vector<RayVector>& snapshots);

/** S = S1 * S2 * S3 with S1 upper-triangular, S2 block-diagonal, S3 lower-triangular. */
struct CanonicalFactors {
  Eigen::MatrixXd s1;  // [[I, B D^-1], [0, I]]
  Eigen::MatrixXd s2;  // [[D^-T, 0], [0, D]]
  Eigen::MatrixXd s3;  // [[I, 0], [D^-1 C, I]]
};

/**
 * Three-factor decomposition of a symplectic matrix with invertible D block.
 * Throws std::domain_error when cond(D) exceeds cond_limit.
 */
CanonicalFactors canonical_decompose(const SymplecticMatrix& s, double cond_limit = 1e8);

}  // namespace metaplectica
