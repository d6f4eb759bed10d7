#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "metaplectica/symplectic.hpp"
#include "metaplectica/wavefield.hpp"
#include "metaplectica/wavegrid.hpp"

namespace metaplectica {

/** exp(-i coef P^2 / 2): free-flight (Fresnel) unitary, shadow [[1, coef], [0, 1]]. */
struct FresnelP2 {
  double coef;
};

/** exp(-i coef Q^2 / 2): thin-lens phase screen, shadow [[1, 0], [-coef, 1]]. */
struct QuadraticQ2 {
  double coef;
};

/** psi(x) -> d^{-1/2} psi(x/d), principal root; shadow [[1/d, 0], [0, d]]. */
struct ScalingOp {
  double d;
};

using MetaplecticFactor = std::variant<FresnelP2, QuadraticQ2, ScalingOp>;

/** Ray matrix of a single unitary factor. */
Eigen::Matrix2d factor_matrix(const MetaplecticFactor& f);

/**
 * A lifted operator: an ordered product of elementary unitary factors over
 * an r = 1 symplectic shadow. Factors are stored in operator-product order
 * (index 0 is leftmost, i.e. applied last), so the shadow equals the product
 * of the factor matrices in list order.
 */
class MetaplecticElement {
 public:
  MetaplecticElement(std::vector<MetaplecticFactor> factors, Eigen::Matrix2d shadow);

  const std::vector<MetaplecticFactor>& factors() const { return factors_; }
  const Eigen::Matrix2d& shadow() const { return shadow_; }

 private:
  std::vector<MetaplecticFactor> factors_;
  Eigen::Matrix2d shadow_;
};

/**
 * Canonical three-factor lift [FresnelP2(B/D), ScalingOp(D), QuadraticQ2(-C/D)]
 * of an r = 1 symplectic matrix with well-conditioned D.
 */
MetaplecticElement lift(const SymplecticMatrix& s);

/** One factor per optical element: Lens(f) -> QuadraticQ2(1/f), Free(d) -> FresnelP2(d). */
MetaplecticElement lift_system(const OpticalSystem& sys);

/**
 * Applies the factors right-to-left. Fresnel factors use the requested
 * propagation method; ScalingOp rescales the grid layout (d > 0) or, for
 * d < 0 on a symmetric grid, composes the periodic mirror with |d| scaling.
 */
WaveGrid apply(const MetaplecticElement& m, const WaveGrid& psi,
               PropagationMethod method = PropagationMethod::spectral,
               kernels::ExecPolicy policy = kernels::ExecPolicy::parallel);

/**
 * arg <ref, out> in (-pi, pi]. Throws std::domain_error unless the overlap
 * magnitude is at least 0.9 * |ref| * |out| (states must be proportional).
 */
double global_phase(const WaveGrid& out, const WaveGrid& ref);

/**
 * Sign comparing lift(sa * sb) with lift(sa) lift(sb) on a probe state:
 * +1 when they agree, -1 when they differ by a sign. All three lifts go
 * through the canonical decomposition, so sa, sb and sa*sb all need
 * well-conditioned D blocks.
 */
int cocycle_sign(const SymplecticMatrix& sa, const SymplecticMatrix& sb, const WaveGrid& probe,
                 PropagationMethod method = PropagationMethod::spectral);

/** Same comparison with caller-supplied lifts (mab lifts the product's shadow). */
int cocycle_sign(const MetaplecticElement& ma, const MetaplecticElement& mb,
                 const MetaplecticElement& mab, const WaveGrid& probe,
                 PropagationMethod method = PropagationMethod::spectral);

struct HolonomyResult {
  int sign = 1;        // +-1: probe returned to +-itself
  double phase = 0.0;  // arg of the return overlap
};

/**
 * Transports an even-symmetric probe around a closed optical loop
 * (system_matrix within 1e-10 of the identity) and reports the sign of the
 * returned state. Throws std::domain_error when the loop does not close and
 * std::invalid_argument for an asymmetric probe.
 */
HolonomyResult holonomy_loop(const OpticalSystem& loop, const WaveGrid& probe,
                             PropagationMethod method = PropagationMethod::spectral);

}  // namespace metaplectica
