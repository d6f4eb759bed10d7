#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace metaplectica::weyl {

/** Largest generator exponent the exact engine accepts. */
inline constexpr unsigned kMaxExponent = 64;

/**
 * Exact coefficient of the form (re + i im) * sqrt(radicand) with rational
 * re, im and a nonnegative integer radicand. The radicand is kept squarefree
 * by dividing out small prime squares, which is complete for the factorial
 * radicands the engine produces (prime factors <= 101). Sums of coefficients
 * with different reduced radicands are rejected.
 */
class ExactCoeff {
 public:
  ExactCoeff() : ExactCoeff(0) {}
  ExactCoeff(long value) : ExactCoeff(mpq_class(value), mpq_class(0), mpz_class(1)) {}
  ExactCoeff(long num, unsigned long den)
      : ExactCoeff(mpq_class(num, den), mpq_class(0), mpz_class(1)) {}
  ExactCoeff(mpq_class re, mpq_class im, mpz_class radicand = mpz_class(1));

  static ExactCoeff imaginary_unit() { return ExactCoeff(mpq_class(0), mpq_class(1)); }
  static ExactCoeff sqrt_integer(unsigned long radicand) {
    return ExactCoeff(mpq_class(1), mpq_class(0), mpz_class(radicand));
  }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  const mpz_class& radicand() const { return rad_; }

  std::complex<double> to_complex() const;
  std::string str() const;

  ExactCoeff operator-() const;
  ExactCoeff conj() const;
  friend ExactCoeff operator+(const ExactCoeff& a, const ExactCoeff& b);
  friend ExactCoeff operator-(const ExactCoeff& a, const ExactCoeff& b);
  friend ExactCoeff operator*(const ExactCoeff& a, const ExactCoeff& b);
  friend ExactCoeff operator/(const ExactCoeff& a, const ExactCoeff& b);
  bool operator==(const ExactCoeff& o) const {
    return re_ == o.re_ && im_ == o.im_ && rad_ == o.rad_;
  }

 private:
  void canonicalize();

  mpq_class re_, im_;
  mpz_class rad_;
};

/**
 * Which of the two isomorphic three-generator algebras an element lives in:
 * qed uses symbols Q (raising), E (idempotent), D (lowering); boson uses
 * ad, V, a. Both satisfy [lowering, raising] = 1, idem^2 = idem,
 * lowering*idem = 0, idem*raising = 0.
 */
enum class Basis { qed, boson };

enum class GenKind { raising, idempotent, lowering };

std::string generator_symbol(Basis basis, GenKind kind);

/** Normal-form word raising^raise * idem^{0,1} * lowering^lower. */
struct Monomial {
  unsigned raise = 0;
  bool idem = false;
  unsigned lower = 0;
  auto operator<=>(const Monomial&) const = default;
};

/**
 * A finite linear combination of normal-form monomials with exact
 * coefficients. Every operation returns a normal-ordered result; the map
 * never stores a zero coefficient.
 */
class AlgebraElement {
 public:
  explicit AlgebraElement(Basis basis) : basis_(basis) {}

  static AlgebraElement zero(Basis basis) { return AlgebraElement(basis); }
  static AlgebraElement one(Basis basis);
  static AlgebraElement generator(Basis basis, GenKind kind);
  static AlgebraElement monomial(Basis basis, const Monomial& m, const ExactCoeff& c);

  Basis basis() const { return basis_; }
  const std::map<Monomial, ExactCoeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string str() const;

  AlgebraElement scaled(const ExactCoeff& c) const;

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  AlgebraElement operator*(const AlgebraElement& o) const;
  bool operator==(const AlgebraElement& o) const {
    return basis_ == o.basis_ && terms_ == o.terms_;
  }

 private:
  void add_term(const Monomial& m, const ExactCoeff& c);

  Basis basis_;
  std::map<Monomial, ExactCoeff> terms_;
};

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/** x^p by repeated multiplication; p = 0 gives the identity. */
AlgebraElement pow_element(const AlgebraElement& x, unsigned p);

/** Normal-orders an arbitrary generator word (read left to right). */
AlgebraElement normal_order(Basis basis, const std::vector<GenKind>& word);

/** Largest raise + lower over the terms; 0 for the zero element. */
unsigned max_degree(const AlgebraElement& x);

/** (m! n!)^{-1/2} Q^m E D^n: the |m><n| matrix unit in the qed basis. */
AlgebraElement matrix_unit(unsigned m, unsigned n);

/** sum_m comps[m] * matrix_unit(m, 0): an element of the column-0 left ideal. */
AlgebraElement spinor(const std::vector<ExactCoeff>& comps);

/**
 * Substitutes Q -> (ad + a)/sqrt(2), D -> (a - ad)/sqrt(2) and normal-orders
 * in the boson basis. Throws std::domain_error when the input contains the
 * idempotent, which has no image under this substitution.
 */
AlgebraElement to_boson(const AlgebraElement& x);

/**
 * Two independent evaluations of an element on the number basis
 * {|0>, ..., |n_max>}: generator_products multiplies the truncated
 * generator matrices in floating point; closed_form evaluates each
 * normal-form monomial's entries exactly and rounds once per entry.
 */
enum class FockRoute { generator_products, closed_form };

Eigen::MatrixXcd fock_generator(GenKind kind, unsigned n_max);
Eigen::MatrixXcd fock_matrix(const AlgebraElement& x, unsigned n_max,
                             FockRoute route = FockRoute::closed_form);

/**
 * Numerical comparison, at truncation n_max (even), of the dressed
 * idempotent R = exp(-Q^2/2) E exp(D^2/2) with the rank-one oblique
 * projector V built from the kernels of the truncated ladder operators.
 * lambda is the least-squares scalar with V ~ lambda R (tends to sqrt(2)),
 * residual the relative misfit. The adjoint gaps are Frobenius distances
 * from symmetry after the similarity to the boson kernel basis: V becomes
 * symmetric there while E stays visibly non-symmetric.
 */
struct EVRelationResult {
  unsigned n_max = 0;
  double lambda = 0.0;
  double residual = 0.0;
  double v_adjoint_gap = 0.0;
  double e_adjoint_gap = 0.0;
};

EVRelationResult e_v_relation_check(unsigned n_max);

/**
 * Exact check of the sl(2) triple X = Q^2/2, Y = D^2/2, H = (QD + DQ)/2:
 * [X, Y] = -H, [H, X] = 2X, [H, Y] = -2Y.
 */
bool sp2_structure_check();

/**
 * Parses sums, differences, products, scalar quotients, powers, parentheses,
 * commutator brackets [x, y], integers, i, sqrt(n) and the basis symbols
 * (Q, E, D or ad, V, a) into an element.
 */
AlgebraElement parse_expression(const std::string& text, Basis basis);

}  // namespace metaplectica::weyl
