#include "metaplectica/weyl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace metaplectica::weyl {

namespace {

// enough to fully reduce the factorial radicands allowed by kMaxExponent
constexpr std::array<unsigned, 26> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                   67, 71, 73, 79, 83, 89, 97, 101};

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

ExactCoeff rational_mpz(const mpz_class& v) { return ExactCoeff(mpq_class(v), mpq_class(0)); }

Monomial make_monomial(unsigned long h, bool e, unsigned long k) {
  if (h > kMaxExponent || k > kMaxExponent) {
    throw std::length_error("AlgebraElement: generator exponent exceeds the supported degree");
  }
  return Monomial{static_cast<unsigned>(h), e, static_cast<unsigned>(k)};
}

double q_to_d(const mpq_class& q) {
  signed long en = 0;
  signed long ed = 0;
  const double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  if (dn == 0.0) {
    return 0.0;
  }
  const double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  return std::ldexp(dn / dd, static_cast<int>(en - ed));
}

double sqrt_z_to_d(const mpz_class& z) {
  signed long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  if ((e & 1L) != 0) {
    m *= 2.0;
    e -= 1;
  }
  return std::ldexp(std::sqrt(m), static_cast<int>(e / 2));
}

std::string monomial_str(Basis basis, const Monomial& m) {
  std::string out;
  const auto append = [&out](const std::string& sym, unsigned p) {
    if (p == 0) {
      return;
    }
    if (!out.empty()) {
      out += "*";
    }
    out += sym;
    if (p > 1) {
      out += "^" + std::to_string(p);
    }
  };
  append(generator_symbol(basis, GenKind::raising), m.raise);
  append(generator_symbol(basis, GenKind::idempotent), m.idem ? 1 : 0);
  append(generator_symbol(basis, GenKind::lowering), m.lower);
  return out;
}

}  // namespace

ExactCoeff::ExactCoeff(mpq_class re, mpq_class im, mpz_class radicand)
    : re_(std::move(re)), im_(std::move(im)), rad_(std::move(radicand)) {
  canonicalize();
}

void ExactCoeff::canonicalize() {
  if (rad_ < 0) {
    throw std::domain_error("ExactCoeff: radicand must be nonnegative");
  }
  if (rad_ == 0) {
    re_ = 0;
    im_ = 0;
  }
  if (re_ == 0 && im_ == 0) {
    rad_ = 1;
    return;
  }
  mpz_class mult = 1;
  for (unsigned p : kSmallPrimes) {
    const unsigned long pp = static_cast<unsigned long>(p) * p;
    if (rad_ < pp) {
      break;
    }
    while (mpz_divisible_ui_p(rad_.get_mpz_t(), pp) != 0) {
      rad_ /= pp;
      mult *= p;
    }
  }
  if (rad_ != 1 && mpz_perfect_square_p(rad_.get_mpz_t()) != 0) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), rad_.get_mpz_t());
    mult *= root;
    rad_ = 1;
  }
  if (mult != 1) {
    const mpq_class m(mult);
    re_ *= m;
    im_ *= m;
  }
}

std::complex<double> ExactCoeff::to_complex() const {
  const double s = sqrt_z_to_d(rad_);
  return {q_to_d(re_) * s, q_to_d(im_) * s};
}

std::string ExactCoeff::str() const {
  std::string z;
  if (im_ == 0) {
    z = re_.get_str();
  } else if (re_ == 0) {
    if (im_ == 1) {
      z = "i";
    } else if (im_ == -1) {
      z = "-i";
    } else {
      z = im_.get_str() + "*i";
    }
  } else {
    const mpq_class ia = im_ < 0 ? mpq_class(-im_) : im_;
    z = "(" + re_.get_str() + (im_ < 0 ? "-" : "+") + (ia == 1 ? "i" : ia.get_str() + "*i") + ")";
  }
  if (rad_ == 1) {
    return z;
  }
  const std::string rs = "sqrt(" + rad_.get_str() + ")";
  if (z == "1") {
    return rs;
  }
  if (z == "-1") {
    return "-" + rs;
  }
  if (z.find('/') != std::string::npos && z.front() != '(') {
    z = "(" + z + ")";
  }
  return z + "*" + rs;
}

ExactCoeff ExactCoeff::operator-() const { return ExactCoeff(-re_, -im_, rad_); }

ExactCoeff ExactCoeff::conj() const { return ExactCoeff(re_, -im_, rad_); }

ExactCoeff operator+(const ExactCoeff& a, const ExactCoeff& b) {
  if (a.is_zero()) {
    return b;
  }
  if (b.is_zero()) {
    return a;
  }
  if (a.rad_ != b.rad_) {
    throw std::domain_error("ExactCoeff: sum of mixed radicands is not representable");
  }
  return ExactCoeff(a.re_ + b.re_, a.im_ + b.im_, a.rad_);
}

ExactCoeff operator-(const ExactCoeff& a, const ExactCoeff& b) { return a + (-b); }

ExactCoeff operator*(const ExactCoeff& a, const ExactCoeff& b) {
  return ExactCoeff(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_,
                    a.rad_ * b.rad_);
}

ExactCoeff operator/(const ExactCoeff& a, const ExactCoeff& b) {
  if (b.is_zero()) {
    throw std::domain_error("ExactCoeff: division by zero");
  }
  const mpq_class scale = (b.re_ * b.re_ + b.im_ * b.im_) * mpq_class(b.rad_);
  const ExactCoeff inv(b.re_ / scale, -b.im_ / scale, b.rad_);
  return a * inv;
}

std::string generator_symbol(Basis basis, GenKind kind) {
  if (basis == Basis::qed) {
    switch (kind) {
      case GenKind::raising:
        return "Q";
      case GenKind::idempotent:
        return "E";
      case GenKind::lowering:
        return "D";
    }
  }
  switch (kind) {
    case GenKind::raising:
      return "ad";
    case GenKind::idempotent:
      return "V";
    case GenKind::lowering:
      return "a";
  }
  return {};
}

AlgebraElement AlgebraElement::one(Basis basis) {
  return monomial(basis, Monomial{}, ExactCoeff(1));
}

AlgebraElement AlgebraElement::generator(Basis basis, GenKind kind) {
  Monomial m;
  switch (kind) {
    case GenKind::raising:
      m.raise = 1;
      break;
    case GenKind::idempotent:
      m.idem = true;
      break;
    case GenKind::lowering:
      m.lower = 1;
      break;
  }
  return monomial(basis, m, ExactCoeff(1));
}

AlgebraElement AlgebraElement::monomial(Basis basis, const Monomial& m, const ExactCoeff& c) {
  AlgebraElement out(basis);
  out.add_term(m, c);
  return out;
}

std::string AlgebraElement::str() const {
  if (terms_.empty()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    ExactCoeff c = it->second;
    bool neg = false;
    if ((c.im() == 0 && c.re() < 0) || (c.re() == 0 && c.im() < 0)) {
      neg = true;
      c = -c;
    }
    const std::string cs = c.str();
    const std::string ms = monomial_str(basis_, it->first);
    std::string body;
    if (ms.empty()) {
      body = cs;
    } else if (cs == "1") {
      body = ms;
    } else {
      body = cs + "*" + ms;
    }
    if (first) {
      out = (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(const ExactCoeff& c) const {
  AlgebraElement out(basis_);
  if (c.is_zero()) {
    return out;
  }
  for (const auto& [m, v] : terms_) {
    out.add_term(m, v * c);
  }
  return out;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(ExactCoeff(-1)); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (basis_ != o.basis_) {
    throw std::invalid_argument("AlgebraElement: mixed bases");
  }
  for (const auto& [m, v] : o.terms_) {
    add_term(m, v);
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (basis_ != o.basis_) {
    throw std::invalid_argument("AlgebraElement: mixed bases");
  }
  for (const auto& [m, v] : o.terms_) {
    add_term(m, -v);
  }
  return *this;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  if (basis_ != o.basis_) {
    throw std::invalid_argument("AlgebraElement: mixed bases");
  }
  AlgebraElement out(basis_);
  for (const auto& [mx, cx] : terms_) {
    for (const auto& [my, cy] : o.terms_) {
      const ExactCoeff c = cx * cy;
      const unsigned long h1 = mx.raise;
      const unsigned long k1 = mx.lower;
      const unsigned long h2 = my.raise;
      const unsigned long k2 = my.lower;
      if (!mx.idem && !my.idem) {
        // D^{k1} Q^{h2} = sum_j j! C(k1,j) C(h2,j) Q^{h2-j} D^{k1-j}
        const unsigned long jmax = std::min(k1, h2);
        for (unsigned long j = 0; j <= jmax; ++j) {
          const unsigned uj = static_cast<unsigned>(j);
          const mpz_class f = factorial(uj) * binomial(static_cast<unsigned>(k1), uj) *
                              binomial(static_cast<unsigned>(h2), uj);
          out.add_term(make_monomial(h1 + h2 - j, false, k1 + k2 - j), c * rational_mpz(f));
        }
      } else if (!mx.idem && my.idem) {
        // only the fully contracted j = k1 term survives against the idempotent
        if (k1 <= h2) {
          const mpz_class f = factorial(static_cast<unsigned>(k1)) *
                              binomial(static_cast<unsigned>(h2), static_cast<unsigned>(k1));
          out.add_term(make_monomial(h1 + h2 - k1, true, k2), c * rational_mpz(f));
        }
      } else if (mx.idem && !my.idem) {
        if (h2 <= k1) {
          const mpz_class f = factorial(static_cast<unsigned>(h2)) *
                              binomial(static_cast<unsigned>(k1), static_cast<unsigned>(h2));
          out.add_term(make_monomial(h1, true, k1 - h2 + k2), c * rational_mpz(f));
        }
      } else {
        // idem D^{k1} Q^{h2} idem = h2! [k1 = h2] idem
        if (k1 == h2) {
          out.add_term(make_monomial(h1, true, k2),
                       c * rational_mpz(factorial(static_cast<unsigned>(h2))));
        }
      }
    }
  }
  return out;
}

void AlgebraElement::add_term(const Monomial& m, const ExactCoeff& c) {
  if (c.is_zero()) {
    return;
  }
  const auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  const ExactCoeff s = it->second + c;
  if (s.is_zero()) {
    terms_.erase(it);
  } else {
    it->second = s;
  }
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return a * b - b * a;
}

AlgebraElement pow_element(const AlgebraElement& x, unsigned p) {
  AlgebraElement acc = AlgebraElement::one(x.basis());
  for (unsigned j = 0; j < p; ++j) {
    acc = acc * x;
  }
  return acc;
}

AlgebraElement normal_order(Basis basis, const std::vector<GenKind>& word) {
  AlgebraElement acc = AlgebraElement::one(basis);
  for (GenKind g : word) {
    acc = acc * AlgebraElement::generator(basis, g);
  }
  return acc;
}

unsigned max_degree(const AlgebraElement& x) {
  unsigned deg = 0;
  for (const auto& [m, c] : x.terms()) {
    deg = std::max(deg, m.raise + m.lower);
  }
  return deg;
}

AlgebraElement matrix_unit(unsigned m, unsigned n) {
  if (m > kMaxExponent || n > kMaxExponent) {
    throw std::invalid_argument("matrix_unit: index exceeds the supported degree");
  }
  const mpz_class f = factorial(m) * factorial(n);
  const ExactCoeff c(mpq_class(1) / mpq_class(f), mpq_class(0), f);
  return AlgebraElement::monomial(Basis::qed, Monomial{m, true, n}, c);
}

AlgebraElement spinor(const std::vector<ExactCoeff>& comps) {
  AlgebraElement out(Basis::qed);
  for (std::size_t m = 0; m < comps.size(); ++m) {
    out += matrix_unit(static_cast<unsigned>(m), 0).scaled(comps[m]);
  }
  return out;
}

AlgebraElement to_boson(const AlgebraElement& x) {
  if (x.basis() != Basis::qed) {
    throw std::invalid_argument("to_boson: expects an element over Q, E, D");
  }
  const ExactCoeff inv_sqrt2(mpq_class(1, 2), mpq_class(0), mpz_class(2));
  const AlgebraElement ad = AlgebraElement::generator(Basis::boson, GenKind::raising);
  const AlgebraElement a = AlgebraElement::generator(Basis::boson, GenKind::lowering);
  const AlgebraElement qb = (ad + a).scaled(inv_sqrt2);
  const AlgebraElement db = (a - ad).scaled(inv_sqrt2);
  AlgebraElement out(Basis::boson);
  for (const auto& [m, c] : x.terms()) {
    if (m.idem) {
      throw std::domain_error("to_boson: the idempotent has no boson image");
    }
    AlgebraElement t = AlgebraElement::one(Basis::boson).scaled(c);
    t = t * pow_element(qb, m.raise) * pow_element(db, m.lower);
    out += t;
  }
  return out;
}

Eigen::MatrixXcd fock_generator(GenKind kind, unsigned n_max) {
  const long n = static_cast<long>(n_max) + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  switch (kind) {
    case GenKind::raising:
      for (long j = 0; j + 1 < n; ++j) {
        m(j + 1, j) = std::sqrt(static_cast<double>(j) + 1.0);
      }
      break;
    case GenKind::idempotent:
      m(0, 0) = 1.0;
      break;
    case GenKind::lowering:
      for (long j = 0; j + 1 < n; ++j) {
        m(j, j + 1) = std::sqrt(static_cast<double>(j) + 1.0);
      }
      break;
  }
  return m;
}

Eigen::MatrixXcd fock_matrix(const AlgebraElement& x, unsigned n_max, FockRoute route) {
  const long n = static_cast<long>(n_max) + 1;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  if (route == FockRoute::generator_products) {
    const Eigen::MatrixXcd gr = fock_generator(GenKind::raising, n_max);
    const Eigen::MatrixXcd gi = fock_generator(GenKind::idempotent, n_max);
    const Eigen::MatrixXcd gl = fock_generator(GenKind::lowering, n_max);
    for (const auto& [m, c] : x.terms()) {
      Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(n, n);
      for (unsigned j = 0; j < m.raise; ++j) {
        prod = prod * gr;
      }
      if (m.idem) {
        prod = prod * gi;
      }
      for (unsigned j = 0; j < m.lower; ++j) {
        prod = prod * gl;
      }
      acc += c.to_complex() * prod;
    }
    return acc;
  }
  if (n_max > kMaxExponent) {
    throw std::invalid_argument("fock_matrix: truncation too large for exact entries");
  }
  for (const auto& [m, c] : x.terms()) {
    if (m.idem) {
      // raising^h idem lowering^k hits only |k> and lands on |h>
      if (m.raise <= n_max && m.lower <= n_max) {
        const ExactCoeff entry(mpq_class(1), mpq_class(0), factorial(m.raise) * factorial(m.lower));
        acc(m.raise, m.lower) += (c * entry).to_complex();
      }
      continue;
    }
    for (unsigned col = m.lower; col <= n_max; ++col) {
      const unsigned long row = static_cast<unsigned long>(col) - m.lower + m.raise;
      if (row > n_max) {
        break;
      }
      const ExactCoeff entry(mpq_class(1) / mpq_class(factorial(col - m.lower)), mpq_class(0),
                             factorial(col) * factorial(static_cast<unsigned>(row)));
      acc(static_cast<long>(row), col) += (c * entry).to_complex();
    }
  }
  return acc;
}

namespace {

Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& m, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const long last = sv.size() - 1;
  if (sv(last) > 1e-8 * sv(0)) {
    throw std::domain_error(std::string(what) + ": no kernel vector at this truncation");
  }
  if (sv(last - 1) <= 1e-6 * sv(0)) {
    throw std::domain_error(std::string(what) + ": kernel is not one-dimensional");
  }
  Eigen::VectorXd v = svd.matrixV().col(last);
  if (v(0) < 0) {
    v = -v;
  }
  return v;
}

}  // namespace

EVRelationResult e_v_relation_check(unsigned n_max) {
  if (n_max < 4 || n_max % 2 != 0) {
    throw std::invalid_argument("e_v_relation_check: n_max must be even and at least 4");
  }
  const long n = static_cast<long>(n_max) + 1;
  Eigen::MatrixXd qf = Eigen::MatrixXd::Zero(n, n);
  for (long j = 0; j + 1 < n; ++j) {
    qf(j + 1, j) = std::sqrt(static_cast<double>(j) + 1.0);
  }
  const Eigen::MatrixXd df = qf.transpose();
  Eigen::MatrixXd ef = Eigen::MatrixXd::Zero(n, n);
  ef(0, 0) = 1.0;

  // both series terminate: the truncated shifts are nilpotent
  const Eigen::MatrixXd q2 = qf * qf;
  const Eigen::MatrixXd d2 = df * df;
  Eigen::MatrixXd exp_q = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd exp_d = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd pq = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd pd = Eigen::MatrixXd::Identity(n, n);
  double cq = 1.0;
  double cd = 1.0;
  for (unsigned j = 1; 2 * j <= n_max; ++j) {
    pq = pq * q2;
    pd = pd * d2;
    cq *= -0.5 / static_cast<double>(j);
    cd *= 0.5 / static_cast<double>(j);
    exp_q += cq * pq;
    exp_d += cd * pd;
  }
  const Eigen::MatrixXd big_r = exp_q * ef * exp_d;

  const double inv_s2 = 1.0 / std::sqrt(2.0);
  const Eigen::MatrixXd lower = (qf + df) * inv_s2;
  const Eigen::MatrixXd raise = (qf - df) * inv_s2;
  const Eigen::VectorXd v = kernel_vector(lower, "e_v_relation_check");
  const Eigen::VectorXd c = kernel_vector(raise, "e_v_relation_check");
  const double denom = c.dot(v);
  if (std::abs(denom) < 1e-12) {
    throw std::domain_error("e_v_relation_check: kernel vectors are orthogonal");
  }
  const Eigen::MatrixXd big_v = v * c.transpose() / denom;

  EVRelationResult res;
  res.n_max = n_max;
  res.lambda = big_r.cwiseProduct(big_v).sum() / big_r.squaredNorm();
  res.residual = (big_v - res.lambda * big_r).norm() / big_v.norm();

  // similarity to the basis (raise^k v / sqrt(k!)): triangular, hence invertible
  Eigen::MatrixXd t(n, n);
  Eigen::VectorXd col = v;
  t.col(0) = col;
  for (long k = 1; k < n; ++k) {
    col = raise * col / std::sqrt(static_cast<double>(k));
    t.col(k) = col;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(t);
  const Eigen::MatrixXd eb = lu.solve(ef * t);
  const Eigen::MatrixXd vb = lu.solve(big_v * t);
  res.e_adjoint_gap = (eb.transpose() - eb).norm();
  res.v_adjoint_gap = (vb.transpose() - vb).norm();
  return res;
}

bool sp2_structure_check() {
  const ExactCoeff half(1, 2UL);
  const ExactCoeff two(2);
  const AlgebraElement q = AlgebraElement::generator(Basis::qed, GenKind::raising);
  const AlgebraElement d = AlgebraElement::generator(Basis::qed, GenKind::lowering);
  const AlgebraElement x = (q * q).scaled(half);
  const AlgebraElement y = (d * d).scaled(half);
  const AlgebraElement h = (q * d + d * q).scaled(half);
  const bool xy = (commutator(x, y) + h).is_zero();
  const bool hx = (commutator(h, x) - x.scaled(two)).is_zero();
  const bool hy = (commutator(h, y) + y.scaled(two)).is_zero();
  return xy && hx && hy;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  Basis basis;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])) != 0) {
      ++pos;
    }
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression error at position " + std::to_string(pos) + ": " +
                                msg);
  }

  unsigned long number() {
    skip();
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])) != 0) {
      ++pos;
    }
    if (start == pos) {
      fail("expected a number");
    }
    return std::stoul(s.substr(start, pos - start));
  }

  std::string ident() {
    skip();
    const std::size_t start = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])) != 0) {
      ++pos;
    }
    return s.substr(start, pos - start);
  }

  ExactCoeff scalar_of(const AlgebraElement& x) {
    if (x.terms().size() == 1 && x.terms().begin()->first == Monomial{}) {
      return x.terms().begin()->second;
    }
    if (x.is_zero()) {
      return ExactCoeff(0);
    }
    fail("division is only defined by scalars");
  }

  AlgebraElement expr() {
    AlgebraElement acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  AlgebraElement term() {
    AlgebraElement acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        acc = acc.scaled(ExactCoeff(1) / scalar_of(power()));
      } else {
        return acc;
      }
    }
  }

  AlgebraElement power() {
    AlgebraElement base = primary();
    if (eat('^')) {
      const unsigned long p = number();
      if (p > kMaxExponent) {
        fail("exponent exceeds the supported degree");
      }
      return pow_element(base, static_cast<unsigned>(p));
    }
    return base;
  }

  AlgebraElement primary() {
    skip();
    if (pos >= s.size()) {
      fail("unexpected end of input");
    }
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      AlgebraElement e = expr();
      if (!eat(')')) {
        fail("expected ')'");
      }
      return e;
    }
    if (c == '[') {
      ++pos;
      AlgebraElement a = expr();
      if (!eat(',')) {
        fail("expected ',' in commutator");
      }
      AlgebraElement b = expr();
      if (!eat(']')) {
        fail("expected ']'");
      }
      return commutator(a, b);
    }
    if (c == '-') {
      ++pos;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      return AlgebraElement::one(basis).scaled(ExactCoeff(mpq_class(number()), mpq_class(0)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      const std::string id = ident();
      if (id == "i") {
        return AlgebraElement::one(basis).scaled(ExactCoeff::imaginary_unit());
      }
      if (id == "sqrt") {
        if (!eat('(')) {
          fail("expected '(' after sqrt");
        }
        const unsigned long r = number();
        if (!eat(')')) {
          fail("expected ')'");
        }
        return AlgebraElement::one(basis).scaled(ExactCoeff::sqrt_integer(r));
      }
      for (GenKind kind : {GenKind::raising, GenKind::idempotent, GenKind::lowering}) {
        if (id == generator_symbol(basis, kind)) {
          return AlgebraElement::generator(basis, kind);
        }
      }
      fail("unknown symbol '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

AlgebraElement parse_expression(const std::string& text, Basis basis) {
  Parser p{text, 0, basis};
  AlgebraElement e = p.expr();
  p.skip();
  if (p.pos != text.size()) {
    p.fail("trailing input");
  }
  return e;
}

}  // namespace metaplectica::weyl
