#include "rfl/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "rfl/errors.hpp"
#include "rfl/minpoly.hpp"
#include "rfl/params.hpp"

namespace rfl {

namespace {

std::mutex g_iso_mutex;  // guards the per-field isolating-interval cache

using Poly = std::vector<mpq_class>;  // c[0] + c[1] x + ...

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder and (optionally) quotient of a / b, b nonzero.
Poly poly_divrem(Poly a, const Poly& b, Poly* quot) {
  trim(a);
  if (quot) quot->assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    if (quot) (*quot)[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  if (quot) trim(*quot);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Exact rational interval, endpoints inclusive.
struct QInterval {
  mpq_class lo, hi;
};

QInterval iv_add(const QInterval& a, const mpq_class& s) {
  return {a.lo + s, a.hi + s};
}

QInterval iv_mul(const QInterval& a, const QInterval& b) {
  mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  QInterval r;
  r.lo = std::min(std::min(p1, p2), std::min(p3, p4));
  r.hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return r;
}

// Horner evaluation of a rational-coefficient polynomial over an interval.
QInterval iv_horner(const std::vector<mpq_class>& c, const QInterval& x) {
  QInterval acc{0, 0};
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = iv_mul(acc, x);
    acc = iv_add(acc, c[i]);
  }
  return acc;
}

mpq_class q_horner(const std::vector<mpz_class>& c, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::size_t coord_bits(const std::vector<mpq_class>& c) {
  std::size_t b = 0;
  for (const auto& q : c) {
    b = std::max(b, mpz_sizeinbase(q.get_num_mpz_t(), 2));
    b = std::max(b, mpz_sizeinbase(q.get_den_mpz_t(), 2));
  }
  return b;
}

}  // namespace

NumberField::NumberField(int k) : k_(k) {
  if (k < 3) throw std::domain_error("NumberField: k must be >= 3");
  if (k > 50)
    throw resource_error("NumberField: exact mode is capped at k <= 50");
  const auto coeffs = minimal_polynomial(k);
  psi_.reserve(coeffs.size());
  for (long long v : coeffs) psi_.emplace_back(static_cast<long>(v));
  degree_ = static_cast<int>(psi_.size()) - 1;
  lambda_ = lambda_of_k(k);

  if (degree_ > 1) {
    // Isolate lambda_k among the roots of Psi_k: the nearest conjugate is
    // far beyond 1e-9 for k <= 50.
    iso_lo_ = mpq_class(lambda_ - 1e-9);
    iso_hi_ = mpq_class(lambda_ + 1e-9);
    const int slo = sgn(q_horner(psi_, iso_lo_));
    const int shi = sgn(q_horner(psi_, iso_hi_));
    if (slo == 0 || shi == 0 || slo == shi)
      throw precision_error("NumberField: failed to isolate the root of Psi_k");
  }
}

std::vector<mpq_class> NumberField::reduce(std::vector<mpq_class> c) const {
  const std::size_t d = static_cast<std::size_t>(degree_);
  for (std::size_t i = c.size(); i-- > d;) {
    // x^i = -x^{i-d} * (psi_0 + ... + psi_{d-1} x^{d-1})   (Psi monic)
    const mpq_class top = c[i];
    if (top != 0)
      for (std::size_t j = 0; j < d; ++j) c[i - d + j] -= top * psi_[j];
    c.pop_back();
  }
  c.resize(d, 0);
  return c;
}

FieldElem NumberField::zero() const {
  return FieldElem(this, std::vector<mpq_class>(degree_, 0));
}

FieldElem NumberField::one() const { return from_rational(1); }

FieldElem NumberField::from_rational(const mpq_class& q) const {
  std::vector<mpq_class> c(degree_, 0);
  c[0] = q;
  return FieldElem(this, std::move(c));
}

FieldElem NumberField::generator() const {
  if (degree_ == 1) return from_rational(mpq_class(-psi_[0]));  // rational root
  std::vector<mpq_class> c(degree_, 0);
  c[1] = 1;
  return FieldElem(this, std::move(c));
}

FieldElem NumberField::two_cos_multiple(int m) const {
  if (m < 0 || m > k_)
    throw std::domain_error("two_cos_multiple: m must lie in [0, k]");
  FieldElem t0 = from_rational(2), t1 = generator();
  if (m == 0) return t0;
  for (int i = 1; i < m; ++i) {
    FieldElem t2 = generator() * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

int NumberField::sign(const FieldElem& x) const {
  if (x.is_zero()) return 0;
  if (degree_ == 1) return sgn(x.coords()[0]);

  std::lock_guard<std::mutex> lock(g_iso_mutex);
  QInterval iv{iso_lo_, iso_hi_};
  int psi_sign_lo = sgn(q_horner(psi_, iso_lo_));
  for (int iter = 0; iter < 1000000; ++iter) {
    const QInterval v = iv_horner(x.coords(), iv);
    if (sgn(v.lo) > 0) return 1;
    if (sgn(v.hi) < 0) return -1;
    // Narrow the root bracket by exact bisection of Psi_k.
    mpq_class mid = (iv.lo + iv.hi) / 2;
    const int sm = sgn(q_horner(psi_, mid));
    if (sm == 0)
      throw precision_error("NumberField::sign: bisection hit the root exactly");
    if (sm == psi_sign_lo)
      iv.lo = mid;
    else
      iv.hi = mid;
    iso_lo_ = iv.lo;
    iso_hi_ = iv.hi;
  }
  throw precision_error("NumberField::sign: bisection failed to converge");
}

FieldElem NumberField::from_string(const std::string& expr) const {
  // term ::= [+-] coef [*l[^e]] | [+-] l[^e];  coef ::= int[/uint]
  std::vector<mpq_class> raw;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  const auto parse_uint = [&]() -> std::string {
    std::string s;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i])))
      s += expr[i++];
    if (s.empty()) throw std::domain_error("FieldElem parse: expected digits in '" + expr + "'");
    return s;
  };

  skip_ws();
  bool first = true;
  while (i < expr.size()) {
    int sign = 1;
    skip_ws();
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::domain_error("FieldElem parse: expected '+' or '-' in '" + expr + "'");
    }
    first = false;
    skip_ws();

    mpq_class coef = 1;
    bool have_coef = false;
    if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      std::string num = parse_uint();
      std::string den = "1";
      if (i < expr.size() && expr[i] == '/') {
        ++i;
        den = parse_uint();
      }
      coef = mpq_class(num + "/" + den);
      coef.canonicalize();
      have_coef = true;
      skip_ws();
      if (i < expr.size() && expr[i] == '*') {
        ++i;
        skip_ws();
      }
    }

    unsigned long exp = 0;
    if (i < expr.size() && (expr[i] == 'l' || expr[i] == 'L')) {
      ++i;
      exp = 1;
      if (i < expr.size() && expr[i] == '^') {
        ++i;
        exp = std::stoul(parse_uint());
        if (exp > 64) throw std::domain_error("FieldElem parse: exponent too large");
      }
    } else if (!have_coef) {
      throw std::domain_error("FieldElem parse: expected coefficient or 'l' in '" + expr + "'");
    }

    if (raw.size() < exp + 1) raw.resize(exp + 1, 0);
    raw[exp] += sign * coef;
    skip_ws();
  }
  if (raw.empty()) throw std::domain_error("FieldElem parse: empty expression");
  return FieldElem(this, reduce(std::move(raw)));
}

bool FieldElem::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool FieldElem::operator==(const FieldElem& o) const {
  return field_ == o.field_ && c_ == o.c_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  std::vector<mpq_class> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  std::vector<mpq_class> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator-() const {
  std::vector<mpq_class> c(c_);
  for (auto& q : c) q = -q;
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  const std::size_t d = c_.size();
  std::vector<mpq_class> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += c_[i] * o.c_[j];
  }
  return FieldElem(field_, field_->reduce(std::move(prod)));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("FieldElem: division by zero");

  // Extended Euclid on (this, Psi) over Q[x]: u*this + v*Psi = g with g a
  // nonzero constant, so u/g is the inverse mod Psi.
  Poly r0(c_);
  trim(r0);
  Poly r1(field_->psi().begin(), field_->psi().end());
  Poly u0{1}, u1{};
  while (!r1.empty() && r1.size() > 1) {
    Poly q;
    Poly r2 = poly_divrem(r0, r1, &q);
    Poly u2 = poly_sub(u0, poly_mul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r1.empty())
    throw precision_error("FieldElem::inverse: Psi_k not coprime with element");
  const mpq_class g = r1[0];
  Poly inv = u1;
  for (auto& q : inv) q /= g;
  inv.resize(field_->degree(), 0);
  return FieldElem(field_, field_->reduce(std::move(inv)));
}

FieldElem FieldElem::abs() const {
  return field_->sign(*this) < 0 ? -*this : *this;
}

double FieldElem::embed() const {
  const std::size_t bits = coord_bits(c_);
  if (bits <= 48) {
    // Small coordinates: plain double Horner is plenty.
    double acc = 0.0;
    const double l = field_->lambda_value();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * l + c_[i].get_d();
    return acc;
  }

  // Large coordinates can cancel down to a tiny value, so evaluate with
  // working precision proportional to the coordinate size.
  const std::size_t prec = std::min<std::size_t>(2 * bits + 192, 1u << 22);
  mpf_class x(field_->lambda_value(), prec);
  // Newton refinement of the root of Psi_k from the double seed; the
  // iteration count covers quadratic convergence up to `prec` bits.
  const auto& psi = field_->psi();
  int iters = 8;
  for (std::size_t b = 64; b < prec; b *= 2) ++iters;
  for (int iter = 0; iter < iters; ++iter) {
    mpf_class f(0, prec), fp(0, prec);
    for (std::size_t i = psi.size(); i-- > 0;) {
      fp = fp * x + f;
      mpf_class ci(0, prec);
      mpf_set_z(ci.get_mpf_t(), psi[i].get_mpz_t());
      f = f * x + ci;
    }
    if (fp == 0) break;
    x -= f / fp;
  }

  mpf_class acc(0, prec);
  for (std::size_t i = c_.size(); i-- > 0;) {
    mpf_class ci(0, prec);
    mpf_set_q(ci.get_mpf_t(), c_[i].get_mpq_t());
    acc = acc * x + ci;
  }
  return acc.get_d();
}

}  // namespace rfl
