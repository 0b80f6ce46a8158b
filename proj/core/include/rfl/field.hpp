#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace rfl {

class FieldElem;

// The number field Q(lambda_k), lambda_k = 2cos(pi/k), with elements stored
// as rational coordinates in the power basis {1, l, ..., l^{d-1}} where d is
// the degree of the minimal polynomial Psi_k. All arithmetic is exact.
//
// k is capped at 50 so the degree (phi(2k)/2) stays small; higher k belongs
// to the floating-point path anyway.
//
// Sign and zero tests are exact: zero is a coordinate test, and the sign of
// a nonzero element is decided by rational interval evaluation over an
// isolating interval of the root, narrowed by exact bisection of Psi_k.
class NumberField {
 public:
  explicit NumberField(int k);

  int k() const { return k_; }
  int degree() const { return degree_; }
  double lambda_value() const { return lambda_; }
  const std::vector<mpz_class>& psi() const { return psi_; }

  FieldElem zero() const;
  FieldElem one() const;
  // The basis generator lambda_k as a field element.
  FieldElem generator() const;
  FieldElem from_rational(const mpq_class& q) const;
  // 2cos(m*pi/k) for any 0 <= m <= k, via the degree-m Chebyshev identity;
  // lets a larger field host the dynamics of a smaller multiplier.
  FieldElem two_cos_multiple(int m) const;
  // Rational-coefficient polynomial in l, e.g. "1+2*l-3/2*l^2".
  FieldElem from_string(const std::string& expr) const;

  // Exact sign (-1, 0, +1) of the real number x represents.
  int sign(const FieldElem& x) const;

 private:
  friend class FieldElem;
  std::vector<mpq_class> reduce(std::vector<mpq_class> c) const;

  int k_ = 0;
  int degree_ = 0;
  double lambda_ = 0.0;
  std::vector<mpz_class> psi_;
  // Isolating interval for lambda_k among the roots of Psi_k; Psi changes
  // sign across it. Narrowed on demand and cached.
  mutable mpq_class iso_lo_, iso_hi_;
};

class FieldElem {
 public:
  FieldElem() = default;

  bool valid() const { return field_ != nullptr; }
  const NumberField& field() const { return *field_; }
  const std::vector<mpq_class>& coords() const { return c_; }

  bool is_zero() const;
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator-() const;
  // Throws std::domain_error on zero.
  FieldElem inverse() const;
  // |x|, using the field's exact sign oracle.
  FieldElem abs() const;

  // Numeric embedding: evaluate the coordinates at lambda_k in binary64.
  double embed() const;

 private:
  friend class NumberField;
  FieldElem(const NumberField* f, std::vector<mpq_class> c)
      : field_(f), c_(std::move(c)) {}

  const NumberField* field_ = nullptr;
  std::vector<mpq_class> c_;
};

}  // namespace rfl
