#include <doctest.h>

#include <cmath>

#include "rfl/errors.hpp"
#include "rfl/field.hpp"
#include "rfl/rng.hpp"

using namespace rfl;

TEST_CASE("field arithmetic identities") {
  NumberField f4(4);
  CHECK(f4.degree() == 2);
  // l * l = 2 in Q(sqrt 2)
  CHECK((f4.generator() * f4.generator()) == f4.from_rational(2));

  NumberField f5(5);
  // l^2 - l - 1 = 0 at the golden ratio
  const FieldElem g = f5.generator();
  CHECK((g * g - g - f5.one()).is_zero());

  // x - x = 0 in any field
  for (int k : {3, 4, 7, 12}) {
    NumberField f(k);
    const FieldElem x = f.from_string("1+2*l") * f.from_string("3/2-l^2");
    CHECK((x - x).is_zero());
  }
}

TEST_CASE("field inverse") {
  for (int k : {4, 5, 7, 9}) {
    NumberField f(k);
    SplitMix64 rng(777 + static_cast<std::uint64_t>(k));
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<mpq_class> c(static_cast<std::size_t>(f.degree()));
      bool zero = true;
      for (auto& q : c) {
        q = mpq_class(static_cast<long>(rng.next() % 11) - 5, 1 + static_cast<long>(rng.next() % 4));
        q.canonicalize();
        if (q != 0) zero = false;
      }
      if (zero) c[0] = 1;
      FieldElem x = f.zero();
      {
        // build from string-free path: sum c_i l^i
        FieldElem li = f.one();
        for (std::size_t i = 0; i < c.size(); ++i) {
          x = x + li * f.from_rational(c[i]);
          li = li * f.generator();
        }
      }
      CHECK((x * x.inverse()) == f.one());
    }
    CHECK_THROWS_AS(f.zero().inverse(), std::domain_error);
  }
}

TEST_CASE("embedding is a ring homomorphism") {
  for (int k : {3, 4, 5, 8, 11}) {
    NumberField f(k);
    SplitMix64 rng(99 + static_cast<std::uint64_t>(k));
    for (int rep = 0; rep < 30; ++rep) {
      const auto rand_elem = [&] {
        FieldElem x = f.zero(), li = f.one();
        for (int i = 0; i < f.degree(); ++i) {
          const long num = static_cast<long>(rng.next() % 9) - 4;
          x = x + li * f.from_rational(mpq_class(num, 2));
          li = li * f.generator();
        }
        return x;
      };
      const FieldElem a = rand_elem(), b = rand_elem();
      const double lhs = (a * b).embed();
      const double rhs = a.embed() * b.embed();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      CHECK((a + b).embed() == doctest::Approx(a.embed() + b.embed()).epsilon(1e-10));
    }
    CHECK(f.generator().embed() == doctest::Approx(f.lambda_value()).epsilon(1e-14));
  }
}

TEST_CASE("exact sign oracle") {
  NumberField f5(5);
  const FieldElem g = f5.generator();  // golden ratio, ~1.618
  CHECK(f5.sign(g) == 1);
  CHECK(f5.sign(-g) == -1);
  CHECK(f5.sign(g - f5.one()) == 1);
  CHECK(f5.sign(g - f5.from_rational(2)) == -1);
  CHECK(f5.sign(f5.zero()) == 0);
  // a value microscopically below lambda
  CHECK(f5.sign(g - f5.from_string("1618033988749894848/1000000000000000000")) == 1);

  NumberField f3(3);  // degree 1: plain rationals
  CHECK(f3.sign(f3.from_string("-2/3")) == -1);
  CHECK(f3.generator() == f3.one());
}

TEST_CASE("hosting a smaller multiplier in a larger field") {
  NumberField f8(8);
  // 2cos(2 pi/8) = sqrt(2) = l^2 - 2 in Q(2cos(pi/8))
  const FieldElem s2 = f8.two_cos_multiple(2);
  CHECK(s2 == f8.from_string("l^2-2"));
  CHECK(s2.embed() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK((s2 * s2) == f8.from_rational(2));
}

TEST_CASE("input grammar") {
  NumberField f5(5);
  const FieldElem x = f5.from_string("1+2*l-3/2*l^2");
  CHECK(x.embed() ==
        doctest::Approx(1.0 + 2.0 * f5.lambda_value() -
                        1.5 * f5.lambda_value() * f5.lambda_value())
            .epsilon(1e-12));
  CHECK(f5.from_string(" l ") == f5.generator());
  CHECK(f5.from_string("-l") == -f5.generator());
  CHECK(f5.from_string("l^2") == f5.generator() * f5.generator());
  CHECK_THROWS_AS(f5.from_string(""), std::domain_error);
  CHECK_THROWS_AS(f5.from_string("2x"), std::domain_error);
  CHECK_THROWS_AS((void)NumberField(51), resource_error);
}
