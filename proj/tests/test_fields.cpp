#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lienil/fields.hpp"

using namespace lienil;

namespace {

// Independent oracle: C(n,k) mod p via Lucas' theorem from a small Pascal
// table of the base-p digits.
long lucas_binomial(unsigned long n, unsigned long k, unsigned long p) {
  long table[32][32] = {};
  for (unsigned long i = 0; i < p; ++i) {
    table[i][0] = 1;
    for (unsigned long j = 1; j <= i; ++j)
      table[i][j] = (table[i - 1][j - 1] + (j <= i - 1 ? table[i - 1][j] : 0)) % p;
  }
  long r = 1;
  while (n > 0 || k > 0) {
    unsigned long nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    r = (r * table[nd][kd]) % p;
    n /= p;
    k /= p;
  }
  return r;
}

}  // namespace

TEST_CASE("field spec validation") {
  CHECK_NOTHROW(FieldSpec(0));
  CHECK_NOTHROW(FieldSpec(5));
  CHECK_NOTHROW(FieldSpec(101));
  CHECK_THROWS_AS(FieldSpec(2), std::domain_error);
  CHECK_THROWS_AS(FieldSpec(3), std::domain_error);
  CHECK_THROWS_AS(FieldSpec(4), std::domain_error);
  CHECK_THROWS_AS(FieldSpec(15), std::domain_error);
}

TEST_CASE("prime field arithmetic") {
  PrimeField f5(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.inv(2) == 3);
  CHECK(f5.mul(2, f5.inv(2)) == 1);
  CHECK(f5.from_long(-1) == 4);
  CHECK_THROWS_AS(f5.inv(0), std::domain_error);
}

TEST_CASE("rational arithmetic") {
  Rationals q;
  CHECK(q.mul(q.from_ratio(1, 2), q.from_ratio(2, 3)) == q.from_ratio(1, 3));
  CHECK(q.str(q.from_ratio(-4, 6)) == "-2/3");
  CHECK_THROWS_AS(q.inv(q.zero()), std::domain_error);
  CHECK_THROWS_AS(q.from_ratio(1, 0), std::domain_error);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(20240811);
  PrimeField f7(7);
  Rationals q;
  for (int trial = 0; trial < 200; ++trial) {
    long a = static_cast<long>(rng() % 41) - 20;
    long b = static_cast<long>(rng() % 41) - 20;
    long c = static_cast<long>(rng() % 41) - 20;
    // associativity + distributivity in F_7
    auto x = f7.from_long(a), y = f7.from_long(b), z = f7.from_long(c);
    CHECK(f7.mul(f7.mul(x, y), z) == f7.mul(x, f7.mul(y, z)));
    CHECK(f7.mul(x, f7.add(y, z)) == f7.add(f7.mul(x, y), f7.mul(x, z)));
    if (x != 0) CHECK(f7.mul(x, f7.inv(x)) == 1);
    // and over Q with denominators
    auto u = q.from_ratio(a, 7), v = q.from_ratio(b, 3), w = q.from_ratio(c, 11);
    CHECK(q.mul(q.mul(u, v), w) == q.mul(u, q.mul(v, w)));
    CHECK(q.mul(u, q.add(v, w)) == q.add(q.mul(u, v), q.mul(u, w)));
  }
}

TEST_CASE("scalar boundary type") {
  Scalar a = Scalar::residue(5, 3), b = Scalar::residue(5, 4);
  CHECK((a + b).str() == "2");
  CHECK(Scalar::residue(5, 2).inverse().str() == "3");
  Scalar qa = Scalar::rational(mpq_class(1, 2)), qb = Scalar::rational(mpq_class(2, 3));
  CHECK((qa * qb).str() == "1/3");
  CHECK_THROWS_AS(a + qa, std::domain_error);
  Scalar b7 = Scalar::residue(7, 1);
  CHECK_THROWS_AS(a + b7, std::domain_error);
}

TEST_CASE("binomial coefficients reduced into the field") {
  CHECK(binomial(5, 2, FieldSpec(5)).str() == "0");
  CHECK(binomial(4, 0, FieldSpec(0)).str() == "1");
  CHECK(binomial(10, 5, FieldSpec(5)).str() == "2");
  CHECK(lucas_binomial(10, 5, 5) == 2);  // digits (2,0) choose (1,0)
  CHECK_THROWS_AS(binomial(3, 4, FieldSpec(0)), std::domain_error);
  // big values stay exact over Q
  Rationals q;
  CHECK(binomial(q, 200, 100) == mpq_class(binomial_mpz(200, 100)));
}

TEST_CASE("prime-power binomials vanish in their characteristic") {
  for (unsigned long p : {5ul, 7ul}) {
    PrimeField f(p);
    for (unsigned long t : {1ul, 2ul}) {
      unsigned long q = 1;
      for (unsigned long i = 0; i < t; ++i) q *= p;
      for (unsigned long i = 1; i <= q - 1; ++i) CHECK(binomial(f, q, i) == 0);
    }
  }
}

TEST_CASE("binomial matches the Lucas oracle") {
  for (unsigned long p : {5ul, 7ul}) {
    PrimeField f(p);
    for (unsigned long n = 0; n <= 200; ++n)
      for (unsigned long k = 0; k <= n; ++k) REQUIRE(binomial(f, n, k) == lucas_binomial(n, k, p));
  }
}

TEST_CASE("p-adic valuation") {
  CHECK(p_adic_valuation(50, 5) == 2);
  CHECK(p_adic_valuation(7, 5) == 0);
  CHECK(p_adic_valuation(125, 5) == 3);
  CHECK_THROWS_AS(p_adic_valuation(0, 5), std::domain_error);
}
