#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mtphi/errors.hpp>
#include <mtphi/padic.hpp>
#include <mtphi/qp.hpp>
#include <mtphi/scalar.hpp>
#include <cstdint>
#include <vector>

using namespace mtphi;

namespace {

LocalField q5(int prec = 6, const Rational& branch = Rational(0)) {
  return LocalField(5, prec, {}, branch);
}

// K = Q_5(pi), pi^2 = 5.
LocalField q5_ram(int prec = 6, const Rational& branch = Rational(0)) {
  return LocalField(5, prec, {Rational(-5), Rational(0), Rational(1)}, branch);
}

long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

long long pow_ll(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

using Digits = std::vector<std::uint32_t>;

Digits base_digits(long long x, long p, int count) {
  Digits out;
  for (int i = 0; i < count; ++i) {
    out.push_back(static_cast<std::uint32_t>(x % p));
    x /= p;
  }
  return out;
}

}  // namespace

TEST_CASE("rational embeddings and their digits") {
  LocalField k = q5();
  Scalar one = Scalar::from_rational(k, Rational(1));
  CHECK(one.val() == Rational(0));
  CHECK(qp_digits(one.coords()[0], 5) == Digits{1, 0, 0, 0, 0, 0});

  Scalar ten = Scalar::from_rational(k, Rational(10));
  CHECK(ten.val() == Rational(1));
  CHECK(qp_digits(ten.coords()[0], 5)[0] == 2);

  // 1/2 = (5^6 + 1)/2 mod 5^6, checked against a plain modular inverse.
  Scalar half = Scalar::from_rational(k, Rational(BigInt(1), BigInt(2)));
  long long mod = pow_ll(5, 6);
  long long inv2 = powmod(2, 4 * pow_ll(5, 5) - 1, mod);  // 2^(phi(5^6)-1)
  CHECK(half.val() == Rational(0));
  CHECK(qp_digits(half.coords()[0], 5) == base_digits(inv2, 5, 6));
  CHECK(qp_digits(half.coords()[0], 5) == Digits{3, 2, 2, 2, 2, 2});
}

TEST_CASE("valuations") {
  LocalField k = q5();
  CHECK(Scalar::from_integer(k, 5).val() == Rational(1));
  CHECK(Scalar::from_rational(k, Rational(BigInt(1), BigInt(25))).val() == Rational(-2));

  LocalField kr = q5_ram();
  CHECK(Scalar::pi(kr).val() == Rational(BigInt(1), BigInt(2)));
  Scalar mixed = Scalar::from_integer(kr, 5) + Scalar::pi(kr);
  CHECK(mixed.val() == Rational(BigInt(1), BigInt(2)));
  CHECK_THROWS_AS(Scalar::zero(k).val(), ZeroValuation);
}

TEST_CASE("arithmetic in the ramified quadratic field") {
  LocalField k = q5_ram();
  Scalar pi = Scalar::pi(k);
  CHECK(pi.pow(2).eq(Scalar::from_integer(k, 5)));

  // (1 + pi)(2 + 3 pi) = 2 + 5 pi + 3 pi^2 = 17 + 5 pi.
  Scalar a = Scalar::one(k) + pi;
  Scalar b = Scalar::from_integer(k, 2) + Scalar::from_integer(k, 3) * pi;
  Scalar expect = Scalar::from_integer(k, 17) + Scalar::from_integer(k, 5) * pi;
  CHECK((a * b).eq(expect));

  CHECK((a * a.inv()).eq(Scalar::one(k)));
  CHECK((pi * pi.inv()).eq(Scalar::one(k)));
  CHECK(pi.pow(-2).eq(Scalar::from_rational(k, Rational(BigInt(1), BigInt(5)))));
}

TEST_CASE("teichmuller lifts") {
  LocalField k = q5();
  CHECK(teichmuller(k, 1).eq(Scalar::one(k)));

  Scalar w = teichmuller(k, 2);
  // Oracle: iterate x -> x^5 mod 5^6 to the fixpoint.
  long long mod = pow_ll(5, 6);
  long long x = 2;
  while (powmod(x, 5, mod) != x) x = powmod(x, 5, mod);
  CHECK(qp_digits(w.coords()[0], 5) == base_digits(x, 5, 6));
  Digits all = qp_digits(w.coords()[0], 5);
  CHECK(Digits(all.begin(), all.begin() + 3) == Digits{2, 1, 2});  // 57 mod 125
  CHECK(w.pow(4).eq(Scalar::one(k)));

  LocalField k3(3, 6, {}, Rational(0));
  Scalar m1 = teichmuller(k3, 2);
  CHECK(m1.eq(Scalar::from_integer(k3, -1)));
  CHECK(qp_digits(m1.coords()[0], 3) == Digits{2, 2, 2, 2, 2, 2});

  CHECK_THROWS_AS(teichmuller(k, 0), NotAUnit);
  CHECK_THROWS_AS(teichmuller(k, 5), NotAUnit);
}

TEST_CASE("unit_log") {
  LocalField k = q5();
  CHECK(unit_log(Scalar::one(k)).is_zero());
  CHECK(unit_log(teichmuller(k, 2)).is_zero());

  // Exact-rational truncation of sum (-1)^{n+1} 5^n / n, far past the cap.
  Scalar u = Scalar::one(k) + Scalar::from_integer(k, 5);
  Rational series(0);
  for (int n = 1; n <= 12; ++n) {
    Rational term(pow_int(BigInt(5), n), BigInt(n));
    series = (n % 2 == 1) ? series + term : series - term;
  }
  CHECK(unit_log(u).eq(Scalar::from_rational(k, series)));
  // Spot value mod 5^3: 5 - 25/2 = 55.
  LocalField k3 = q5(3);
  Scalar u3 = Scalar::one(k3) + Scalar::from_integer(k3, 5);
  CHECK(unit_log(u3).eq(Scalar::from_integer(k3, 55)));

  CHECK_THROWS_AS(unit_log(Scalar::from_integer(k, 5)), NotAUnit);
  CHECK_THROWS_AS(unit_log(Scalar::zero(k)), NotAUnit);
}

TEST_CASE("unit_log is a homomorphism on 1-units") {
  LocalField k = q5();
  Scalar a = Scalar::one(k) + Scalar::from_integer(k, 10);
  Scalar b = Scalar::one(k) + Scalar::from_integer(k, 35);
  CHECK(unit_log(a * b).eq(unit_log(a) + unit_log(b)));
}

TEST_CASE("branch_log") {
  Scalar p0 = Scalar::from_integer(q5(6, Rational(0)), 5);
  CHECK(branch_log(p0).is_zero());
  Scalar p3 = Scalar::from_integer(q5(6, Rational(3)), 5);
  CHECK(branch_log(p3).eq(Scalar::from_integer(p3.field(), 3)));

  // Units do not see the branch.
  Scalar u0 = Scalar::from_integer(q5(6, Rational(0)), 7);
  Scalar u1 = Scalar::from_integer(q5(6, Rational(1)), 7);
  CHECK(branch_log(u0).eq(unit_log(u0)));
  CHECK(qp_eq(branch_log(u0).coords()[0], branch_log(u1).coords()[0], 5, 6));

  // 50 = 5^2 * 2 with branch 0.
  LocalField k = q5(6, Rational(0));
  CHECK(branch_log(Scalar::from_integer(k, 50)).eq(unit_log(Scalar::from_integer(k, 2))));

  // pi^2 = 5 forces log(pi) = branch/2.
  LocalField kr = q5_ram(6, Rational(1));
  CHECK(branch_log(Scalar::pi(kr)).eq(Scalar::from_rational(kr, Rational(BigInt(1), BigInt(2)))));
  CHECK(branch_log(Scalar::pi(q5_ram(6, Rational(0)))).is_zero());

  CHECK_THROWS_AS(branch_log(Scalar::zero(k)), ZeroValuation);
}

TEST_CASE("branch_log is a homomorphism") {
  LocalField k = q5(6, Rational(2));
  Scalar a = Scalar::from_integer(k, 50);
  Scalar b = Scalar::from_rational(k, Rational(BigInt(7), BigInt(5)));
  CHECK(branch_log(a * b).eq(branch_log(a) + branch_log(b)));

  LocalField kr = q5_ram(6, Rational(2));
  Scalar c = Scalar::pi(kr) + Scalar::one(kr);
  Scalar d = Scalar::pi(kr).pow(3);
  CHECK(branch_log(c * d).eq(branch_log(c) + branch_log(d)));
}

TEST_CASE("precision policy") {
  LocalField k = q5();
  // A value that is zero to no tracked digits cannot answer a zero test.
  Scalar weak = Scalar::from_coords(k, {qp_zero(0)});
  CHECK_THROWS_AS(weak.is_zero(), InsufficientPrecision);
  CHECK_THROWS_AS(qp_inv(qp_zero(4), 5, 6), InsufficientPrecision);

  // Additions track the weakest operand.
  Qp strong = qp_from_rational(Rational(1), 5, 6);
  Qp loose = qp_make(0, BigInt(2), 2, 5, 6);
  CHECK(qp_add(strong, loose, 5, 6).aprec == 2);

  // Multiplying by p^k shifts what is known.
  Qp five = qp_from_rational(Rational(5), 5, 6);
  CHECK(qp_mul(loose, five, 5, 6).aprec == 3);
  CHECK(qp_mul(loose, five, 5, 6).val == 1);
}
