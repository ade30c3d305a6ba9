#include "mtphi/qp.hpp"

#include <algorithm>

#include "mtphi/errors.hpp"

namespace mtphi {

namespace {

BigInt pow_p(long p, long e) {
  return pow_int(BigInt(p), static_cast<unsigned long>(e));
}

// Inverse of a p-unit modulo p^rel via Euler's theorem.
BigInt unit_inverse(const BigInt& u, long p, long rel) {
  BigInt mod = pow_p(p, rel);
  BigInt order = pow_p(p, rel - 1) * (p - 1);
  return powm(u % mod, order - 1, mod);
}

}  // namespace

Qp qp_zero(long aprec) { return Qp{aprec, 0, aprec}; }

Qp qp_make(long val, BigInt unit, long aprec, long p, long cap) {
  aprec = std::min(aprec, cap);
  if (val >= aprec || unit == 0) return qp_zero(aprec);
  BigInt mod = pow_p(p, aprec - val);
  unit %= mod;
  if (unit < 0) unit += mod;
  while (unit != 0 && unit % p == 0) {
    unit /= p;
    ++val;
  }
  if (unit == 0 || val >= aprec) return qp_zero(aprec);
  return Qp{val, std::move(unit), aprec};
}

Qp qp_from_rational(const Rational& q, long p, long cap) {
  if (q.is_zero()) return qp_zero(cap);
  long v = padic_val(q, p);
  if (v >= cap) return qp_zero(cap);
  long rel = cap - v;
  BigInt num = q.num();
  BigInt den = q.den();
  if (v > 0)
    num /= pow_p(p, v);
  else if (v < 0)
    den /= pow_p(p, -v);
  BigInt mod = pow_p(p, rel);
  BigInt unit = (num % mod) * unit_inverse(den, p, rel) % mod;
  if (unit < 0) unit += mod;
  return qp_make(v, std::move(unit), cap, p, cap);
}

Qp qp_from_digits(long val, const std::vector<std::uint32_t>& digits, long p, long cap) {
  BigInt unit = 0;
  BigInt scale = 1;
  for (std::uint32_t d : digits) {
    if (d >= static_cast<std::uint32_t>(p))
      throw DomainError("digit out of range for base p");
    unit += scale * d;
    scale *= p;
  }
  long aprec = val + static_cast<long>(digits.size());
  return qp_make(val, std::move(unit), aprec, p, cap);
}

Qp qp_add(const Qp& a, const Qp& b, long p, long cap) {
  long aprec = std::min(a.aprec, b.aprec);
  if (a.is_zero() && b.is_zero()) return qp_zero(std::min(aprec, cap));
  long m = std::min(a.val, b.val);
  BigInt s = 0;
  if (!a.is_zero()) s += a.unit * pow_p(p, a.val - m);
  if (!b.is_zero()) s += b.unit * pow_p(p, b.val - m);
  return qp_make(m, std::move(s), aprec, p, cap);
}

Qp qp_neg(const Qp& a, long p, long cap) {
  if (a.is_zero()) return a;
  return qp_make(a.val, pow_p(p, a.rel()) - a.unit, a.aprec, p, cap);
}

Qp qp_sub(const Qp& a, const Qp& b, long p, long cap) {
  return qp_add(a, qp_neg(b, p, cap), p, cap);
}

Qp qp_mul(const Qp& a, const Qp& b, long p, long cap) {
  long aprec = std::min({a.aprec + b.val, b.aprec + a.val, cap});
  if (a.is_zero() || b.is_zero()) return qp_zero(aprec);
  return qp_make(a.val + b.val, a.unit * b.unit, aprec, p, cap);
}

Qp qp_inv(const Qp& a, long p, long cap) {
  if (a.is_zero())
    throw InsufficientPrecision("inverse of an element indistinguishable from zero");
  long rel = a.rel();
  return qp_make(-a.val, unit_inverse(a.unit, p, rel), rel - a.val, p, cap);
}

bool qp_eq(const Qp& a, const Qp& b, long p, long cap) {
  return qp_sub(a, b, p, cap).is_zero();
}

std::vector<std::uint32_t> qp_digits(const Qp& a, long p) {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, a.rel())));
  BigInt u = a.unit;
  for (long i = 0; i < a.rel(); ++i) {
    out.push_back(static_cast<std::uint32_t>(u % p));
    u /= p;
  }
  return out;
}

}  // namespace mtphi
