#pragma once

#include <cstdint>
#include <vector>

#include "mtphi/rational.hpp"

namespace mtphi {

/// One Q_p coordinate under capped absolute precision.
///
/// The value is congruent to p^val * unit modulo p^aprec, where unit is a
/// p-unit with 0 < unit < p^(aprec - val).  The element indistinguishable
/// from zero at precision a is stored as {val = a, unit = 0, aprec = a}.
/// aprec never exceeds the owning field's precision cap, but it may sink
/// below it (or below zero) as operations lose digits.
struct Qp {
  long val = 0;
  BigInt unit = 0;
  long aprec = 0;

  bool is_zero() const { return unit == 0; }
  long rel() const { return aprec - val; }
};

Qp qp_zero(long aprec);

/// Canonical form: clamp aprec to cap, reduce unit mod p^(aprec-val), strip
/// factors of p into val.
Qp qp_make(long val, BigInt unit, long aprec, long p, long cap);

Qp qp_from_rational(const Rational& q, long p, long cap);
Qp qp_from_digits(long val, const std::vector<std::uint32_t>& digits, long p, long cap);

Qp qp_add(const Qp& a, const Qp& b, long p, long cap);
Qp qp_neg(const Qp& a, long p, long cap);
Qp qp_sub(const Qp& a, const Qp& b, long p, long cap);
Qp qp_mul(const Qp& a, const Qp& b, long p, long cap);
/// Throws InsufficientPrecision on an argument indistinguishable from zero.
Qp qp_inv(const Qp& a, long p, long cap);

/// Equal at the shared absolute precision.
bool qp_eq(const Qp& a, const Qp& b, long p, long cap);

/// Base-p digits of the unit part, little-endian, rel() entries.
std::vector<std::uint32_t> qp_digits(const Qp& a, long p);

}  // namespace mtphi
