#pragma once

#include <vector>

#include "mtphi/local_field.hpp"

namespace mtphi {

/// Element of K on the pi-power basis: coords()[i] multiplies pi^i, 0 <= i < e.
///
/// Arithmetic is capped-precision: each coordinate carries its own absolute
/// precision bound and no operation claims digits its inputs do not support.
/// Decisions that would require unknown digits raise instead of guessing.
class Scalar {
 public:
  static Scalar zero(const LocalField& k);
  static Scalar one(const LocalField& k);
  static Scalar from_rational(const LocalField& k, const Rational& q);
  static Scalar from_integer(const LocalField& k, long n);
  static Scalar from_coords(const LocalField& k, std::vector<Qp> coords);
  /// The uniformizer: the class of x when e > 1, p itself when e = 1.
  static Scalar pi(const LocalField& k);

  const LocalField& field() const { return field_; }
  const std::vector<Qp>& coords() const { return coords_; }

  /// All coordinates vanish to their tracked precision.  Throws
  /// InsufficientPrecision when a coordinate's bound is too weak (below one
  /// digit) to support the claim.
  bool is_zero() const;
  /// True when every pi^i coefficient with i >= 1 vanishes to precision.
  bool in_base() const;
  /// Smallest coordinate precision bound, in base-p digits.
  long min_aprec() const;

  /// nu_K normalized by nu_K(p) = 1, so nu_K(pi) = 1/e.  Throws
  /// ZeroValuation when the element is indistinguishable from zero and
  /// InsufficientPrecision when a hidden coordinate could undercut the
  /// visible minimum.
  Rational val() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar inv() const;
  Scalar operator/(const Scalar& o) const;
  Scalar pow(long n) const;

  /// Equal at the shared tracked precision.
  bool eq(const Scalar& o) const;

  /// Same element of a compatible field handle (used after branch changes).
  Scalar rebase(const LocalField& k) const;

 private:
  Scalar(LocalField k, std::vector<Qp> coords);

  LocalField field_;
  std::vector<Qp> coords_;
};

}  // namespace mtphi
