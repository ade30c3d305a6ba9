#pragma once

#include "mtphi/local_field.hpp"
#include "mtphi/scalar.hpp"

namespace mtphi {

/// Branch parameter c = log(p) of the field, as an element of K.
Scalar branch_scalar(const LocalField& field);

/// Teichmuller lift of the residue r: the unique (p-1)-st root of unity
/// congruent to r mod p, computed by iterating x -> x^p to a fixpoint.
/// Requires 1 <= r < p.
Scalar teichmuller(const LocalField& field, long r);

/// Logarithm of a unit: strips the Teichmuller component, then sums the
/// usual series for the remaining 1-unit. Throws NotAUnit off valuation 0.
Scalar unit_log(const Scalar& u);

/// The branch of log on all of K^x determined by log(p) = branch:
/// m*log(pi) + unit_log(y*pi^{-m}) with m = e*val(y) and
/// log(pi) = (branch + unit_log(pi^e/p))/e.
Scalar branch_log(const Scalar& y);

}  // namespace mtphi
