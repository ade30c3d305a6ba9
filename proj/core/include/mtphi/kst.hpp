#pragma once

#include <vector>

#include "mtphi/matrix.hpp"

namespace mtphi {

/// Element of K_st = K[X], with X standing for the branch-free logarithm of
/// p.  Coefficients ascend in X-power; the list may carry trailing zeros and
/// an empty list is zero.  Substituting X = c (the field's branch) recovers
/// the plain branched value.
struct KstPoly {
  LocalField field;
  std::vector<Scalar> coeffs;

  explicit KstPoly(LocalField k) : field(std::move(k)) {}
  static KstPoly constant(const Scalar& s);
  static KstPoly x(const LocalField& k);

  /// coeffs[k], or zero beyond the stored length.
  Scalar coeff(int k) const;
};

KstPoly kst_add(const KstPoly& a, const KstPoly& b);
KstPoly kst_sub(const KstPoly& a, const KstPoly& b);
KstPoly kst_neg(const KstPoly& a);
KstPoly kst_mul(const KstPoly& a, const KstPoly& b);
KstPoly kst_scale(const Scalar& s, const KstPoly& a);
Scalar kst_eval(const KstPoly& a, const Scalar& at);
bool kst_is_zero(const KstPoly& a);
/// Equal coefficientwise at shared precision, trailing zeros ignored.
bool kst_eq(const KstPoly& a, const KstPoly& b);

/// Dense matrix over K_st, row-major.
struct KstMat {
  LocalField field;
  int nrows = 0;
  int ncols = 0;
  std::vector<KstPoly> data;

  KstMat(LocalField k, int rows, int cols);
  static KstMat identity(const LocalField& k, int n);
  /// K-matrix viewed inside K_st (constant polynomials).
  static KstMat lift(const KMat& a);

  KstPoly& at(int i, int j) { return data[i * ncols + j]; }
  const KstPoly& at(int i, int j) const { return data[i * ncols + j]; }
};

KstMat kst_mat_add(const KstMat& a, const KstMat& b);
KstMat kst_mat_mul(const KstMat& a, const KstMat& b);
KstMat kst_poly_mul(const KstPoly& s, const KstMat& a);
KMat kst_mat_eval(const KstMat& a, const Scalar& at);
bool kst_mat_eq(const KstMat& a, const KstMat& b);

}  // namespace mtphi
