#include "mtphi/kst.hpp"

#include <utility>

#include "mtphi/errors.hpp"

namespace mtphi {

KstPoly KstPoly::constant(const Scalar& s) {
  KstPoly r(s.field());
  r.coeffs.push_back(s);
  return r;
}

KstPoly KstPoly::x(const LocalField& k) {
  KstPoly r(k);
  r.coeffs.push_back(Scalar::zero(k));
  r.coeffs.push_back(Scalar::one(k));
  return r;
}

Scalar KstPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return Scalar::zero(field);
  return coeffs[k];
}

KstPoly kst_add(const KstPoly& a, const KstPoly& b) {
  if (!a.field.same_as(b.field)) throw WrongShape("kst_add: mismatched fields");
  KstPoly r(a.field);
  int n = static_cast<int>(a.coeffs.size());
  int m = static_cast<int>(b.coeffs.size());
  int top = n > m ? n : m;
  for (int k = 0; k < top; k++) r.coeffs.push_back(a.coeff(k) + b.coeff(k));
  return r;
}

KstPoly kst_neg(const KstPoly& a) {
  KstPoly r(a.field);
  for (const Scalar& c : a.coeffs) r.coeffs.push_back(-c);
  return r;
}

KstPoly kst_sub(const KstPoly& a, const KstPoly& b) { return kst_add(a, kst_neg(b)); }

KstPoly kst_mul(const KstPoly& a, const KstPoly& b) {
  if (!a.field.same_as(b.field)) throw WrongShape("kst_mul: mismatched fields");
  KstPoly r(a.field);
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  int n = static_cast<int>(a.coeffs.size());
  int m = static_cast<int>(b.coeffs.size());
  r.coeffs.assign(n + m - 1, Scalar::zero(a.field));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < m; j++) r.coeffs[i + j] = r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
  return r;
}

KstPoly kst_scale(const Scalar& s, const KstPoly& a) {
  KstPoly r(a.field);
  for (const Scalar& c : a.coeffs) r.coeffs.push_back(s * c);
  return r;
}

Scalar kst_eval(const KstPoly& a, const Scalar& at) {
  Scalar acc = Scalar::zero(a.field);
  for (int k = static_cast<int>(a.coeffs.size()) - 1; k >= 0; k--) acc = acc * at + a.coeffs[k];
  return acc;
}

bool kst_is_zero(const KstPoly& a) {
  for (const Scalar& c : a.coeffs)
    if (!c.is_zero()) return false;
  return true;
}

bool kst_eq(const KstPoly& a, const KstPoly& b) { return kst_is_zero(kst_sub(a, b)); }

KstMat::KstMat(LocalField k, int rows, int cols) : field(std::move(k)), nrows(rows), ncols(cols) {
  data.assign(static_cast<std::size_t>(rows) * cols, KstPoly(field));
}

KstMat KstMat::identity(const LocalField& k, int n) {
  KstMat r(k, n, n);
  for (int i = 0; i < n; i++) r.at(i, i) = KstPoly::constant(Scalar::one(k));
  return r;
}

KstMat KstMat::lift(const KMat& a) {
  KstMat r(a.field, a.nrows, a.ncols);
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < a.ncols; j++) r.at(i, j) = KstPoly::constant(a.at(i, j));
  return r;
}

KstMat kst_mat_add(const KstMat& a, const KstMat& b) {
  if (a.nrows != b.nrows || a.ncols != b.ncols)
    throw WrongShape("kst_mat_add: shape mismatch");
  KstMat r(a.field, a.nrows, a.ncols);
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < a.ncols; j++) r.at(i, j) = kst_add(a.at(i, j), b.at(i, j));
  return r;
}

KstMat kst_mat_mul(const KstMat& a, const KstMat& b) {
  if (a.ncols != b.nrows) throw WrongShape("kst_mat_mul: shape mismatch");
  KstMat r(a.field, a.nrows, b.ncols);
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < b.ncols; j++) {
      KstPoly acc(a.field);
      for (int k = 0; k < a.ncols; k++)
        acc = kst_add(acc, kst_mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = acc;
    }
  return r;
}

KstMat kst_poly_mul(const KstPoly& s, const KstMat& a) {
  KstMat r(a.field, a.nrows, a.ncols);
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < a.ncols; j++) r.at(i, j) = kst_mul(s, a.at(i, j));
  return r;
}

KMat kst_mat_eval(const KstMat& a, const Scalar& at) {
  KMat r(a.field, a.nrows, a.ncols);
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < a.ncols; j++) r.at(i, j) = kst_eval(a.at(i, j), at);
  return r;
}

bool kst_mat_eq(const KstMat& a, const KstMat& b) {
  if (a.nrows != b.nrows || a.ncols != b.ncols) return false;
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < a.ncols; j++)
      if (!kst_eq(a.at(i, j), b.at(i, j))) return false;
  return true;
}

}  // namespace mtphi
