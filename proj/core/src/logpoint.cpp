#include "mtphi/logpoint.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "mtphi/errors.hpp"
#include "mtphi/padic.hpp"

namespace mtphi {

namespace {

Scalar p_power(const LocalField& k, int n) {
  return Scalar::from_integer(k, k.p()).pow(n);
}

Scalar base_scalar(const LocalField& k, const Qp& q) {
  std::vector<Qp> coords(k.e(), qp_zero(k.precision()));
  coords[0] = q;
  return Scalar::from_coords(k, std::move(coords));
}

KMat lead_rows(const KMat& a, int count) {
  KMat out(a.field, count, a.ncols);
  for (int i = 0; i < count; i++)
    for (int j = 0; j < a.ncols; j++) out.at(i, j) = a.at(i, j);
  return out;
}

KMat mat_rebase(const KMat& a, const LocalField& to) {
  KMat out(to, a.nrows, a.ncols);
  for (int i = 0; i < a.nrows; i++)
    for (int j = 0; j < a.ncols; j++) out.at(i, j) = a.at(i, j).rebase(to);
  return out;
}

KMat exp_nilpotent(const KMat& a) {
  KMat acc = KMat::identity(a.field, a.nrows);
  KMat power = KMat::identity(a.field, a.nrows);
  Rational fact(1);
  for (int k = 1; k <= a.nrows; k++) {
    power = mat_mul(power, a);
    if (mat_is_zero(power)) return acc;
    fact = fact * Rational(k);
    acc = mat_add(acc, scalar_mul(Scalar::from_rational(a.field, Rational(1) / fact), power));
  }
  throw NotUnipotent("exp_nilpotent: matrix is not nilpotent");
}

void require_mixed_tate(const FilPhiNModule& m) {
  if (!is_mixed_tate(m)) throw NotMixedTatePhi("module is not mixed Tate");
}

struct Markers {
  int sub;
  int quo;
};

/// Locates the basis column spanning the slope -n component; the other
/// column is the marked generator of the K(0) quotient.
Markers ext_markers(const FilPhiNModule& e, int n) {
  if (n < 1) throw WrongShape("extension degree must be positive");
  if (e.dim != 2) throw WrongShape("extension must be two-dimensional");
  SlopeDecomposition sd = slope_decomposition(e);
  auto low = sd.components.find(-n);
  auto top = sd.components.find(0);
  if (sd.components.size() != 2 || low == sd.components.end() || top == sd.components.end() ||
      low->second.ncols != 1 || top->second.ncols != 1)
    throw WrongShape("slope multiset must be {-n, 0}");
  for (int j = 0; j < 2; j++) {
    KMat ej(e.field, 2, 1);
    ej.at(j, 0) = Scalar::one(e.field);
    if (in_span(ej, low->second)) return {j, 1 - j};
  }
  throw WrongShape("basis does not mark the sub-object");
}

}  // namespace

EtaMatrix eta(const FilPhiNModule& m) {
  require_mixed_tate(m);
  SlopeBasis sb = slope_basis(m);
  KMat sinv = inverse(sb.mat);
  int d = m.dim;
  KMat out(m.field, d, d);
  for (int c = 0; c < d; c++) {
    int slope = sb.slopes[c];
    KMat span = filtration_span_at(m, slope);
    int t = 0;
    while (t < d && sb.slopes[t] >= slope) t++;
    KMat proj = mat_mul(lead_rows(sinv, t), span);
    KMat rhs(m.field, t, 1);
    rhs.at(c, 0) = Scalar::one(m.field);
    KMat w = mat_mul(sinv, mat_mul(span, solve(proj, rhs)));
    for (int r = 0; r < d; r++) out.at(r, c) = w.at(r, 0);
  }
  return {sb.slopes, out};
}

EtaMatrix eta_via_deligne(const FilPhiNModule& m) {
  require_mixed_tate(m);
  SlopeBasis sb = slope_basis(m);
  KMat sinv = inverse(sb.mat);
  int d = m.dim;
  KMat cols(m.field, d, 0);
  KMat diag(m.field, d, 0);
  for (int lo = 0; lo < d;) {
    int slope = sb.slopes[lo];
    int hi = lo;
    while (hi < d && sb.slopes[hi] == slope) hi++;
    // W_{2 slope} is spanned, in slope coordinates, by the columns from lo on.
    std::vector<int> idx;
    for (int j = lo; j < d; j++) idx.push_back(j);
    KMat w = take_cols(KMat::identity(m.field, d), idx);
    KMat f = mat_mul(sinv, filtration_span_at(m, slope));
    KMat u = intersect_spans(f, w);
    if (u.ncols != hi - lo) throw NotMixedTatePhi("bigraded splitting has wrong dimension");
    KMat g(m.field, d, u.ncols);
    for (int i = lo; i < hi; i++)
      for (int j = 0; j < u.ncols; j++) g.at(i, j) = u.at(i, j);
    cols = hstack(cols, u);
    diag = hstack(diag, g);
    lo = hi;
  }
  return {sb.slopes, mat_mul(cols, inverse(diag))};
}

EtaStMatrix eta_st(const FilPhiNModule& m) {
  EtaMatrix base = eta(m);
  SlopeBasis sb = slope_basis(m);
  KMat sinv = inverse(sb.mat);
  KMat n_slope = mat_mul(sinv, mat_mul(m.monodromy, sb.mat));
  KstPoly shift(m.field);  // c - X
  shift.coeffs.push_back(base_scalar(m.field, m.field.branch()));
  shift.coeffs.push_back(-Scalar::one(m.field));
  KstMat acc = KstMat::identity(m.field, m.dim);
  KMat power = KMat::identity(m.field, m.dim);
  KstPoly poly = KstPoly::constant(Scalar::one(m.field));
  Rational fact(1);
  for (int k = 1; k <= m.dim; k++) {
    power = mat_mul(power, n_slope);
    if (mat_is_zero(power)) break;
    if (k == m.dim) throw NotUnipotent("monodromy is not nilpotent");
    poly = kst_mul(poly, shift);
    fact = fact * Rational(k);
    acc = kst_mat_add(
        acc, kst_poly_mul(kst_scale(Scalar::from_rational(m.field, Rational(1) / fact), poly),
                          KstMat::lift(power)));
  }
  return {base.basis_slopes, kst_mat_mul(acc, KstMat::lift(base.mat))};
}

KstPoly log_st(const Scalar& q) {
  const LocalField& k = q.field();
  Scalar nu = Scalar::from_rational(k, q.val());
  KstPoly out(k);
  out.coeffs.push_back(branch_log(q) - nu * base_scalar(k, k.branch()));
  out.coeffs.push_back(nu);
  return out;
}

FilPhiNModule transport_filtration(const FilPhiNModule& m, const LocalField& to) {
  ValidationReport rep = validate(m);
  if (!rep.ok()) throw WrongShape("transport_filtration: " + rep.problems.front());
  if (to.p() != m.field.p() || to.e() != m.field.e() || to.precision() != m.field.precision())
    throw WrongShape("transport_filtration: incompatible target field");
  Qp diff = qp_sub(m.field.branch(), to.branch(), m.field.p(), m.field.precision());
  KMat t = exp_nilpotent(scalar_mul(base_scalar(m.field, diff), m.monodromy));
  std::vector<FiltStep> fil;
  for (const FiltStep& fs : m.filtration)
    fil.push_back({fs.step, mat_rebase(mat_mul(t, fs.basis), to)});
  return {to, m.dim, mat_rebase(m.phi, to), mat_rebase(m.monodromy, to), std::move(fil)};
}

Scalar ext_class(const FilPhiNModule& e, int n) {
  Markers mk = ext_markers(e, n);
  require_mixed_tate(e);
  SlopeBasis sb = slope_basis(e);
  KMat act = mat_mul(sb.mat, mat_mul(eta(e).mat, inverse(sb.mat)));
  KMat v = slope_decomposition(e).components.at(0);
  v = scalar_mul(v.at(mk.quo, 0).inv(), v);
  KMat w = mat_mul(act, v);
  return w.at(mk.sub, 0) - v.at(mk.sub, 0);
}

FilPhiNModule ext_build(const Scalar& a, int n) {
  if (n < 1) throw DomainError("ext_build: n must be positive");
  const LocalField& k = a.field();
  KMat phi(k, 2, 2);
  phi.at(0, 0) = p_power(k, -n);
  phi.at(1, 1) = Scalar::one(k);
  KMat line(k, 2, 1);
  line.at(0, 0) = a;
  line.at(1, 0) = Scalar::one(k);
  return {k, 2, phi, KMat(k, 2, 2), {{-n, KMat::identity(k, 2)}, {0, line}}};
}

FilPhiNModule baer_sum(const FilPhiNModule& e, const FilPhiNModule& ep, int n) {
  Markers me = ext_markers(e, n);
  Markers mo = ext_markers(ep, n);
  FilPhiNModule big = direct_sum(e, ep);
  const LocalField& k = big.field;
  // Pull back along the difference of the two quotient maps, then push out
  // along the antidiagonal copy of K(n).
  KMat r(k, 1, 4);
  r.at(0, me.quo) = Scalar::one(k);
  r.at(0, 2 + mo.quo) = -Scalar::one(k);
  KMat bbasis = null_space(r);
  FilPhiNModule pulled = sub_module(big, bbasis);
  KMat anti(k, 4, 1);
  anti.at(me.sub, 0) = Scalar::one(k);
  anti.at(2 + mo.sub, 0) = -Scalar::one(k);
  Quotient q = quotient_module(pulled, solve(bbasis, anti));
  // Fresh markers: the image of e's sub-generator and any lift of the
  // common quotient generator.
  KMat esub(k, 4, 1);
  esub.at(me.sub, 0) = Scalar::one(k);
  KMat u0 = mat_mul(q.proj, solve(bbasis, esub));
  KMat requo(k, 1, 4);
  requo.at(0, me.quo) = Scalar::one(k);
  KMat piq = mat_mul(requo, mat_mul(bbasis, q.section));
  int pick = piq.at(0, 0).is_zero() ? 1 : 0;
  KMat u1(k, 2, 1);
  u1.at(pick, 0) = piq.at(0, pick).inv();
  KMat change = hstack(u0, u1);
  KMat cinv = inverse(change);
  std::map<int, KMat> spans;
  for (const FiltStep& fs : q.mod.filtration) spans.emplace(fs.step, mat_mul(cinv, fs.basis));
  return {k, 2, mat_mul(cinv, mat_mul(q.mod.phi, change)),
          mat_mul(cinv, mat_mul(q.mod.monodromy, change)),
          normalize_filtration(std::move(spans))};
}

FilPhiNModule kummer_module(const Scalar& q) {
  const LocalField& k = q.field();
  Rational nu = q.val();
  KMat phi(k, 2, 2);
  phi.at(0, 0) = Scalar::one(k);
  phi.at(1, 1) = p_power(k, -1);
  KMat nmat(k, 2, 2);
  nmat.at(1, 0) = Scalar::from_rational(k, -nu);
  KMat line(k, 2, 1);
  line.at(0, 0) = Scalar::one(k);
  line.at(1, 0) = branch_log(q);
  return {k, 2, phi, nmat, {{-1, KMat::identity(k, 2)}, {0, line}}};
}

bool is_crystalline(const FilPhiNModule& m) { return mat_is_zero(m.monodromy); }

}  // namespace mtphi
