#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mtphi/errors.hpp>
#include <mtphi/logpoint.hpp>
#include <mtphi/padic.hpp>

using namespace mtphi;

namespace {

LocalField q5(int prec = 16, long branch = 0) {
  return LocalField(5, prec, {}, Rational(branch));
}

// Q_5(sqrt 5), uniformizer pi with pi^2 = 5.
LocalField q5_ram(int prec = 16, long branch = 0) {
  return LocalField(5, prec, {Rational(-5), Rational(0), Rational(1)}, Rational(branch));
}

Scalar sc(const LocalField& k, long n) { return Scalar::from_integer(k, n); }

Scalar frac(const LocalField& k, long n, long d) {
  return Scalar::from_rational(k, Rational(BigInt(n), BigInt(d)));
}

// eta as an operator on the module's own coordinates.
KMat eta_op(const FilPhiNModule& m) {
  SlopeBasis sb = slope_basis(m);
  return mat_mul(sb.mat, mat_mul(eta(m).mat, inverse(sb.mat)));
}

// eta_st at the substitution X = s, as an operator on the coordinates.
KMat eta_st_op_at(const FilPhiNModule& m, const Scalar& s) {
  SlopeBasis sb = slope_basis(m);
  return mat_mul(sb.mat, mat_mul(kst_mat_eval(eta_st(m).mat, s), inverse(sb.mat)));
}

bool same_span(const KMat& a, const KMat& b) {
  return a.ncols == b.ncols && rank(hstack(a, b)) == rank(a);
}

bool poly_eq_rebased(const KstPoly& a, const KstPoly& b, const LocalField& to) {
  KstPoly ar(to);
  for (const Scalar& c : a.coeffs) ar.coeffs.push_back(c.rebase(to));
  KstPoly br(to);
  for (const Scalar& c : b.coeffs) br.coeffs.push_back(c.rebase(to));
  return kst_eq(ar, br);
}

}  // namespace

TEST_CASE("kst polynomial ring") {
  LocalField k = q5();
  KstPoly one = KstPoly::constant(Scalar::one(k));
  KstPoly x = KstPoly::x(k);
  KstPoly sum = kst_add(one, x);
  KstPoly sq = kst_mul(sum, sum);
  CHECK(sq.coeffs.size() == 3);
  CHECK(sq.coeff(0).eq(sc(k, 1)));
  CHECK(sq.coeff(1).eq(sc(k, 2)));
  CHECK(sq.coeff(2).eq(sc(k, 1)));

  KstPoly q(k);
  q.coeffs = {sc(k, 2), sc(k, 3), sc(k, 1)};
  CHECK(kst_eval(q, sc(k, 5)).eq(sc(k, 42)));

  KstPoly padded = x;
  padded.coeffs.push_back(Scalar::zero(k));
  CHECK(kst_eq(padded, x));
  CHECK(kst_is_zero(kst_sub(sq, sq)));
  CHECK(kst_is_zero(KstPoly(k)));
  CHECK_FALSE(kst_eq(x, one));

  KstMat id2 = KstMat::identity(k, 2);
  CHECK(kst_mat_eq(kst_mat_mul(id2, id2), id2));
  CHECK(kst_mat_eval(id2, sc(k, 3)).at(0, 0).eq(sc(k, 1)));
}

TEST_CASE("eta is the identity on sums of tate objects") {
  LocalField k = q5();
  FilPhiNModule m =
      direct_sum(direct_sum(tate_object(k, 0), tate_object(k, 1)), tate_object(k, -2));
  EtaMatrix em = eta(m);
  CHECK(em.basis_slopes == std::vector<int>{2, 0, -1});
  CHECK(mat_eq(em.mat, KMat::identity(k, 3)));
  CHECK(mat_eq(eta_via_deligne(m).mat, KMat::identity(k, 3)));
}

TEST_CASE("kummer module of a unit") {
  LocalField k = q5();
  Scalar u = sc(k, 6);
  FilPhiNModule m = kummer_module(u);
  CHECK(validate(m).ok());
  CHECK(is_crystalline(m));
  CHECK(is_mixed_tate(m));

  EtaMatrix em = eta(m);
  CHECK(em.basis_slopes == std::vector<int>{0, -1});
  CHECK(em.mat.at(0, 0).eq(sc(k, 1)));
  CHECK(em.mat.at(1, 1).eq(sc(k, 1)));
  CHECK(em.mat.at(0, 1).is_zero());
  CHECK(em.mat.at(1, 0).eq(unit_log(u)));
  CHECK(mat_eq(eta_via_deligne(m).mat, em.mat));

  // Crystalline case: no X appears anywhere in eta_st.
  EtaStMatrix st = eta_st(m);
  for (const KstPoly& entry : st.mat.data) CHECK(entry.coeff(1).is_zero());
  CHECK(kst_eq(st.mat.at(1, 0), KstPoly::constant(unit_log(u))));

  CHECK(ext_class(m, 1).eq(unit_log(u)));
}

TEST_CASE("kummer module of p is semistable") {
  for (long branch : {0L, 7L}) {
    LocalField k = q5(16, branch);
    FilPhiNModule m = kummer_module(sc(k, 5));
    CHECK(validate(m).ok());
    CHECK_FALSE(is_crystalline(m));
    CHECK(eta(m).mat.at(1, 0).eq(branch_log(sc(k, 5))));

    // The branch cancels: eta_st is [[1,0],[X,1]] whatever c is.
    EtaStMatrix st = eta_st(m);
    CHECK(kst_eq(st.mat.at(0, 0), KstPoly::constant(Scalar::one(k))));
    CHECK(kst_eq(st.mat.at(1, 1), KstPoly::constant(Scalar::one(k))));
    CHECK(kst_is_zero(st.mat.at(0, 1)));
    CHECK(kst_eq(st.mat.at(1, 0), KstPoly::x(k)));
  }
  CHECK_THROWS_AS(kummer_module(Scalar::zero(q5())), ZeroValuation);
}

TEST_CASE("eta_st lower-left is log_st of q") {
  LocalField k = q5(16, 3);
  for (long q : {5L, 30L, 150L}) {  // p, p u, p^2 u
    Scalar qs = sc(k, q);
    CHECK(kst_eq(eta_st(kummer_module(qs)).mat.at(1, 0), log_st(qs)));
  }
  // Direct expansion oracle for q = p^2 u: exp((c-X)N) eta with N lower-left
  // -2 gives 2X + unit_log(u).
  Scalar q = sc(k, 150);
  KstPoly ll = eta_st(kummer_module(q)).mat.at(1, 0);
  CHECK(ll.coeff(1).eq(sc(k, 2)));
  CHECK(ll.coeff(0).eq(unit_log(sc(k, 6))));

  // Ramified field, q = pi with nu = 1/2.
  LocalField kr = q5_ram(14, 2);
  Scalar pi = Scalar::pi(kr);
  FilPhiNModule mr = kummer_module(pi);
  CHECK(validate(mr).ok());
  KstPoly llr = eta_st(mr).mat.at(1, 0);
  CHECK(kst_eq(llr, log_st(pi)));
  CHECK(llr.coeff(1).eq(frac(kr, 1, 2)));
}

TEST_CASE("log_st") {
  LocalField k = q5(16, 4);
  KstPoly lp = log_st(sc(k, 5));
  CHECK(lp.coeff(0).is_zero());
  CHECK(lp.coeff(1).eq(sc(k, 1)));

  KstPoly lu = log_st(sc(k, 6));
  CHECK(lu.coeff(1).is_zero());
  CHECK(lu.coeff(0).eq(unit_log(sc(k, 6))));

  CHECK(kst_eq(log_st(sc(k, 30)), kst_add(lp, lu)));
  CHECK(kst_eval(log_st(sc(k, 30)), branch_scalar(k)).eq(branch_log(sc(k, 30))));
  CHECK_THROWS_AS(log_st(Scalar::zero(k)), ZeroValuation);
}

TEST_CASE("substituting the branch recovers eta") {
  LocalField k = q5(16, 4);
  FilPhiNModule m = kummer_module(sc(k, 30));
  CHECK(mat_eq(kst_mat_eval(eta_st(m).mat, branch_scalar(k)), eta(m).mat));
}

TEST_CASE("coordinate choice x = p^2 gives the same eta_st") {
  LocalField k = q5(16, 2);
  FilPhiNModule m = kummer_module(sc(k, 5));
  // (log(p^2) - log_st(p^2)) / nu(p^2) in place of (c - X) / 1.
  Scalar p2 = sc(k, 25);
  KstPoly alt_shift = kst_scale(
      frac(k, 1, 2), kst_sub(KstPoly::constant(branch_log(p2)), log_st(p2)));
  KstMat alt = kst_mat_mul(
      kst_mat_add(KstMat::identity(k, 2), kst_poly_mul(alt_shift, KstMat::lift(m.monodromy))),
      KstMat::lift(eta(m).mat));
  CHECK(kst_mat_eq(alt, eta_st(m).mat));
}

TEST_CASE("transport between branches") {
  LocalField f0 = q5(16, 0);
  LocalField f1 = q5(16, 1);
  FilPhiNModule m0 = kummer_module(sc(f0, 5));
  FilPhiNModule moved = transport_filtration(m0, f1);
  CHECK(validate(moved).ok());

  FilPhiNModule built = kummer_module(sc(f1, 5));
  CHECK(mat_eq(moved.phi, built.phi));
  CHECK(mat_eq(moved.monodromy, built.monodromy));
  REQUIRE(moved.filtration.size() == built.filtration.size());
  for (std::size_t i = 0; i < moved.filtration.size(); i++) {
    CHECK(moved.filtration[i].step == built.filtration[i].step);
    CHECK(same_span(moved.filtration[i].basis, built.filtration[i].basis));
  }
  // The marked line moves to the branch-1 log on the nose.
  CHECK(mat_eq(moved.filtration[1].basis, KMat::column_vector(f1, {sc(f1, 1), sc(f1, 1)})));

  // Round trip is the identity.
  FilPhiNModule back = transport_filtration(moved, f0);
  for (std::size_t i = 0; i < back.filtration.size(); i++)
    CHECK(same_span(back.filtration[i].basis, m0.filtration[i].basis));
  CHECK(mat_eq(back.filtration[1].basis, m0.filtration[1].basis));

  // N = 0 modules do not move.
  FilPhiNModule crys = kummer_module(sc(f0, 6));
  FilPhiNModule crys_moved = transport_filtration(crys, f1);
  CHECK(mat_eq(crys_moved.filtration[1].basis,
               KMat::column_vector(f1, {sc(f1, 1), unit_log(sc(f1, 6))})));

  // eta_st does not see the branch at all.
  EtaStMatrix a = eta_st(m0);
  EtaStMatrix b = eta_st(moved);
  for (int i = 0; i < 2; i++)
    for (int j = 0; j < 2; j++) CHECK(poly_eq_rebased(a.mat.at(i, j), b.mat.at(i, j), f0));

  CHECK_THROWS_AS(transport_filtration(m0, q5(12, 1)), WrongShape);
}

TEST_CASE("ext classes round trip") {
  LocalField k = q5(20);
  Scalar a = frac(k, 1, 2);
  FilPhiNModule e = ext_build(a, 2);
  CHECK(validate(e).ok());
  CHECK(is_mixed_tate(e));
  CHECK(ext_class(e, 2).eq(a));

  // Oracle with no eta involved: the marked F^0 line solves directly.
  KMat line = filtration_span_at(e, 0);
  Scalar direct = line.at(0, 0) * line.at(1, 0).inv();
  CHECK(direct.eq(a));

  CHECK(ext_class(ext_build(Scalar::zero(k), 3), 3).is_zero());
  CHECK(ext_class(direct_sum(tate_object(k, 2), tate_object(k, 0)), 2).is_zero());

  LocalField kr = q5_ram(14);
  CHECK(ext_class(ext_build(Scalar::pi(kr), 1), 1).eq(Scalar::pi(kr)));

  CHECK_THROWS_AS(ext_class(kummer_module(sc(k, 6)), 2), WrongShape);
  CHECK_THROWS_AS(ext_class(tate_object(k, 1), 1), WrongShape);
  CHECK_THROWS_AS(ext_build(a, 0), DomainError);
}

TEST_CASE("ext_build of log matches the kummer module for units") {
  LocalField k = q5(16, 3);
  Scalar u = sc(k, 6);
  FilPhiNModule e = ext_build(branch_log(u), 1);
  FilPhiNModule m = kummer_module(u);
  // Same module after swapping the two basis vectors.
  KMat swap(k, 2, 2);
  swap.at(0, 1) = sc(k, 1);
  swap.at(1, 0) = sc(k, 1);
  CHECK(mat_eq(e.phi, mat_mul(swap, mat_mul(m.phi, swap))));
  CHECK(mat_is_zero(m.monodromy));
  CHECK(mat_eq(e.filtration[1].basis, mat_mul(swap, m.filtration[1].basis)));
}

TEST_CASE("baer sum adds classes") {
  LocalField k = q5(20, 7);
  Scalar a = frac(k, 1, 2);
  Scalar b = frac(k, 1, 3);
  FilPhiNModule sum = baer_sum(ext_build(a, 2), ext_build(b, 2), 2);
  CHECK(validate(sum).ok());
  CHECK(is_mixed_tate(sum));
  CHECK(ext_class(sum, 2).eq(frac(k, 5, 6)));

  CHECK(ext_class(baer_sum(ext_build(a, 2), ext_build(Scalar::zero(k), 2), 2), 2).eq(a));
  CHECK(ext_class(baer_sum(ext_build(a, 2), ext_build(-a, 2), 2), 2).is_zero());

  // Mixed marker layouts: kummer stores the sub-object in column 1.
  FilPhiNModule mixed = baer_sum(kummer_module(sc(k, 6)), ext_build(b, 1), 1);
  CHECK(ext_class(mixed, 1).eq(unit_log(sc(k, 6)) + b));

  // Two semistable kummers: monodromy adds up and the class is log(p^2).
  FilPhiNModule semi = baer_sum(kummer_module(sc(k, 5)), kummer_module(sc(k, 5)), 1);
  CHECK(validate(semi).ok());
  CHECK_FALSE(is_crystalline(semi));
  CHECK(semi.monodromy.at(0, 1).eq(sc(k, -2)));
  CHECK(semi.monodromy.at(0, 0).is_zero());
  CHECK(semi.monodromy.at(1, 1).is_zero());
  CHECK(ext_class(semi, 1).eq(branch_log(sc(k, 25))));
}

TEST_CASE("eta is unipotent lower triangular by slope") {
  LocalField k = q5(16, 2);
  FilPhiNModule m = tensor(kummer_module(sc(k, 6)), kummer_module(sc(k, 5)));
  CHECK(validate(m).ok());
  EtaMatrix em = eta(m);
  CHECK(em.basis_slopes == std::vector<int>{0, -1, -1, -2});
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) {
      if (em.basis_slopes[i] > em.basis_slopes[j]) CHECK(em.mat.at(i, j).is_zero());
      if (em.basis_slopes[i] == em.basis_slopes[j]) {
        if (i == j)
          CHECK(em.mat.at(i, j).eq(sc(k, 1)));
        else
          CHECK(em.mat.at(i, j).is_zero());
      }
    }
  CHECK(mat_eq(eta_via_deligne(m).mat, em.mat));
}

TEST_CASE("eta is multiplicative under tensor") {
  LocalField k = q5(16, 2);
  FilPhiNModule m = kummer_module(sc(k, 6));
  FilPhiNModule m2 = ext_build(frac(k, 1, 3), 1);
  FilPhiNModule t = tensor(m, m2);
  CHECK(mat_eq(eta_op(t), kron(eta_op(m), eta_op(m2))));

  // Semistable factors, compared at several substitution points.
  FilPhiNModule s1 = kummer_module(sc(k, 5));
  FilPhiNModule s2 = kummer_module(sc(k, 30));
  FilPhiNModule ts = tensor(s1, s2);
  for (long off : {0L, 1L, -2L}) {
    Scalar at = branch_scalar(k) + sc(k, off);
    CHECK(mat_eq(eta_st_op_at(ts, at), kron(eta_st_op_at(s1, at), eta_st_op_at(s2, at))));
  }
}

TEST_CASE("basis duality pairing") {
  LocalField k = q5(16, 3);
  std::vector<FilPhiNModule> mods;
  mods.push_back(kummer_module(sc(k, 5)));
  mods.push_back(direct_sum(kummer_module(sc(k, 6)), tate_object(k, 2)));
  for (const FilPhiNModule& m : mods) {
    SlopeBasis sb = slope_basis(m);
    KMat sinv = inverse(sb.mat);
    EtaMatrix em = eta(m);
    int d = m.dim;
    for (int j = 0; j < d; j++) {
      int s = sb.slopes[j];
      int lo = 0;
      while (sb.slopes[lo] != s) lo++;
      int hi = lo;
      while (hi < d && sb.slopes[hi] == s) hi++;
      // v_j^{Hodge}: the vector in F^s meet W_{2s} whose slope-s block part
      // is v_j, built here from scratch by intersecting spans.
      std::vector<int> wcols;
      for (int r = lo; r < d; r++) wcols.push_back(r);
      KMat w = take_cols(KMat::identity(k, d), wcols);
      KMat h = intersect_spans(mat_mul(sinv, filtration_span_at(m, s)), w);
      REQUIRE(h.ncols == hi - lo);
      KMat block(k, hi - lo, h.ncols);
      for (int r = lo; r < hi; r++)
        for (int c = 0; c < h.ncols; c++) block.at(r - lo, c) = h.at(r, c);
      KMat rhs(k, hi - lo, 1);
      rhs.at(j - lo, 0) = sc(k, 1);
      KMat hodge = mat_mul(h, solve(block, rhs));
      // v_i^{crys,vee} are the dual slope-basis functionals; pairing them
      // against v_j^{Hodge} must reproduce eta's column j entrywise.
      for (int i = 0; i < d; i++) CHECK(em.mat.at(i, j).eq(hodge.at(i, 0)));
    }
  }
}

TEST_CASE("eta rejects modules that are not mixed tate") {
  LocalField k = q5();
  // Slope-aligned phi but the filtration line falls into the wrong slope.
  KMat phi(k, 2, 2);
  phi.at(0, 0) = sc(k, 1);
  phi.at(1, 1) = frac(k, 1, 5);
  KMat line(k, 2, 1);
  line.at(1, 0) = sc(k, 1);
  FilPhiNModule bad{k, 2, phi, KMat(k, 2, 2),
                    {{-1, KMat::identity(k, 2)}, {0, line}}};
  CHECK_THROWS_AS(eta(bad), NotMixedTatePhi);
  CHECK_THROWS_AS(eta_st(bad), NotMixedTatePhi);
  CHECK_THROWS_AS(ext_class(bad, 1), NotMixedTatePhi);

  // Non-semisimple phi.
  KMat jordan(k, 2, 2);
  jordan.at(0, 0) = sc(k, 1);
  jordan.at(0, 1) = sc(k, 1);
  jordan.at(1, 1) = sc(k, 1);
  FilPhiNModule j{k, 2, jordan, KMat(k, 2, 2), {{0, KMat::identity(k, 2)}}};
  CHECK_THROWS_AS(eta(j), NotMixedTatePhi);
}
