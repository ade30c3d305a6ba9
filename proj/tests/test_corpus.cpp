#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mtphi/corpus.hpp>
#include <mtphi/errors.hpp>
#include <mtphi/logpoint.hpp>
#include <mtphi/padic.hpp>

using namespace mtphi;

namespace {

LocalField q5(int prec = 16) { return LocalField(5, prec, {}, Rational(0)); }

LocalField q5_ram(int prec = 16) {
  return LocalField(5, prec, {Rational(-5), Rational(0), Rational(1)}, Rational(0));
}

}  // namespace

TEST_CASE("draw helpers stay in range and reproduce") {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 200; i++) {
    long x = draw_long(a, -4, 9);
    CHECK(x >= -4);
    CHECK(x <= 9);
    CHECK(x == draw_long(b, -4, 9));
  }
  Rng c(7);
  for (int i = 0; i < 200; i++) {
    double u = draw_real(c);
    CHECK(u >= -1.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("random field elements have the advertised shape") {
  Rng rng(1);
  for (const LocalField& k : {q5(), q5_ram()}) {
    for (int i = 0; i < 30; i++) {
      Scalar u = random_unit(rng, k);
      CHECK(u.val().is_zero());
      Scalar q = random_q(rng, k);
      CHECK(!q.is_zero());
      CHECK(Rational(-2) <= q.val());
      CHECK(q.val() <= Rational(2));
    }
  }
}

TEST_CASE("random_ceta emits valid objects within the cap") {
  Rng rng(2);
  for (int i = 0; i < 25; i++) {
    const LocalField k = (i % 2 == 0) ? q5() : q5_ram();
    CEtaObject v = random_ceta(rng, k, 6);
    CHECK(validate_ceta(v).ok());
    int total = 0;
    for (const auto& [n, c] : v.dims) {
      CHECK(c > 0);
      total += c;
    }
    CHECK(total >= 1);
    CHECK(total <= 6);
    CHECK(v.eta.nrows == total);
  }
}

TEST_CASE("random_mixed_tate emits valid mixed Tate modules") {
  Rng rng(3);
  bool saw_monodromy = false;
  for (int i = 0; i < 15; i++) {
    const LocalField k = (i % 3 == 2) ? q5_ram(12) : q5(14);
    FilPhiNModule m = random_mixed_tate(rng, k);
    CHECK(validate(m).ok());
    CHECK(is_mixed_tate(m));
    saw_monodromy = saw_monodromy || !is_crystalline(m);
  }
  CHECK(saw_monodromy);

  for (int i = 0; i < 5; i++) {
    FilPhiNModule m = random_mixed_tate(rng, q5(14), true);
    CHECK(validate(m).ok());
    CHECK(!is_crystalline(m));
  }
}

TEST_CASE("random_mths feeds the comparison without throwing") {
  Rng rng(4);
  for (int i = 0; i < 8; i++) {
    RealMTHS h = random_mths(rng, {1, 2, 1});
    CHECK(h.dim == 4);
    ArchComparison d = compute_d(h);
    CHECK(d.weights.size() == 4);
  }
}

TEST_CASE("run_corpus passes and reproduces byte for byte") {
  CorpusReport r = run_corpus(0, 25);
  CHECK(r.ok());
  for (const CorpusLine& l : r.lines) {
    CHECK(l.total == 25);
    CHECK(l.passed == 25);
  }
  CHECK(dump_corpus(r) == dump_corpus(run_corpus(0, 25)));

  CorpusReport empty = run_corpus(9, 0);
  CHECK(empty.ok());
  CHECK(empty.count == 0);

  CHECK(run_corpus(1, 10).ok());
}
