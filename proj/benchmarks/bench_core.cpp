#include <benchmark/benchmark.h>

#include <mtphi/corpus.hpp>
#include <mtphi/filmod.hpp>
#include <mtphi/logpoint.hpp>
#include <mtphi/matrix.hpp>
#include <mtphi/padic.hpp>

using namespace mtphi;

namespace {

LocalField ramified(int prec) {
  return LocalField(5, prec, {Rational(-5), Rational(0), Rational(1)}, Rational(0));
}

KMat dense(const LocalField& k, int n) {
  KMat m(k, n, n);
  long v = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      v = (v * 31 + 17) % 97;
      m.at(i, j) = Scalar::from_integer(k, v + (i == j ? 97 : 0));
    }
  return m;
}

void bm_scalar_mul(benchmark::State& state) {
  LocalField k = ramified(static_cast<int>(state.range(0)));
  Scalar a = Scalar::from_integer(k, 1234567) + Scalar::pi(k);
  Scalar b = Scalar::from_integer(k, 7654321) + Scalar::from_integer(k, 3) * Scalar::pi(k);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_scalar_mul)->Arg(20)->Arg(100);

void bm_scalar_inv(benchmark::State& state) {
  LocalField k = ramified(static_cast<int>(state.range(0)));
  Scalar a = Scalar::from_integer(k, 1234567) + Scalar::pi(k);
  for (auto _ : state) benchmark::DoNotOptimize(a.inv());
}
BENCHMARK(bm_scalar_inv)->Arg(20)->Arg(100);

void bm_unit_log(benchmark::State& state) {
  LocalField k(5, static_cast<int>(state.range(0)), {}, Rational(0));
  Scalar u = Scalar::one(k) + Scalar::from_integer(k, 5);
  for (auto _ : state) benchmark::DoNotOptimize(unit_log(u));
}
BENCHMARK(bm_unit_log)->Arg(20)->Arg(60);

void bm_mat_inverse(benchmark::State& state) {
  LocalField k(5, 40, {}, Rational(0));
  KMat m = dense(k, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inverse(m));
}
BENCHMARK(bm_mat_inverse)->Arg(4)->Arg(8);

void bm_slope_decomposition(benchmark::State& state) {
  LocalField k(5, 30, {}, Rational(0));
  FilPhiNModule m = tate_object(k, 0);
  for (int n = 1; n < 4; ++n) m = direct_sum(m, tate_object(k, n));
  for (auto _ : state) benchmark::DoNotOptimize(slope_decomposition(m));
}
BENCHMARK(bm_slope_decomposition);

FilPhiNModule tensor_square(const LocalField& k) {
  FilPhiNModule kum = kummer_module(Scalar::from_integer(k, 6));
  return tensor(kum, kummer_module(Scalar::from_integer(k, 7)));
}

void bm_eta(benchmark::State& state) {
  LocalField k(5, static_cast<int>(state.range(0)), {}, Rational(0));
  FilPhiNModule m = tensor_square(k);
  for (auto _ : state) benchmark::DoNotOptimize(eta(m));
}
BENCHMARK(bm_eta)->Arg(20)->Arg(60);

void bm_eta_st(benchmark::State& state) {
  LocalField k(5, static_cast<int>(state.range(0)), {}, Rational(0));
  FilPhiNModule m = kummer_module(Scalar::from_integer(k, 10));
  for (auto _ : state) benchmark::DoNotOptimize(eta_st(m));
}
BENCHMARK(bm_eta_st)->Arg(20)->Arg(60);

void bm_psi_round_trip(benchmark::State& state) {
  LocalField k(5, 20, {}, Rational(0));
  Rng rng(1);
  CEtaObject v = random_ceta(rng, k, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi(phi_inv(v)));
}
BENCHMARK(bm_psi_round_trip)->Arg(3)->Arg(6);

void bm_lie_dims(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lie_dims(2, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_lie_dims)->Arg(6)->Arg(9);

void bm_compute_d(benchmark::State& state) {
  Rng rng(2);
  RealMTHS h = random_mths(rng, {2, 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(compute_d(h));
}
BENCHMARK(bm_compute_d);

void bm_corpus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_corpus(0, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_corpus)->Arg(5)->Arg(25);

}  // namespace

BENCHMARK_MAIN();
