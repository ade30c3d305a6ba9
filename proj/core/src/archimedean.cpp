#include "mtphi/archimedean.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mtphi/errors.hpp"
#include "mtphi/rational.hpp"

namespace mtphi {

namespace {

using Eigen::MatrixXcd;

constexpr double kRelTol = 1e-9;

MatrixXcd from_vectors_c(const std::vector<std::vector<Cplx>>& vs, int dim) {
  MatrixXcd out(dim, static_cast<int>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); j++) {
    if (static_cast<int>(vs[j].size()) != dim)
      throw WrongShape("real mths: basis vector length differs from dim");
    for (int i = 0; i < dim; i++) out(i, static_cast<int>(j)) = vs[j][i];
  }
  return out;
}

MatrixXcd from_vectors_r(const std::vector<std::vector<double>>& vs, int dim) {
  MatrixXcd out(dim, static_cast<int>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); j++) {
    if (static_cast<int>(vs[j].size()) != dim)
      throw WrongShape("real mths: basis vector length differs from dim");
    for (int i = 0; i < dim; i++) out(i, static_cast<int>(j)) = vs[j][i];
  }
  return out;
}

int rank_of(const MatrixXcd& a) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  Eigen::FullPivLU<MatrixXcd> lu(a);
  lu.setThreshold(kRelTol);
  return static_cast<int>(lu.rank());
}

MatrixXcd stack(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

int intersect_dim(const MatrixXcd& a, const MatrixXcd& b) {
  return static_cast<int>(a.cols() + b.cols()) - rank_of(stack(a, b));
}

/// Basis of span(a) /\ span(b), from the kernel of [a | -b].
MatrixXcd intersect_basis(const MatrixXcd& a, const MatrixXcd& b) {
  if (a.cols() == 0 || b.cols() == 0) return MatrixXcd(a.rows(), 0);
  MatrixXcd glued(a.rows(), a.cols() + b.cols());
  glued << a, -b;
  Eigen::FullPivLU<MatrixXcd> lu(glued);
  lu.setThreshold(kRelTol);
  MatrixXcd ker = lu.kernel();
  if (lu.dimensionOfKernel() == 0) return MatrixXcd(a.rows(), 0);
  return a * ker.topRows(a.cols());
}

double max_abs(const MatrixXcd& a) {
  double m = 0;
  for (int i = 0; i < a.rows(); i++)
    for (int j = 0; j < a.cols(); j++) m = std::max(m, std::abs(a(i, j)));
  return m;
}

struct GradedSplitting {
  std::vector<int> weights;  // per column, descending blocks
  MatrixXcd lifts;           // A_F: columns lift the graded basis into F /\ W
};

// Shared validation and construction of the F-splitting.
GradedSplitting build_splitting(const RealMTHS& h) {
  if (h.dim < 0) throw WrongShape("real mths: negative dim");
  int n = h.dim;

  int prev_step = 0;
  bool first = true;
  std::vector<MatrixXcd> wspans;
  std::vector<int> wsteps;
  for (const RWeightStep& ws : h.weights) {
    if (ws.step % 2 != 0) throw NotMTHS("real mths: odd weight step");
    if (!first && ws.step <= prev_step) throw WrongShape("real mths: weight steps not ascending");
    first = false;
    prev_step = ws.step;
    MatrixXcd b = from_vectors_r(ws.basis, n);
    if (rank_of(b) != b.cols()) throw WrongShape("real mths: dependent weight basis");
    wspans.push_back(b);
    wsteps.push_back(ws.step);
  }
  for (std::size_t i = 0; i + 1 < wspans.size(); i++) {
    if (rank_of(stack(wspans[i + 1], wspans[i])) != rank_of(wspans[i + 1]))
      throw NotMTHS("real mths: weight filtration not nested");
  }
  if (n > 0 && (wspans.empty() || rank_of(wspans.back()) != n))
    throw NotMTHS("real mths: weight filtration not exhaustive");

  first = true;
  prev_step = 0;
  std::vector<MatrixXcd> fspans;
  std::vector<int> fsteps;
  for (const RHodgeStep& fs : h.hodge) {
    if (!first && fs.step <= prev_step) throw WrongShape("real mths: hodge steps not ascending");
    first = false;
    prev_step = fs.step;
    MatrixXcd b = from_vectors_c(fs.basis, n);
    if (rank_of(b) != b.cols()) throw WrongShape("real mths: dependent hodge basis");
    fspans.push_back(b);
    fsteps.push_back(fs.step);
  }
  for (std::size_t i = 0; i + 1 < fspans.size(); i++) {
    if (rank_of(stack(fspans[i], fspans[i + 1])) != rank_of(fspans[i]))
      throw NotMTHS("real mths: hodge filtration not nested");
  }
  if (n > 0 && (fspans.empty() || rank_of(fspans.front()) != n))
    throw NotMTHS("real mths: hodge filtration not exhaustive");

  // F^p is the smallest listed step >= p, zero above the largest.
  auto hodge_at = [&](int p) -> MatrixXcd {
    for (std::size_t i = 0; i < fsteps.size(); i++) {
      if (fsteps[i] >= p) return fspans[i];
    }
    return MatrixXcd(n, 0);
  };

  // Graded representatives: scan each W step for vectors extending the span
  // below, so block s holds chosen columns of the listed W_s basis.
  MatrixXcd picked(n, 0);
  std::vector<MatrixXcd> reps(wspans.size());
  std::vector<int> jumps(wspans.size(), 0);
  for (std::size_t i = 0; i < wspans.size(); i++) {
    int before = static_cast<int>(picked.cols());
    reps[i] = MatrixXcd(n, 0);
    for (int c = 0; c < wspans[i].cols(); c++) {
      MatrixXcd grown = stack(picked, wspans[i].col(c));
      if (rank_of(grown) > picked.cols()) {
        picked = grown;
        reps[i] = stack(reps[i], wspans[i].col(c));
      }
    }
    jumps[i] = static_cast<int>(picked.cols()) - before;
  }

  // Bidegree concentration: on Gr_{2i} the induced Hodge filtration jumps
  // exactly at i, with full rank.
  MatrixXcd below(n, 0);
  for (std::size_t i = 0; i < wspans.size(); i++) {
    int half = wsteps[i] / 2;
    MatrixXcd cur = wspans[i];
    int full = intersect_dim(hodge_at(half), cur) - intersect_dim(hodge_at(half), below);
    int above = intersect_dim(hodge_at(half + 1), cur) - intersect_dim(hodge_at(half + 1), below);
    if (full != jumps[i] || above != 0)
      throw NotMTHS("real mths: weight " + std::to_string(wsteps[i]) +
                    " piece not concentrated in bidegree (" + std::to_string(half) + ", " +
                    std::to_string(half) + ")");
    below = cur;
  }

  // Column layout of the ascending incremental basis, for reading off
  // coordinates modulo lower weight.
  MatrixXcd asc(n, 0);
  std::vector<int> offset(wspans.size(), 0);
  for (std::size_t i = 0; i < wspans.size(); i++) {
    offset[i] = static_cast<int>(asc.cols());
    asc = stack(asc, reps[i]);
  }
  Eigen::PartialPivLU<MatrixXcd> asc_lu(asc);

  GradedSplitting out{{}, MatrixXcd(n, 0)};
  for (std::size_t ii = wspans.size(); ii-- > 0;) {
    int m = jumps[ii];
    if (m == 0) continue;
    MatrixXcd space = intersect_basis(hodge_at(wsteps[ii] / 2), wspans[ii]);
    if (space.cols() != m) throw NotMTHS("real mths: splitting space has wrong dimension");
    MatrixXcd coords = asc_lu.solve(space);
    MatrixXcd block = coords.middleRows(offset[ii], m);
    Eigen::FullPivLU<MatrixXcd> block_lu(block);
    block_lu.setThreshold(kRelTol);
    if (block_lu.rank() != m) throw NotMTHS("real mths: splitting map is singular");
    MatrixXcd lifted = space * block_lu.solve(MatrixXcd::Identity(m, m));
    out.lifts = stack(out.lifts, lifted);
    for (int c = 0; c < m; c++) out.weights.push_back(wsteps[ii]);
  }
  return out;
}

std::vector<std::vector<Cplx>> to_rows(const MatrixXcd& a) {
  std::vector<std::vector<Cplx>> out(a.rows(), std::vector<Cplx>(a.cols()));
  for (int i = 0; i < a.rows(); i++)
    for (int j = 0; j < a.cols(); j++) out[i][j] = a(i, j);
  return out;
}

MatrixXcd from_rows(const std::vector<std::vector<Cplx>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  MatrixXcd out(r, c);
  for (int i = 0; i < r; i++) {
    if (static_cast<int>(rows[i].size()) != c) throw WrongShape("ragged matrix rows");
    for (int j = 0; j < c; j++) out(i, j) = rows[i][j];
  }
  return out;
}

MatrixXcd comparison_matrix(const GradedSplitting& s) {
  int n = static_cast<int>(s.weights.size());
  if (n == 0) return MatrixXcd(0, 0);
  MatrixXcd conj_lifts = s.lifts.conjugate();
  MatrixXcd d = Eigen::PartialPivLU<MatrixXcd>(conj_lifts).solve(s.lifts);

  // Entries with row weight >= column weight are structurally identity;
  // snap them and reject anything outside tolerance.
  double tol = kRelTol * std::max(1.0, std::max(max_abs(s.lifts), max_abs(d)));
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      if (s.weights[i] < s.weights[j]) continue;
      Cplx want = i == j ? Cplx(1, 0) : Cplx(0, 0);
      if (std::abs(d(i, j) - want) > tol)
        throw NotMTHS("comparison is not unipotent weight lowering");
      d(i, j) = want;
    }
  }
  if (max_abs(d * d.conjugate() - MatrixXcd::Identity(n, n)) >
      kRelTol * std::max(1.0, max_abs(d)))
    throw NotMTHS("comparison does not invert under conjugation");
  return d;
}

std::vector<Rational> bernoulli_row(int top, bool b1_positive) {
  std::vector<Rational> b(top + 1);
  b[0] = Rational(1);
  for (int m = 1; m <= top; m++) {
    Rational acc;
    BigInt binom = 1;  // C(m+1, j) built up over j
    for (int j = 0; j < m; j++) {
      acc = acc + Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / Rational(m + 1);
  }
  if (b1_positive && top >= 1) b[1] = -b[1];
  return b;
}

}  // namespace

ArchComparison compute_d(const RealMTHS& h) {
  GradedSplitting s = build_splitting(h);
  return {s.weights, to_rows(comparison_matrix(s))};
}

ArchComparison epsilon_arch(const RealMTHS& h) {
  GradedSplitting s = build_splitting(h);
  MatrixXcd d = comparison_matrix(s);
  int n = static_cast<int>(d.rows());
  MatrixXcd x = d - MatrixXcd::Identity(n, n);
  MatrixXcd acc = MatrixXcd::Zero(n, n);
  MatrixXcd power = MatrixXcd::Identity(n, n);
  for (int k = 1; k <= n; k++) {
    power = power * x;
    if (max_abs(power) == 0) break;
    acc += (k % 2 == 1 ? 1.0 : -1.0) / k * power;
  }
  if (max_abs(acc.conjugate() + acc) > kRelTol * std::max(1.0, max_abs(acc)))
    throw NotMTHS("log of the comparison is not purely imaginary");
  return {s.weights, to_rows(acc)};
}

std::vector<std::vector<Cplx>> arch_exp(const std::vector<std::vector<Cplx>>& x) {
  MatrixXcd m = from_rows(x);
  if (m.rows() != m.cols()) throw WrongShape("arch_exp: matrix not square");
  int n = static_cast<int>(m.rows());
  MatrixXcd acc = MatrixXcd::Identity(n, n);
  MatrixXcd power = MatrixXcd::Identity(n, n);
  double fact = 1;
  for (int k = 1; k <= n + 1; k++) {
    power = power * m;
    if (max_abs(power) == 0) break;
    if (k == n + 1) throw NotUnipotent("arch_exp: powers do not vanish");
    fact *= k;
    acc += power / fact;
  }
  return to_rows(acc);
}

Cplx polylog(int k, Cplx z, double tol) {
  if (k < 0) throw DomainError("polylog: negative index");
  double r = std::abs(z);
  if (r > 0.95 + 1e-12) throw DomainError("polylog: |z| exceeds the series disc");
  if (k == 0) return z / (1.0 - z);
  if (r == 0) return Cplx(0, 0);
  Cplx acc(0, 0);
  Cplx zpow(1, 0);
  for (long m = 1; m < 100000; m++) {
    zpow *= z;
    acc += zpow / std::pow(static_cast<double>(m), k);
    // Geometric tail bound: remaining terms are below r^{m+1}/(1-r).
    double tail = std::pow(r, static_cast<double>(m + 1)) / (1.0 - r);
    if (tail < tol) break;
  }
  return acc;
}

Cplx bd_value(int k, Cplx z, double tol, const BDOptions& opt) {
  if (k < 1) throw DomainError("bd_value: index must be positive");
  if (std::abs(z) == 0 || z == Cplx(1, 0)) throw DomainError("bd_value: z must avoid 0 and 1");
  std::vector<Rational> b = bernoulli_row(k, opt.b1_positive);
  double lzz = 2.0 * std::log(std::abs(z));
  bool even = k % 2 == 0;
  double lpow = 1;
  double fact = 1;
  double acc = 0;
  for (int l = 0; l <= k; l++) {
    if (l > 0) {
      lpow *= lzz;
      fact *= l;
    }
    Cplx li = polylog(k - l, z, tol);
    double part = even ? std::imag(li) : std::real(li);
    if (even && opt.conj_i) part = -part;
    acc += b[l].to_double() * lpow / fact * part;
  }
  Cplx two_i = opt.conj_i ? Cplx(0, -2) : Cplx(0, 2);
  return two_i * acc;
}

}  // namespace mtphi
