#include "mtphi/grading.hpp"

#include <utility>
#include <vector>

#include "mtphi/errors.hpp"
#include "mtphi/logpoint.hpp"

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

/// Degree of each basis index, in ascending block order.
std::vector<int> degree_layout(const std::map<int, int>& dims) {
  std::vector<int> out;
  for (const auto& [n, count] : dims)
    for (int t = 0; t < count; t++) out.push_back(n);
  return out;
}

Scalar apply_functional(const KFunctional& f, const Scalar& s) {
  const LocalField& k = s.field();
  Scalar acc = Scalar::zero(k);
  for (int t = 0; t < k.e(); t++) acc = acc + f[t] * base_scalar(k, s.coords()[t]);
  return acc;
}

KMat beta_from_log(const KMat& lg, const std::vector<int>& degree, int i,
                   const KFunctional& f) {
  KMat out(lg.field, lg.nrows, lg.ncols);
  for (int r = 0; r < lg.nrows; r++)
    for (int c = 0; c < lg.ncols; c++)
      if (degree[r] == degree[c] + i) out.at(r, c) = apply_functional(f, lg.at(r, c));
  return out;
}

}  // namespace

ValidationReport validate_ceta(const CEtaObject& v) {
  ValidationReport rep;
  auto bad = [&rep](const std::string& s) { rep.problems.push_back(s); };
  int total = 0;
  for (const auto& [n, count] : v.dims) {
    if (count < 0) bad("negative dimension in degree " + std::to_string(n));
    total += count > 0 ? count : 0;
  }
  if (v.eta.nrows != total || v.eta.ncols != total) {
    bad("eta is not square of the total dimension");
    return rep;
  }
  std::vector<int> degree = degree_layout(v.dims);
  for (int r = 0; r < total; r++)
    for (int c = 0; c < total; c++) {
      if (degree[r] > degree[c]) continue;
      bool diag = r == c;
      Scalar want = diag ? Scalar::one(v.field) : Scalar::zero(v.field);
      if (!v.eta.at(r, c).eq(want))
        bad("eta fails to be unipotent towards higher degrees at (" + std::to_string(r) +
            ", " + std::to_string(c) + ")");
    }
  return rep;
}

CEtaObject psi(const FilPhiNModule& m) {
  if (!is_crystalline(m)) throw WrongShape("psi: module must be crystalline");
  EtaMatrix em = eta(m);
  std::map<int, int> dims;
  for (int s : em.basis_slopes) dims[-s]++;
  return {m.field, std::move(dims), em.mat};
}

FilPhiNModule phi_inv(const CEtaObject& v) {
  ValidationReport rep = validate_ceta(v);
  if (!rep.ok()) throw WrongShape("phi_inv: " + rep.problems.front());
  const LocalField& k = v.field;
  std::vector<int> degree = degree_layout(v.dims);
  int d = static_cast<int>(degree.size());
  KMat phi(k, d, d);
  for (int j = 0; j < d; j++) phi.at(j, j) = p_power(k, -degree[j]);
  std::map<int, KMat> spans;
  int upto = 0;
  for (const auto& [n, count] : v.dims) {
    upto += count;
    std::vector<int> idx;
    for (int j = 0; j < upto; j++) idx.push_back(j);
    spans.emplace(-n, take_cols(v.eta, idx));
  }
  return {k, d, phi, KMat(k, d, d), normalize_filtration(std::move(spans))};
}

KMat nilpotent_log(const KMat& u) {
  if (u.nrows != u.ncols) throw WrongShape("nilpotent_log: matrix must be square");
  int d = u.nrows;
  KMat x = mat_sub(u, KMat::identity(u.field, d));
  KMat acc(u.field, d, d);
  KMat power = KMat::identity(u.field, d);
  for (int k = 1; k <= d; k++) {
    power = mat_mul(power, x);
    if (mat_is_zero(power)) break;
    if (k == d) throw NotUnipotent("nilpotent_log: matrix is not unipotent");
    Rational coeff{BigInt(k % 2 == 1 ? 1 : -1), BigInt(k)};
    acc = mat_add(acc, scalar_mul(Scalar::from_rational(u.field, coeff), power));
  }
  return acc;
}

KMat nilpotent_exp(const KMat& x) {
  if (x.nrows != x.ncols) throw WrongShape("nilpotent_exp: matrix must be square");
  int d = x.nrows;
  KMat acc = KMat::identity(x.field, d);
  KMat power = KMat::identity(x.field, d);
  Rational fact(1);
  for (int k = 1; k <= d; k++) {
    power = mat_mul(power, x);
    if (mat_is_zero(power)) break;
    if (k == d) throw NotUnipotent("nilpotent_exp: matrix is not nilpotent");
    fact = fact * Rational(k);
    acc = mat_add(acc, scalar_mul(Scalar::from_rational(x.field, Rational(1) / fact), power));
  }
  return acc;
}

KMat generator_action(const CEtaObject& v, int i, const KFunctional& f) {
  if (i < 1) throw DomainError("generator_action: degree step must be positive");
  if (static_cast<int>(f.size()) != v.field.e())
    throw WrongShape("generator_action: functional has wrong coordinate count");
  return beta_from_log(nilpotent_log(v.eta), degree_layout(v.dims), i, f);
}

KMat reconstruct_eta(const CEtaObject& v, const std::vector<Scalar>& basis) {
  const LocalField& k = v.field;
  int e = k.e();
  if (static_cast<int>(basis.size()) != e)
    throw WrongShape("reconstruct_eta: need a full basis of K over the base");
  KMat bm(k, e, e);
  for (int j = 0; j < e; j++)
    for (int t = 0; t < e; t++) bm.at(t, j) = base_scalar(k, basis[j].coords()[t]);
  KMat duals = inverse(bm);
  std::vector<int> degree = degree_layout(v.dims);
  int d = static_cast<int>(degree.size());
  KMat lg = nilpotent_log(v.eta);
  KMat rho(k, d, d);
  int top = d == 0 ? 0 : degree.back() - degree.front();
  for (int i = 1; i <= top; i++)
    for (int j = 0; j < e; j++) {
      KFunctional f;
      for (int t = 0; t < e; t++) f.push_back(duals.at(j, t));
      rho = mat_add(rho, scalar_mul(basis[j], beta_from_log(lg, degree, i, f)));
    }
  return nilpotent_exp(rho);
}

KMat reconstruct_eta(const CEtaObject& v) {
  std::vector<Scalar> basis;
  for (int t = 0; t < v.field.e(); t++) basis.push_back(Scalar::pi(v.field).pow(t));
  return reconstruct_eta(v, basis);
}

CEtaObject grade_action(const Scalar& t, const CEtaObject& v) {
  if (t.is_zero()) throw DomainError("grade_action: scalar must be invertible");
  std::vector<int> degree = degree_layout(v.dims);
  KMat out = v.eta;
  for (int r = 0; r < out.nrows; r++)
    for (int c = 0; c < out.ncols; c++)
      if (degree[r] != degree[c]) out.at(r, c) = t.pow(degree[r] - degree[c]) * out.at(r, c);
  return {v.field, v.dims, out};
}

namespace {

/// Prenecklace depth-first search; a prefix whose period equals its length
/// is a Lyndon word and is counted at its total weight.
struct LyndonCounter {
  int letters;
  long per_weight;
  int cutoff;
  std::vector<long long> counts;
  std::vector<int> word;

  int weight_of(int a) const { return a / static_cast<int>(per_weight) + 1; }

  void extend(int len, int period, int weight) {
    for (int a = word[len + 1 - period]; a < letters; a++) {
      int w = weight + weight_of(a);
      if (w > cutoff) break;
      word[len + 1] = a;
      int np = a == word[len + 1 - period] ? period : len + 1;
      if (np == len + 1) counts[w]++;
      extend(len + 1, np, w);
    }
  }

  void run() {
    counts.assign(cutoff + 1, 0);
    word.assign(cutoff + 2, 0);
    extend(0, 1, 0);
  }
};

}  // namespace

LieProfile lie_dims(long d, int cutoff) {
  if (d < 1) throw DomainError("lie_dims: need at least one generator per degree");
  if (d > 1000000) throw DomainError("lie_dims: generator count out of range");
  if (cutoff < 1 || cutoff > 12)
    throw DomainError("lie_dims: cutoff must lie in 1..12");
  LyndonCounter counter{cutoff * static_cast<int>(d), d, cutoff, {}, {}};
  counter.run();
  LieProfile out{d, cutoff, {}};
  for (int n = 1; n <= cutoff; n++) out.dims.push_back(counter.counts[n]);
  return out;
}

}  // namespace mtphi
