#include "mtphi/corpus.hpp"

#include <json.hpp>
#include <algorithm>
#include <utility>

#include "mtphi/errors.hpp"
#include "mtphi/logpoint.hpp"

namespace mtphi {

long draw_long(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double draw_real(Rng& rng) { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1p-53) - 1.0; }

Scalar random_unit(Rng& rng, const LocalField& k) {
  long u0 = draw_long(rng, 1, 8 * k.p());
  if (u0 % k.p() == 0) u0 += 1;
  Scalar s = Scalar::from_integer(k, u0);
  for (int t = 1; t < k.e(); t++)
    s = s + Scalar::from_integer(k, draw_long(rng, -5, 5)) * Scalar::pi(k).pow(t);
  return s;
}

Scalar random_q(Rng& rng, const LocalField& k) {
  return random_unit(rng, k) * Scalar::pi(k).pow(draw_long(rng, -2, 2));
}

namespace {

/// Small element for comparison-point entries: a modest rational, plus a
/// pi-contribution over ramified fields.
Scalar random_entry(Rng& rng, const LocalField& k) {
  Scalar s = Scalar::from_rational(
      k, Rational(BigInt(draw_long(rng, -9, 9)), BigInt(draw_long(rng, 1, 3))));
  if (k.e() > 1 && draw_long(rng, 0, 1) == 0)
    s = s + Scalar::from_integer(k, draw_long(rng, -3, 3)) * Scalar::pi(k);
  return s;
}

std::vector<int> expand_degrees(const CEtaObject& v) {
  std::vector<int> out;
  for (const auto& [n, count] : v.dims)
    for (int j = 0; j < count; j++) out.push_back(n);
  return out;
}

FilPhiNModule random_piece(Rng& rng, const LocalField& k, bool force_nonunit) {
  if (force_nonunit) {
    long v = draw_long(rng, 1, 2);
    return kummer_module(random_unit(rng, k) * Scalar::pi(k).pow(v));
  }
  switch (draw_long(rng, 0, 2)) {
    case 0:
      return tate_object(k, static_cast<int>(draw_long(rng, -2, 2)));
    case 1:
      return kummer_module(random_unit(rng, k));
    default:
      return kummer_module(random_q(rng, k));
  }
}

void shear_conjugate(Rng& rng, FilPhiNModule& m) {
  if (m.dim < 2) return;
  KMat g = KMat::identity(m.field, m.dim);
  long shears = draw_long(rng, 1, 3);
  for (long s = 0; s < shears; s++) {
    int i = static_cast<int>(draw_long(rng, 0, m.dim - 1));
    int j = static_cast<int>(draw_long(rng, 0, m.dim - 1));
    if (i == j) continue;
    KMat e = KMat::identity(m.field, m.dim);
    e.at(i, j) = Scalar::from_integer(m.field, draw_long(rng, -3, 3));
    g = mat_mul(g, e);
  }
  KMat gi = inverse(g);
  m.phi = mat_mul(g, mat_mul(m.phi, gi));
  m.monodromy = mat_mul(g, mat_mul(m.monodromy, gi));
  for (FiltStep& f : m.filtration) f.basis = mat_mul(g, f.basis);
}

}  // namespace

CEtaObject random_ceta(Rng& rng, const LocalField& k, int max_dim) {
  long groups = draw_long(rng, 1, 3);
  int deg = static_cast<int>(draw_long(rng, -2, 2));
  std::map<int, int> dims;
  int total = 0;
  for (long g = 0; g < groups; g++) {
    int room = max_dim - total - static_cast<int>(groups - 1 - g);
    if (room < 1) break;
    int c = static_cast<int>(draw_long(rng, 1, std::min(3, room)));
    dims[deg] = c;
    total += c;
    deg += static_cast<int>(draw_long(rng, 1, 2));
  }
  CEtaObject v{k, std::move(dims), KMat::identity(k, total)};
  std::vector<int> degrees = expand_degrees(v);
  for (int r = 0; r < total; r++)
    for (int c = 0; c < total; c++)
      if (degrees[r] > degrees[c] && draw_long(rng, 0, 2) > 0) v.eta.at(r, c) = random_entry(rng, k);
  return v;
}

FilPhiNModule random_mixed_tate(Rng& rng, const LocalField& k, bool with_monodromy) {
  FilPhiNModule m = random_piece(rng, k, with_monodromy);
  long extra = draw_long(rng, 0, 2);
  for (long i = 0; i < extra && m.dim < 5; i++) m = direct_sum(m, random_piece(rng, k, false));
  if (draw_long(rng, 0, 1) == 0) m = tate_twist(m, static_cast<int>(draw_long(rng, -1, 1)));
  shear_conjugate(rng, m);
  return m;
}

RealMTHS random_mths(Rng& rng, const std::vector<int>& block_dims) {
  int n = 0;
  for (int m : block_dims) n += m;
  std::vector<std::vector<double>> t;
  while (true) {
    t.assign(n, std::vector<double>(n));
    for (auto& row : t)
      for (double& e : row) e = draw_real(rng);
    // Redraw until comfortably invertible.
    std::vector<std::vector<double>> g = t;
    bool ok = true;
    for (int c = 0; c < n && ok; c++) {
      int best = c;
      for (int r = c + 1; r < n; r++)
        if (std::abs(g[r][c]) > std::abs(g[best][c])) best = r;
      std::swap(g[c], g[best]);
      if (std::abs(g[c][c]) < 0.05) ok = false;
      for (int r = c + 1; r < n && ok; r++) {
        double f = g[r][c] / g[c][c];
        for (int kk = c; kk < n; kk++) g[r][kk] -= f * g[c][kk];
      }
    }
    if (ok) break;
  }
  auto column = [&](int j) {
    std::vector<double> out(n);
    for (int i = 0; i < n; i++) out[i] = t[i][j];
    return out;
  };
  std::vector<int> starts(block_dims.size(), 0);
  for (std::size_t b = 1; b < block_dims.size(); b++) starts[b] = starts[b - 1] + block_dims[b - 1];

  RealMTHS h;
  h.dim = n;
  for (std::size_t b = block_dims.size(); b-- > 0;) {
    RWeightStep step;
    step.step = -2 * static_cast<int>(b);
    for (std::size_t bb = b; bb < block_dims.size(); bb++)
      for (int j = 0; j < block_dims[bb]; j++) step.basis.push_back(column(starts[bb] + j));
    h.weights.push_back(step);
  }
  std::vector<std::vector<Cplx>> lifts;
  for (std::size_t b = 0; b < block_dims.size(); b++) {
    RHodgeStep step;
    step.step = -static_cast<int>(b);
    for (int j = 0; j < block_dims[b]; j++) {
      std::vector<Cplx> v(n, Cplx(0, 0));
      std::vector<double> base = column(starts[b] + j);
      for (int i = 0; i < n; i++) v[i] = base[i];
      for (std::size_t bb = b + 1; bb < block_dims.size(); bb++) {
        for (int jj = 0; jj < block_dims[bb]; jj++) {
          double re = draw_real(rng);
          double im = draw_real(rng);
          std::vector<double> low = column(starts[bb] + jj);
          for (int i = 0; i < n; i++) v[i] += Cplx(re, im) * low[i];
        }
      }
      lifts.push_back(v);
    }
    step.basis = lifts;  // F^{-b} gathers every lift so far
    h.hodge.insert(h.hodge.begin(), step);
  }
  return h;
}

bool CorpusReport::ok() const {
  for (const CorpusLine& l : lines)
    if (l.passed != l.total) return false;
  return true;
}

CorpusReport run_corpus(std::uint64_t seed, int count) {
  CorpusReport rep;
  rep.seed = seed;
  rep.count = count;
  rep.lines = {{"ceta valid", 0, count},      {"module valid", 0, count},
               {"crystalline", 0, count},     {"mixed tate both routes", 0, count},
               {"polygon equality", 0, count}, {"psi round trip", 0, count},
               {"eta route match", 0, count}, {"reconstruct eta", 0, count},
               {"grade action law", 0, count}};
  Rng rng(seed);
  for (int i = 0; i < count; i++) {
    LocalField k = (i % 3 == 0) ? LocalField(5, 16, {}, Rational(0))
                 : (i % 3 == 1) ? LocalField(3, 14, {}, Rational(0))
                                : LocalField(5, 12, {Rational(-5), Rational(0), Rational(1)},
                                             Rational(0));
    std::vector<bool> got(rep.lines.size(), false);
    try {
      CEtaObject v = random_ceta(rng, k, 6);
      got[0] = validate_ceta(v).ok();
      FilPhiNModule m = phi_inv(v);
      got[1] = validate(m).ok();
      got[2] = is_crystalline(m);
      got[3] = is_mixed_tate(m) && mt_criterion(m);
      got[4] = newton_polygon(m) == hodge_polygon(m);
      CEtaObject w = psi(m);
      got[5] = w.dims == v.dims && mat_eq(w.eta, v.eta);
      EtaMatrix e1 = eta(m);
      EtaMatrix e2 = eta_via_deligne(m);
      got[6] = e1.basis_slopes == e2.basis_slopes && mat_eq(e1.mat, e2.mat);
      got[7] = mat_eq(reconstruct_eta(v), v.eta);
      Scalar two = Scalar::from_integer(k, 2);
      CEtaObject scaled = grade_action(two, v);
      std::vector<int> degrees = expand_degrees(v);
      bool law = mat_eq(grade_action(Scalar::one(k), v).eta, v.eta);
      for (int r = 0; r < v.eta.nrows && law; r++)
        for (int c = 0; c < v.eta.ncols && law; c++)
          law = scaled.eta.at(r, c).eq(v.eta.at(r, c) * two.pow(degrees[r] - degrees[c]));
      got[8] = law;
    } catch (const Error&) {
      got.assign(rep.lines.size(), false);
    }
    for (std::size_t l = 0; l < rep.lines.size(); l++)
      if (got[l]) rep.lines[l].passed += 1;
  }
  return rep;
}

std::string dump_corpus(const CorpusReport& r) {
  nlohmann::ordered_json lines = nlohmann::ordered_json::array();
  for (const CorpusLine& l : r.lines)
    lines.push_back({{"name", l.name}, {"pass", l.passed == l.total}, {"passed", l.passed},
                     {"total", l.total}});
  nlohmann::ordered_json j{
      {"seed", r.seed}, {"count", r.count}, {"ok", r.ok()}, {"invariants", std::move(lines)}};
  return j.dump(2) + "\n";
}

}  // namespace mtphi
