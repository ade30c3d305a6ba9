#include "mtphi/json_io.hpp"

#include <json.hpp>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mtphi/errors.hpp"
#include "mtphi/kst.hpp"

namespace mtphi {

namespace {

using njson = nlohmann::ordered_json;

njson parse_text(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw ParseError("$", e.what());
  }
}

/// Read cursor carrying the JSON path for error reporting.
struct Cur {
  const njson* j;
  std::string path;

  Cur key(const char* k) const {
    if (!j->is_object()) throw ParseError(path, "expected an object");
    auto it = j->find(k);
    if (it == j->end()) throw ParseError(path, std::string("missing key '") + k + "'");
    return {&*it, path + "." + k};
  }
  bool has(const char* k) const { return j->is_object() && j->contains(k); }
  std::size_t size() const {
    if (!j->is_array()) throw ParseError(path, "expected an array");
    return j->size();
  }
  Cur item(std::size_t i) const { return {&(*j)[i], path + "[" + std::to_string(i) + "]"}; }
  long as_int() const {
    if (!j->is_number_integer()) throw ParseError(path, "expected an integer");
    return j->get<long>();
  }
  double as_num() const {
    if (!j->is_number()) throw ParseError(path, "expected a number");
    return j->get<double>();
  }
  std::string as_str() const {
    if (!j->is_string()) throw ParseError(path, "expected a string");
    return j->get<std::string>();
  }
};

Rational rational_at(const Cur& c) {
  try {
    return Rational::parse(c.as_str());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(c.path, e.what());
  }
}

std::string finish(const njson& j) { return j.dump(2) + "\n"; }

njson qp_to_json(const Qp& q, long p) {
  njson digits = njson::array();
  for (std::uint32_t d : qp_digits(q, p)) digits.push_back(d);
  return njson{{"val", q.val}, {"digits", std::move(digits)}};
}

njson scalar_to_json(const Scalar& s) {
  njson coords = njson::array();
  for (const Qp& q : s.coords()) coords.push_back(qp_to_json(q, s.field().p()));
  return njson{{"pi_coeffs", std::move(coords)}};
}

Scalar scalar_at(const Cur& c, const LocalField& k) {
  if (c.has("rational")) return Scalar::from_rational(k, rational_at(c.key("rational")));
  Cur coords = c.key("pi_coeffs");
  if (coords.size() != static_cast<std::size_t>(k.e()))
    throw ParseError(coords.path, "expected one coordinate per pi power");
  std::vector<Qp> out;
  for (std::size_t t = 0; t < coords.size(); t++) {
    Cur coord = coords.item(t);
    long val = coord.key("val").as_int();
    Cur digits = coord.key("digits");
    std::vector<std::uint32_t> ds;
    for (std::size_t i = 0; i < digits.size(); i++) {
      long d = digits.item(i).as_int();
      if (d < 0 || d >= k.p()) throw ParseError(digits.item(i).path, "digit out of range");
      ds.push_back(static_cast<std::uint32_t>(d));
    }
    out.push_back(qp_from_digits(val, ds, k.p(), k.precision()));
  }
  return Scalar::from_coords(k, std::move(out));
}

std::string qp_rational_string(const Qp& q, long p) {
  if (q.is_zero()) return "0";
  if (q.val >= 0) return Rational(q.unit * pow_int(BigInt(p), q.val)).str();
  return Rational(q.unit, pow_int(BigInt(p), -q.val)).str();
}

njson field_to_json(const LocalField& k) {
  njson eis = njson::array();
  for (const Rational& a : k.eisenstein()) eis.push_back(a.str());
  return njson{{"p", k.p()},
               {"precision", k.precision()},
               {"eisenstein", std::move(eis)},
               {"branch", qp_rational_string(k.branch(), k.p())}};
}

LocalField field_at(const Cur& c) {
  long p = c.key("p").as_int();
  long prec = c.key("precision").as_int();
  Cur eis = c.key("eisenstein");
  std::vector<Rational> coeffs;
  for (std::size_t i = 0; i < eis.size(); i++) coeffs.push_back(rational_at(eis.item(i)));
  Rational branch = rational_at(c.key("branch"));
  try {
    return LocalField(p, static_cast<int>(prec), std::move(coeffs), branch);
  } catch (const Error& e) {
    throw ParseError(c.path, e.what());
  }
}

njson mat_to_json(const KMat& m) {
  njson rows = njson::array();
  for (int i = 0; i < m.nrows; i++) {
    njson row = njson::array();
    for (int j = 0; j < m.ncols; j++) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

KMat mat_at(const Cur& c, const LocalField& k, int nrows, int ncols) {
  if (c.size() != static_cast<std::size_t>(nrows)) throw ParseError(c.path, "wrong row count");
  KMat out(k, nrows, ncols);
  for (int i = 0; i < nrows; i++) {
    Cur row = c.item(i);
    if (row.size() != static_cast<std::size_t>(ncols)) throw ParseError(row.path, "wrong row length");
    for (int j = 0; j < ncols; j++) out.at(i, j) = scalar_at(row.item(j), k);
  }
  return out;
}

/// Basis arrays list the vectors; each vector is a column.
njson basis_to_json(const KMat& m) {
  njson cols = njson::array();
  for (int j = 0; j < m.ncols; j++) {
    njson col = njson::array();
    for (int i = 0; i < m.nrows; i++) col.push_back(scalar_to_json(m.at(i, j)));
    cols.push_back(std::move(col));
  }
  return cols;
}

KMat basis_at(const Cur& c, const LocalField& k, int dim) {
  int ncols = static_cast<int>(c.size());
  KMat out(k, dim, ncols);
  for (int j = 0; j < ncols; j++) {
    Cur col = c.item(j);
    if (col.size() != static_cast<std::size_t>(dim))
      throw ParseError(col.path, "basis vector length differs from dim");
    for (int i = 0; i < dim; i++) out.at(i, j) = scalar_at(col.item(i), k);
  }
  return out;
}

njson eta_payload(const std::vector<int>& slopes, const KstMat& m) {
  njson sl = njson::array();
  for (int s : slopes) sl.push_back(s);
  njson rows = njson::array();
  for (int i = 0; i < m.nrows; i++) {
    njson row = njson::array();
    for (int j = 0; j < m.ncols; j++) {
      njson poly = njson::array();
      for (const Scalar& coeff : m.at(i, j).coeffs) poly.push_back(scalar_to_json(coeff));
      row.push_back(std::move(poly));
    }
    rows.push_back(std::move(row));
  }
  return njson{{"basis_slopes", std::move(sl)}, {"entries", std::move(rows)}};
}

njson cplx_to_json(const Cplx& z) { return njson::array({z.real(), z.imag()}); }

Cplx cplx_at(const Cur& c) {
  if (c.size() != 2) throw ParseError(c.path, "expected [re, im]");
  return {c.item(0).as_num(), c.item(1).as_num()};
}

}  // namespace

std::string dump_field(const LocalField& k) { return finish(field_to_json(k)); }

LocalField parse_field(const std::string& text) {
  njson j = parse_text(text);
  return field_at({&j, "$"});
}

std::string dump_scalar(const Scalar& s) { return finish(scalar_to_json(s)); }

Scalar parse_scalar(const std::string& text, const LocalField& k) {
  njson j = parse_text(text);
  return scalar_at({&j, "$"}, k);
}

std::string dump_module(const FilPhiNModule& m) {
  njson steps = njson::array();
  for (const FiltStep& f : m.filtration)
    steps.push_back(njson{{"step", f.step}, {"basis", basis_to_json(f.basis)}});
  return finish(njson{{"field", field_to_json(m.field)},
                      {"dim", m.dim},
                      {"phi", mat_to_json(m.phi)},
                      {"monodromy", mat_to_json(m.monodromy)},
                      {"filtration", std::move(steps)}});
}

FilPhiNModule parse_module(const std::string& text) {
  njson j = parse_text(text);
  Cur c{&j, "$"};
  LocalField k = field_at(c.key("field"));
  long dim = c.key("dim").as_int();
  if (dim < 0) throw ParseError(c.key("dim").path, "negative dim");
  int n = static_cast<int>(dim);
  FilPhiNModule m{k, n, mat_at(c.key("phi"), k, n, n), mat_at(c.key("monodromy"), k, n, n), {}};
  Cur steps = c.key("filtration");
  for (std::size_t i = 0; i < steps.size(); i++) {
    Cur st = steps.item(i);
    int step = static_cast<int>(st.key("step").as_int());
    m.filtration.push_back({step, basis_at(st.key("basis"), k, n)});
  }
  return m;
}

std::string dump_eta(const EtaMatrix& e) {
  return finish(eta_payload(e.basis_slopes, KstMat::lift(e.mat)));
}

std::string dump_eta_st(const EtaStMatrix& e) { return finish(eta_payload(e.basis_slopes, e.mat)); }

EtaStMatrix parse_eta_st(const std::string& text, const LocalField& k) {
  njson j = parse_text(text);
  Cur c{&j, "$"};
  Cur sl = c.key("basis_slopes");
  std::vector<int> slopes;
  for (std::size_t i = 0; i < sl.size(); i++) slopes.push_back(static_cast<int>(sl.item(i).as_int()));
  int n = static_cast<int>(slopes.size());
  Cur rows = c.key("entries");
  if (rows.size() != static_cast<std::size_t>(n)) throw ParseError(rows.path, "wrong row count");
  KstMat m(k, n, n);
  for (int i = 0; i < n; i++) {
    Cur row = rows.item(i);
    if (row.size() != static_cast<std::size_t>(n)) throw ParseError(row.path, "wrong row length");
    for (int jj = 0; jj < n; jj++) {
      Cur poly = row.item(jj);
      KstPoly entry(k);
      for (std::size_t t = 0; t < poly.size(); t++) entry.coeffs.push_back(scalar_at(poly.item(t), k));
      m.at(i, jj) = std::move(entry);
    }
  }
  return {std::move(slopes), std::move(m)};
}

std::string dump_ceta(const CEtaObject& v) {
  njson dims = njson::object();
  for (const auto& [n, count] : v.dims) dims[std::to_string(n)] = count;
  return finish(njson{{"dims", std::move(dims)}, {"eta", mat_to_json(v.eta)}});
}

CEtaObject parse_ceta(const std::string& text, const LocalField& k) {
  njson j = parse_text(text);
  Cur c{&j, "$"};
  Cur dims = c.key("dims");
  if (!dims.j->is_object()) throw ParseError(dims.path, "expected an object");
  std::map<int, int> parsed;
  int total = 0;
  for (auto it = dims.j->begin(); it != dims.j->end(); ++it) {
    int degree = 0;
    try {
      std::size_t used = 0;
      degree = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(dims.path + "." + it.key(), "key is not an integer degree");
    }
    Cur count{&it.value(), dims.path + "." + it.key()};
    parsed[degree] = static_cast<int>(count.as_int());
    total += parsed[degree];
  }
  return {k, std::move(parsed), mat_at(c.key("eta"), k, total, total)};
}

std::string dump_lie(const LieProfile& p) {
  njson j = njson::array();
  for (long long d : p.dims) j.push_back(d);
  return j.dump() + "\n";
}

std::string dump_mths(const RealMTHS& h) {
  njson weights = njson::array();
  for (const RWeightStep& w : h.weights) {
    njson basis = njson::array();
    for (const auto& v : w.basis) basis.push_back(njson(v));
    weights.push_back(njson{{"step", w.step}, {"basis", std::move(basis)}});
  }
  njson hodge = njson::array();
  for (const RHodgeStep& f : h.hodge) {
    njson basis = njson::array();
    for (const auto& v : f.basis) {
      njson vec = njson::array();
      for (const Cplx& z : v) vec.push_back(cplx_to_json(z));
      basis.push_back(std::move(vec));
    }
    hodge.push_back(njson{{"step", f.step}, {"basis", std::move(basis)}});
  }
  return finish(njson{{"dim", h.dim}, {"weights", std::move(weights)}, {"hodge", std::move(hodge)}});
}

RealMTHS parse_mths(const std::string& text) {
  njson j = parse_text(text);
  Cur c{&j, "$"};
  RealMTHS h;
  h.dim = static_cast<int>(c.key("dim").as_int());
  Cur weights = c.key("weights");
  for (std::size_t i = 0; i < weights.size(); i++) {
    Cur st = weights.item(i);
    RWeightStep step;
    step.step = static_cast<int>(st.key("step").as_int());
    Cur basis = st.key("basis");
    for (std::size_t v = 0; v < basis.size(); v++) {
      Cur vec = basis.item(v);
      std::vector<double> entries;
      for (std::size_t t = 0; t < vec.size(); t++) entries.push_back(vec.item(t).as_num());
      step.basis.push_back(std::move(entries));
    }
    h.weights.push_back(std::move(step));
  }
  Cur hodge = c.key("hodge");
  for (std::size_t i = 0; i < hodge.size(); i++) {
    Cur st = hodge.item(i);
    RHodgeStep step;
    step.step = static_cast<int>(st.key("step").as_int());
    Cur basis = st.key("basis");
    for (std::size_t v = 0; v < basis.size(); v++) {
      Cur vec = basis.item(v);
      std::vector<Cplx> entries;
      for (std::size_t t = 0; t < vec.size(); t++) entries.push_back(cplx_at(vec.item(t)));
      step.basis.push_back(std::move(entries));
    }
    h.hodge.push_back(std::move(step));
  }
  return h;
}

std::string dump_arch(const ArchComparison& a) {
  njson weights = njson::array();
  for (int w : a.weights) weights.push_back(w);
  njson rows = njson::array();
  for (const auto& row : a.mat) {
    njson r = njson::array();
    for (const Cplx& z : row) r.push_back(cplx_to_json(z));
    rows.push_back(std::move(r));
  }
  return finish(njson{{"weights", std::move(weights)}, {"mat", std::move(rows)}});
}

std::string dump_validation(const ValidationReport& r) {
  njson problems = njson::array();
  for (const std::string& p : r.problems) problems.push_back(p);
  return finish(njson{{"ok", r.ok()}, {"problems", std::move(problems)}});
}

}  // namespace mtphi
