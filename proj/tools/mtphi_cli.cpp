#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <mtphi/archimedean.hpp>
#include <mtphi/corpus.hpp>
#include <mtphi/errors.hpp>
#include <mtphi/grading.hpp>
#include <mtphi/json_io.hpp>
#include <mtphi/logpoint.hpp>

using namespace mtphi;
namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

namespace {

/// Raised after diagnostics have already gone to standard error; main maps
/// it to the validation-failure exit code.
struct CheckFailed {};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open input");
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot open output");
  out << bytes;
}

struct FieldSpec {
  std::string file;
  long p = 0;
  int precision = 0;
  std::string branch;
};

void add_field_flags(CLI::App* cmd, FieldSpec& spec) {
  cmd->add_option("--field", spec.file, "field description file");
  cmd->add_option("--p", spec.p, "residue characteristic");
  cmd->add_option("--precision", spec.precision, "tracked digits per coordinate");
  cmd->add_option("--branch", spec.branch, "value assigned to log p, as a rational");
}

int default_precision() {
  if (const char* env = std::getenv("MTPHI_PRECISION")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 20;
}

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw ParseError(flag, e.what());
  }
}

/// Flag precedence: explicit flags beat the field file, which beats the
/// MTPHI_PRECISION default; without a file the base field is Q_p.
LocalField resolve_field(const FieldSpec& spec) {
  if (!spec.file.empty()) {
    LocalField base = parse_field(read_input(spec.file));
    if (spec.p != 0 && spec.p != base.p())
      throw ParseError("--p", "conflicts with the field file");
    int prec = spec.precision != 0 ? spec.precision : base.precision();
    if (!spec.branch.empty())
      return LocalField(base.p(), prec, base.eisenstein(), rational_flag(spec.branch, "--branch"));
    return LocalField(base.p(), prec, base.eisenstein(), base.branch());
  }
  long p = spec.p != 0 ? spec.p : 5;
  int prec = spec.precision != 0 ? spec.precision : default_precision();
  Rational branch = spec.branch.empty() ? Rational(0) : rational_flag(spec.branch, "--branch");
  return LocalField(p, prec, {}, branch);
}

FilPhiNModule valid_module(const std::string& text) {
  FilPhiNModule m = parse_module(text);
  ValidationReport r = validate(m);
  if (!r.ok()) {
    for (const std::string& p : r.problems) std::cerr << p << "\n";
    throw CheckFailed{};
  }
  return m;
}

CEtaObject valid_ceta(const std::string& text, const LocalField& k) {
  CEtaObject v = parse_ceta(text, k);
  ValidationReport r = validate_ceta(v);
  if (!r.ok()) {
    for (const std::string& p : r.problems) std::cerr << p << "\n";
    throw CheckFailed{};
  }
  return v;
}

/// The two-step extensions carry degrees {0, n}; when --n is not given it
/// is read off the slope decomposition.
int infer_n(const FilPhiNModule& m) {
  SlopeBasis sb = slope_basis(m);
  int lowest = 0;
  for (int s : sb.slopes) lowest = std::min(lowest, s);
  return -lowest;
}

Cplx parse_cplx(const std::string& text, const char* flag) {
  try {
    std::size_t used = 0;
    double re = std::stod(text, &used);
    if (used == text.size()) return {re, 0.0};
    if (text[used] != ',') throw ParseError(flag, "expected re or re,im");
    std::size_t used2 = 0;
    double im = std::stod(text.substr(used + 1), &used2);
    if (used + 1 + used2 != text.size()) throw ParseError(flag, "expected re or re,im");
    return {re, im};
  } catch (const std::exception&) {
    throw ParseError(flag, "expected re or re,im");
  }
}

std::string op_crystalline(const FilPhiNModule& m) {
  njson j{{"crystalline", is_crystalline(m)}};
  return j.dump(2) + "\n";
}

std::string op_reconstruct(const CEtaObject& v) {
  CEtaObject out{v.field, v.dims, reconstruct_eta(v)};
  return dump_ceta(out);
}

std::string op_polylog(int k, Cplx z, double tol, bool bd, const BDOptions& opt) {
  Cplx value = bd ? bd_value(k, z, tol, opt) : polylog(k, z, tol);
  njson j{{"k", k},
          {"z", {z.real(), z.imag()}},
          {"value", {value.real(), value.imag()}}};
  return j.dump(2) + "\n";
}

/// Golden-corpus dispatch: one self-describing input object per case.
std::string golden_output(const njson& input) {
  if (!input.is_object() || !input.contains("command") || !input["command"].is_string())
    throw ParseError("$", "golden input needs a command");
  std::string cmd = input["command"].get<std::string>();
  auto module_in = [&](const char* key) { return valid_module(input.at(key).dump()); };
  auto field_in = [&]() { return parse_field(input.at("field").dump()); };
  auto int_in = [&](const char* key, long fallback) {
    return input.contains(key) ? input.at(key).get<long>() : fallback;
  };
  if (cmd == "check") {
    FilPhiNModule m = parse_module(input.at("module").dump());
    return dump_validation(validate(m));
  }
  if (cmd == "eta") return dump_eta(eta(module_in("module")));
  if (cmd == "eta-st") return dump_eta_st(eta_st(module_in("module")));
  if (cmd == "crystalline") return op_crystalline(module_in("module"));
  if (cmd == "psi") return dump_ceta(psi(module_in("module")));
  if (cmd == "ext-class") {
    FilPhiNModule m = module_in("module");
    long n = int_in("n", infer_n(m));
    return dump_scalar(ext_class(m, static_cast<int>(n)));
  }
  if (cmd == "ext-build") {
    LocalField k = field_in();
    Scalar a = Scalar::from_rational(k, Rational::parse(input.at("a").get<std::string>()));
    return dump_module(ext_build(a, static_cast<int>(int_in("n", 1))));
  }
  if (cmd == "baer-sum") {
    FilPhiNModule e = module_in("module");
    FilPhiNModule ep = module_in("module2");
    return dump_module(baer_sum(e, ep, static_cast<int>(int_in("n", infer_n(e)))));
  }
  if (cmd == "kummer") {
    LocalField k = field_in();
    Scalar q = Scalar::from_rational(k, Rational::parse(input.at("q").get<std::string>()));
    return dump_module(kummer_module(q));
  }
  if (cmd == "phi-inv") return dump_module(phi_inv(valid_ceta(input.at("ceta").dump(), field_in())));
  if (cmd == "reconstruct-eta")
    return op_reconstruct(valid_ceta(input.at("ceta").dump(), field_in()));
  if (cmd == "lie-dims")
    return dump_lie(lie_dims(int_in("d", 1), static_cast<int>(int_in("cutoff", 1))));
  if (cmd == "arch-d") return dump_arch(compute_d(parse_mths(input.at("mths").dump())));
  if (cmd == "arch-polylog") {
    int k = static_cast<int>(int_in("k", 0));
    Cplx z = {input.at("z").at(0).get<double>(), input.at("z").at(1).get<double>()};
    double tol = input.contains("tol") ? input.at("tol").get<double>() : 1e-12;
    BDOptions opt;
    opt.b1_positive = input.contains("b1_positive") && input.at("b1_positive").get<bool>();
    opt.conj_i = input.contains("conj_i") && input.at("conj_i").get<bool>();
    bool bd = input.contains("bd") && input.at("bd").get<bool>();
    return op_polylog(k, z, tol, bd, opt);
  }
  if (cmd == "corpus")
    return dump_corpus(run_corpus(static_cast<std::uint64_t>(int_in("seed", 0)),
                                  static_cast<int>(int_in("count", 0))));
  throw ParseError("$.command", "unknown command '" + cmd + "'");
}

int run_golden(const std::string& dir, const std::string& out) {
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) cases.push_back(entry.path());
  std::sort(cases.begin(), cases.end());
  njson lines = njson::array();
  bool all = true;
  for (const fs::path& c : cases) {
    std::string name = c.filename().string();
    bool pass = false;
    std::string note;
    try {
      njson input = njson::parse(read_input((c / "input.json").string()));
      std::string expected = read_input((c / "expected.json").string());
      pass = golden_output(input) == expected;
      if (!pass) note = "output differs from expected.json";
    } catch (const CheckFailed&) {
      note = "input failed validation";
    } catch (const std::exception& e) {
      note = e.what();
    }
    all = all && pass;
    njson line{{"name", name}, {"pass", pass}};
    if (!note.empty()) line["note"] = note;
    lines.push_back(std::move(line));
  }
  njson report{{"dir", dir}, {"cases", cases.size()}, {"ok", all}, {"results", std::move(lines)}};
  write_output(out, report.dump(2) + "\n");
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed Tate filtered phi N modules as matrix data"};
  app.require_subcommand(1);

  FieldSpec field;
  std::string in = "-";
  std::string in2;
  std::string out = "-";
  std::string q_text, a_text, z_text;
  long n_flag = 0;
  long d = 1;
  int cutoff = 1;
  int k_order = 0;
  double tol = 1e-12;
  bool bd = false, b1_plus = false, conj_i = false;
  std::uint64_t seed = 0;
  int count = 25;
  std::string golden_dir;
  std::function<int()> action;

  auto io_flags = [&](CLI::App* cmd, bool with_in = true) {
    if (with_in) cmd->add_option("--in", in, "input file, - for standard input");
    cmd->add_option("--out", out, "output file, - for standard output");
    return cmd;
  };

  CLI::App* check = io_flags(app.add_subcommand("check", "validate a module file"));
  check->callback([&] {
    action = [&] {
      FilPhiNModule m = parse_module(read_input(in));
      ValidationReport r = validate(m);
      write_output(out, dump_validation(r));
      return r.ok() ? 0 : 2;
    };
  });

  CLI::App* eta_cmd = io_flags(app.add_subcommand("eta", "crystalline comparison point"));
  eta_cmd->callback([&] {
    action = [&] {
      write_output(out, dump_eta(eta(valid_module(read_input(in)))));
      return 0;
    };
  });

  CLI::App* eta_st_cmd = io_flags(app.add_subcommand("eta-st", "semistable comparison point"));
  eta_st_cmd->callback([&] {
    action = [&] {
      write_output(out, dump_eta_st(eta_st(valid_module(read_input(in)))));
      return 0;
    };
  });

  CLI::App* ext_class_cmd =
      io_flags(app.add_subcommand("ext-class", "extension class of a two-step module"));
  ext_class_cmd->add_option("--n", n_flag, "degree of the sub object, inferred when omitted");
  ext_class_cmd->callback([&] {
    action = [&] {
      FilPhiNModule m = valid_module(read_input(in));
      int n = n_flag != 0 ? static_cast<int>(n_flag) : infer_n(m);
      write_output(out, dump_scalar(ext_class(m, n)));
      return 0;
    };
  });

  CLI::App* ext_build_cmd =
      io_flags(app.add_subcommand("ext-build", "extension with a prescribed class"), false);
  add_field_flags(ext_build_cmd, field);
  ext_build_cmd->add_option("--a", a_text, "extension class as a rational")->required();
  ext_build_cmd->add_option("--n", n_flag, "degree of the sub object");
  ext_build_cmd->callback([&] {
    action = [&] {
      LocalField k = resolve_field(field);
      Scalar a = Scalar::from_rational(k, rational_flag(a_text, "--a"));
      int n = n_flag != 0 ? static_cast<int>(n_flag) : 1;
      write_output(out, dump_module(ext_build(a, n)));
      return 0;
    };
  });

  CLI::App* baer_cmd = io_flags(app.add_subcommand("baer-sum", "sum of two extension classes"));
  baer_cmd->add_option("--in2", in2, "second module file")->required();
  baer_cmd->add_option("--n", n_flag, "degree of the sub object, inferred when omitted");
  baer_cmd->callback([&] {
    action = [&] {
      FilPhiNModule e = valid_module(read_input(in));
      FilPhiNModule ep = valid_module(read_input(in2));
      int n = n_flag != 0 ? static_cast<int>(n_flag) : infer_n(e);
      write_output(out, dump_module(baer_sum(e, ep, n)));
      return 0;
    };
  });

  CLI::App* kummer_cmd = io_flags(app.add_subcommand("kummer", "Kummer module of q"), false);
  add_field_flags(kummer_cmd, field);
  kummer_cmd->add_option("--q", q_text, "nonzero field element as a rational")->required();
  kummer_cmd->callback([&] {
    action = [&] {
      LocalField k = resolve_field(field);
      Scalar q = Scalar::from_rational(k, rational_flag(q_text, "--q"));
      write_output(out, dump_module(kummer_module(q)));
      return 0;
    };
  });

  CLI::App* cryst_cmd = io_flags(app.add_subcommand("crystalline", "monodromy vanishing test"));
  cryst_cmd->callback([&] {
    action = [&] {
      write_output(out, op_crystalline(valid_module(read_input(in))));
      return 0;
    };
  });

  CLI::App* psi_cmd = io_flags(app.add_subcommand("psi", "graded object of a crystalline module"));
  psi_cmd->callback([&] {
    action = [&] {
      write_output(out, dump_ceta(psi(valid_module(read_input(in)))));
      return 0;
    };
  });

  CLI::App* phi_inv_cmd = io_flags(app.add_subcommand("phi-inv", "module of a graded object"));
  add_field_flags(phi_inv_cmd, field);
  phi_inv_cmd->callback([&] {
    action = [&] {
      LocalField k = resolve_field(field);
      write_output(out, dump_module(phi_inv(valid_ceta(read_input(in), k))));
      return 0;
    };
  });

  CLI::App* rec_cmd =
      io_flags(app.add_subcommand("reconstruct-eta", "comparison point from generator actions"));
  add_field_flags(rec_cmd, field);
  rec_cmd->callback([&] {
    action = [&] {
      LocalField k = resolve_field(field);
      write_output(out, op_reconstruct(valid_ceta(read_input(in), k)));
      return 0;
    };
  });

  CLI::App* lie_cmd = io_flags(app.add_subcommand("lie-dims", "free Lie algebra dimensions"), false);
  lie_cmd->add_option("--d", d, "generators per degree")->required();
  lie_cmd->add_option("--cutoff", cutoff, "largest weight")->required();
  lie_cmd->callback([&] {
    action = [&] {
      write_output(out, dump_lie(lie_dims(d, cutoff)));
      return 0;
    };
  });

  auto bind_arch_d = [&](CLI::App* cmd) {
    io_flags(cmd);
    cmd->callback([&] {
      action = [&] {
        write_output(out, dump_arch(compute_d(parse_mths(read_input(in)))));
        return 0;
      };
    });
  };
  auto bind_arch_polylog = [&](CLI::App* cmd) {
    io_flags(cmd, false);
    cmd->add_option("--k", k_order, "polylogarithm order")->required();
    cmd->add_option("--z", z_text, "argument, re or re,im")->required();
    cmd->add_option("--tol", tol, "series tail bound");
    cmd->add_flag("--bd", bd, "single-valued combination instead of the raw series");
    cmd->add_flag("--b1-plus", b1_plus, "take the second Bernoulli number positive");
    cmd->add_flag("--conj-i", conj_i, "flip the choice of i");
    cmd->callback([&] {
      action = [&] {
        BDOptions opt;
        opt.b1_positive = b1_plus;
        opt.conj_i = conj_i;
        write_output(out, op_polylog(k_order, parse_cplx(z_text, "--z"), tol, bd, opt));
        return 0;
      };
    });
  };
  bind_arch_d(app.add_subcommand("arch-d", "comparison matrix of a real structure"));
  bind_arch_polylog(app.add_subcommand("arch-polylog", "polylogarithm values"));
  CLI::App* arch = app.add_subcommand("arch", "archimedean commands");
  arch->require_subcommand(1);
  bind_arch_d(arch->add_subcommand("d", "comparison matrix of a real structure"));
  bind_arch_polylog(arch->add_subcommand("polylog", "polylogarithm values"));

  CLI::App* corpus_cmd =
      io_flags(app.add_subcommand("corpus", "randomized or golden verification runs"), false);
  corpus_cmd->add_option("--seed", seed, "generator seed");
  corpus_cmd->add_option("--count", count, "objects to generate");
  corpus_cmd->add_option("--dir", golden_dir, "golden case directory");
  corpus_cmd->callback([&] {
    action = [&] {
      if (!golden_dir.empty()) return run_golden(golden_dir, out);
      CorpusReport r = run_corpus(seed, count);
      write_output(out, dump_corpus(r));
      return r.ok() ? 0 : 2;
    };
  });

  try {
    app.parse(argc, argv);
    return action ? action() : 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CheckFailed&) {
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const InsufficientPrecision& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const njson::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
