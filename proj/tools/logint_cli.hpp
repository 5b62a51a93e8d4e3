#pragma once

// Batch front end: one subcommand per library operation. Results go to
// stdout as JSON (CSV for radial sweeps), diagnostics to stderr.
// Exit status: 0 success, 1 invariant re-check failed, 2 bad input.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logint/fnorm.hpp"
#include "logint/json_io.hpp"
#include "logint/nevanlinna.hpp"
#include "logint/operator_space.hpp"
#include "logint/selftest.hpp"
#include "logint/witnesses.hpp"

namespace logint::cli {

using io::Json;
using io::number;

inline constexpr int exit_ok = 0;
inline constexpr int exit_invariant = 1;
inline constexpr int exit_input = 2;

struct Settings {
  std::vector<std::string> inputs;   // paths, "-" for stdin
  std::vector<std::string> inlines;  // JSON text
  std::size_t m = 4096;
  double tol = nevanlinna::default_smirnov_tol;
  std::uint64_t seed = selftest::Options{}.seed;
  std::string format = "json";
  // verb-specific
  double eps = 0.1;
  int N = 2;
  int k = 1;
  int kmax = 20;
  double K = 1.0;
  double M = 1.0;
  long n = 1;
  double lower = 0.0;
  std::optional<double> upper;
  bool lower_open = false;
  bool upper_closed = false;
  double re = 0.0;
  double im = 0.0;
  std::string op = "add";
  std::string kind;
};

inline std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream file(path);
  if (!file) fail(ErrorCode::malformed_input, "cannot open " + path);
  return {std::istreambuf_iterator<char>(file), {}};
}

/// All documents named by --input and --inline, in that order. A single
/// document holding an array, or an object with "f"/"g" (or "A"/"B"), is
/// unpacked into its operands.
inline std::vector<Json> documents(const Settings& s, std::istream& in) {
  std::vector<Json> docs;
  for (const auto& p : s.inputs) docs.push_back(io::parse(slurp(p, in)));
  for (const auto& t : s.inlines) docs.push_back(io::parse(t));
  if (docs.size() == 1) {
    const Json& d = docs.front();
    if (d.is_object() && d.contains("f") && d.contains("g")) return {d.at("f"), d.at("g")};
    if (d.is_object() && d.contains("A") && d.contains("B")) return {d.at("A"), d.at("B")};
  }
  return docs;
}

inline const Json& operand(const std::vector<Json>& docs, std::size_t i, const char* verb) {
  if (docs.size() <= i) {
    std::ostringstream msg;
    msg << verb << " needs " << (i + 1) << " input document(s), got " << docs.size();
    fail(ErrorCode::malformed_input, msg.str());
  }
  return docs[i];
}

inline std::vector<StepFunction> sequence_from(const std::vector<Json>& docs) {
  const Json* arr = nullptr;
  if (docs.size() == 1 && docs[0].is_array()) arr = &docs[0];
  if (docs.size() == 1 && docs[0].is_object() && docs[0].contains("sequence")) arr = &docs[0].at("sequence");
  std::vector<StepFunction> seq;
  if (arr) {
    for (const auto& d : *arr) seq.push_back(io::step_function_from_json(d));
  } else {
    for (const auto& d : docs) seq.push_back(io::step_function_from_json(d));
  }
  return seq;
}

inline int execute(const std::string& verb, const Settings& s, std::istream& in, std::ostream& out, std::ostream& err) {
  using namespace nevanlinna;
  const auto docs = [&] { return documents(s, in); };
  auto emit = [&](const Json& j) { out << j.dump() << '\n'; };
  auto f_at = [&](const std::vector<Json>& d, std::size_t i) { return io::step_function_from_json(operand(d, i, verb.c_str())); };
  auto t_at = [&](const std::vector<Json>& d, std::size_t i) { return io::matrix_from_json(operand(d, i, verb.c_str())); };
  auto h_at = [&](const std::vector<Json>& d, std::size_t i) { return io::holo_from_json(operand(d, i, verb.c_str())); };

  if (verb == "norm") {
    const auto d = docs();
    emit({{"lognorm", number(lognorm(f_at(d, 0)))}});
  } else if (verb == "l1") {
    const auto d = docs();
    emit({{"l1norm", number(l1norm(f_at(d, 0)))}});
  } else if (verb == "dist") {
    const auto d = docs();
    emit({{"dlog", number(dlog(f_at(d, 0), f_at(d, 1)))}});
  } else if (verb == "pointwise") {
    const auto d = docs();
    BinaryOp op = BinaryOp::add;
    if (s.op == "sub") op = BinaryOp::sub;
    else if (s.op == "mul") op = BinaryOp::mul;
    else if (s.op != "add") fail(ErrorCode::invalid_parameter, "--op must be add, sub or mul");
    emit(io::to_json(pointwise(f_at(d, 0), f_at(d, 1), op)));
  } else if (verb == "orlicz") {
    const auto d = docs();
    emit({{"orlicz_fnorm", number(orlicz_fnorm(f_at(d, 0)))}});
  } else if (verb == "truncate") {
    const auto d = docs();
    emit(io::to_json(truncate(f_at(d, 0), s.M)));
  } else if (verb == "approx") {
    const auto d = docs();
    const auto a = approximate_in_l1(f_at(d, 0), s.eps);
    emit({{"cutoff", number(a.cutoff)}, {"dlog", number(a.distance)}, {"approximant", io::to_json(a.approximant)}});
  } else if (verb == "rearrange") {
    const auto d = docs();
    emit(io::to_json(decreasing_rearrangement(f_at(d, 0))));
  } else if (verb == "op-norm") {
    const auto d = docs();
    emit({{"lognorm", number(lognorm_op(t_at(d, 0)))}});
  } else if (verb == "singular") {
    const auto d = docs();
    emit(io::to_json(singular_numbers(t_at(d, 0))));
  } else if (verb == "op-dist") {
    const auto d = docs();
    emit({{"dlog", number(dlog_op(t_at(d, 0), t_at(d, 1)))}});
  } else if (verb == "dtau") {
    const auto d = docs();
    emit({{"dtau", number(dtau(t_at(d, 0), t_at(d, 1)))}});
  } else if (verb == "project") {
    const auto d = docs();
    SpectralInterval iv{s.lower, s.upper, !s.lower_open, s.upper_closed};
    emit(io::to_json(spectral_project(t_at(d, 0), iv)));
  } else if (verb == "split") {
    const auto d = docs();
    emit(io::to_json(split_at(t_at(d, 0), s.K)));
  } else if (verb == "fkdet") {
    const auto d = docs();
    emit({{"fk_determinant", number(fk_determinant(t_at(d, 0)))}});
  } else if (verb == "embed") {
    const auto d = docs();
    emit(io::to_json(embed_diagonal(f_at(d, 0), s.n)));
  } else if (verb == "nev-eval") {
    const auto d = docs();
    const Complex v = eval(h_at(d, 0), {s.re, s.im});
    emit({{"re", number(v.real())}, {"im", number(v.imag())}});
  } else if (verb == "nev-boundary") {
    const auto d = docs();
    if (d.size() >= 2) {
      emit({{"d_N", number(distance(h_at(d, 0), h_at(d, 1), s.m))}});
    } else {
      emit({{"boundary_norm", number(boundary_norm(h_at(d, 0), s.m))}});
    }
  } else if (verb == "nev-class") {
    const auto d = docs();
    const ClassNorm c = d.size() >= 2 ? class_distance(h_at(d, 0), h_at(d, 1), s.tol) : class_norm(h_at(d, 0), s.tol);
    emit({{"estimate", number(c.estimate)}, {"converged", c.converged}, {"levels", c.levels}, {"grid", c.grid}});
  } else if (verb == "nev-sample") {
    const auto d = docs();
    emit(io::to_json(phi_sample(h_at(d, 0), s.m)));
  } else if (verb == "nev-sweep") {
    const auto d = docs();
    const auto sweep = radial_sweep(h_at(d, 0), s.kmax, 1e-10);
    if (s.format == "csv") {
      out << "r,L\n";
      for (const auto& p : sweep) out << number(p.r).dump() << ',' << number(p.value).dump() << '\n';
    } else {
      Json rows = Json::array();
      for (const auto& p : sweep)
        rows.push_back({{"k", p.k}, {"r", number(p.r)}, {"L", number(p.value)}, {"grid", p.grid}, {"resolved", p.resolved}});
      emit(rows);
    }
  } else if (verb == "nev-smirnov") {
    const auto d = docs();
    const auto rep = smirnov_defect(h_at(d, 0), s.tol, s.m);
    emit({{"defect", number(rep.defect)},
          {"is_smirnov", rep.is_smirnov},
          {"class_norm", number(rep.class_estimate)},
          {"boundary_norm", number(rep.boundary)},
          {"converged", rep.converged}});
  } else if (verb == "witness") {
    Json report;
    bool ok = true;
    if (s.kind == "unbounded") {
      const auto w = witness::unboundedness_witness(s.eps, s.N);
      ok = w.holds() && lognorm(w.f) < s.eps && lognorm(w.f.scaled(1.0 / s.N)) >= s.eps / 2.0;
      report = io::to_json(w);
    } else if (s.kind == "nonconvex") {
      const auto d = docs();
      const StepFunction f = f_at(d, 0);
      const auto cs = witness::convex_split(f, s.eps);
      for (const auto& p : cs.pieces) ok = ok && lognorm(p) < s.eps;
      ok = ok && sup_distance(cs.average(), f) <= 1e-13 * std::max(1.0, f.sup_abs());
      report = io::to_json(cs);
    } else if (s.kind == "separation") {
      const auto w = witness::separation_sequence(s.k);
      ok = w.support_measure == 1.0 / s.k && w.lognorm_value >= w.dominant;
      report = io::to_json(w);
    } else {
      fail(ErrorCode::invalid_parameter, "witness kind must be unbounded, nonconvex or separation");
    }
    report["verified"] = ok;
    emit(report);
    if (!ok) {
      err << "error invariant: witness re-check failed\n";
      return exit_invariant;
    }
  } else if (verb == "cauchy") {
    const auto seq = sequence_from(docs());
    emit(io::to_json(witness::cauchy_limit(seq, s.tol)));
  } else if (verb == "selftest") {
    selftest::Options opt;
    opt.seed = s.seed;
    const auto results = selftest::run_all(opt);
    Json checks = Json::array();
    bool all = true;
    for (const auto& r : results) {
      all = all && r.passed();
      checks.push_back({{"suite", r.suite}, {"name", r.name}, {"trials", r.trials}, {"failures", r.failures},
                        {"passed", r.passed()}, {"worst_excess", number(r.worst_excess)}});
      err << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.trials << " trials)\n";
    }
    emit({{"passed", all}, {"checks", checks}});
    if (!all) return exit_invariant;
  } else {
    fail(ErrorCode::invalid_parameter, "unknown verb " + verb);
  }
  return exit_ok;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-integrable F-norms, operator algebras and Nevanlinna functionals"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub) {
    // One value per flag: CLI11 would otherwise split a JSON array at commas.
    sub->add_option("--input", s.inputs, "input JSON file, - for stdin (repeatable)")->allow_extra_args(false);
    sub->add_option("--inline", s.inlines, "input JSON text (repeatable)")->allow_extra_args(false);
    sub->add_option("--m", s.m, "boundary grid size");
    sub->add_option("--tol", s.tol, "tolerance");
    sub->add_option("--seed", s.seed, "seed for randomized suites");
    sub->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    return sub;
  };

  common(app.add_subcommand("norm", "log-norm of a step function"));
  common(app.add_subcommand("l1", "L1 norm of a step function"));
  common(app.add_subcommand("dist", "d_log between two step functions"));
  common(app.add_subcommand("pointwise", "pointwise add/sub/mul of two step functions"))->add_option("--op", s.op);
  common(app.add_subcommand("orlicz", "Orlicz F-norm of a step function"));
  common(app.add_subcommand("truncate", "f_M: f where |f| <= M"))->add_option("--M", s.M)->required();
  common(app.add_subcommand("approx", "bounded approximant within eps in d_log"))->add_option("--eps", s.eps);
  common(app.add_subcommand("rearrange", "decreasing rearrangement"));
  common(app.add_subcommand("op-norm", "log-norm of a matrix"));
  common(app.add_subcommand("singular", "singular-number function of a matrix"));
  common(app.add_subcommand("op-dist", "d_log between two matrices"));
  common(app.add_subcommand("dtau", "measure-topology distance between two matrices"));
  auto* project = common(app.add_subcommand("project", "spectral projection of |T|"));
  project->add_option("--lower", s.lower);
  project->add_option("--upper", s.upper);
  project->add_flag("--lower-open", s.lower_open);
  project->add_flag("--upper-closed", s.upper_closed);
  common(app.add_subcommand("split", "split T at spectral level K"))->add_option("--K", s.K)->required();
  common(app.add_subcommand("fkdet", "Fuglede-Kadison determinant"));
  common(app.add_subcommand("embed", "diagonal matrix of a step function on [0,1)"))->add_option("--n", s.n)->required();
  auto* nev_eval = common(app.add_subcommand("nev-eval", "evaluate a Nevanlinna function"));
  nev_eval->add_option("--re", s.re);
  nev_eval->add_option("--im", s.im);
  common(app.add_subcommand("nev-boundary", "boundary log-norm, or d_N of two functions"));
  common(app.add_subcommand("nev-class", "radial supremum L(f), or d_L of two functions"));
  common(app.add_subcommand("nev-sample", "boundary values on the offset grid"));
  common(app.add_subcommand("nev-sweep", "radial means along r_k = 1 - 2^-k"))->add_option("--kmax", s.kmax);
  common(app.add_subcommand("nev-smirnov", "Smirnov defect L(f) - ||Phi(f)||_log"));
  auto* wit = common(app.add_subcommand("witness", "unbounded | nonconvex | separation"));
  wit->add_option("kind", s.kind)->required();
  wit->add_option("--eps", s.eps);
  wit->add_option("--N", s.N);
  wit->add_option("--k", s.k);
  common(app.add_subcommand("cauchy", "Cauchy test and limit of a step-function sequence"));
  common(app.add_subcommand("selftest", "run every invariant suite"));

  std::vector<const char*> argv{"logint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error malformed_input: " << e.what() << '\n';
    return exit_input;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return execute(verb, s, in, out, err);
  } catch (const Error& e) {
    err << "error " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_input;
  } catch (const nlohmann::json::exception& e) {
    err << "error malformed_input: " << e.what() << '\n';
    return exit_input;
  }
}

}  // namespace logint::cli
