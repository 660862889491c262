// isorep: build representations, compute index / commutant / equivalence, run the
// induced-representation checks and the verification suites. Reports are JSON.
//
// Exit codes: 0 success, 1 input error, 2 verification failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isorep/cocycle.hpp"
#include "isorep/commutant.hpp"
#include "isorep/errors.hpp"
#include "isorep/induced.hpp"
#include "isorep/json_io.hpp"
#include "isorep/rep_model.hpp"
#include "isorep/suite.hpp"

#ifndef ISOREP_VERSION
#define ISOREP_VERSION "0.0.0"
#endif

namespace {

using namespace isorep;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kVerificationFailure = 2;

struct RepFlags {
  std::string family;
  std::optional<int> n;
  std::optional<int> L;
  std::optional<int> guard;
  std::string a;
  std::string unitary_file;
  std::string projections_file;
  std::string config;
  std::string reparam_a;
  std::string reparam_b;
};

struct Options {
  RepFlags rep;
  RepFlags rep_b;
  double tol_rank = ToleranceConfig{}.rank_tol;
  double tol_id = ToleranceConfig{}.identity_tol;
  std::uint64_t seed = 0x5eed;
  std::string out;
  std::string csv;
  std::optional<int> grid;
  std::string preset;
  bool with_matrices = false;
  std::optional<int> shift_multiplicity;
  std::optional<int> axis;
  std::optional<int> pad;
  int vectors = 20;
};

ToleranceConfig tolerance(const Options& o) {
  ToleranceConfig tol;
  tol.rank_tol = o.tol_rank;
  tol.identity_tol = o.tol_id;
  tol.validate();
  return tol;
}

Point2 point_from_flag(const std::string& text, const std::string& path) {
  const ComplexVector v = vector_from_csv(text, path);
  if (v.size() != 2) throw InputError("expected two integers 'm,n'", path);
  Point2 p{static_cast<int>(v(0).real()), static_cast<int>(v(1).real())};
  if (p.m != v(0).real() || p.n != v(1).real()) throw InputError("expected integers", path);
  return p;
}

void add_rep_flags(CLI::App* cmd, RepFlags& f, const std::string& suffix) {
  cmd->add_option("--family" + suffix, f.family, "projection | reflection | truncated_infinite | custom");
  cmd->add_option("--n" + suffix, f.n, "Dimension of C^n (family size for truncated_infinite)");
  cmd->add_option("--L" + suffix, f.L, "Truncation level");
  cmd->add_option("--guard" + suffix, f.guard, "Guard band width");
  cmd->add_option("--a" + suffix, f.a, "Reflection vector, comma-separated reals");
  cmd->add_option("--unitary-file" + suffix, f.unitary_file, "Matrix JSON file holding U");
  cmd->add_option("--projections-file" + suffix, f.projections_file,
                  "JSON file: list of matrices or \"standard_basis\"");
  cmd->add_option("--config" + suffix, f.config, "Representation config JSON file");
  cmd->add_option("--reparam-a" + suffix, f.reparam_a, "Reparametrize: sigma~(1,0) = sigma(m,n), given as 'm,n'");
  cmd->add_option("--reparam-b" + suffix, f.reparam_b, "Reparametrize: sigma~(0,1) = sigma(m,n), given as 'm,n'");
}

void add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-rank", o.tol_rank, "Relative singular-value cutoff");
  cmd->add_option("--tol-id", o.tol_id, "Tolerance for operator identities");
  cmd->add_option("--seed", o.seed, "Seed for randomized steps");
  cmd->add_option("--out", o.out, "Write the JSON report here instead of stdout");
}

bool has_rep(const RepFlags& f) { return !f.family.empty() || !f.config.empty() || !f.a.empty() || !f.unitary_file.empty(); }

RepConfig config_from_flags(const RepFlags& f) {
  RepConfig c;
  if (!f.config.empty()) c = rep_config_from_json(load_json_file(f.config), "");
  if (!f.family.empty()) {
    c.family = family_kind_from_string(f.family, "family");
  } else if (f.config.empty()) {
    if (!f.unitary_file.empty()) {
      c.family = FamilyKind::projection;
    } else if (!f.a.empty()) {
      c.family = FamilyKind::reflection;
    } else {
      throw InputError("no representation given (use --family, --a, --unitary-file or --config)", "family");
    }
  }
  if (f.n) c.n = f.n;
  if (f.L) c.L = f.L;
  if (f.guard) c.guard = f.guard;
  if (!f.a.empty()) c.a_vector = vector_from_csv(f.a, "a");
  if (!f.unitary_file.empty()) c.unitary = matrix_from_json(load_json_file(f.unitary_file), "unitary");
  if (!f.projections_file.empty()) {
    const Json j = load_json_file(f.projections_file);
    Json wrapped{{"family", "projection"}, {"projections", j}};
    c.projections = rep_config_from_json(wrapped, "").projections;
  }
  if (f.reparam_a.empty() != f.reparam_b.empty()) {
    throw InputError("give both --reparam-a and --reparam-b", f.reparam_a.empty() ? "reparam-a" : "reparam-b");
  }
  if (!f.reparam_a.empty()) {
    c.reparam = Reparametrization{point_from_flag(f.reparam_a, "reparam-a"), point_from_flag(f.reparam_b, "reparam-b")};
  }
  return c;
}

Json tolerance_json(const ToleranceConfig& tol) {
  return Json{{"rank_tol", tol.rank_tol}, {"identity_tol", tol.identity_tol},
              {"stabilization_delta", tol.stabilization_delta}};
}

Json rep_summary(const IsoRep2& rep) {
  Json j{{"family", to_string(rep.source.kind)}, {"dim", rep.dim()}, {"truncation", to_json(rep.trunc)}};
  if (rep.source.family) j["d"] = rep.source.family->size();
  if (rep.source.reparam) {
    j["reparam"] = Json{{"a", {rep.source.reparam->a.m, rep.source.reparam->a.n}},
                        {"b", {rep.source.reparam->b.m, rep.source.reparam->b.n}}};
  }
  j["warnings"] = rep.warnings;
  return j;
}

struct Outcome {
  Json result;
  bool verified = true;
  std::string csv;
};

Outcome run_build(const Options& o, const ToleranceConfig& tol, Json& config) {
  const RepConfig rc = config_from_flags(o.rep);
  config["rep"] = rep_config_to_json(rc);
  const IsoRep2 rep = build_rep(rc, tol);
  Outcome out;
  const ValidationReport v = validate(rep, tol);
  out.result["rep"] = rep_summary(rep);
  out.result["validation"] = to_json(v);
  out.result["purity"] = to_json(strong_purity_check(rep, std::min(rep.trunc.interior_levels(), 8), tol));
  if (o.with_matrices) {
    out.result["w1"] = matrix_to_json(rep.w1);
    out.result["w2"] = matrix_to_json(rep.w2);
  }
  out.verified = v.passed();
  return out;
}

Outcome run_index(const Options& o, const ToleranceConfig& tol, Json& config) {
  const RepConfig rc = config_from_flags(o.rep);
  config["rep"] = rep_config_to_json(rc);
  const IsoRep2 rep = build_rep(rc, tol);
  const IndexResult idx = index(rep, tol);
  const CocycleSpace cs = cocycle_space(rep, tol);
  Outcome out;
  out.result = to_json(idx);
  if (rep.source.family && !rep.source.reparam) {
    out.result["formula_ker_U_minus_1"] = index_formula_projection_family(*rep.source.family, tol);
  }
  out.result["cocycles"] = to_json(cs, o.with_matrices);
  out.result["rep"] = rep_summary(rep);
  out.verified = cs.residuals.max() <= tol.identity_tol;
  return out;
}

Outcome run_irreducible(const Options& o, const ToleranceConfig& tol, Json& config) {
  const RepConfig rc = config_from_flags(o.rep);
  config["rep"] = rep_config_to_json(rc);
  const IsoRep2 rep = build_rep(rc, tol);
  Outcome out;
  const CommutantOracle oracle = truncated_commutant(rep, tol, o.seed);
  out.result["oracle"] = Json{{"raw_dim", oracle.raw_dim}, {"dim", oracle.dim}};
  if (rep.source.family) {
    const std::size_t structured = structured_commutant_dim(*rep.source.family, tol);
    out.result["structured_dim"] = structured;
    out.result["irreducible"] = structured == 1;
    out.result["path"] = "structured";
    out.result["oracle_agrees"] = structured == oracle.dim;
    out.verified = structured == oracle.dim;
  } else {
    const std::optional<bool> verdict = is_irreducible(rep, tol, o.seed);
    out.result["irreducible"] = verdict ? Json(*verdict) : Json("inconclusive");
    out.result["path"] = "generic";
  }
  out.result["rep"] = rep_summary(rep);
  return out;
}

Outcome run_equivalent(const Options& o, const ToleranceConfig& tol, Json& config) {
  if (!has_rep(o.rep_b)) throw InputError("equivalent needs a second representation (--config-b, --a-b, ...)", "config-b");
  const RepConfig ca = config_from_flags(o.rep);
  const RepConfig cb = config_from_flags(o.rep_b);
  config["rep_a"] = rep_config_to_json(ca);
  config["rep_b"] = rep_config_to_json(cb);
  const auto fa = ca.reparam ? std::nullopt : family_from_config(ca, tol);
  const auto fb = cb.reparam ? std::nullopt : family_from_config(cb, tol);
  EquivalenceVerdict v;
  if (fa && fb && fa->dim() == fb->dim() && fa->size() == fb->size()) {
    v = are_unitarily_equivalent(*fa, *fb, tol, o.seed);
  } else {
    v = are_unitarily_equivalent(build_rep(ca, tol), build_rep(cb, tol), tol, o.seed);
  }
  Outcome out;
  out.result = to_json(v);
  return out;
}

Json checks_json(const std::vector<SuiteCheck>& checks, bool& all_pass) {
  SuiteReport r;
  r.checks = checks;
  all_pass = r.passed();
  return to_json(r)["checks"];
}

Outcome run_induce(const Options& o, const ToleranceConfig& tol, Json& config) {
  const int M = o.grid.value_or(2);
  config["grid"] = M;
  Outcome out;
  std::vector<SuiteCheck> checks;
  if (o.shift_multiplicity) {
    const int m = *o.shift_multiplicity;
    const int L = o.rep.L.value_or(8);
    const int guard = o.rep.guard.value_or(3);
    config["shift"] = Json{{"multiplicity", m}, {"L", L}, {"guard", guard}};
    const TruncationParams t{m, L, guard};
    t.validate();
    const GridRep1 grid(shift_isometry(m, L), M, interior_projector(t));
    checks = induced_identity_checks_1d(grid, 2, tol);
    for (auto& c : induced_cocycle_checks_1d(grid, static_cast<std::size_t>(m), 2, tol)) checks.push_back(std::move(c));
    out.result["dim"] = grid.dim();
  } else {
    const RepConfig rc = config_from_flags(o.rep);
    config["rep"] = rep_config_to_json(rc);
    const IsoRep2 rep = build_rep(rc, tol);
    out.result["rep"] = rep_summary(rep);
    const GridRep2 grid(rep, M);
    if (o.axis) {
      if (*o.axis != 1 && *o.axis != 2) throw InputError("must be 1 or 2", "axis");
      config["axis"] = *o.axis;
      const GridRep1 g1 = grid.axis(*o.axis - 1);
      checks = induced_identity_checks_1d(g1, 2, tol);
      const std::size_t expected = cocycle_dim_1d(rep.generator(*o.axis - 1), tol);
      for (auto& c : induced_cocycle_checks_1d(g1, expected, 2, tol)) checks.push_back(std::move(c));
      out.result["dim"] = g1.dim();
    } else {
      out.result["dim"] = grid.dim();
      checks = induced_identity_checks_2d(grid, o.vectors, o.seed, tol);
      const GridCocycleSolve2 g = grid_cocycle_space_2d(grid, 1, tol);
      out.result["cocycles"] = Json{{"solved_dim", g.solved_dim},         {"unfiltered_dim", g.unfiltered_dim},
                                    {"lifted_dim", g.lifted_dim},         {"lifted_independent", g.lifted_independent},
                                    {"solved_in_lifted_span", g.solved_in_lifted_span},
                                    {"solved_residual", g.solved_residuals.max()},
                                    {"lifted_residual", g.lifted_residuals.max()}};
      checks.push_back(SuiteCheck{"induced2d.cocycle_span", "lifted cocycles span the grid cocycle space",
                                  std::max(g.solved_residuals.max(), g.lifted_residuals.max()),
                                  g.passed() && g.solved_residuals.max() <= tol.identity_tol &&
                                      g.lifted_residuals.max() <= tol.identity_tol,
                                  Json::object()});
      if (rep.source.family) {
        const InducedCommutantReport cr = induced_commutant_check_2d(grid, tol, o.seed);
        out.result["commutant"] = Json{{"structured_dim", cr.structured_dim}, {"grid_dim", cr.grid_dim},
                                       {"grid_raw_dim", cr.grid_raw_dim},     {"inclusion_residual", cr.inclusion_residual},
                                       {"isometry_residual", cr.isometry_residual}};
        checks.push_back(SuiteCheck{"induced2d.commutant", "commutant of V is 1 (x) M(sigma)'",
                                    std::max(cr.inclusion_residual, cr.isometry_residual), cr.passed(), Json::object()});
      }
      if (o.pad) {
        const PaddedGridRep pad = pad_to_d(grid, *o.pad);
        const PaddedIndex pi = padded_index(pad, tol);
        out.result["padding"] = Json{{"d", *o.pad}, {"index", pi.total()}, {"base_index", pi.base}};
      }
      std::ostringstream csv;
      csv.precision(17);
      csv << "ticks_x,ticks_y,s,t,adjoint_residual,isometry_residual\n";
      for (const auto& row : induced_time_table_2d(grid, o.vectors, o.seed)) {
        csv << row.ticks_x << ',' << row.ticks_y << ',' << static_cast<double>(row.ticks_x) / M << ','
            << static_cast<double>(row.ticks_y) / M << ',' << row.adjoint << ',' << row.isometry << '\n';
      }
      out.csv = csv.str();
    }
  }
  bool all_pass = true;
  out.result["checks"] = checks_json(checks, all_pass);
  if (out.csv.empty()) {
    SuiteReport r;
    r.checks = checks;
    out.csv = to_csv(r);
  }
  out.result["passed"] = all_pass;
  out.verified = all_pass;
  return out;
}

Outcome run_suite(const Options& o, const ToleranceConfig& tol, Json& config) {
  config["preset"] = o.preset;
  if (o.grid) config["grid"] = *o.grid;
  SuiteOptions so;
  so.grid = o.grid;
  so.seed = o.seed;
  so.tol = tol;
  const SuiteReport r = verify_suite(o.preset, so);
  Outcome out;
  out.result = to_json(r);
  out.csv = to_csv(r);
  out.verified = r.passed();
  return out;
}

void write_text(const std::string& file, const std::string& text) {
  std::ofstream f(file);
  if (!f) throw InputError("cannot write file", file);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometric representations of N^2: index, commutant, equivalence, induced representations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ISOREP_VERSION);
  Options o;

  auto* build = app.add_subcommand("build", "Build a representation and validate it");
  auto* idx = app.add_subcommand("index", "Cocycle space dimension with a truncation-stability verdict");
  auto* irr = app.add_subcommand("irreducible", "Commutant dimension and irreducibility");
  auto* eq = app.add_subcommand("equivalent", "Unitary equivalence of two representations");
  auto* ind = app.add_subcommand("induce", "Induced representation on a grid and its verification report");
  auto* suite = app.add_subcommand("verify-suite", "Run a named battery of invariant checks");

  for (auto* cmd : {build, idx, irr, eq, ind}) add_rep_flags(cmd, o.rep, "");
  add_rep_flags(eq, o.rep_b, "-b");
  for (auto* cmd : {build, idx, irr, eq, ind, suite}) add_common_flags(cmd, o);
  build->add_flag("--with-matrices", o.with_matrices, "Include W1 and W2 in the report");
  idx->add_flag("--with-matrices", o.with_matrices, "Include the cocycle basis in the report");
  ind->add_option("--grid", o.grid, "Cells per unit interval (default 2)");
  ind->add_option("--shift-multiplicity", o.shift_multiplicity, "Induce from the truncated shift of this multiplicity");
  ind->add_option("--axis", o.axis, "Induce from W1 (1) or W2 (2) alone");
  ind->add_option("--pad", o.pad, "Also report the padding to d parameters");
  ind->add_option("--vectors", o.vectors, "Random vectors for matrix-free checks")->check(CLI::PositiveNumber);
  ind->add_option("--csv", o.csv, "Residuals per grid time as CSV");
  suite->add_option("--preset", o.preset, "example2 | example3_trunc | projection_random | reparam | induced1d | induced2d")
      ->required();
  suite->add_option("--grid", o.grid, "Cells per unit interval for the induced checks");
  suite->add_option("--csv", o.csv, "Check table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const ToleranceConfig tol = tolerance(o);
    Json config{{"tolerance", tolerance_json(tol)}, {"seed", o.seed}};
    Outcome outcome;
    std::string command;
    if (*build) {
      command = "build";
      outcome = run_build(o, tol, config);
    } else if (*idx) {
      command = "index";
      outcome = run_index(o, tol, config);
    } else if (*irr) {
      command = "irreducible";
      outcome = run_irreducible(o, tol, config);
    } else if (*eq) {
      command = "equivalent";
      outcome = run_equivalent(o, tol, config);
    } else if (*ind) {
      command = "induce";
      outcome = run_induce(o, tol, config);
    } else {
      command = "verify-suite";
      outcome = run_suite(o, tol, config);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json report{{"tool", "isorep"}, {"version", ISOREP_VERSION}, {"command", command}, {"config", std::move(config)}};
    for (auto& [key, value] : outcome.result.items()) report[key] = value;
    report["verified"] = outcome.verified;
    report["timing"] = Json{{"seconds", seconds}};
    const std::string text = report.dump(2) + "\n";
    if (o.out.empty()) {
      std::cout << text;
    } else {
      write_text(o.out, text);
    }
    if (!o.csv.empty()) write_text(o.csv, outcome.csv);
    return outcome.verified ? kOk : kVerificationFailure;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InconsistencyError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
