// Command-line front end: every subcommand reads/writes the JSON formats from
// biquad/json_io.hpp, prints a run report on stdout and diagnostics on stderr.
// Exit codes: 0 success, 1 bad input, 2 numerical failure, 3 property
// violation found by `verify`.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biquad/algebra.hpp"
#include "biquad/core.hpp"
#include "biquad/decomp.hpp"
#include "biquad/json_io.hpp"
#include "biquad/kernels.hpp"
#include "biquad/meigen.hpp"
#include "biquad/norms.hpp"
#include "biquad/random.hpp"

namespace {

using biquad::io::json;

constexpr const char* kToolVersion = "0.1.0";

struct ExitCode {
  static constexpr int kOk = 0;
  static constexpr int kBadInput = 1;
  static constexpr int kNumerical = 2;
  static constexpr int kViolation = 3;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tol = 1e-10;  // relative symmetry tolerance for tensor inputs
  std::size_t starts = 32;
  std::string out_file;
};

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw biquad::Error("cannot parse JSON from " + origin + ": " + e.what());
  }
}

json read_json_input(const std::string& path) {
  std::string text;
  std::string origin;
  if (path.empty() || path == "-") {
    origin = "stdin";
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    origin = path;
    std::ifstream f(path);
    if (!f) throw biquad::Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  json j = parse_json_text(text, origin);
  // Accept a run report produced by another invocation so commands compose in
  // pipelines: the payload is its "outputs" field.
  if (j.is_object() && j.contains("command") && j.contains("outputs"))
    return j["outputs"];
  return j;
}

biquad::Tensor4 read_tensor4(const std::string& path) {
  return biquad::io::tensor4_from_json(read_json_input(path));
}

biquad::BiquadraticTensor read_biquadratic(const std::string& path, double rel_tol) {
  const biquad::Tensor4 t = read_tensor4(path);
  double scale = 0.0;
  for (double v : t.entries()) scale = std::max(scale, std::abs(v));
  return biquad::validate(t, rel_tol * scale);
}

std::vector<double> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw biquad::Error("cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw biquad::Error("empty number list");
  return out;
}

json run_report(const std::string& command, const std::vector<std::string>& inputs,
                std::uint64_t seed, json outputs, double elapsed_ms) {
  json in = json::array();
  for (const std::string& s : inputs) in.push_back(s.empty() ? "-" : s);
  return json{{"command", command},
              {"inputs", std::move(in)},
              {"seed", seed},
              {"outputs", std::move(outputs)},
              {"timings_ms", json{{"total", elapsed_ms}}},
              {"tool_version", kToolVersion}};
}

biquad::SolverConfig make_config(const GlobalOptions& g) {
  biquad::SolverConfig cfg;
  cfg.starts = g.starts;
  cfg.seed = g.seed;
  return cfg;
}

// --- verify battery ---------------------------------------------------------

void append_check(json& checks, const std::string& name, double left, double right,
                  bool satisfied, const std::string& note) {
  checks.push_back(json{{"name", name},
                        {"left", left},
                        {"right", right},
                        {"satisfied", satisfied},
                        {"note", note}});
}

json verify_instance(const biquad::BiquadraticTensor& a,
                     const biquad::BiquadraticTensor& b,
                     const biquad::SolverConfig& cfg) {
  json checks = json::array();

  const biquad::InequalityReport ineq = biquad::verify_inequalities(a, b, cfg);
  for (const biquad::InequalityCheck& c : ineq.checks)
    append_check(checks, c.name, c.left, c.right, c.satisfied, c.note);

  const auto bound = [](std::size_t m, std::size_t n) {
    return static_cast<double>(m * n * std::min(m * (m + 1) / 2, n * (n + 1) / 2));
  };
  for (const auto* t : {&a, &b}) {
    const std::string which = t == &a ? "A" : "B";
    const biquad::BQDecomposition d = biquad::bq_rank_one_decompose(*t);
    append_check(checks, "decomposition-reconstruction-" + which,
                 d.reconstruction_error, 1e-8, d.reconstruction_error <= 1e-8,
                 "relative Frobenius error of the rank-one reconstruction");
    append_check(checks, "decomposition-term-bound-" + which,
                 static_cast<double>(d.terms.size()), bound(t->m(), t->n()),
                 static_cast<double>(d.terms.size()) <= bound(t->m(), t->n()),
                 "term count vs mn*min(m(m+1)/2, n(n+1)/2)");
  }

  const auto [r1, r2] = biquad::tucker_ranks(a);
  if (r1 > 0 && r2 > 0) {
    const biquad::TuckerForm tk = biquad::hosvd(a, r1, r2);
    append_check(checks, "tucker-hosvd-reconstruction", tk.reconstruction_error, 1e-8,
                 tk.reconstruction_error <= 1e-8,
                 "HOSVD at the Tucker ranks rebuilds the tensor");
    const biquad::TuckerForm full = biquad::hosvd(a, a.m(), a.n());
    const double lam_a = biquad::largest_m_eigenvalue_envelope(a, cfg).lambda;
    const double lam_core = biquad::largest_m_eigenvalue_envelope(full.core, cfg).lambda;
    const double err = std::abs(lam_a - lam_core);
    const double tol = 1e-6 * std::max(1.0, std::abs(lam_a));
    append_check(checks, "tucker-m-eigenvalue-preservation", err, tol, err <= tol,
                 "largest M-eigenvalue of the orthonormal core vs the tensor");
  }

  bool all_sound = true;
  for (const auto& c : checks) all_sound = all_sound && c["satisfied"].get<bool>();
  return json{{"checks", std::move(checks)}, {"all_sound", all_sound}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biquadratic tensor toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  if (const char* env_seed = std::getenv("BIQUAD_SEED")) {
    try {
      g.seed = static_cast<std::uint64_t>(std::stoull(env_seed));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable BIQUAD_SEED\n";
    }
  }
  app.add_option("--seed", g.seed, "random seed (fallback: BIQUAD_SEED)");
  app.add_option("--tol", g.tol, "relative symmetry tolerance for tensor inputs");
  app.add_option("--starts", g.starts, "solver multi-start count");
  app.add_option("--out", g.out_file, "also write the report JSON to this file");

  auto* gen = app.add_subcommand("gen", "generate a tensor");
  std::string gen_kind;
  gen->add_option("kind", gen_kind, "identity|diagonal|rank1|random|gram")->required();
  std::size_t gm = 2, gn = 2, gp = 2;
  std::string g_values, g_x, g_y;
  double g_coef = 1.0;
  bool g_third = false;
  gen->add_option("--m", gm, "first dimension");
  gen->add_option("--n", gn, "second dimension");
  gen->add_option("--p", gp, "third-order leading dimension (gram)");
  gen->add_option("--values", g_values, "diagonal values, row-major CSV");
  gen->add_option("--x", g_x, "rank1 x vector, CSV");
  gen->add_option("--y", g_y, "rank1 y vector, CSV");
  gen->add_option("--coef", g_coef, "rank1 scale factor");
  gen->add_flag("--third", g_third, "gram: emit the third-order tensor itself");

  std::string in_validate, in_symmetrize, in_quartic, in_meig, in_snorm, in_nucnorm,
      in_decomp, in_tucker, in_invert, in_psd, in_contract;
  auto* cmd_validate = app.add_subcommand("validate", "validate a tensor file");
  cmd_validate->add_option("file", in_validate, "tensor JSON (default stdin)");
  auto* cmd_symmetrize = app.add_subcommand("symmetrize", "project onto BQ(m, n)");
  cmd_symmetrize->add_option("file", in_symmetrize, "tensor JSON (default stdin)");

  auto* cmd_quartic = app.add_subcommand("quartic", "evaluate the quartic form");
  std::string q_x, q_y;
  cmd_quartic->add_option("file", in_quartic, "tensor JSON (default stdin)");
  cmd_quartic->add_option("--x", q_x, "x vector, CSV")->required();
  cmd_quartic->add_option("--y", q_y, "y vector, CSV")->required();

  auto* cmd_meig = app.add_subcommand("meig", "extreme M-eigenpair search");
  bool meig_largest = false, meig_smallest = false;
  cmd_meig->add_option("file", in_meig, "tensor JSON (default stdin)");
  auto* fl = cmd_meig->add_flag("--largest", meig_largest, "largest M-eigenvalue (default)");
  auto* fs = cmd_meig->add_flag("--smallest", meig_smallest, "smallest M-eigenvalue");
  fl->excludes(fs);

  auto* cmd_snorm = app.add_subcommand("snorm", "spectral norm interval");
  cmd_snorm->add_option("file", in_snorm, "tensor JSON (default stdin)");
  auto* cmd_nucnorm = app.add_subcommand("nucnorm", "nuclear norm interval");
  cmd_nucnorm->add_option("file", in_nucnorm, "tensor JSON (default stdin)");

  auto* cmd_decomp = app.add_subcommand("decomp", "biquadratic rank-one decomposition");
  double drop_tol = 1e-12;
  cmd_decomp->add_option("file", in_decomp, "tensor JSON (default stdin)");
  cmd_decomp->add_option("--drop-tol", drop_tol, "relative coefficient pruning threshold");

  auto* cmd_tucker = app.add_subcommand("tucker", "biquadratic Tucker decomposition");
  std::vector<std::size_t> hosvd_dims;
  std::vector<std::string> indep_files;
  cmd_tucker->add_option("file", in_tucker, "tensor JSON (default stdin)");
  auto* fh = cmd_tucker->add_option("--hosvd", hosvd_dims, "core size d1 d2")->expected(2);
  auto* fi = cmd_tucker->add_option("--independent", indep_files,
                                    "factor files P.json Q.json")
                 ->expected(2);
  fh->excludes(fi);

  auto* cmd_product = app.add_subcommand("product", "tensor product A*B");
  std::vector<std::string> product_files;
  cmd_product->add_option("files", product_files,
                          "tensor files A B (one file: A from stdin)")
      ->expected(1, 2);

  auto* cmd_invert = app.add_subcommand("invert", "tensor inverse through the flattening");
  double fold_tol = 1e-8;
  bool invert_bq = false;
  cmd_invert->add_option("file", in_invert, "tensor JSON (default stdin)");
  cmd_invert->add_flag("--bq", invert_bq,
                       "require the inverse to fold back into BQ(m, n)");
  cmd_invert->add_option("--fold-tol", fold_tol,
                         "relative fold symmetry tolerance for --bq");

  auto* cmd_psd = app.add_subcommand("psd", "positive semi-definiteness verdict");
  cmd_psd->add_option("file", in_psd, "tensor JSON (default stdin)");

  auto* cmd_contract =
      app.add_subcommand("contract", "Gram contraction of a third-order tensor");
  cmd_contract->add_option("file", in_contract, "third-order JSON (default stdin)");

  auto* cmd_verify = app.add_subcommand("verify", "property battery; exit 3 on violation");
  std::vector<std::string> verify_pair;
  std::size_t verify_random = 0, vm = 2, vn = 2;
  auto* vp = cmd_verify->add_option("--pair", verify_pair, "tensor files A B")->expected(2);
  auto* vr = cmd_verify->add_option("--random", verify_random, "number of random instances");
  cmd_verify->add_option("--m", vm, "random instance m");
  cmd_verify->add_option("--n", vn, "random instance n");
  vp->excludes(vr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ExitCode::kOk : ExitCode::kBadInput;
  }

  const auto started = std::chrono::steady_clock::now();
  int exit_code = ExitCode::kOk;
  json outputs;
  std::string command;
  std::vector<std::string> inputs;

  try {
    if (gen->parsed()) {
      command = "gen " + gen_kind;
      biquad::Rng rng(g.seed);
      if (gen_kind == "identity") {
        outputs = biquad::io::tensor_to_json(biquad::identity(gm, gn));
      } else if (gen_kind == "diagonal") {
        biquad::Matrix d(gm, gn);
        if (g_values.empty()) {
          for (double& v : d.data) v = rng.uniform_pm1();
        } else {
          const std::vector<double> vals = parse_csv(g_values);
          if (vals.size() != gm * gn)
            throw biquad::Error("gen diagonal: expected m*n values");
          d.data = vals;
        }
        outputs = biquad::io::tensor_to_json(biquad::diagonal(gm, gn, d));
      } else if (gen_kind == "rank1") {
        const biquad::Vector x = g_x.empty() ? rng.unit_vector(gm) : parse_csv(g_x);
        const biquad::Vector y = g_y.empty() ? rng.unit_vector(gn) : parse_csv(g_y);
        outputs =
            biquad::io::tensor_to_json(biquad::scale(biquad::rank_one(x, y), g_coef));
      } else if (gen_kind == "random") {
        outputs = biquad::io::tensor_to_json(biquad::random_biquadratic(rng, gm, gn));
      } else if (gen_kind == "gram") {
        const biquad::ThirdOrderTensor t = biquad::random_third_order(rng, gp, gm, gn);
        outputs = g_third ? biquad::io::third_order_to_json(t)
                          : biquad::io::tensor_to_json(biquad::contract_third_order(t));
      } else {
        throw biquad::Error("gen: unknown kind '" + gen_kind + "'");
      }
    } else if (cmd_validate->parsed()) {
      command = "validate";
      inputs = {in_validate};
      outputs = biquad::io::tensor_to_json(read_biquadratic(in_validate, g.tol));
    } else if (cmd_symmetrize->parsed()) {
      command = "symmetrize";
      inputs = {in_symmetrize};
      outputs =
          biquad::io::tensor_to_json(biquad::symmetrize(read_tensor4(in_symmetrize)));
    } else if (cmd_quartic->parsed()) {
      command = "quartic";
      inputs = {in_quartic};
      const biquad::BiquadraticTensor a = read_biquadratic(in_quartic, g.tol);
      outputs = json{{"value", biquad::quartic_form(a, parse_csv(q_x), parse_csv(q_y))}};
    } else if (cmd_meig->parsed()) {
      command = meig_smallest ? "meig --smallest" : "meig --largest";
      inputs = {in_meig};
      const biquad::BiquadraticTensor a = read_biquadratic(in_meig, g.tol);
      const biquad::SolverConfig cfg = make_config(g);
      const biquad::MEigenPair p = meig_smallest ? biquad::smallest_m_eigenvalue(a, cfg)
                                                 : biquad::largest_m_eigenvalue(a, cfg);
      outputs = biquad::io::meigenpair_to_json(p);
    } else if (cmd_snorm->parsed()) {
      command = "snorm";
      inputs = {in_snorm};
      const biquad::BiquadraticTensor a = read_biquadratic(in_snorm, g.tol);
      outputs =
          biquad::io::interval_to_json(biquad::spectral_norm_interval(a, make_config(g)));
    } else if (cmd_nucnorm->parsed()) {
      command = "nucnorm";
      inputs = {in_nucnorm};
      const biquad::BiquadraticTensor a = read_biquadratic(in_nucnorm, g.tol);
      outputs = biquad::io::interval_to_json(biquad::nuclear_norm_interval(a));
    } else if (cmd_decomp->parsed()) {
      command = "decomp";
      inputs = {in_decomp};
      const biquad::BiquadraticTensor a = read_biquadratic(in_decomp, g.tol);
      outputs =
          biquad::io::decomposition_to_json(biquad::bq_rank_one_decompose(a, drop_tol));
    } else if (cmd_tucker->parsed()) {
      command = "tucker";
      inputs = {in_tucker};
      const biquad::BiquadraticTensor a = read_biquadratic(in_tucker, g.tol);
      if (!hosvd_dims.empty()) {
        outputs =
            biquad::io::tucker_to_json(biquad::hosvd(a, hosvd_dims[0], hosvd_dims[1]));
      } else if (!indep_files.empty()) {
        inputs.insert(inputs.end(), indep_files.begin(), indep_files.end());
        const biquad::Matrix p =
            biquad::io::matrix_from_json(read_json_input(indep_files[0]));
        const biquad::Matrix q =
            biquad::io::matrix_from_json(read_json_input(indep_files[1]));
        outputs = biquad::io::tucker_to_json(biquad::independent_core(a, p, q));
      } else {
        throw biquad::Error("tucker: pass --hosvd d1 d2 or --independent P.json Q.json");
      }
    } else if (cmd_product->parsed()) {
      command = "product";
      std::string file_a = "-", file_b;
      if (product_files.size() == 2) {
        file_a = product_files[0];
        file_b = product_files[1];
      } else {
        file_b = product_files[0];
      }
      inputs = {file_a, file_b};
      const biquad::BiquadraticTensor a = read_biquadratic(file_a, g.tol);
      const biquad::BiquadraticTensor b = read_biquadratic(file_b, g.tol);
      outputs = biquad::io::tensor_to_json(biquad::product(a, b));
    } else if (cmd_invert->parsed()) {
      command = "invert";
      inputs = {in_invert};
      const biquad::BiquadraticTensor a = read_biquadratic(in_invert, g.tol);
      outputs = invert_bq
                    ? biquad::io::tensor_to_json(biquad::inverse_in_bq(a, fold_tol))
                    : biquad::io::tensor_to_json(biquad::inverse(a));
    } else if (cmd_psd->parsed()) {
      command = "psd";
      inputs = {in_psd};
      const biquad::BiquadraticTensor a = read_biquadratic(in_psd, g.tol);
      outputs = biquad::io::psd_verdict_to_json(biquad::psd_classify(a, make_config(g)));
    } else if (cmd_contract->parsed()) {
      command = "contract";
      inputs = {in_contract};
      const biquad::ThirdOrderTensor t =
          biquad::io::third_order_from_json(read_json_input(in_contract));
      outputs = biquad::io::tensor_to_json(biquad::contract_third_order(t));
    } else if (cmd_verify->parsed()) {
      command = "verify";
      const biquad::SolverConfig cfg = make_config(g);
      json instances = json::array();
      std::size_t violations = 0;
      if (!verify_pair.empty()) {
        inputs = verify_pair;
        const biquad::BiquadraticTensor a = read_biquadratic(verify_pair[0], g.tol);
        const biquad::BiquadraticTensor b = read_biquadratic(verify_pair[1], g.tol);
        json inst = verify_instance(a, b, cfg);
        if (!inst["all_sound"].get<bool>()) ++violations;
        inst["index"] = 0;
        instances.push_back(std::move(inst));
      } else {
        if (verify_random == 0)
          throw biquad::Error("verify: pass --pair A B or --random N");
        biquad::Rng rng(g.seed);
        for (std::size_t k = 0; k < verify_random; ++k) {
          const biquad::BiquadraticTensor a = biquad::random_biquadratic(rng, vm, vn);
          const biquad::BiquadraticTensor b = biquad::random_biquadratic(rng, vm, vn);
          json inst = verify_instance(a, b, cfg);
          if (!inst["all_sound"].get<bool>()) ++violations;
          inst["index"] = k;
          instances.push_back(std::move(inst));
        }
      }
      outputs = json{{"instances", std::move(instances)},
                     {"all_sound", violations == 0},
                     {"violations", violations}};
      if (violations > 0) exit_code = ExitCode::kViolation;
    }
  } catch (const biquad::SymmetryViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kBadInput;
  } catch (const biquad::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kBadInput;
  } catch (const biquad::ConvergenceFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kNumerical;
  } catch (const biquad::SingularFlattening& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kNumerical;
  } catch (const biquad::NotInvertibleInBQ& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kNumerical;
  } catch (const biquad::RankDeficient& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kNumerical;
  } catch (const biquad::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode::kNumerical;
  }

  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  const json report = run_report(command, inputs, g.seed, std::move(outputs), elapsed_ms);
  const std::string payload = report.dump();
  std::cout << payload << "\n";
  if (!g.out_file.empty()) {
    std::ofstream f(g.out_file);
    if (!f) {
      std::cerr << "error: cannot write " << g.out_file << "\n";
      return ExitCode::kBadInput;
    }
    f << payload << "\n";
  }
  return exit_code;
}
