#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppi/errors.hpp"
#include "ppi/isometry.hpp"
#include "ppi/kernel_chain.hpp"
#include "ppi/matrix_io.hpp"
#include "ppi/synthesis.hpp"

// Exit codes: 0 success, 1 domain-level negative (infeasible triple or failed
// precondition), 2 input error, 3 numeric-integrity error.

namespace {

using nlohmann::json;

int cmd_analyze(const std::string& path, const ppi::ToleranceConfig& cfg, bool as_json) {
  const ppi::Matrix a = ppi::read_matrix_file(path);
  const ppi::IndexReport report = ppi::analyze(a, cfg);
  if (as_json) {
    std::cout << ppi::report_to_json(report).dump(2) << "\n";
    return 0;
  }
  std::cout << "p=" << ppi::to_string(report.p) << " a=" << report.a << "\n";
  std::cout << "per_power:";
  for (std::size_t l = 0; l < report.per_power.size(); ++l) {
    std::cout << " A^" << (l + 1) << "=" << (report.per_power[l] ? "yes" : "no");
  }
  std::cout << "\n";
  std::cout << "geo0=" << report.geo0 << " alg0=" << report.alg0 << "\n";
  return 0;
}

int cmd_synthesize(int n, int j, int k, const std::string& out_path, bool as_json) {
  const auto [witness, recipe] = ppi::synthesize(j, k, n);
  ppi::write_matrix_file(witness, out_path);
  if (as_json) {
    json doc{{"tag", ppi::to_string(recipe.tag)}, {"blocks", recipe.blocks},
             {"n", n},                            {"j", j},
             {"k", k},                            {"out", out_path}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "case " << ppi::to_string(recipe.tag) << "\n";
  std::cout << "blocks: " << recipe.blocks << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_feasible(int n, bool as_json) {
  const auto pairs = ppi::feasible_pairs(n);
  if (as_json) {
    json rows = json::array();
    for (const auto& v : pairs) {
      rows.push_back({{"j", v.j}, {"k", v.k}, {"condition", ppi::to_string(v.condition)}});
    }
    std::cout << json{{"n", n}, {"pairs", rows}}.dump(2) << "\n";
    return 0;
  }
  std::cout << "j k condition\n";
  for (const auto& v : pairs) {
    std::cout << v.j << " " << v.k << " " << ppi::to_string(v.condition) << "\n";
  }
  return 0;
}

int cmd_verify(int n_max, const ppi::ToleranceConfig& cfg, bool as_json) {
  if (n_max < 1) throw std::invalid_argument("verify: n_max >= 1 required");
  int checked = 0;
  json failures = json::array();
  for (int n = 1; n <= n_max; ++n) {
    int n_checked = 0;
    for (const auto& v : ppi::feasible_pairs(n)) {
      const auto [witness, recipe] = ppi::synthesize(v.j, v.k, n);
      const ppi::IndexReport report = ppi::analyze(witness, cfg);
      ++checked;
      ++n_checked;
      const bool ok =
          report.p == ppi::IsometryIndex::finite(v.j) && report.a == v.k;
      if (!ok) {
        failures.push_back({{"n", n},
                            {"j", v.j},
                            {"k", v.k},
                            {"tag", ppi::to_string(recipe.tag)},
                            {"p", ppi::to_string(report.p)},
                            {"a", report.a}});
      }
    }
    if (!as_json) {
      std::cout << "n=" << n << ": " << n_checked << " triples checked\n";
    }
  }
  if (as_json) {
    std::cout << json{{"n_max", n_max},
                      {"checked", checked},
                      {"failed", failures.size()},
                      {"failures", failures}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "total: " << checked << " checked, " << failures.size() << " failed\n";
    for (const auto& f : failures) {
      std::cout << "FAIL n=" << f["n"] << " j=" << f["j"] << " k=" << f["k"]
                << ": got p=" << f["p"].get<std::string>() << " a=" << f["a"] << "\n";
    }
  }
  return failures.empty() ? 0 : 1;
}

int cmd_decompose(const std::string& path, int j, std::string out_prefix,
                  const ppi::ToleranceConfig& cfg) {
  const ppi::Matrix a = ppi::read_matrix_file(path);
  if (out_prefix.empty()) {
    out_prefix = std::filesystem::path(path).replace_extension("").string();
  }
  const ppi::BlockForm form = ppi::canonical_form(a, j, cfg);
  const ppi::BlockFormCheck check = ppi::verify_block_form(form, a, cfg);
  if (!check.ok) {
    throw ppi::NumericError("decompose: block form verification failed");
  }

  json files;
  auto emit = [&](const std::string& name, const ppi::Matrix& m) {
    const std::string file = out_prefix + "." + name + ".json";
    ppi::write_matrix_file(m, file);
    files[name] = file;
  };
  emit("Q", form.q);
  for (std::size_t l = 0; l < form.superdiag_blocks.size(); ++l) {
    emit("A" + std::to_string(l + 1), form.superdiag_blocks[l]);
  }
  emit("B", form.b);
  emit("C", form.c);

  json manifest{{"n", a.rows()},
                {"j", j},
                {"dims", form.dims},
                {"max_residual", check.max_residual},
                {"files", files}};
  const std::string manifest_path = out_prefix + ".manifest.json";
  {
    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("cannot open " + manifest_path + " for writing");
    out << manifest.dump(2) << "\n";
  }
  std::cout << "dims:";
  for (int d : form.dims) std::cout << " " << d;
  std::cout << "\nmax_residual: " << check.max_residual << "\n";
  std::cout << "wrote " << manifest_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power partial isometry analysis: index/ascent reports, witness\n"
               "synthesis for feasible (index, ascent, size) triples, and block\n"
               "decompositions of power partial isometries."};
  app.require_subcommand(1);

  ppi::ToleranceConfig cfg;
  app.add_option("--rank-tol", cfg.rank_tol, "Relative singular value cutoff for rank decisions")
      ->capture_default_str();
  app.add_option("--proj-tol", cfg.proj_tol, "Max entrywise deviation for projection/isometry tests")
      ->capture_default_str();

  std::string path;
  std::string out_path = "witness.json";
  std::string out_prefix;
  int n = 0, j = 0, k = 0, n_max = 0;
  bool as_json = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "Report index, ascent and multiplicities");
  analyze_cmd->add_option("path", path, "Matrix file")->required();
  analyze_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* synth_cmd = app.add_subcommand("synthesize", "Write a witness matrix for (n, j, k)");
  synth_cmd->add_option("n", n, "Matrix size")->required();
  synth_cmd->add_option("j", j, "Target index")->required();
  synth_cmd->add_option("k", k, "Target ascent")->required();
  synth_cmd->add_option("--out", out_path, "Output matrix file")->capture_default_str();
  synth_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* feasible_cmd = app.add_subcommand("feasible", "List feasible (index, ascent) pairs");
  feasible_cmd->add_option("n", n, "Matrix size")->required();
  feasible_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* verify_cmd =
      app.add_subcommand("verify", "Synthesize and re-analyze every feasible triple up to n_max");
  verify_cmd->add_option("n_max", n_max, "Largest matrix size")->required();
  verify_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* decompose_cmd =
      app.add_subcommand("decompose", "Write the block decomposition Q, A_l, B, C");
  decompose_cmd->add_option("path", path, "Matrix file")->required();
  decompose_cmd->add_option("j", j, "Number of kernel-chain steps")->required();
  decompose_cmd->add_option("--out", out_prefix, "Output path prefix (default: input stem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(path, cfg, as_json);
    if (synth_cmd->parsed()) return cmd_synthesize(n, j, k, out_path, as_json);
    if (feasible_cmd->parsed()) return cmd_feasible(n, as_json);
    if (verify_cmd->parsed()) return cmd_verify(n_max, cfg, as_json);
    if (decompose_cmd->parsed()) return cmd_decompose(path, j, out_prefix, cfg);
  } catch (const ppi::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ppi::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
