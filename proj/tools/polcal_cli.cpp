#include <CLI11.hpp>

#include <cctype>
#include <iostream>
#include <string>

#include "polcal/runner.hpp"

namespace {

void emit(const polcal::Json& doc, bool pretty) {
  std::cout << doc.dump(pretty ? 2 : -1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  polcal::RunConfig cfg;
  std::string vars_csv;
  double tol_abs = 1e-9, tol_rel = 1e-9;

  CLI::App app{"polcal - finite polarization calculus: multidirectional differences,\n"
               "homogeneity classification, derivatives and Taylor diagnostics"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--fn", cfg.fn, "expression defining the scalar field");
    sub->add_option("--vars", vars_csv, "comma-separated variable names (default: x,y,z,w as needed)");
    sub->add_option("--point", cfg.point_text, "base point, comma-separated coordinates");
    sub->add_option("--dirs", cfg.dirs_text, "directions: coordinate tuples separated by ';'");
    sub->add_option("--order", cfg.order, "operator order n");
    sub->add_option("--mode", cfg.mode, "numeric mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--seed", cfg.seed, "RNG seed for sampled checks")->envname("POLCAL_SEED");
    sub->add_option("--tol-abs", tol_abs, "absolute tolerance");
    sub->add_option("--tol-rel", tol_rel, "relative tolerance");
    sub->add_flag("--pretty", cfg.pretty, "indent the JSON output");
    sub->add_flag("--terms", cfg.with_terms, "include the per-subset term audit list");
    sub->add_option("--s0", cfg.s0_text, "Richardson starting step (positive rational)");
    sub->add_option("--levels", cfg.levels, "Richardson levels");
    sub->add_option("--t0", cfg.t0_text, "remainder profile starting shrink (positive rational)");
    sub->add_option("--shrinks", cfg.shrinks, "remainder profile rows per direction");
    sub->add_option("--samples", cfg.samples, "samples per sampled verdict");
  };

  add_common(app.add_subcommand("polarize", "n-th polarization of a field"));
  add_common(app.add_subcommand("derive", "multidirectional derivative (exact or Richardson)"));
  add_common(app.add_subcommand("taylor", "Taylor polynomial with remainder diagnostics"));
  add_common(app.add_subcommand("classify", "homogeneity / homogeneous-polynomial verdicts"));
  add_common(app.add_subcommand("extract", "homogeneous component extraction"));
  add_common(app.add_subcommand("rebase", "re-express a polynomial around a new base point"));

  CLI::App* verify = app.add_subcommand("verify", "randomized exact identity suites");
  verify->add_option("suite", cfg.suite, "iterate | leibniz | chain | euler | reconstruct | euler-theorem")
      ->required();
  verify->add_option("--trials", cfg.trials, "trial count (euler: 0 = exhaustive)");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(polcal::Json{{"error", e.what()}}, false);
    return polcal::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.tolerance.abs_tol = tol_abs;
  cfg.tolerance.rel_tol = tol_rel;
  if (!vars_csv.empty()) {
    cfg.var_names.clear();
    std::string cur;
    for (char c : vars_csv) {
      if (c == ',') {
        cfg.var_names.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    cfg.var_names.push_back(cur);
  }

  polcal::RunResult result = polcal::run_command(cfg);
  emit(result.doc, cfg.pretty);
  return result.exit_code;
}
