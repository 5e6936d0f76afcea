// emg: command-line front end of the emergent-algebra workbench. Builds
// JSON requests from flags and drives everything through the C API in
// emergent.h. Exit codes: 0 all checks passed, 1 a verification failed,
// 2 configuration or syntax error.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "emergent.h"

using ojson = nlohmann::ordered_json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { emg_string_free(p); }
  std::string get() const { return p ? std::string(p) : std::string(); }
};

struct ModelHandle {
  emg_model* m = nullptr;
  ~ModelHandle() { emg_model_destroy(m); }
};

struct ModelFlags {
  std::string model = "affine";
  int dim = 1;
  std::string mode;
  std::string grading;
  std::string config_file;
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
  cmd->add_option("--model", mf.model,
                  "affine|warped|heisenberg|heis-graded|heis-iso|contractible|alexander|mobius");
  cmd->add_option("--dim", mf.dim, "carrier dimension (affine/warped)");
  cmd->add_option("--mode", mf.mode, "exact|double");
  cmd->add_option("--grading", mf.grading, "graded|isotropic (heisenberg)");
  cmd->add_option("--config", mf.config_file, "model config JSON file (overrides other flags)");
}

std::string model_config(const ModelFlags& mf) {
  if (!mf.config_file.empty()) {
    std::ifstream in(mf.config_file);
    if (!in) throw CLI::ValidationError("--config", "cannot read " + mf.config_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  ojson cfg;
  std::string name = mf.model;
  std::string grading = mf.grading;
  if (name == "heis-iso") {
    name = "heisenberg";
    grading = "isotropic";
  } else if (name == "heis-graded") {
    name = "heisenberg";
    grading = "graded";
  }
  cfg["model"] = name;
  if (name == "affine" || name == "warped") cfg["dimension"] = mf.dim;
  if (!mf.mode.empty()) cfg["mode"] = mf.mode;
  if (!grading.empty() && name == "heisenberg") cfg["grading"] = grading;
  return cfg.dump();
}

int open_model(const ModelFlags& mf, ModelHandle& h) {
  int rc = emg_model_create(model_config(mf).c_str(), &h.m);
  if (rc != EMG_OK) std::fprintf(stderr, "error: %s\n", emg_last_error());
  return rc;
}

// scalars or comma lists become JSON point arrays: "1,0,0" -> ["1","0","0"]
ojson point_json(const std::string& text) {
  if (!text.empty() && (text[0] == '[' || text[0] == '{')) return ojson::parse(text);
  ojson arr = ojson::array();
  std::stringstream ss(text);
  std::string coord;
  while (std::getline(ss, coord, ',')) arr.push_back(coord);
  return arr;
}

void write_out(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw CLI::ValidationError("--out", "cannot write " + path);
}

int finish(int rc, const std::string& report, const std::string& out_path,
           const std::string& csv_path) {
  if (rc != EMG_OK) {
    std::fprintf(stderr, "error: %s\n", emg_last_error());
    return 2;
  }
  if (!out_path.empty()) write_out(out_path, report);
  if (!csv_path.empty()) {
    Str csv;
    if (emg_report_to_csv(report.c_str(), &csv.p) == EMG_OK)
      write_out(csv_path, csv.get());
    else
      std::fprintf(stderr, "warning: no sweep to export: %s\n", emg_last_error());
  }
  ojson j = ojson::parse(report, nullptr, false);
  bool pass = j.is_object() && j.value("pass", false);
  return pass ? 0 : 1;
}

void print_law_suite(const ojson& suite, const std::string& title) {
  std::printf("  %s:%s\n", title.c_str(), suite["pass"].get<bool>() ? " ok" : "");
  for (const auto& law : suite["laws"]) {
    std::printf("    %-28s %s  residual %.3g%s\n", law["law"].get<std::string>().c_str(),
                law["pass"].get<bool>() ? "pass" : "FAIL",
                law["max_residual"].get<double>(),
                law.value("expected_failure", false) ? "  [expected failure]" : "");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emg - verification workbench for scale-indexed right quasigroups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", emg_version());

  std::string out_path, csv_path;
  app.add_option("--out", out_path, "write the JSON report to this file")->group("output");
  app.add_option("--csv", csv_path, "export the sweep as CSV")->group("output");

  // ---------------------------------------------------------------- check
  auto* check = app.add_subcommand("check", "verify irq axioms, gate identities, distributivity");
  ModelFlags check_mf;
  add_model_flags(check, check_mf);
  std::uint64_t check_seed = 0;
  long check_samples = 1000;
  std::vector<std::string> check_eps, check_xfail;
  std::string check_lambda;
  check->add_option("--seed", check_seed, "RNG seed (mandatory for sampled runs)")
      ->envname("EMERGE_SEED")
      ->required();
  check->add_option("--samples", check_samples, "samples per law");
  check->add_option("--eps", check_eps, "scales to test the identities at");
  check->add_option("--lambda", check_lambda, "second distributivity scale");
  check->add_option("--xfail", check_xfail,
                    "laws whose failure is the documented outcome (default for mobius: "
                    "self_distributivity)");

  // ---------------------------------------------------------------- prove
  auto* prove = app.add_subcommand("prove", "prove term identities by normalization");
  bool prove_builtin = false, prove_trace = false;
  std::string prove_identity_text, prove_file, prove_normalize;
  prove->add_flag("--builtin", prove_builtin, "prove the seven built-in gate identities");
  prove->add_flag("--trace", prove_trace, "print derivation traces");
  prove->add_option("--identity", prove_identity_text, "one identity 'lhs = rhs'");
  prove->add_option("--file", prove_file, "file with one identity per line ('#' comments)");
  prove->add_option("--normalize", prove_normalize, "normalize one term and print the trace");

  // --------------------------------------------------------------- limits
  auto* limits = app.add_subcommand("limits", "scale-to-zero sweeps and law suites");
  ModelFlags lim_mf;
  add_model_flags(limits, lim_mf);
  std::string lim_test = "conical", lim_x, lim_u, lim_lambda, lim_norm, lim_f = "square",
              lim_oracle;
  std::uint64_t lim_seed = 0;
  long lim_kmin = 1, lim_kmax = 0, lim_samples = 0, lim_grid = 50;
  double lim_tol = -1.0, lim_radius = -2.0, lim_threshold = 0.9;
  bool lim_expect_degenerate = false;
  std::vector<std::string> lim_probes;
  limits->add_option("--test", lim_test, "conical|relative|gwd|a2|cone|norm|derivative")
      ->required();
  limits->add_option("--seed", lim_seed, "RNG seed")->envname("EMERGE_SEED")->default_val(7);
  limits->add_option("--x", lim_x, "basepoint (JSON or comma list); default per model");
  limits->add_option("--u", lim_u, "direction point for derivative");
  limits->add_option("--lambda", lim_lambda, "relative-dilation scale");
  limits->add_option("--norm", lim_norm, "norm name for --test norm");
  limits->add_option("--f", lim_f, "identity|square|affine:<A>,<b>");
  limits->add_option("--oracle", lim_oracle, "expected derivative limit");
  limits->add_option("--k-min", lim_kmin, "coarsest scale 2^-k");
  limits->add_option("--k-max", lim_kmax, "finest scale 2^-k (default 12 exact / 20 double)");
  limits->add_option("--samples", lim_samples, "sample tuples");
  limits->add_option("--grid", lim_grid, "pair-grid size for a2");
  limits->add_option("--tolerance", lim_tol, "law tolerance");
  limits->add_option("--radius", lim_radius, "sample-ball radius");
  limits->add_option("--threshold", lim_threshold, "required log-log slope");
  limits->add_flag("--expect-degenerate", lim_expect_degenerate,
                   "degenerate limit-norm directions are the documented outcome");
  limits->add_option("--probe", lim_probes, "extra points for the norm-limit sweep");

  // ---------------------------------------------------------------- braid
  auto* braid = app.add_subcommand("braid", "color braid words, apply moves, measure defects");
  ModelFlags braid_mf;
  add_model_flags(braid, braid_mf);
  std::string braid_word, braid_word2, braid_input, braid_op = "color", braid_move_kind,
              braid_sign = "+", braid_scale = "1/2", braid_x, braid_eps = "1/8",
              braid_enc_mode = "whole";
  long braid_at = 0, braid_pos = 1, braid_kmin = 1, braid_kmax = 12;
  int braid_strands = 0;
  bool braid_r3 = false, braid_encircle = false;
  std::uint64_t braid_seed = 7;
  braid->add_option("--word", braid_word, "braid word, e.g. 's1+{1/2} s2+{1/2} s1+{1/2}'")
      ->required();
  braid->add_option("--word2", braid_word2, "second word (defect, sweep)");
  braid->add_option("--strands", braid_strands, "strand count override");
  braid->add_option("--input", braid_input, "input coloring as a JSON array of points");
  braid->add_option("--op", braid_op, "color|move|defect|encircle|sweep");
  braid->add_flag("--r3", braid_r3, "sweep against the R3-shifted word (implies --op sweep)");
  braid->add_flag("--encircle", braid_encircle, "encircle the diagram (implies --op encircle)");
  braid->add_option("--move-kind", braid_move_kind, "r2_cancel|r2_insert|r3_shift");
  braid->add_option("--at", braid_at, "crossing index for moves / the R3 sweep");
  braid->add_option("--pos", braid_pos, "strand position for r2_insert");
  braid->add_option("--sign", braid_sign, "+|- for r2_insert");
  braid->add_option("--scale", braid_scale, "decoration for r2_insert");
  braid->add_option("--x", braid_x, "encircling basepoint (default per model)");
  braid->add_option("--eps", braid_eps, "encircling scale");
  braid->add_option("--enc-mode", braid_enc_mode, "whole|per_crossing");
  braid->add_option("--k-min", braid_kmin, "sweep coarsest 2^-k");
  braid->add_option("--k-max", braid_kmax, "sweep finest 2^-k");
  braid->add_option("--seed", braid_seed, "RNG seed")->envname("EMERGE_SEED");

  // ----------------------------------------------------------------- diff
  auto* diff = app.add_subcommand("diff", "derivative gate convergence");
  ModelFlags diff_mf;
  add_model_flags(diff, diff_mf);
  std::string diff_f = "square", diff_x = "1", diff_u = "2", diff_oracle;
  long diff_kmin = 1, diff_kmax = 20;
  double diff_tol = 1e-6;
  diff->add_option("--f", diff_f, "identity|square|affine:<A>,<b>");
  diff->add_option("--x", diff_x, "basepoint");
  diff->add_option("--u", diff_u, "direction point");
  diff->add_option("--oracle", diff_oracle, "expected limit");
  diff->add_option("--k-min", diff_kmin, "coarsest 2^-k");
  diff->add_option("--k-max", diff_kmax, "finest 2^-k");
  diff->add_option("--tolerance", diff_tol, "limit tolerance vs oracle");

  // --------------------------------------------------------------- report
  auto* report_cmd = app.add_subcommand("report", "summarize a saved JSON report");
  std::string report_file;
  report_cmd->add_option("file", report_file, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      ModelHandle h;
      if (open_model(check_mf, h) != EMG_OK) return 2;
      ojson params{{"seed", check_seed}, {"samples", check_samples}};
      if (!check_eps.empty()) params["eps"] = check_eps;
      if (!check_lambda.empty()) params["lambda"] = check_lambda;
      if (check_xfail.empty() && check_mf.model == "mobius")
        check_xfail = {"self_distributivity"};
      if (!check_xfail.empty()) params["xfail"] = check_xfail;
      Str rep;
      int rc = emg_check(h.m, params.dump().c_str(), &rep.p);
      if (rc == EMG_OK) {
        ojson r = ojson::parse(rep.get());
        std::printf("check %s  seed=%llu samples=%ld\n",
                    r["model"].dump().c_str(), (unsigned long long)check_seed, check_samples);
        print_law_suite(r["irq_axioms"], "irq axioms");
        for (const auto& s : r["pplay"]) print_law_suite(s, "gate identities");
        for (const auto& s : r["distributivity"]) print_law_suite(s, "distributivity");
        std::printf("overall: %s\n", r["pass"].get<bool>() ? "PASS" : "FAIL");
      }
      return finish(rc, rep.get(), out_path, csv_path);
    }

    if (prove->parsed()) {
      Str rep;
      int rc;
      ojson params{{"trace", prove_trace}};
      if (!prove_normalize.empty()) {
        rc = emg_term_normalize(prove_normalize.c_str(), &rep.p);
        if (rc == EMG_OK) {
          ojson r = ojson::parse(rep.get());
          std::printf("%s\n  ->  %s\n", r["input"].get<std::string>().c_str(),
                      r["normal_form"].get<std::string>().c_str());
          for (const auto& s : r["steps"])
            std::printf("  %s at %s: %s -> %s\n", s["rule"].get<std::string>().c_str(),
                        s["path"].dump().c_str(), s["before"].get<std::string>().c_str(),
                        s["after"].get<std::string>().c_str());
        }
        return finish(rc, rep.get(), out_path, csv_path);
      }
      if (prove_builtin) {
        rc = emg_prove_builtin(params.dump().c_str(), &rep.p);
      } else if (!prove_identity_text.empty()) {
        rc = emg_prove(prove_identity_text.c_str(), params.dump().c_str(), &rep.p);
      } else if (!prove_file.empty()) {
        std::ifstream in(prove_file);
        if (!in) {
          std::fprintf(stderr, "error: cannot read %s\n", prove_file.c_str());
          return 2;
        }
        ojson results = ojson::array();
        bool all = true;
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
          auto hash = line.find('#');
          if (hash != std::string::npos) line = line.substr(0, hash);
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          Str one;
          ++n;
          if (line.find('=') == std::string::npos) {
            // bare term: normalize it
            rc = emg_term_normalize(line.c_str(), &one.p);
            if (rc != EMG_OK) return finish(rc, "", out_path, csv_path);
            ojson r = ojson::parse(one.get());
            std::printf("%-28s ->  %s\n", r["input"].get<std::string>().c_str(),
                        r["normal_form"].get<std::string>().c_str());
            continue;
          }
          ojson p2 = params;
          p2["name"] = "line " + std::to_string(n);
          rc = emg_prove(line.c_str(), p2.dump().c_str(), &one.p);
          if (rc != EMG_OK) return finish(rc, "", out_path, csv_path);
          ojson r = ojson::parse(one.get());
          all = all && r["pass"].get<bool>();
          results.push_back(r["results"][0]);
        }
        ojson combined{{"test", "prove"}, {"results", results}, {"pass", all}};
        rep.p = nullptr;
        std::string text = combined.dump(2) + "\n";
        for (const auto& r : results)
          std::printf("%-28s %s\n", r["identity"].get<std::string>().c_str(),
                      r["success"].get<bool>() ? "SUCCESS" : "FAIL");
        std::printf("overall: %s\n", all ? "PASS" : "FAIL");
        if (!out_path.empty()) write_out(out_path, text);
        return all ? 0 : 1;
      } else {
        std::fprintf(stderr, "error: prove needs --builtin, --identity, --file or --normalize\n");
        return 2;
      }
      if (rc == EMG_OK) {
        ojson r = ojson::parse(rep.get());
        int ok = 0;
        for (const auto& res : r["results"]) {
          bool s = res["success"].get<bool>();
          ok += s;
          std::printf("%-28s %s\n", res["identity"].get<std::string>().c_str(),
                      s ? "SUCCESS" : "FAIL");
          if (prove_trace && s) {
            std::printf("  lhs:\n%s  rhs:\n%s", res["lhs_trace"].get<std::string>().c_str(),
                        res["rhs_trace"].get<std::string>().c_str());
          }
          if (res.contains("counterexample"))
            std::printf("  counterexample: %s\n",
                        res["counterexample"].get<std::string>().c_str());
          if (res.contains("note"))
            std::printf("  note: %s\n", res["note"].get<std::string>().c_str());
        }
        std::printf("%d/%zu SUCCESS\n", ok, r["results"].size());
      }
      return finish(rc, rep.get(), out_path, csv_path);
    }

    if (limits->parsed()) {
      ModelHandle h;
      if (open_model(lim_mf, h) != EMG_OK) return 2;
      ojson req{{"test", lim_test}, {"seed", lim_seed}, {"k_min", lim_kmin}};
      if (lim_kmax > 0) req["k_max"] = lim_kmax;
      if (lim_samples > 0) req["samples"] = lim_samples;
      if (!lim_x.empty()) req["x"] = point_json(lim_x);
      if (!lim_u.empty()) req["u"] = point_json(lim_u);
      if (!lim_lambda.empty()) req["lambda"] = lim_lambda;
      if (!lim_norm.empty()) req["norm"] = lim_norm;
      if (lim_test == "derivative") {
        req["f"] = lim_f;
        if (!lim_oracle.empty()) req["oracle"] = point_json(lim_oracle);
      }
      if (lim_tol >= 0.0) req["tolerance"] = lim_tol;
      if (lim_radius > -2.0) req["radius"] = lim_radius;
      req["grid"] = lim_grid;
      req["threshold"] = lim_threshold;
      if (lim_expect_degenerate) req["expect_definite"] = false;
      if (!lim_probes.empty()) {
        ojson probes = ojson::array();
        for (const auto& p : lim_probes) probes.push_back(point_json(p));
        req["probes"] = probes;
      }
      Str rep;
      int rc = emg_limits_run(h.m, req.dump().c_str(), &rep.p);
      if (rc == EMG_OK) {
        ojson r = ojson::parse(rep.get());
        std::printf("limits --test %s: %s\n", lim_test.c_str(),
                    r["pass"].get<bool>() ? "PASS" : "FAIL");
        if (r.contains("rate") && !r["rate"].is_null())
          std::printf("  fitted rate: %.3f\n", r["rate"].get<double>());
        if (r.contains("identically_zero") && r["identically_zero"].get<bool>())
          std::printf("  defect identically zero\n");
        if (r.contains("laws")) print_law_suite(r, "laws");
        if (r.contains("group_laws")) print_law_suite(r["group_laws"], "group laws");
        if (r.contains("flagged"))
          for (const auto& f : r["flagged"])
            std::printf("  flagged degenerate direction: %s\n", f.get<std::string>().c_str());
      }
      return finish(rc, rep.get(), out_path, csv_path);
    }

    if (braid->parsed()) {
      ModelHandle h;
      if (open_model(braid_mf, h) != EMG_OK) return 2;
      std::string op = braid_r3 ? "sweep" : braid_encircle ? "encircle" : braid_op;
      ojson req{{"op", op}, {"word", braid_word}, {"seed", braid_seed}};
      if (braid_strands > 0) req["strands"] = braid_strands;
      if (!braid_word2.empty()) req["word2"] = braid_word2;
      if (!braid_input.empty()) req["input"] = ojson::parse(braid_input);
      if (op == "move") {
        req["move"] = ojson{{"kind", braid_move_kind},
                            {"at", braid_at},
                            {"pos", braid_pos},
                            {"sign", braid_sign},
                            {"scale", braid_scale}};
      }
      if (op == "encircle") {
        ojson enc{{"eps", braid_eps}, {"mode", braid_enc_mode}};
        if (!braid_x.empty()) enc["x"] = point_json(braid_x);
        req["encircle"] = enc;
      }
      if (op == "sweep") {
        req["r3_at"] = braid_at;
        req["k_min"] = braid_kmin;
        req["k_max"] = braid_kmax;
        if (!braid_x.empty()) req["x"] = point_json(braid_x);
      }
      Str rep;
      int rc = emg_braid_run(h.m, req.dump().c_str(), &rep.p);
      if (rc == EMG_OK) {
        ojson r = ojson::parse(rep.get());
        if (r.contains("output")) std::printf("output: %s\n", r["output"].dump().c_str());
        if (r.contains("result")) std::printf("word: %s\n", r["result"].get<std::string>().c_str());
        if (r.contains("defect")) std::printf("defect: %.6g\n", r["defect"].get<double>());
        if (r.contains("values")) {
          std::printf("k  |eps|          defect\n");
          for (std::size_t k = 0; k < r["values"].size(); ++k)
            std::printf("%-2zu %-14.6g %.6g\n", k + 1, r["schedule_abs"][k].get<double>(),
                        r["values"][k].get<double>());
          if (!r["rate"].is_null()) std::printf("fitted slope: %.3f\n", r["rate"].get<double>());
        }
        std::printf("%s\n", r["pass"].get<bool>() ? "PASS" : "FAIL");
      }
      return finish(rc, rep.get(), out_path, csv_path);
    }

    if (diff->parsed()) {
      ModelHandle h;
      if (open_model(diff_mf, h) != EMG_OK) return 2;
      ojson req{{"test", "derivative"}, {"f", diff_f},        {"x", point_json(diff_x)},
                {"u", point_json(diff_u)}, {"k_min", diff_kmin}, {"k_max", diff_kmax},
                {"tolerance", diff_tol}};
      if (!diff_oracle.empty()) req["oracle"] = point_json(diff_oracle);
      Str rep;
      int rc = emg_limits_run(h.m, req.dump().c_str(), &rep.p);
      if (rc == EMG_OK) {
        ojson r = ojson::parse(rep.get());
        std::printf("limit: %s\n", r["params"]["limit"].dump().c_str());
        if (r["params"].contains("limit_defect"))
          std::printf("defect vs oracle: %.6g\n", r["params"]["limit_defect"].get<double>());
        if (!r["rate"].is_null()) std::printf("rate: %.3f\n", r["rate"].get<double>());
        std::printf("%s\n", r["pass"].get<bool>() ? "PASS" : "FAIL");
      }
      return finish(rc, rep.get(), out_path, csv_path);
    }

    if (report_cmd->parsed()) {
      std::ifstream in(report_file, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", report_file.c_str());
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      ojson r = ojson::parse(ss.str(), nullptr, false);
      if (r.is_discarded() || !r.is_object()) {
        std::fprintf(stderr, "error: %s is not a JSON report\n", report_file.c_str());
        return 2;
      }
      std::printf("test: %s\n", r.value("test", std::string("?")).c_str());
      if (r.contains("model")) std::printf("model: %s\n", r["model"].dump().c_str());
      if (r.contains("rate") && !r["rate"].is_null())
        std::printf("rate: %.3f\n", r["rate"].get<double>());
      bool pass = r.value("pass", false);
      std::printf("pass: %s\n", pass ? "true" : "false");
      if (!csv_path.empty()) {
        Str csv;
        if (emg_report_to_csv(ss.str().c_str(), &csv.p) == EMG_OK)
          write_out(csv_path, csv.get());
        else {
          std::fprintf(stderr, "error: %s\n", emg_last_error());
          return 2;
        }
      }
      return pass ? 0 : 1;
    }
  } catch (const ojson::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
