#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "simpson_lab.h"

namespace {

int exit_for(sl_status s) {
  switch (s) {
    case SL_OK: return 0;
    case SL_PROPERTY_VIOLATION: return 1;
    case SL_NOT_SMALL:
    case SL_PRECISION_EXHAUSTED: return 3;
    default: return 2;
  }
}

int report_error(sl_status s) {
  std::cerr << "simpson-lab: " << sl_status_name(s) << ": " << sl_last_error() << "\n";
  return exit_for(s);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int emit(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "simpson-lab: cannot write " << out_path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

struct Loaded {
  sl_instance* inst = nullptr;
  ~Loaded() { sl_instance_free(inst); }
};

int load(const std::string& path, Loaded& l) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "simpson-lab: cannot read " << path << "\n";
    return 2;
  }
  sl_status s = sl_instance_parse(text.c_str(), &l.inst);
  return s == SL_OK ? 0 : report_error(s);
}

std::string json_str(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o + "\"";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simpson-lab: local p-adic Simpson correspondence laboratory"};
  app.require_subcommand(1);

  std::string suite, out_path, file, eta;
  int p = 3, n = 1, e = 8, guard = 2, d = 1, r = 0, a = 1, rank = 2, D = 12, instances = 0, threads = 0, samples = 50;
  unsigned long long seed = 7;
  bool as_text = false, as_json = false, to_rep = false, to_higgs = false;

  auto* verify = app.add_subcommand("verify", "run a property suite and print its report");
  verify->add_option("suite", suite, "poincare | sz | extension | correspondence | decompletion | twist-eta | h1-comparison | cone-bound | hitchin-locus")
      ->required();
  verify->add_option("--p", p, "odd prime");
  verify->add_option("--n", n, "cyclotomic level");
  verify->add_option("--e", e, "precision exponent");
  verify->add_option("--guard", guard, "precision guard g");
  verify->add_option("--d", d, "chart dimension");
  verify->add_option("--r", r, "crossing count");
  verify->add_option("--a", a, "chart exponent");
  verify->add_option("--rank", rank, "module rank");
  verify->add_option("--D", D, "pd-degree truncation");
  verify->add_option("--seed", seed, "generator seed");
  verify->add_option("--instances", instances, "instance count (0: suite default)");
  verify->add_option("--samples", samples, "seeded cocycles per h1-comparison instance");
  verify->add_option("--threads", threads, "worker threads (0: all cores)");
  verify->add_flag("--text", as_text, "human-readable summary");
  verify->add_flag("--json", as_json, "JSON report (default)");
  verify->add_option("--out", out_path, "write the report to a file");

  auto* correspond = app.add_subcommand("correspond", "map an instance across the correspondence");
  correspond->add_option("file", file, "instance JSON")->required();
  auto* tr = correspond->add_flag("--to-rep", to_rep, "Higgs module -> representation");
  auto* th = correspond->add_flag("--to-higgs", to_higgs, "representation -> Higgs module");
  tr->excludes(th);
  correspond->add_option("--out", out_path, "write the image instance to a file");

  auto* cohom = app.add_subcommand("cohomology", "cohomology profile of an instance's complex");
  cohom->add_option("file", file, "instance JSON")->required();
  cohom->add_option("--eta", eta, "ring element f (JSON) for the decalage eta_f");
  cohom->add_option("--out", out_path, "write the report to a file");

  auto* hitch = app.add_subcommand("hitchin", "Hitchin coefficients and small-locus test");
  hitch->add_option("file", file, "instance JSON")->required();
  hitch->add_option("--out", out_path, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  if (*verify) {
    if (as_text && as_json) {
      std::cerr << "simpson-lab: --text and --json are exclusive\n";
      return 2;
    }
    std::ostringstream cfg;
    cfg << "{\"suite\":" << json_str(suite) << ",\"p\":" << p << ",\"n\":" << n << ",\"e\":" << e << ",\"guard\":" << guard
        << ",\"d\":" << d << ",\"r\":" << r << ",\"a\":" << a << ",\"rank\":" << rank << ",\"D\":" << D << ",\"seed\":" << seed
        << ",\"instances\":" << instances << ",\"samples\":" << samples << ",\"threads\":" << threads << "}";
    char* report = nullptr;
    int code = 2;
    sl_status s = sl_run_suite(cfg.str().c_str(), as_text ? 1 : 0, &report, &code);
    if (s != SL_OK) return report_error(s);
    int w = emit(report, out_path);
    sl_string_free(report);
    return w ? w : code;
  }

  Loaded in;
  if (int rc = load(file, in)) return rc;
  char* text = nullptr;
  sl_status s = SL_OK;
  if (*correspond) {
    if (!to_rep && !to_higgs) {
      std::cerr << "simpson-lab: correspond needs --to-rep or --to-higgs\n";
      return 2;
    }
    Loaded res;
    s = sl_correspond(in.inst, to_rep ? 1 : 0, &res.inst);
    if (s == SL_OK) s = sl_instance_to_json(res.inst, &text);
  } else if (*cohom) {
    s = sl_cohomology(in.inst, eta.empty() ? nullptr : eta.c_str(), &text);
  } else {
    s = sl_hitchin(in.inst, &text);
  }
  if (s != SL_OK) return report_error(s);
  int w = emit(text, out_path);
  sl_string_free(text);
  return w;
}
