#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pgz/pgz.h"

namespace {

constexpr int kInputError = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Which positional arguments are literal text rather than file paths.
bool is_literal(const std::string& kind, std::size_t pos, const std::string& arg) {
  if (kind == "encode") return true;
  if (kind == "run") return pos == 1;
  if (kind == "cominj" || kind == "invert-subst") return !std::filesystem::is_regular_file(arg);
  return false;
}

int fail(const std::string& msg) {
  std::cerr << "pgz: " << msg << "\n";
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivalence of register transducers and zeroness of polynomial grammars"};
  std::string kind;
  std::vector<std::string> args;
  std::size_t size = 12, iters = 8, min_steps = 0;
  double seconds = 60;
  std::string schedule = "rr", alphabet, emit, check, report_path;

  app.add_option("kind", kind, "encode | run | equiv | zeroness | indep-zeroness | chain-zeroness | cominj | "
                               "invert-subst | vass-compile | vass-reach | eqsat")
      ->required();
  app.add_option("inputs", args, "input files (words and substitutions are given literally)");
  app.add_option("--budget-size", size, "largest derivation tree, or VASS run length")->check(CLI::PositiveNumber);
  app.add_option("--budget-iters", iters, "closure iterations")->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", seconds, "wall-clock limit")->check(CLI::PositiveNumber);
  app.add_option("--schedule", schedule, "rr or parallel")->check(CLI::IsMember({"rr", "parallel"}));
  app.add_option("--emit-certificate", emit, "write the certificate found to PATH");
  app.add_option("--check-certificate", check, "check the certificate in PATH instead of searching");
  app.add_option("--min-steps", min_steps, "shortest VASS run counted as reaching 0");
  app.add_option("--alphabet", alphabet, "input alphabet, e.g. a,b");
  app.add_option("--report", report_path, "also write the JSON report to PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  pgz_problem* p = nullptr;
  if (pgz_problem_create(kind.c_str(), &p) != PGZ_OK) return fail("unknown problem kind '" + kind + "'");
  auto cleanup = [&] { pgz_problem_destroy(p); };

  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string text = args[i];
    if (!is_literal(kind, i, args[i]) && !read_file(args[i], text)) {
      cleanup();
      return fail("cannot read " + args[i]);
    }
    pgz_problem_add_input(p, text.c_str());
  }
  pgz_problem_set_alphabet(p, alphabet.c_str());
  pgz_problem_set_budgets(p, size, iters, seconds);
  pgz_problem_set_schedule(p, schedule == "parallel" ? PGZ_PARALLEL : PGZ_ROUND_ROBIN);
  pgz_problem_set_min_steps(p, min_steps);
  if (!check.empty()) {
    std::string cert;
    if (!read_file(check, cert)) {
      cleanup();
      return fail("cannot read " + check);
    }
    pgz_problem_set_check_certificate(p, cert.c_str());
  }

  pgz_result* r = nullptr;
  pgz_status st = pgz_solve(p, &r);
  cleanup();
  if (st != PGZ_OK) return fail(pgz_status_string(st));

  int code = pgz_result_exit_code(r);
  std::string report = pgz_result_report(r);
  std::string text = pgz_result_text(r);
  std::cout << (kind == "vass-compile" && code == 0 ? text : report);
  if (!report_path.empty() && !write_file(report_path, report)) code = fail("cannot write " + report_path);
  if (!emit.empty()) {
    if (const char* cert = pgz_result_certificate(r)) {
      if (!write_file(emit, cert)) code = fail("cannot write " + emit);
    } else {
      std::cerr << "pgz: no certificate to emit\n";
    }
  }
  pgz_result_destroy(r);
  return code;
}
