// csbf: command-line driver for the identity suites and scenario files.
//
//   csbf verify   [--suite S] [--trials N] [--seed S] [--cap C] [--algebra A] [--format F] [--no-timing]
//   csbf scenario PATH [--format F] [--no-timing]
//
// Exit status: 0 when every check passes, 1 when any check fails, 2 on usage,
// parse or I/O errors.

#include <csbf/report.hpp>
#include <csbf/scenario.hpp>
#include <csbf/verify.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

constexpr int kUsage = 2;

int emit(const csbf::Report& report, const std::string& format, bool timing) {
  const csbf::RenderOptions opt{timing};
  std::cout << (format == "json" ? csbf::render_json(report, opt) : csbf::render_text(report, opt));
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of transgression and Chern-Simons identities"};
  app.require_subcommand(1);

  csbf::VerifyOptions vopt;
  std::string format = "text";
  bool no_timing = false;

  auto* verify = app.add_subcommand("verify", "run the identity suites");
  verify->add_option("--suite", vopt.suite, "symbolic, instance or all")
      ->check(CLI::IsMember({"symbolic", "instance", "all"}))
      ->capture_default_str();
  verify->add_option("--trials", vopt.trials, "random instances per check")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", vopt.seed, "base seed")->capture_default_str();
  verify->add_option("--cap", vopt.cap, "jet truncation order")->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--algebra", vopt.algebra, "sl2 or sl3")->check(CLI::IsMember({"sl2", "sl3"}))->capture_default_str();
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify->add_flag("--no-timing", no_timing, "omit wall-clock times from the report");

  std::string path;
  auto* scenario = app.add_subcommand("scenario", "evaluate a scenario file");
  scenario->add_option("path", path, "scenario file")->required();
  scenario->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  scenario->add_flag("--no-timing", no_timing, "omit wall-clock times from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return emit(csbf::run_verify(vopt), format, !no_timing);
    return emit(csbf::Scenario::run_file(path), format, !no_timing);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
