#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "weylkit/scenario.hpp"

namespace {

int run_command(const std::string& doc_path, const std::string& out_dir, double tol) {
  const weylkit::ScenarioDocument doc =
      weylkit::ScenarioDocument::parse_file(doc_path, weylkit::kDefaultTol);
  const weylkit::RunResult result = weylkit::run_document(doc, out_dir, tol);
  for (size_t i = 0; i < result.reports.size(); ++i)
    std::cout << "task " << i << " " << result.reports[i].name() << ": "
              << (result.reports[i].pass() ? "pass" : "fail") << "\n";
  return result.exit_code;
}

int sample_command(const std::string& doc_path, const std::string& object_name,
                   const std::string& grid, const std::string& out_file, double tol) {
  const weylkit::ScenarioDocument doc =
      weylkit::ScenarioDocument::parse_file(doc_path, weylkit::kDefaultTol);
  return weylkit::sample_object(doc, object_name, grid, out_file, tol);
}

int golden_command(const std::string& which, const std::string& out_dir, double tol) {
  if (which != "momentum")
    throw std::invalid_argument("unknown golden scenario '" + which + "'");
  const weylkit::ScenarioReport report = weylkit::momentum_golden(2, 50, tol);
  std::filesystem::create_directories(out_dir);
  weylkit::write_report_file(report, out_dir + "/momentum_golden.txt");
  std::cout << report.name() << ": " << (report.pass() ? "pass" : "fail") << "\n";
  return report.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-triplet and Weyl-function calculus"};
  app.require_subcommand(1);

  double tol = 1e-8;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol, "default residual tolerance for checks");
  app.add_option("--seed", seed, "override the document seed");

  std::string doc_path, out_dir = "out", object_name, grid, out_file;

  auto* run = app.add_subcommand("run", "execute a scenario document");
  run->add_option("doc", doc_path, "scenario document")->required();
  run->add_option("--out", out_dir, "output directory")->required();

  auto* sample = app.add_subcommand("sample", "tabulate a function object on a grid");
  sample->add_option("doc", doc_path, "scenario document")->required();
  sample->add_option("--object", object_name, "object to evaluate")->required();
  sample->add_option("--grid", grid, "grid spec x0,y0:x1,y1:count")->required();
  sample->add_option("--out", out_file, "output CSV file")->required();

  std::string golden_name;
  auto* golden = app.add_subcommand("golden", "run a bundled golden scenario");
  golden->add_option("name", golden_name, "scenario name (momentum)")->required();
  golden->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(doc_path, out_dir, tol);
    if (sample->parsed()) return sample_command(doc_path, object_name, grid, out_file, tol);
    if (golden->parsed()) return golden_command(golden_name, out_dir, tol == 1e-8 ? 1e-12 : tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
