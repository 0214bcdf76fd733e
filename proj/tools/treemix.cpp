#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "treemix/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for the down-up Markov chain on rooted unlabeled trees"};
  app.require_subcommand(1);

  treemix::RunConfig cfg;
  cfg.caps = treemix::caps_from_env();

  std::string format = "csv";
  std::string route = "all";
  std::string kind = "downup";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output_path, "Write the dump to this file instead of stdout");
    sub->add_option("--format", format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "List all rooted trees of one size");
  enumerate->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  add_common(enumerate);

  CLI::App* stats = app.add_subcommand("stats", "Combinatorial weights m, n, |SG| per tree");
  stats->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  add_common(stats);

  CLI::App* measure = app.add_subcommand("measure", "Stationary measure on trees of one size");
  measure->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  add_common(measure);

  CLI::App* kernel = app.add_subcommand("kernel", "Exact transition kernel as CSV/JSON");
  kernel->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  kernel->add_option("--kind", kind, "Which kernel: downup, updown, up, down")
      ->check(CLI::IsMember({"downup", "updown", "up", "down"}));
  add_common(kernel);

  CLI::App* spectrum = app.add_subcommand("spectrum", "Closed-form eigenvalues with multiplicities");
  spectrum->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  add_common(spectrum);

  CLI::App* separation =
      app.add_subcommand("separation", "Maximal separation distance for r = 0..r_max");
  separation->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  separation->add_option("--r-max", cfg.r_max, "Largest step count (default 10)");
  separation->add_option("--route", route, "eigen, recurrence, bruteforce, or all")
      ->check(CLI::IsMember({"eigen", "recurrence", "bruteforce", "all"}));
  add_common(separation);

  CLI::App* limit = app.add_subcommand("limit", "Large-n separation profile at time c*n^2");
  limit->add_option("--c", cfg.c, "Time-scale constant c > 0")->required();
  limit->add_option("--tol", cfg.tol, "Truncation tolerance (default 1e-12)");
  add_common(limit);

  CLI::App* sample = app.add_subcommand("sample", "Sample a down-up trajectory");
  sample->add_option("--n", cfg.n, "Tree size (vertices)")->required();
  sample->add_option("--steps", cfg.samples, "Number of down-up steps (default 100000)");
  sample->add_option("--seed", cfg.seed, "RNG seed (default 0)");
  sample->add_option("--start", cfg.start,
                     "Start encoding, any child order (default: the path tree)");
  add_common(sample);

  CLI::App* verify = app.add_subcommand("verify", "Run the exact invariant sweep");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (enumerate->parsed()) cfg.command = treemix::Command::kEnumerate;
  else if (stats->parsed()) cfg.command = treemix::Command::kStats;
  else if (measure->parsed()) cfg.command = treemix::Command::kMeasure;
  else if (kernel->parsed()) cfg.command = treemix::Command::kKernel;
  else if (spectrum->parsed()) cfg.command = treemix::Command::kSpectrum;
  else if (separation->parsed()) cfg.command = treemix::Command::kSeparation;
  else if (limit->parsed()) cfg.command = treemix::Command::kLimit;
  else if (sample->parsed()) cfg.command = treemix::Command::kSample;
  else if (verify->parsed()) cfg.command = treemix::Command::kVerify;

  cfg.format = format == "json" ? treemix::OutputFormat::kJson : treemix::OutputFormat::kCsv;
  if (route == "eigen") cfg.route = treemix::RouteChoice::kEigen;
  else if (route == "recurrence") cfg.route = treemix::RouteChoice::kRecurrence;
  else if (route == "bruteforce") cfg.route = treemix::RouteChoice::kBruteforce;
  else cfg.route = treemix::RouteChoice::kAll;
  if (kind == "updown") cfg.kind = treemix::KernelKind::kUpDown;
  else if (kind == "up") cfg.kind = treemix::KernelKind::kUp;
  else if (kind == "down") cfg.kind = treemix::KernelKind::kDown;
  else cfg.kind = treemix::KernelKind::kDownUp;

  return treemix::run(cfg, std::cout, std::cerr);
}
