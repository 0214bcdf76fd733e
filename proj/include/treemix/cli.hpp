#pragma once

#include <iosfwd>
#include <string>

#include "treemix/io.hpp"

namespace treemix {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Command {
  kEnumerate,
  kStats,
  kMeasure,
  kKernel,
  kSpectrum,
  kSeparation,
  kLimit,
  kSample,
  kVerify,
};

enum class RouteChoice { kEigen, kRecurrence, kBruteforce, kAll };
enum class KernelKind { kDownUp, kUpDown, kUp, kDown };
enum class OutputFormat { kCsv, kJson };

// Size caps per command family.  TREEMIX_MAX_N raises the first three (never
// lowers); the verify caps are fixed so "treemix verify" keeps its documented
// runtime envelope.
struct SizeCaps {
  int kernel = 12;       // dense rational kernels, measures, sampling
  int enumeration = 14;  // table building
  int count = 25;        // pure counting / closed-form spectra
  int verify_kernel = 7;
  int verify_count = 12;
};
SizeCaps caps_from_env();

struct RunConfig {
  Command command = Command::kVerify;
  int n = 4;
  long r_max = 10;
  double c = 1.0;
  double tol = 1e-12;
  long samples = 100000;  // steps for `sample`, draws for Monte-Carlo checks
  std::uint64_t seed = 0;
  RouteChoice route = RouteChoice::kAll;
  KernelKind kind = KernelKind::kDownUp;
  std::string start;        // `sample` start encoding; empty means the path tree
  std::string output_path;  // empty writes to the stream handed to run()
  OutputFormat format = OutputFormat::kCsv;
  SizeCaps caps;
};

// Executes one command and writes its dump to output_path (or `out` when no
// path is set).  Returns the process exit code: 0 success, 1 verification
// failure, 2 usage or domain error, 3 resource-limit error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// The exact-invariant sweep behind `treemix verify`: one line per check,
// stops at the first failure and prints its counterexample.  True when all
// checks pass.
bool run_verify(int kernel_cap, int count_cap, std::ostream& out);

}  // namespace treemix
