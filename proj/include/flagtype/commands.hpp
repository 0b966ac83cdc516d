#pragma once

// Subcommands of the flagtype tool, callable in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flagtype {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitValidation = 3,
  kExitInconclusive = 4,
  kExitNumeric = 5,
};

// FLAGTYPE_THREADS as a worker count (1 when unset, 0 = all cores).
// Throws ParseError on a malformed value.
int workers_from_env();

int cmd_decompose(const std::string& matrix_path, std::ostream& out, std::ostream& err);

struct EstimateOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> samples;
  bool quiet = false;
};

int cmd_estimate(const EstimateOptions& options, std::ostream& out, std::ostream& err);

// The rank-one example: S_W for W spanned by (1, 1) and (1, -1).

struct LowerBoundScan {
  long samples = 0;
  double min_norm = 0.0;  // min |g (1, 0)|
  long violations = 0;    // samples below 1/2 - 1e-12
  long non_members = 0;   // samples failing the membership test
};

// g = B P B^-1 with P >= 0 entrywise (some entries zero), det g = 1.
LowerBoundScan sl2_lower_bound_scan(long samples, std::uint64_t seed);

struct BoundaryRow {
  double t = 0.0;
  double distance = 0.0;  // angle between z and (1, -1)
  double a = 0.0, b = 0.0;
  double value = 0.0;     // exp(2 rho_log(mu_1, h_t, [z]))
  double formula = 0.0;   // ((a^2+b^2) cosh 2t + 2ab sinh 2t) / (a^2+b^2)
  double limit = 0.0;     // exp(-2t)
};

std::vector<BoundaryRow> sl2_boundary_table(const std::vector<double>& ts,
                                            const std::vector<double>& distances);

struct FixerScan {
  long samples = 0;
  double min_rho = 0.0;  // min rho_mu1(g, [e_1])
  long violations = 0;   // below 1 - 1e-12
  long non_members = 0;
};

// Upper-triangular members of S_W, which fix [e_1].
FixerScan sl2_fixer_scan(long samples, std::uint64_t seed);

struct Sl2ExampleOptions {
  std::vector<double> t{0.0, 0.5, 1.0, 2.0};
  std::vector<double> distances{0.3, 0.1, 0.03, 0.01, 0.001};
  long samples = 100000;
  std::uint64_t seed = 1;
  std::optional<std::string> out_dir;
};

int cmd_sl2_example(const Sl2ExampleOptions& options, std::ostream& out, std::ostream& err);

}  // namespace flagtype
