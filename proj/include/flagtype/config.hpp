#pragma once

// Run configuration files.
//
// Flat key = value text with '#' comments and [section] headers:
//
//   n = 3
//   seed = 1
//   [semigroup]
//   kind = cone            # or: generated
//   ray = 1 0 0            # repeated, cones only
//   step_scale = 0.3
//   epsilon = 0.001        # generated only
//   [generator]            # one block per generator, rows row-major
//   row = 1 1 1
//   [sampling]             # any SamplingParams field except workers
//   [thresholds]
//   [output]
//   dir = results
//
// Numbers are written back with 17 significant digits, so
// parse_config(serialize_config(c)) == c.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flagtype/flag_type.hpp"
#include "flagtype/linalg.hpp"
#include "flagtype/semigroup.hpp"

namespace flagtype {

enum class SemigroupKind { Cone, Generated };

struct RunConfig {
  int n = 0;
  std::uint64_t seed = 0;
  SemigroupKind kind = SemigroupKind::Cone;
  std::vector<Vector> rays;
  double step_scale = 0.3;
  std::vector<Matrix> generators;
  double epsilon = 1e-3;
  SamplingParams sampling;
  Thresholds thresholds;
  std::string output_dir = ".";

  // InvalidSpec or DeterminantError when the data do not form a valid spec
  // or the sampling parameters are unusable.
  SemigroupSpec to_spec() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Throws ParseError naming the offending field.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

std::string format_double(double x);
// Whitespace- or comma-separated numbers; ParseError(field) on bad tokens.
std::vector<double> parse_numbers(const std::string& text, const std::string& field);

}  // namespace flagtype
