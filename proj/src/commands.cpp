#include "flagtype/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "flagtype/cocycle.hpp"
#include "flagtype/config.hpp"
#include "flagtype/errors.hpp"
#include "flagtype/report.hpp"
#include "flagtype/semigroup.hpp"

namespace flagtype {

namespace {

std::string row_text(const Matrix& m, int i) {
  std::string out;
  for (int j = 0; j < m.cols(); ++j) {
    if (j) out += ' ';
    out += format_double(m(i, j));
  }
  return out;
}

std::string matrix_text(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) out += "  " + row_text(m, i) + "\n";
  return out;
}

SemigroupSpec rank_one_cone() {
  Vector r1(2), r2(2);
  r1 << 1.0, 1.0;
  r2 << 1.0, -1.0;
  return SemigroupSpec::cone_compression({r1, r2});
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open matrix file");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<double> row = parse_numbers(line, "line " + std::to_string(line_no));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError(path, "no matrix rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw ParseError("row " + std::to_string(i + 1),
                       "has " + std::to_string(rows[i].size()) + " entries, matrix is not square");
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const InvalidSpec*>(&e) || dynamic_cast<const DeterminantError*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const PreconditionError*>(&e)) {
    return kExitValidation;
  }
  return kExitNumeric;
}

}  // namespace

int workers_from_env() {
  const char* value = std::getenv("FLAGTYPE_THREADS");
  if (!value || !*value) return 1;
  char* end = nullptr;
  const long w = std::strtol(value, &end, 10);
  if (*end != '\0' || w < 0 || w > 4096) {
    throw ParseError("FLAGTYPE_THREADS", std::string("expected a non-negative integer, got '") +
                                             value + "'");
  }
  return static_cast<int>(w);
}

int cmd_decompose(const std::string& matrix_path, std::ostream& out, std::ostream& err) {
  try {
    const GroupElement g = GroupElement::from_matrix(read_matrix(matrix_path));
    const IwasawaFactors f = iwasawa_decompose(g);
    const double residual = (g.matrix() - f.reconstruct()).norm() / g.matrix().norm();
    out << "k =\n" << matrix_text(f.k);
    out << "H = " << row_text(f.h.transpose(), 0) << "\n";
    out << "n_u =\n" << matrix_text(f.n_u);
    out << "residual = " << std::setprecision(3) << std::scientific << residual << "\n";
    return kExitOk;
  } catch (const DecompositionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_estimate(const EstimateOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  int workers = 1;
  try {
    config = load_config(options.config_path);
    workers = workers_from_env();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (options.seed) config.seed = *options.seed;
  if (options.out_dir) config.output_dir = *options.out_dir;
  if (options.samples) config.sampling.samples_per_length = *options.samples;

  const std::filesystem::path dir(config.output_dir);
  const std::string stem = std::filesystem::path(options.config_path).stem().string();
  const std::filesystem::path json_path = dir / (stem + ".json");
  const std::filesystem::path csv_path = dir / (stem + "_curves.csv");

  std::optional<SemigroupSpec> spec;
  try {
    spec = config.to_spec();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  SamplingParams params = config.sampling;
  params.workers = workers;
  try {
    std::filesystem::create_directories(dir);
    std::optional<FlagTypeReport> result;
    try {
      result = estimate_flag_type(*spec, params, config.thresholds, config.seed);
    } catch (const Error& e) {
      write_text(json_path, failure_json(config, e.what(), utc_timestamp()).dump(2) + "\n");
      err << "error: " << e.what() << "\n";
      return exit_code_for(e);
    }
    const FlagTypeReport& report = *result;
    write_text(json_path, report_json(config, report, utc_timestamp()).dump(2) + "\n");
    write_text(csv_path, curves_csv(report));
    if (!options.quiet) {
      out << "theta_hat = " << theta_summary(report.theta_hat) << "\n";
      for (std::size_t i = 0; i < report.decisions.size(); ++i) {
        const RootClassification& d = report.decisions[i];
        out << "  alpha_" << i + 1 << ": " << to_string(d.decision) << "  slope "
            << d.slope << "  final min " << d.final_min << "  slope_min " << d.slope_min;
        if (!report.errors[i].empty()) out << "  (" << report.errors[i] << ")";
        out << "\n";
      }
      if (report.cross_check) {
        out << "cross-check at a second core point: "
            << theta_summary(report.cross_check->theta_hat)
            << (report.cross_check->agrees ? " (agrees)" : " (DISAGREES)") << "\n";
      }
      out << "wrote " << json_path.string() << " and " << csv_path.string() << "\n";
    }
    return report.any_inconclusive() ? kExitInconclusive : kExitOk;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

LowerBoundScan sl2_lower_bound_scan(long samples, std::uint64_t seed) {
  const SemigroupSpec spec = rank_one_cone();
  Matrix b(2, 2);
  b << 1.0, 1.0, 1.0, -1.0;
  const Matrix b_inv = b.inverse();
  Rng rng = SeedStream(seed).rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Exact 0 and 1 entries put boundary elements (and the identity) in reach.
  std::discrete_distribution<int> entry_kind({0.2, 0.2, 0.6});

  LowerBoundScan scan;
  scan.min_norm = std::numeric_limits<double>::infinity();
  while (scan.samples < samples) {
    Matrix p(2, 2);
    for (int i = 0; i < 4; ++i) {
      const int kind = entry_kind(rng);
      p.data()[i] = kind == 0 ? 0.0 : kind == 1 ? 1.0 : std::exp(6.0 * (unit(rng) - 0.5));
    }
    const double det = p.determinant();
    if (!(det > 1e-6 * p.squaredNorm())) continue;
    const Matrix g = b * (p / std::sqrt(det)) * b_inv;
    ++scan.samples;
    if (!spec.cone().maps_into(g, 1e-12)) ++scan.non_members;
    const double norm = g.col(0).norm();
    scan.min_norm = std::min(scan.min_norm, norm);
    if (norm < 0.5 - 1e-12) ++scan.violations;
  }
  return scan;
}

std::vector<BoundaryRow> sl2_boundary_table(const std::vector<double>& ts,
                                            const std::vector<double>& distances) {
  const Functional mu1 = RootDatum(2).fundamental_weight(1);
  std::vector<BoundaryRow> rows;
  for (double t : ts) {
    Matrix h(2, 2);
    h << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
    const GroupElement ht = GroupElement::from_matrix(h);
    for (double d : distances) {
      BoundaryRow row;
      row.t = t;
      row.distance = d;
      const double theta = -std::numbers::pi / 4 + d;
      row.a = std::cos(theta);
      row.b = std::sin(theta);
      Matrix basis(2, 2);
      basis << row.a, -row.b, row.b, row.a;
      row.value = std::exp(2.0 * rho_log(mu1, ht, Flag::from_basis(basis)));
      const double r2 = row.a * row.a + row.b * row.b;
      row.formula = (r2 * std::cosh(2 * t) + 2 * row.a * row.b * std::sinh(2 * t)) / r2;
      row.limit = std::exp(-2 * t);
      rows.push_back(row);
    }
  }
  return rows;
}

FixerScan sl2_fixer_scan(long samples, std::uint64_t seed) {
  const SemigroupSpec spec = rank_one_cone();
  const Functional mu1 = RootDatum(2).fundamental_weight(1);
  const Flag x0 = Flag::standard(2);
  Rng rng = SeedStream(seed).rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> spread(1.0);
  std::bernoulli_distribution on_boundary(0.1);

  FixerScan scan;
  scan.min_rho = std::numeric_limits<double>::infinity();
  for (; scan.samples < samples; ++scan.samples) {
    // [[a, b], [0, 1/a]] maps W into W iff |b| <= a - 1/a.
    const double a = on_boundary(rng) ? 1.0 : 1.0 + spread(rng);
    const double b = (2.0 * unit(rng) - 1.0) * (a - 1.0 / a);
    Matrix m(2, 2);
    m << a, b, 0.0, 1.0 / a;
    if (!spec.cone().maps_into(m, 1e-12)) ++scan.non_members;
    const double value = rho(mu1, GroupElement::from_matrix(m), x0).value();
    scan.min_rho = std::min(scan.min_rho, value);
    if (value < 1.0 - 1e-12) ++scan.violations;
  }
  return scan;
}

int cmd_sl2_example(const Sl2ExampleOptions& options, std::ostream& out, std::ostream& err) {
  if (options.samples < 1) {
    err << "error: --samples must be positive\n";
    return kExitValidation;
  }
  const LowerBoundScan scan = sl2_lower_bound_scan(options.samples, options.seed);
  out << std::setprecision(12);
  out << "(a) lower bound over " << scan.samples << " members of S_W:\n"
      << "    min |g(1,0)| = " << scan.min_norm << "  (bound 0.5), violations "
      << scan.violations << ", membership failures " << scan.non_members << "\n";

  const std::vector<BoundaryRow> rows = sl2_boundary_table(options.t, options.distances);
  out << "(b) exp(2 log rho_mu1(h_t, [z])) as z -> [(1,-1)]:\n";
  out << "    t         distance   value            formula          exp(-2t)\n";
  for (const BoundaryRow& r : rows) {
    out << "    " << std::setw(8) << r.t << "  " << std::setw(9) << r.distance << "  "
        << std::setw(15) << r.value << "  " << std::setw(15) << r.formula << "  "
        << std::setw(15) << r.limit << "\n";
  }

  const FixerScan fixer = sl2_fixer_scan(std::min(options.samples, 10000L), options.seed + 1);
  out << "(c) fixer bound over " << fixer.samples << " upper-triangular members:\n"
      << "    min rho_mu1(g, [e1]) = " << fixer.min_rho << ", violations " << fixer.violations
      << "\n";

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    std::ostringstream csv;
    csv << "t,distance,a,b,value,formula,limit\n";
    for (const BoundaryRow& r : rows) {
      csv << format_double(r.t) << ',' << format_double(r.distance) << ','
          << format_double(r.a) << ',' << format_double(r.b) << ','
          << format_double(r.value) << ',' << format_double(r.formula) << ','
          << format_double(r.limit) << '\n';
    }
    write_text(std::filesystem::path(*options.out_dir) / "sl2_boundary.csv", csv.str());
  }

  if (scan.violations > 0 || scan.non_members > 0 || fixer.violations > 0 ||
      fixer.non_members > 0) {
    err << "error: the rank-one lower bound or fixer bound was violated\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace flagtype
