#include "flagtype/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flagtype/errors.hpp"

namespace flagtype {

namespace {

struct IntField {
  const char* name;
  int SamplingParams::*member;
};

constexpr IntField kSamplingInts[] = {
    {"samples_per_length", &SamplingParams::samples_per_length},
    {"min_length", &SamplingParams::min_length},
    {"max_length", &SamplingParams::max_length},
    {"candidates", &SamplingParams::candidates},
    {"gain_samples", &SamplingParams::gain_samples},
    {"rejection_budget", &SamplingParams::rejection_budget},
    {"core_min_length", &SamplingParams::core_min_length},
    {"core_max_length", &SamplingParams::core_max_length},
    {"core_max_words", &SamplingParams::core_max_words},
};

struct DoubleField {
  const char* name;
  double Thresholds::*member;
};

constexpr DoubleField kThresholdFields[] = {
    {"slope_fraction", &Thresholds::slope_fraction},
    {"floor_min", &Thresholds::floor_min},
    {"floor_max", &Thresholds::floor_max},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& field) {
  const std::vector<double> v = parse_numbers(text, field);
  if (v.size() != 1) throw ParseError(field, "expected one number, got '" + text + "'");
  return v[0];
}

template <typename Int>
Int parse_integer(const std::string& text, const std::string& field) {
  Int value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(field, "expected an integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& field) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ParseError(field, "expected true or false, got '" + text + "'");
}

std::string join(const Vector& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

bool same(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& field) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    double value = 0.0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw ParseError(field, "not a finite number: '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  if (a.n != b.n || a.seed != b.seed || a.kind != b.kind || a.step_scale != b.step_scale ||
      a.epsilon != b.epsilon || !(a.sampling == b.sampling) ||
      !(a.thresholds == b.thresholds) || a.output_dir != b.output_dir ||
      a.rays.size() != b.rays.size() || a.generators.size() != b.generators.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rays.size(); ++i)
    if (!same(a.rays[i], b.rays[i])) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i)
    if (!same(a.generators[i], b.generators[i])) return false;
  return true;
}

SemigroupSpec RunConfig::to_spec() const {
  const SamplingParams& p = sampling;
  for (const IntField& f : kSamplingInts) {
    if (p.*(f.member) < 1) throw InvalidSpec(std::string("sampling.") + f.name + " must be >= 1");
  }
  if (p.max_length < p.min_length || length_ladder(p.min_length, p.max_length).size() < 4) {
    throw InvalidSpec("sampling.max_length: the length ladder needs at least 4 points");
  }
  if (p.core_max_length < p.core_min_length) {
    throw InvalidSpec("sampling.core_max_length must be >= core_min_length");
  }
  if (!(thresholds.slope_fraction > 0.0)) throw InvalidSpec("thresholds.slope_fraction must be > 0");
  if (kind == SemigroupKind::Cone) return SemigroupSpec::cone_compression(rays, step_scale);
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    try {
      gens.push_back(GroupElement::from_matrix(generators[i]));
    } catch (const DeterminantError& e) {
      throw DeterminantError("generator " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return SemigroupSpec::finitely_generated(std::move(gens), epsilon);
}

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  bool have_n = false, have_seed = false, have_kind = false;
  std::string section;
  std::vector<std::vector<std::vector<double>>> generator_rows;
  std::vector<std::vector<double>> ray_values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("line " + std::to_string(line_no), "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "generator") {
        generator_rows.emplace_back();
      } else if (section != "semigroup" && section != "sampling" && section != "thresholds" &&
                 section != "output") {
        throw ParseError("[" + section + "]", "unknown section");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no), "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string field = section.empty() ? key : section + "." + key;
    if (value.empty()) throw ParseError(field, "missing value");

    if (section.empty()) {
      if (key == "n") {
        c.n = parse_integer<int>(value, field);
        have_n = true;
      } else if (key == "seed") {
        c.seed = parse_integer<std::uint64_t>(value, field);
        have_seed = true;
      } else {
        throw ParseError(field, "unknown key");
      }
    } else if (section == "semigroup") {
      if (key == "kind") {
        if (value == "cone") c.kind = SemigroupKind::Cone;
        else if (value == "generated") c.kind = SemigroupKind::Generated;
        else throw ParseError(field, "expected cone or generated, got '" + value + "'");
        have_kind = true;
      } else if (key == "ray") {
        ray_values.push_back(parse_numbers(value, field));
      } else if (key == "step_scale") {
        c.step_scale = parse_double(value, field);
      } else if (key == "epsilon") {
        c.epsilon = parse_double(value, field);
      } else {
        throw ParseError(field, "unknown key");
      }
    } else if (section == "generator") {
      if (key != "row") throw ParseError(field, "unknown key");
      generator_rows.back().push_back(parse_numbers(value, field));
    } else if (section == "sampling") {
      const auto it = std::find_if(std::begin(kSamplingInts), std::end(kSamplingInts),
                                   [&](const IntField& f) { return key == f.name; });
      if (it != std::end(kSamplingInts)) {
        c.sampling.*(it->member) = parse_integer<int>(value, field);
      } else if (key == "cross_check") {
        c.sampling.cross_check = parse_bool(value, field);
      } else {
        throw ParseError(field, "unknown key");
      }
    } else if (section == "thresholds") {
      const auto it = std::find_if(std::begin(kThresholdFields), std::end(kThresholdFields),
                                   [&](const DoubleField& f) { return key == f.name; });
      if (it == std::end(kThresholdFields)) throw ParseError(field, "unknown key");
      c.thresholds.*(it->member) = parse_double(value, field);
    } else if (section == "output") {
      if (key != "dir") throw ParseError(field, "unknown key");
      c.output_dir = value;
    }
  }

  if (!have_n) throw ParseError("n", "missing");
  if (!have_seed) throw ParseError("seed", "missing (there is no default seed)");
  if (!have_kind) throw ParseError("semigroup.kind", "missing");
  if (c.n < 2) throw ParseError("n", "must be at least 2");

  for (std::size_t r = 0; r < ray_values.size(); ++r) {
    if (static_cast<int>(ray_values[r].size()) != c.n) {
      throw ParseError("semigroup.ray", "ray " + std::to_string(r + 1) + " has " +
                                            std::to_string(ray_values[r].size()) +
                                            " entries, expected n");
    }
    c.rays.push_back(Eigen::Map<const Vector>(ray_values[r].data(), c.n));
  }
  for (std::size_t g = 0; g < generator_rows.size(); ++g) {
    const auto& rows = generator_rows[g];
    const std::string field = "generator." + std::to_string(g + 1);
    if (static_cast<int>(rows.size()) != c.n) {
      throw ParseError(field, std::to_string(rows.size()) + " rows, expected n");
    }
    Matrix m(c.n, c.n);
    for (int i = 0; i < c.n; ++i) {
      if (static_cast<int>(rows[i].size()) != c.n) {
        throw ParseError(field + ".row", "row " + std::to_string(i + 1) + " has " +
                                             std::to_string(rows[i].size()) +
                                             " entries, expected n");
      }
      for (int j = 0; j < c.n; ++j) m(i, j) = rows[i][j];
    }
    c.generators.push_back(m);
  }
  if (c.kind == SemigroupKind::Cone) {
    if (c.rays.empty()) throw ParseError("semigroup.ray", "a cone needs rays");
    if (!c.generators.empty()) throw ParseError("generator", "not allowed for kind = cone");
  } else {
    if (c.generators.empty()) throw ParseError("generator", "kind = generated needs generators");
    if (!c.rays.empty()) throw ParseError("semigroup.ray", "not allowed for kind = generated");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open config file");
  return parse_config(in);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "n = " << c.n << "\n";
  out << "seed = " << c.seed << "\n\n";
  out << "[semigroup]\n";
  if (c.kind == SemigroupKind::Cone) {
    out << "kind = cone\n";
    out << "step_scale = " << format_double(c.step_scale) << "\n";
    for (const Vector& r : c.rays) out << "ray = " << join(r) << "\n";
  } else {
    out << "kind = generated\n";
    out << "epsilon = " << format_double(c.epsilon) << "\n";
    for (const Matrix& g : c.generators) {
      out << "\n[generator]\n";
      for (int i = 0; i < g.rows(); ++i) out << "row = " << join(g.row(i).transpose()) << "\n";
    }
  }
  out << "\n[sampling]\n";
  for (const IntField& f : kSamplingInts) out << f.name << " = " << c.sampling.*(f.member) << "\n";
  out << "cross_check = " << (c.sampling.cross_check ? "true" : "false") << "\n";
  out << "\n[thresholds]\n";
  for (const DoubleField& f : kThresholdFields)
    out << f.name << " = " << format_double(c.thresholds.*(f.member)) << "\n";
  out << "\n[output]\n";
  out << "dir = " << c.output_dir << "\n";
  return out.str();
}

}  // namespace flagtype
