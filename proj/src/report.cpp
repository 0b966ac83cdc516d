#include "flagtype/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "flagtype/version.hpp"

namespace flagtype {

namespace {

using nlohmann::json;

constexpr const char* kEpsilonNote =
    "Generated semigroups are modeled as the semigroup generated by the balls "
    "g_i exp(eps Z), |Z|_F <= 1, which has nonempty interior for eps > 0. "
    "Decay curves are running minima over sampled words and only bound the "
    "infimum from above.";

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json header(const RunConfig& config, const std::string& generated_at) {
  json doc;
  doc["tool"] = "flagtype";
  doc["tool_version"] = kToolVersion;
  doc["generated_at"] = generated_at;
  doc["config"] = serialize_config(config);
  doc["seed"] = config.seed;
  doc["n"] = config.n;
  doc["semigroup_kind"] = config.kind == SemigroupKind::Cone ? "cone" : "generated";
  return doc;
}

}  // namespace

std::string theta_summary(const ThetaSet& theta) {
  std::string out = "{";
  for (std::size_t i = 0; i < theta.indices().size(); ++i) {
    if (i) out += ", ";
    out += "alpha_" + std::to_string(theta.indices()[i]);
  }
  return out + "}";
}

json report_json(const RunConfig& config, const FlagTypeReport& report,
                 const std::string& generated_at) {
  json doc = header(config, generated_at);
  doc["status"] = report.any_inconclusive() ? "inconclusive" : "ok";
  doc["theta_hat"] = report.theta_hat.indices();
  doc["theta_hat_text"] = theta_summary(report.theta_hat);

  json roots = json::array();
  for (std::size_t i = 0; i < report.curves.size(); ++i) {
    const RootDecayCurve& c = report.curves[i];
    const RootClassification& d = report.decisions[i];
    json r;
    r["root_index"] = c.root_index;
    r["decision"] = to_string(d.decision);
    r["slope"] = d.slope;
    r["final_min"] = d.final_min;
    r["slope_min"] = d.slope_min;
    r["letter_gain"] = c.letter_gain;
    r["samples_per_length"] = c.samples_per_length;
    r["lengths"] = c.lengths;
    r["min_log_rho"] = c.min_log_rho;
    r["error"] = report.errors[i].empty() ? json(nullptr) : json(report.errors[i]);
    roots.push_back(r);
  }
  doc["roots"] = roots;

  const CorePointEstimate& core = report.core_point;
  doc["core_point"] = {{"frame", matrix_json(core.flag.frame())},
                       {"contraction_rate", core.contraction_rate},
                       {"margin", core.margin},
                       {"witness_length", core.witness.length()}};

  if (report.cross_check) {
    json decisions = json::array();
    for (Decision d : report.cross_check->decisions) decisions.push_back(to_string(d));
    doc["cross_check"] = {{"theta_hat", report.cross_check->theta_hat.indices()},
                          {"decisions", decisions},
                          {"agrees", report.cross_check->agrees}};
  } else {
    doc["cross_check"] = nullptr;
  }
  doc["notes"] = {kEpsilonNote};
  return doc;
}

json failure_json(const RunConfig& config, const std::string& error,
                  const std::string& generated_at) {
  json doc = header(config, generated_at);
  doc["status"] = "failed";
  doc["error"] = error;
  doc["notes"] = {kEpsilonNote};
  return doc;
}

std::string curves_csv(const FlagTypeReport& report) {
  std::ostringstream out;
  out << "root_index,L,min_log_rho\n";
  for (const RootDecayCurve& c : report.curves) {
    for (std::size_t l = 0; l < c.lengths.size(); ++l) {
      out << c.root_index << ',' << c.lengths[l] << ',' << format_double(c.min_log_rho[l])
          << '\n';
    }
  }
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace flagtype
