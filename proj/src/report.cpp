#include "ppca/report.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace ppca {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double v, int digits) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  return std::string(buf.data(), res.ptr);
}

std::string neighborhood_field(const Neighborhood& u) { return u.str(';'); }

Metadata& Metadata::add(std::string key, std::string value) {
  items.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::string Metadata::line() const {
  std::string s = std::string("# ") + kToolName + " " + kToolVersion;
  for (const auto& [k, v] : items) s += " " + k + "=" + v;
  return s + "\n";
}

ordered_json Metadata::json() const {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  for (const auto& [k, v] : items) j[k] = v;
  return j;
}

namespace {

std::string optional_value(const std::optional<double>& v) {
  return v ? format_double(*v) : "none";
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json fit_json(const std::optional<LinearFit>& f) {
  if (!f) return nullptr;
  ordered_json j;
  j["intercept"] = f->intercept;
  j["slope"] = f->slope;
  j["r2"] = f->r2;
  j["adjusted_r2"] = f->adjusted_r2;
  j["points"] = f->points;
  return j;
}

std::string fit_text(const char* name, const std::optional<LinearFit>& f) {
  if (!f) return std::string(name) + "=none";
  return std::string(name) + "_intercept=" + format_double(f->intercept) + " " + name +
         "_slope=" + format_double(f->slope) + " " + name + "_adjusted_r2=" +
         format_double(f->adjusted_r2);
}

ordered_json offsets_json(const Neighborhood& u) { return ordered_json(u.offsets()); }

}  // namespace

std::string to_csv(const std::vector<BoundsRow>& rows, const Metadata& meta) {
  std::string s = meta.line() + "neighborhood,span,p1,p2\n";
  for (const auto& r : rows) {
    s += neighborhood_field(r.u) + "," + std::to_string(r.span) + "," + format_fixed(r.p1, 3) +
         "," + format_fixed(r.p2, 3) + "\n";
  }
  return s;
}

std::string to_csv(const SurvivalCurve& curve, const Metadata& meta) {
  std::string s = meta.line() + "p,P_hat,stderr\n";
  for (const auto& r : curve.rows) {
    s += format_double(r.p) + "," + format_double(r.p_hat) + "," + format_double(r.std_error) +
         "\n";
  }
  s += "# crossing_0.05=" + optional_value(curve.crossing()) + "\n";
  return s;
}

std::string to_csv(const ScalingTable& table, const Metadata& meta) {
  std::string s = meta.line() + "n,mean_tau,stderr,censored\n";
  for (const auto& r : table.rows) {
    const bool ok = r.tau.available;
    s += std::to_string(r.n) + "," + (ok ? format_double(r.tau.mean) : "NA") + "," +
         (ok ? format_double(r.tau.std_error) : "NA") + "," + std::to_string(r.tau.censored) +
         "\n";
  }
  s += "# regime=" + std::string(regime_name(table.regime)) + " " + fit_text("log", table.log_fit) +
       " " + fit_text("exp", table.exp_fit) +
       " log_refuted_by_censored=" + (table.log_refuted_by_censored ? "true" : "false") + "\n";
  return s;
}

std::string to_csv(const GammaScan& scan, const Metadata& meta) {
  std::string s = meta.line() + "p,gamma_hat,stderr\n";
  for (const auto& r : scan.rows) {
    s += format_double(r.p) + "," + format_double(r.gamma_hat) + "," +
         format_double(r.std_error) + "\n";
  }
  s += "# crossing=" + optional_value(scan.crossing) +
       " monotone=" + (scan.monotone ? "true" : "false") + "\n";
  return s;
}

std::string to_csv(const DecayFit& fit, const Metadata& meta) {
  std::string s = meta.line() + "m,P_hat,stderr\n";
  for (const auto& r : fit.rows) {
    s += std::to_string(r.m) + "," + format_double(r.p_hat) + "," + format_double(r.std_error) +
         "\n";
  }
  s += "# h_hat=" + format_double(fit.h_hat) + " " + fit_text("fit", fit.fit) +
       " dropped=" + std::to_string(fit.dropped) +
       " degenerate=" + (fit.degenerate ? "true" : "false") +
       " accepted=" + (fit.accepted ? "true" : "false") + "\n";
  return s;
}

ordered_json to_json(const std::vector<BoundsRow>& rows, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta.json();
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["neighborhood"] = offsets_json(r.u);
    row["span"] = r.span;
    row["p1"] = r.p1;
    row["p2"] = r.p2;
    j["rows"].push_back(row);
  }
  return j;
}

ordered_json to_json(const SurvivalCurve& curve, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta.json();
  j["rows"] = ordered_json::array();
  for (const auto& r : curve.rows) {
    j["rows"].push_back({{"p", r.p}, {"P_hat", r.p_hat}, {"stderr", r.std_error}});
  }
  j["crossing"] = optional_json(curve.crossing());
  return j;
}

ordered_json to_json(const ScalingTable& table, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta.json();
  j["rows"] = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json row;
    row["n"] = r.n;
    row["mean_tau"] = r.tau.available ? ordered_json(r.tau.mean) : ordered_json(nullptr);
    row["stderr"] = r.tau.available ? ordered_json(r.tau.std_error) : ordered_json(nullptr);
    row["censored"] = r.tau.censored;
    row["lower_bound_only"] = r.tau.lower_bound_only;
    row["restricted_mean"] = r.tau.restricted_mean;
    j["rows"].push_back(row);
  }
  j["log_fit"] = fit_json(table.log_fit);
  j["exp_fit"] = fit_json(table.exp_fit);
  j["regime"] = regime_name(table.regime);
  j["log_refuted_by_censored"] = table.log_refuted_by_censored;
  return j;
}

ordered_json to_json(const GammaScan& scan, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta.json();
  j["rows"] = ordered_json::array();
  for (const auto& r : scan.rows) {
    ordered_json row;
    row["p"] = r.p;
    row["gamma_hat"] = r.gamma_hat;
    row["stderr"] = r.std_error;
    row["alpha_hat"] = r.alpha_hat;
    row["beta_hat"] = r.beta_hat;
    j["rows"].push_back(row);
  }
  j["monotone"] = scan.monotone;
  j["crossing"] = optional_json(scan.crossing);
  return j;
}

ordered_json to_json(const DecayFit& fit, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta.json();
  j["rows"] = ordered_json::array();
  for (const auto& r : fit.rows) {
    j["rows"].push_back(
        {{"m", r.m}, {"P_hat", r.p_hat}, {"stderr", r.std_error}, {"used", r.used}});
  }
  j["fit"] = fit_json(fit.fit);
  j["h_hat"] = fit.h_hat;
  j["dropped"] = fit.dropped;
  j["degenerate"] = fit.degenerate;
  j["accepted"] = fit.accepted;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace ppca
