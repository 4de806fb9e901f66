#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ppca/experiments.hpp"

namespace ppca {

inline constexpr const char* kToolName = "ppca";
inline constexpr const char* kToolVersion = "1.0.0";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Fixed-point with `digits` decimals, locale independent.
std::string format_fixed(double v, int digits);

/// Offsets joined by ';' so the field survives comma-separated files.
std::string neighborhood_field(const Neighborhood& u);

/// Ordered key=value pairs for the leading '#' line of every CSV file.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> items;

  Metadata& add(std::string key, std::string value);
  std::string line() const;
  nlohmann::ordered_json json() const;
};

std::string to_csv(const std::vector<BoundsRow>& rows, const Metadata& meta);
std::string to_csv(const SurvivalCurve& curve, const Metadata& meta);
std::string to_csv(const ScalingTable& table, const Metadata& meta);
std::string to_csv(const GammaScan& scan, const Metadata& meta);
std::string to_csv(const DecayFit& fit, const Metadata& meta);

nlohmann::ordered_json to_json(const std::vector<BoundsRow>& rows, const Metadata& meta);
nlohmann::ordered_json to_json(const SurvivalCurve& curve, const Metadata& meta);
nlohmann::ordered_json to_json(const ScalingTable& table, const Metadata& meta);
nlohmann::ordered_json to_json(const GammaScan& scan, const Metadata& meta);
nlohmann::ordered_json to_json(const DecayFit& fit, const Metadata& meta);

/// Two-space indented dump with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace ppca
