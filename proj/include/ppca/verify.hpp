#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppca/bounds.hpp"
#include "ppca/simulate.hpp"

namespace ppca {

/// One line of the verification report. Equality checks pass when
/// |computed - reference| <= tolerance; checks named "*.lower_bound" pass
/// when computed >= reference - tolerance, "*.upper_bound" when
/// computed <= reference + tolerance.
struct Check {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check check_equal(std::string name, double computed, double reference, double tolerance);
Check check_at_least(std::string name, double computed, double reference, double tolerance);
Check check_at_most(std::string name, double computed, double reference, double tolerance);

/// Six reference neighbourhoods with their tabulated p2 values.
struct TableEntry {
  Neighborhood u;
  double p1_exact;
  double p2_reference;
};
std::vector<TableEntry> reference_bounds();

/// Number of (x, t) vertices where the path search and the word kernel
/// disagree over `draws` random noise boxes and initial states on S_n.
std::size_t reachability_mismatches(int n, long t, const Neighborhood& u, std::size_t draws,
                                    std::uint64_t seed);

std::vector<Check> check_bounds_table(PhiExponent variant = PhiExponent::two_span_plus_two);
std::vector<Check> check_expectation_roots(PhiExponent variant = PhiExponent::two_span_plus_two);
std::vector<Check> check_tau_tails();
std::vector<Check> check_two_step_bounds();
std::vector<Check> check_one_step();
std::vector<Check> check_reachability();
std::vector<Check> check_mityushin();
std::vector<Check> check_domination(const SimOptions& opts = {});
std::vector<Check> check_stochasticity();

/// Every check above, in a fixed order.
std::vector<Check> verify_suite(const SimOptions& opts = {},
                                PhiExponent variant = PhiExponent::two_span_plus_two);

nlohmann::ordered_json to_json(const std::vector<Check>& checks);

bool all_pass(const std::vector<Check>& checks);

}  // namespace ppca
