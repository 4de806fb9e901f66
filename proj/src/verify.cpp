#include "ppca/verify.hpp"

#include <cmath>
#include <random>

#include "ppca/oracle.hpp"
#include "ppca/report.hpp"

namespace ppca {

Check check_equal(std::string name, double computed, double reference, double tolerance) {
  return {std::move(name), computed, reference, tolerance,
          std::fabs(computed - reference) <= tolerance};
}

Check check_at_least(std::string name, double computed, double reference, double tolerance) {
  return {std::move(name), computed, reference, tolerance, computed >= reference - tolerance};
}

Check check_at_most(std::string name, double computed, double reference, double tolerance) {
  return {std::move(name), computed, reference, tolerance, computed <= reference + tolerance};
}

std::vector<TableEntry> reference_bounds() {
  return {
      {Neighborhood({-1, 0}), 2.0 / 3.0, 0.670},
      {Neighborhood({-1, 0, 1}), 1.0 / 2.0, 0.505},
      {Neighborhood({-1, 0, 1, 2}), 2.0 / 5.0, 0.407},
      {Neighborhood({-1, 0, 1, 2, 3}), 1.0 / 3.0, 0.343},
      {Neighborhood({-1, 0, 2}), 2.0 / 5.0, 0.407},
      {Neighborhood({-1, 0, 3}), 1.0 / 3.0, 0.343},
  };
}

namespace {

std::string tag(const Neighborhood& u) { return "U=" + u.str(); }

std::string num(double v) { return format_double(v); }

const std::vector<double>& p_tenths() {
  static const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  return grid;
}

}  // namespace

std::size_t reachability_mismatches(int n, long t, const Neighborhood& u, std::size_t draws,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t width = static_cast<std::size_t>(2 * n);
  std::size_t mismatches = 0;
  RingStepper stepper(n, u);
  for (std::size_t d = 0; d < draws; ++d) {
    const double p = unit(rng);
    std::bernoulli_distribution open(p);
    std::vector<bool> initial(width);
    for (std::size_t b = 0; b < width; ++b) initial[b] = coin(rng);
    OmegaBox omega(static_cast<std::size_t>(t), std::vector<bool>(width));
    for (auto& row : omega) {
      for (std::size_t b = 0; b < width; ++b) row[b] = open(rng);
    }

    const auto reach = reachability(omega, u, Topology::ring, initial);
    RingConfig c(n);
    for (std::size_t b = 0; b < width; ++b) c.set(static_cast<int>(b) - n, initial[b]);
    std::vector<std::uint64_t> row_words(c.words().size());
    for (long s = 1; s <= t; ++s) {
      std::fill(row_words.begin(), row_words.end(), 0);
      for (std::size_t b = 0; b < width; ++b) {
        if (omega[s - 1][b]) row_words[b / 64] |= std::uint64_t{1} << (b % 64);
      }
      stepper.advance(c, row_words);
      for (std::size_t b = 0; b < width; ++b) {
        const long x = static_cast<long>(b) - n;
        if (c.at(static_cast<int>(x)) != reach.at(x, s)) ++mismatches;
      }
    }
  }
  return mismatches;
}

std::vector<Check> check_bounds_table(PhiExponent variant) {
  std::vector<Check> out;
  for (const auto& e : reference_bounds()) {
    out.push_back(check_equal("bounds.p1[" + tag(e.u) + "]", p1(e.u), e.p1_exact, 1e-15));
    out.push_back(
        check_equal("bounds.p2[" + tag(e.u) + "]", solve_p2(e.u, 1e-10, variant), e.p2_reference,
                    0.001));
  }
  return out;
}

std::vector<Check> check_expectation_roots(PhiExponent variant) {
  std::vector<Check> out;
  for (const auto& e : reference_bounds()) {
    // The gap is steeper than g near the root, so solve tighter than the default.
    const double p2 = solve_p2(e.u, 1e-13, variant);
    const double gap = expectation_pi(p2, e.u, variant) - expectation_xi(p2, e.u, variant);
    out.push_back(check_equal("bounds.drift_gap_at_p2[" + tag(e.u) + "]", gap, 0.0, 1e-9));
  }
  return out;
}

std::vector<Check> check_tau_tails() {
  std::vector<Check> out;
  for (const auto& u : {Neighborhood({0, 1}), Neighborhood({-1, 0, 1})}) {
    for (int n : {1, 2}) {
      for (long t : {1L, 2L, 3L}) {
        for (double p : {0.2, 0.5, 0.8}) {
          out.push_back(check_equal("tau_tail[" + tag(u) + ";n=" + std::to_string(n) +
                                        ";t=" + std::to_string(t) + ";p=" + num(p) + "]",
                                    exact_tau_tail(n, u, p, t),
                                    enumerate_omega_tau_tail(n, u, p, t), 1e-12));
        }
      }
    }
  }
  return out;
}

std::vector<Check> check_two_step_bounds() {
  std::vector<Check> out;
  for (const auto& u : {Neighborhood({-1, 0}), Neighborhood({-1, 0, 1}),
                        Neighborhood({-1, 0, 1, 2})}) {
    for (double p : p_tenths()) {
      for (int j = 0; j <= u.span() + 3; ++j) {
        for (auto dir : {Direction::right, Direction::left}) {
          const char* side = dir == Direction::right ? "right" : "left";
          out.push_back(check_at_least("two_step.lower_bound[" + tag(u) + ";p=" + num(p) +
                                           ";j=" + std::to_string(j) + ";" + side + "]",
                                       exact_two_step_displacement(p, u, j, dir),
                                       two_step_bound(p, u, j), 1e-12));
        }
      }
      for (auto dir : {Direction::right, Direction::left}) {
        const char* side = dir == Direction::right ? "right" : "left";
        out.push_back(check_equal("two_step.j1_exact[" + tag(u) + ";p=" + num(p) + ";" + side +
                                      "]",
                                  exact_two_step_displacement(p, u, 1, dir), 1.0 - p * p, 1e-14));
      }
    }
  }
  return out;
}

std::vector<Check> check_one_step() {
  std::vector<Check> out;
  const Neighborhood u({-1, 0, 1});
  for (double p : {0.2, 0.5, 0.8}) {
    for (int j = 0; j <= 10; ++j) {
      for (auto dir : {Direction::right, Direction::left}) {
        const char* side = dir == Direction::right ? "right" : "left";
        out.push_back(check_equal("one_step[" + tag(u) + ";p=" + num(p) + ";j=" +
                                      std::to_string(j) + ";" + side + "]",
                                  exact_one_step_displacement(p, u, j, dir),
                                  one_step_tail(p, u, j), 1e-12));
      }
    }
  }
  return out;
}

std::vector<Check> check_reachability() {
  const Neighborhood u({-1, 0, 1});
  const auto bad = reachability_mismatches(3, 5, u, 1000, 20240601);
  return {check_equal("reachability_mismatches[" + tag(u) + ";n=3;t=5;draws=1000]",
                      static_cast<double>(bad), 0.0, 0.0)};
}

std::vector<Check> check_mityushin() {
  std::vector<Check> out;
  const Neighborhood u({0, 1});
  for (int n : {2, 3}) {
    for (long t : {2L, 3L}) {
      for (double p : {0.3, 0.5, 0.7}) {
        const auto r = cylinder_vs_line(n, t, u, p);
        out.push_back(check_at_most("cylinder_vs_line.upper_bound[" + tag(u) + ";n=" +
                                        std::to_string(n) + ";t=" + std::to_string(t) +
                                        ";p=" + num(p) + "]",
                                    r.p_cyl, r.p_line, 1e-12));
      }
    }
  }
  return out;
}

std::vector<Check> check_domination(const SimOptions& opts) {
  std::vector<Check> out;
  const Neighborhood a({0, 1});
  const Neighborhood b({-1, 0, 1});
  const Neighborhood c({-1, 0, 1, 2});
  for (const auto& [small, large] : {std::pair{a, b}, std::pair{b, c}}) {
    for (double p : {0.4, 0.6, 0.8}) {
      const bool ok = coupled_domination(small, large, 16, p, 64, 1000, 7, opts);
      out.push_back(check_equal("coupled_domination[" + tag(small) + "<" + tag(large) +
                                    ";n=16;T=64;p=" + num(p) + ";replicas=1000]",
                                ok ? 1.0 : 0.0, 1.0, 0.0));
    }
  }
  return out;
}

std::vector<Check> check_stochasticity() {
  std::vector<Check> out;
  for (const auto& u : {Neighborhood({0, 1}), Neighborhood({-1, 0, 1})}) {
    for (double p : {0.2, 0.5, 0.8}) {
      const auto mu =
          exact_evolve(3, u, p, ExactDistribution::dirac(RingConfig::all_ones(3)), 5);
      out.push_back(check_equal("exact_mass[" + tag(u) + ";n=3;t=5;p=" + num(p) + "]",
                                mu.total(), 1.0, 1e-12));
    }
  }
  return out;
}

std::vector<Check> verify_suite(const SimOptions& opts, PhiExponent variant) {
  std::vector<Check> all;
  auto append = [&all](std::vector<Check> part) {
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  };
  append(check_bounds_table(variant));
  append(check_expectation_roots(variant));
  append(check_tau_tails());
  append(check_stochasticity());
  append(check_one_step());
  append(check_two_step_bounds());
  append(check_reachability());
  append(check_mityushin());
  append(check_domination(opts));
  return all;
}

nlohmann::ordered_json to_json(const std::vector<Check>& checks) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& c : checks) {
    j[c.name] = {{"computed", c.computed},
                 {"reference", c.reference},
                 {"tolerance", c.tolerance},
                 {"pass", c.pass}};
  }
  return j;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace ppca
