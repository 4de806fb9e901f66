#include <doctest.h>

#include <cmath>

#include "ppca/experiments.hpp"
#include "ppca/report.hpp"

using namespace ppca;

TEST_CASE("grids") {
  const auto g = make_grid(0.45, 0.65, 0.005);
  CHECK(g.size() == 41);
  CHECK(g.front() == 0.45);
  CHECK(g.back() == 0.65);
  CHECK(format_double(g[3]) == "0.465");
  CHECK(make_grid(0.3, 0.3, 0.1).size() == 1);
  CHECK_THROWS_AS(make_grid(0.5, 0.4, 0.1), DomainError);
  CHECK_THROWS_AS(make_grid(0.1, 0.4, 0.0), DomainError);
}

TEST_CASE("bounds table rows") {
  const auto rows = bounds_table({Neighborhood({-1, 0}), Neighborhood({-1, 0, 1, 2, 3}),
                                  Neighborhood({-1, 0, 3})});
  CHECK(format_fixed(rows[0].p1, 3) == "0.667");
  CHECK(format_fixed(rows[0].p2, 3) == "0.670");
  CHECK(format_fixed(rows[1].p1, 3) == "0.333");
  CHECK(format_fixed(rows[1].p2, 3) == "0.343");
  CHECK(rows[2].p1 == rows[1].p1);
  CHECK(rows[2].p2 == rows[1].p2);
}

TEST_CASE("bounds stay below the numerical critical values") {
  const std::vector<std::pair<Neighborhood, double>> table{
      {Neighborhood({-1, 0}), 0.705},          {Neighborhood({-1, 0, 1}), 0.538},
      {Neighborhood({-1, 0, 1, 2}), 0.435},    {Neighborhood({-1, 0, 1, 2, 3}), 0.364},
      {Neighborhood({-1, 0, 2}), 0.490},       {Neighborhood({-1, 0, 3}), 0.470}};
  for (const auto& [u, pc] : table) CHECK(solve_p2(u) < pc);
}

TEST_CASE("survival sweep") {
  const Neighborhood u({-1, 0, 1});
  const auto curve = p_sweep(u, 200, 200, 40, {0.05, 0.5, 0.6, 0.7, 0.95}, 5);
  CHECK(curve.rows.front().p_hat == 0.0);
  CHECK(curve.rows.back().p_hat > 0.5);
  for (std::size_t i = 1; i < curve.rows.size(); ++i) {
    // Same seed at every p: monotone realisation by realisation.
    CHECK(curve.rows[i].p_hat >= curve.rows[i - 1].p_hat);
  }
  CHECK(curve.crossing().has_value());
  CHECK_THROWS_AS(p_sweep(u, 10, 10, 5, {0.5, 0.4}, 1), PreconditionError);
}

TEST_CASE("tau scaling below criticality is logarithmic") {
  const auto t = tau_scaling(Neighborhood({0, 1}), 0.3, {8, 16, 32, 64, 128, 256}, 200, 1000000, 6);
  REQUIRE(t.log_fit.has_value());
  CHECK(t.regime == Regime::logarithmic);
  CHECK(t.log_fit->r2 > 0.9);
  CHECK(t.log_fit->adjusted_r2 > t.exp_fit->adjusted_r2);
}

TEST_CASE("tau scaling at p = 0 is degenerate") {
  const auto t = tau_scaling(Neighborhood({0, 1}), 0.0, {2, 4, 8}, 10, 100, 1);
  for (const auto& r : t.rows) CHECK(r.tau.mean == 1.0);
  CHECK(t.regime == Regime::degenerate);
  CHECK_FALSE(t.log_fit.has_value());
  CHECK_THROWS_AS(tau_scaling(Neighborhood({0, 1}), 0.3, {4, 2}, 10, 100, 1), PreconditionError);
}

TEST_CASE("censored rows only refute the log model") {
  const auto t = tau_scaling(Neighborhood({0, 1}), 0.9, {1, 2, 3}, 20, 20000, 9);
  CHECK(t.rows[2].tau.censored > 0);
  REQUIRE(t.exp_fit.has_value());
  CHECK(t.exp_fit->points == 2);
  CHECK(t.log_refuted_by_censored);
  CHECK(t.regime == Regime::exponential);
}

TEST_CASE("gamma scan") {
  const Neighborhood u({0, 1});
  const auto s = gamma_scan(u, {0.3, 0.9, 1.0}, 100, 40, 2);
  CHECK(s.rows[2].gamma_hat == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.rows[0].gamma_hat < 0.0);
  CHECK(s.monotone);
  REQUIRE(s.crossing.has_value());
  CHECK(*s.crossing == 0.9);
}

TEST_CASE("subcritical decay") {
  const Neighborhood u({0, 1});
  std::vector<long> ms;
  for (long m = 2; m <= 20; ++m) ms.push_back(m);
  const auto sub = subcritical_decay(u, 0.3, ms, 20000, 4);
  REQUIRE(sub.fit.has_value());
  CHECK(sub.h_hat > 0.0);
  CHECK(sub.fit->r2 > 0.9);
  CHECK(sub.accepted);

  const auto super = subcritical_decay(u, 0.9, ms, 2000, 4);
  CHECK_FALSE(super.accepted);

  const auto zero = subcritical_decay(u, 0.0, {1, 2, 3}, 10, 4);
  CHECK(zero.rows[0].p_hat == 0.0);
  CHECK(zero.degenerate);
  CHECK(zero.dropped == 3);
}

TEST_CASE("csv output") {
  Metadata meta;
  meta.add("U", "0;1").add("seed", "3");
  const auto curve = p_sweep(Neighborhood({0, 1}), 20, 20, 10, {0.2, 0.8}, 3);
  const std::string csv = to_csv(curve, meta);
  CHECK(csv.rfind("# ppca 1.0.0 U=0;1 seed=3\np,P_hat,stderr\n0.2,", 0) == 0);
  CHECK(to_csv(curve, meta) == csv);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(5.0) == "5");
  for (double v : {0.1, 1e-300, 123456.789, 2.0 / 3.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
