#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "bicouple/config.hpp"
#include "bicouple/presets.hpp"

using namespace bicouple;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"D_minus", 0.1}, {"D_plus", 1.0},      {"m", 50},
              {"n_steps", 100}, {"initial", "cosine"}, {"coupling", {{"type", "dn"}}}};
}

}  // namespace

TEST_CASE("parse_config accepts a minimal object and applies defaults") {
  RunConfig c = parse_config(minimal());
  CHECK(c.kind == GridKind::Nodal);
  CHECK(c.m == 50);
  CHECK_FALSE(c.dt.has_value());
  CHECK(c.cfl_fraction == 0.4);  // the default safety fraction
  CHECK(c.resolved_dt() == doctest::Approx(4e-5).epsilon(1e-12));
  CHECK(c.resolved_boundary() == BoundaryKind::CentralGhost);
  CHECK(c.summation == SummationMode::Sequential);
  REQUIRE(c.couplings.size() == 1);
  CHECK(c.couplings[0].kind == CouplingKind::DirichletNeumann);
}

TEST_CASE("dx inputs are canonicalized to m") {
  json j = minimal();
  j.erase("m");
  j["dx"] = 0.01;
  CHECK(parse_config(j).m == 50);
  j["dx"] = 1e-4;
  CHECK(parse_config(j).m == 5000);

  j["dx"] = 0.3;  // 1/0.3 is not an even integer
  CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("contradictory and unknown keys are rejected with diagnostics") {
  json both = minimal();
  both["dx"] = 0.01;  // m is already present
  CHECK_THROWS_WITH_AS(parse_config(both), doctest::Contains("exactly one of"), ConfigError);

  json unknown = minimal();
  unknown["n_stepz"] = 5;
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("n_stepz"), ConfigError);

  json badcoupling = minimal();
  badcoupling["coupling"] = {{"type", "heat"}, {"H", 1.0}, {"theta", 2.0}};
  CHECK_THROWS_WITH_AS(parse_config(badcoupling), doctest::Contains("theta"), ConfigError);

  json twodt = minimal();
  twodt["dt"] = 1e-5;
  twodt["cfl_fraction"] = 0.4;
  CHECK_THROWS_WITH_AS(parse_config(twodt), doctest::Contains("contradictory"), ConfigError);
}

TEST_CASE("out-of-range values are rejected") {
  json j = minimal();
  j["cfl_fraction"] = 0.6;
  CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("stability"), ConfigError);
  j["allow_unstable"] = true;  // explicit override lets it through
  CHECK_NOTHROW(parse_config(j));

  json neg = minimal();
  neg["D_minus"] = -0.5;
  CHECK_THROWS_AS(parse_config(neg), ConfigError);

  json steps = minimal();
  steps["n_steps"] = 0;
  CHECK_THROWS_AS(parse_config(steps), ConfigError);

  json m1 = minimal();
  m1["m"] = 1;
  CHECK_THROWS_AS(parse_config(m1), ConfigError);

  json init = minimal();
  init["initial"] = "squiggle";
  CHECK_THROWS_AS(parse_config(init), std::invalid_argument);

  json kd = minimal();
  kd["coupling"] = {{"type", "membrane"}, {"P_l", 0.02}, {"P_p", 1.0}, {"K_d", 0.0}};
  CHECK_THROWS_WITH_AS(parse_config(kd), doctest::Contains("K_d"), ConfigError);

  json dt = minimal();
  dt["dt"] = 1.0;  // nu far beyond 1/2 on this mesh
  CHECK_THROWS_WITH_AS(parse_config(dt), doctest::Contains("CFL"), ConfigError);
}

TEST_CASE("coupling arrays parse into one spec each") {
  json j = minimal();
  j["coupling"] = json::array({{{"type", "dn"}},
                               {{"type", "heat"}, {"H", 0.5}, {"discretization", "one_sided"}},
                               {{"type", "giles"}, {"r", 2.0}}});
  RunConfig c = parse_config(j);
  REQUIRE(c.couplings.size() == 3);
  CHECK(c.couplings[1].kind == CouplingKind::HeatFlux);
  CHECK(c.couplings[1].discretization == FluxDiscretization::OneSided);
  CHECK(c.couplings[1].H == 0.5);
  CHECK(c.couplings[2].r == 2.0);
}

TEST_CASE("preset reference resolves to the catalogue entry") {
  ResolvedInput in = resolve_input(json{{"preset", "fig2"}});
  CHECK(in.name == "fig2");
  REQUIRE(in.configs.size() == 1);
  const RunConfig& c = in.configs[0].config;
  CHECK(c.m == 50);  // dx = 0.01
  CHECK(c.n_steps == 3000);
  CHECK(c.resolved_dt() == doctest::Approx(4e-5).epsilon(1e-12));
  CHECK(c.couplings.size() == 6);
  CHECK_FALSE(in.checks.empty());

  CHECK_THROWS_WITH_AS(resolve_input(json{{"preset", "fig999"}}), doctest::Contains("unknown preset"),
                       ConfigError);
  CHECK_THROWS_AS(resolve_input(json{{"preset", "fig2"}, {"m", 10}}), ConfigError);
}

TEST_CASE("every preset round-trips through JSON unchanged") {
  for (const auto& preset : presets()) {
    CAPTURE(preset.name);
    for (const auto& lc : preset.configs) {
      const json j = to_json(lc.config);
      const RunConfig back = parse_config(j);
      CHECK(back == lc.config);
    }
  }
}

TEST_CASE("failed tolerance checks mark the outcome") {
  RunConfig c = parse_config(minimal());
  Check impossible;
  impossible.kind = Check::Kind::DriftBelow;
  impossible.a = "dn";
  impossible.bound = -1.0;  // unsatisfiable
  Check missing;
  missing.kind = Check::Kind::DriftBelow;
  missing.a = "not_a_run";
  missing.bound = 1.0;
  RunSetOutcome out = run_config_set("t", {{"", c}}, {impossible, missing}, std::nullopt, false);
  CHECK_FALSE(out.all_passed);
  REQUIRE(out.check_results.size() == 2);
  CHECK_FALSE(out.check_results[0].passed);
  CHECK_FALSE(out.check_results[1].passed);
  CHECK(out.check_results[1].message.find("missing run") != std::string::npos);
  CHECK(out.find("dn") != nullptr);
  CHECK(out.find("not_a_run") == nullptr);
}

TEST_CASE("summation override reaches the ledgers") {
  RunConfig c = parse_config(minimal());
  RunSetOutcome out =
      run_config_set("t", {{"", c}}, {}, SummationMode::Compensated, false);
  REQUIRE(out.runs.size() == 1);
  CHECK(out.runs[0].result.ledger.mode == SummationMode::Compensated);
}

TEST_CASE("general coupling parses with its partition coefficient") {
  json j = minimal();
  j["coupling"] = {{"type", "general"}, {"H", 2.0}, {"theta", 0.5}};
  RunConfig c = parse_config(j);
  CHECK(c.couplings[0].kind == CouplingKind::GeneralFlux);
  CHECK(c.couplings[0].theta == 0.5);
  CHECK(parse_config(to_json(c)) == c);
}

TEST_CASE("every preset configuration validates and advances") {
  for (const auto& preset : presets()) {
    CAPTURE(preset.name);
    for (const auto& lc : preset.configs) {
      const Grid grid = build_grid(lc.config.m, lc.config.kind);
      const InitialData data = initial_library(lc.config.initial);
      const BiDomainState init = discretize_initial(grid, data.f_left, data.f_right);
      for (const auto& coupling : lc.config.couplings) {
        CAPTURE(coupling.label());
        const SchemeConfig scheme = lc.config.scheme(coupling);
        CHECK_NOTHROW(validate(scheme));
        const BiDomainState next = advance(init, scheme);
        CHECK(std::isfinite(mass(grid, next)));
      }
    }
  }
}

TEST_CASE("preset catalogue is complete and well-formed") {
  const char* expected[] = {"fig2",       "fig3-negative", "fig4-fine", "fig5-piecewise",
                            "fig5-small", "fig6-fv",       "fig6-small", "sqrt-boundary"};
  for (const char* name : expected) {
    CAPTURE(name);
    const Preset* p = find_preset(name);
    REQUIRE(p != nullptr);
    CHECK_FALSE(p->configs.empty());
    // every check label refers to a run the preset will produce
    for (const auto& check : p->checks) {
      auto label_exists = [&](const std::string& label) {
        if (label.empty()) return true;
        for (const auto& lc : p->configs)
          for (const auto& cp : lc.config.couplings) {
            const std::string run_label =
                lc.tag.empty() ? cp.label() : lc.tag + "_" + cp.label();
            if (run_label == label) return true;
          }
        return false;
      };
      CHECK(label_exists(check.a));
      CHECK(label_exists(check.b));
    }
  }
  CHECK(find_preset("no-such") == nullptr);
}
