#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qconc/concurrence.hpp"
#include "qconc/io.hpp"
#include "qconc/rng.hpp"

using namespace qconc;
using nlohmann::json;

TEST_CASE("state file ingestion") {
  SUBCASE("product-tensor basis, 1-based site values") {
    const json file = {{"kind", "distinguishable"},
                       {"L", 2},
                       {"N", 2},
                       {"basis", "product-tensor"},
                       {"amplitudes",
                        {{{"index", {1, 1}}, {"re", 1.0 / std::sqrt(2.0)}, {"im", 0.0}},
                         {{"index", {2, 2}}, {"re", 1.0 / std::sqrt(2.0)}, {"im", 0.0}}}}};
    const PureState psi = pure_state_from_json(file);
    CHECK((psi.amplitudes - oracle::bell()).norm() < 1e-12);
    CHECK(concurrence_pure(psi).value == doctest::Approx(0.5).epsilon(1e-10));
  }
  SUBCASE("slater basis") {
    const json file = {{"kind", "fermion"},
                       {"L", 2},
                       {"N", 4},
                       {"basis", "slater"},
                       {"amplitudes", {{{"index", {1, 2}}, {"re", 1.0}, {"im", 0.0}}}}};
    const PureState psi = pure_state_from_json(file);
    CHECK(concurrence_pure(psi).value < 1e-7);
  }
  SUBCASE("occupation basis") {
    const json file = {{"kind", "boson"},
                       {"L", 3},
                       {"N", 2},
                       {"basis", "occupation"},
                       {"amplitudes", {{{"index", {2, 1}}, {"re", 1.0}, {"im", 0.0}}}}};
    const PureState psi = pure_state_from_json(file);
    CHECK((psi.amplitudes - oracle::w_state()).norm() < 1e-12);
  }
  SUBCASE("validation failures") {
    json file = {{"kind", "fermion"}, {"L", 2}, {"N", 1}, {"basis", "slater"},
                 {"amplitudes", {{{"index", {1, 2}}, {"re", 1.0}, {"im", 0.0}}}}};
    CHECK_THROWS_AS(pure_state_from_json(file), ValidationError);  // N < L

    file = {{"kind", "boson"}, {"L", 2}, {"N", 2}, {"basis", "product-tensor"},
            {"amplitudes", {{{"index", {1, 2}}, {"re", 1.0}, {"im", 0.0}}}}};
    CHECK_THROWS_AS(pure_state_from_json(file), KindError);  // not symmetric

    file = {{"kind", "distinguishable"}, {"L", 2}, {"N", 2}, {"basis", "product-tensor"},
            {"amplitudes", {{{"index", {1, 3}}, {"re", 1.0}, {"im", 0.0}}}}};
    CHECK_THROWS_AS(pure_state_from_json(file), ValidationError);  // site value range

    file = {{"kind", "distinguishable"}, {"L", 2}, {"N", 2}, {"basis", "slater"},
            {"amplitudes", {{{"index", {1, 2}}, {"re", 1.0}, {"im", 0.0}}}}};
    CHECK_THROWS_AS(pure_state_from_json(file), ValidationError);  // basis/kind mismatch
  }
}

TEST_CASE("round trips") {
  SUBCASE("distinguishable states round-trip bit-exactly") {
    const PureState psi = random_pure({ParticleKind::distinguishable, 2, 3}, 12);
    const PureState back = pure_state_from_json(pure_state_to_json(psi));
    CHECK((psi.amplitudes - back.amplitudes).norm() == 0.0);
  }
  SUBCASE("bosonic and fermionic states round-trip at double precision") {
    for (const auto& shape :
         {SystemShape{ParticleKind::boson, 2, 3}, SystemShape{ParticleKind::fermion, 2, 4}}) {
      const PureState psi = random_pure(shape, 34);
      const PureState back = pure_state_from_json(pure_state_to_json(psi));
      CHECK((psi.amplitudes - back.amplitudes).norm() < 1e-12);
      CHECK(std::abs(concurrence_pure(psi).value - concurrence_pure(back).value) < 1e-12);
    }
  }
  SUBCASE("density files round-trip bit-exactly") {
    const MixedState rho = random_mixed({ParticleKind::fermion, 2, 4}, 2, 56);
    const MixedState back = mixed_state_from_json(mixed_state_to_json(rho));
    CHECK((rho.density - back.density).norm() == 0.0);
  }
}

TEST_CASE("density ingestion validates the state") {
  json file = {{"kind", "distinguishable"}, {"L", 1}, {"N", 2}};
  file["matrix"] = {{{0.6, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.4, 0.0}}};
  CHECK_NOTHROW(mixed_state_from_json(file));

  file["matrix"] = {{{0.6, 0.0}, {0.5, 0.1}}, {{0.5, 0.0}, {0.4, 0.0}}};
  CHECK_THROWS_AS(mixed_state_from_json(file), ValidationError);  // not Hermitian

  file["matrix"] = {{{1.2, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-0.2, 0.0}}};
  CHECK_THROWS_AS(mixed_state_from_json(file), ValidationError);  // negative eigenvalue
}
