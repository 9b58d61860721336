#include <doctest.h>

#include "nclp/json_io.hpp"

#include "test_util.hpp"

using namespace nclp;

TEST_CASE("value encodings re-parse within tolerance") {
  const auto alg = AlgebraDescriptor({2, 3}, {1.0, 0.37});
  CounterRng rng(801, "json");
  const AlgebraElement x = random_element(alg, rng);

  const Json d = to_json(alg);
  CHECK(descriptor_from_json(Json::parse(d.dump())) == alg);

  const Json e = to_json(x);
  const AlgebraElement back = element_from_json(Json::parse(e.dump()), alg);
  CHECK((back - x).op_norm() <= 1e-15 * std::max(1.0, x.op_norm()));

  const LpElement xi{x, 2.5};
  const LpElement xi2 = lp_element_from_json(Json::parse(to_json(xi).dump()), alg);
  CHECK(xi2.p == xi.p);
}

TEST_CASE("jordan and map encodings round-trip as actions") {
  CounterRng rng(802, "json-jordan");
  JordanMono j = test::m2_to_m4();
  j.conjugator = random_unitary(j.target, rng);
  const JordanMono back = jordan_from_json(Json::parse(to_json(j).dump()));
  CHECK((back.to_superop() - j.to_superop()).op_norm() < 1e-13);

  const YeadonTriple t = test::random_yeadon(j, 3.0, rng);
  const YeadonTriple t2 = yeadon_from_json(Json::parse(to_json(t).dump()));
  CHECK((t2.w - t.w).op_norm() < 1e-13);
  CHECK((t2.B - t.B).op_norm() < 1e-13);
  CHECK(t2.p == t.p);

  const LpMap map = construct_yeadon(t);
  const LpMap map2 = lp_map_from_json(Json::parse(to_json(map).dump()));
  CHECK((map2.op - map.op).op_norm() < 1e-12);
}

TEST_CASE("bloch cfm encoding uses readable monomial keys") {
  BlochCFM rho;
  rho.c = 2.0;
  rho.p = 1.0;
  rho.odd_poly[{3, 0, 0}] = 0.5;
  rho.odd_poly[{1, 1, 1}] = -0.1;
  const Json js = to_json(rho);
  CHECK(js.at("odd_poly").contains("x^3"));
  CHECK(js.at("odd_poly").contains("x y z"));
  const BlochCFM back = bloch_from_json(Json::parse(js.dump()));
  CHECK(back.c == rho.c);
  CHECK(back.odd_poly == rho.odd_poly);
}
