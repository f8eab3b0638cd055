#include "doctest.h"
#include "nlohmann/json.hpp"
#include "stingray/census.hpp"

using namespace stingray;

TEST_CASE("graph census on the three lines of GF(2)^2") {
  WalkCensus wc = graph_walk_census(Field(2), 1, 1);
  CHECK(wc.walks3 == 24);
  CHECK(wc.arcs3 == 6);
  CHECK(wc.closed_walks3 == 18);
  CHECK(wc.closed_arcs3 == 0);
}

TEST_CASE("graph census equals the closed forms") {
  for (auto [e1, e2, q] : {std::tuple<uint32_t, uint32_t, uint32_t>{2, 1, 2},
                           {1, 1, 3},
                           {2, 2, 2},
                           {2, 1, 3}}) {
    WalkCensus wc = graph_walk_census(Field(q), e1, e2);
    const KneserParams kp(e1, e2, q);
    CHECK(wc.walks3 == walk3_count(kp));
    CHECK(wc.arcs3 == arc3_count(kp));
    CHECK(wc.closed_walks3 == closed_walk3_count(kp));
    CHECK(wc.closed_arcs3 == closed_arc3_count(kp));
  }
  WalkCensus wc22 = graph_walk_census(Field(2), 2, 2);
  BigRat ratio(wc22.closed_arcs3, wc22.walks3);
  ratio.canonicalize();
  CHECK(ratio == proportion_P(KneserParams(2, 2, 2)));
}

TEST_CASE("reversal symmetry: both orientations count identically") {
  for (auto [e1, e2, q] :
       {std::tuple<uint32_t, uint32_t, uint32_t>{2, 1, 2}, {2, 2, 2}}) {
    WalkCensus fwd = graph_walk_census(Field(q), e1, e2, Caps::defaults(), false);
    WalkCensus rev = graph_walk_census(Field(q), e1, e2, Caps::defaults(), true);
    CHECK(fwd.walks3 == rev.walks3);
    CHECK(fwd.arcs3 == rev.arcs3);
    CHECK(fwd.closed_walks3 == rev.closed_walks3);
    CHECK(fwd.closed_arcs3 == rev.closed_arcs3);
  }
}

TEST_CASE("(A,B) census equals the closed forms") {
  for (auto [e1, e2, q] : {std::tuple<uint32_t, uint32_t, uint32_t>{2, 2, 2},
                           {3, 2, 2},
                           {1, 1, 3},
                           {2, 2, 3}}) {
    WalkCensus wc = ab_walk_census(Field(q), e1, e2);
    const KneserParams kp(e1, e2, q);
    CHECK(wc.walks3 == walk3_count(kp));
    CHECK(wc.arcs3 == arc3_count(kp));
    CHECK(wc.closed_walks3 == closed_walk3_count(kp));
    CHECK(wc.closed_arcs3 == closed_arc3_count(kp));
  }
}

TEST_CASE("caps are enforced") {
  Caps tiny;
  tiny.edge_checks = 10;
  CHECK_THROWS_AS(graph_walk_census(Field(2), 2, 2, tiny), EnumerationTooLarge);
  Caps tiny_ab;
  tiny_ab.ab_pairs = 10;
  CHECK_THROWS_AS(ab_walk_census(Field(2), 2, 2, tiny_ab), EnumerationTooLarge);
}

TEST_CASE("rank censuses") {
  auto h22 = rank_census(Field(2), 2, 2);
  REQUIRE(h22.size() == 3);
  CHECK(h22[0] == 1);
  CHECK(h22[1] == 9);
  CHECK(h22[2] == 6);

  auto h13 = rank_census(Field(2), 1, 3);
  REQUIRE(h13.size() == 2);
  CHECK(h13[0] == 1);
  CHECK(h13[1] == 7);

  auto h23 = rank_census(Field(3), 2, 3);
  for (uint32_t k = 0; k < h23.size(); ++k) CHECK(h23[k] == rank_matrix_count(2, 3, k, 3));
}

TEST_CASE("stingray class enumeration by full sweep") {
  auto classes = enumerate_stingray_elements(Field(2), 3, 2);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].charpoly == Poly{{1, 1, 1}});
  CHECK(classes[0].elements.size() == 56);

  auto classes13 = enumerate_stingray_elements(Field(3), 3, 1);
  REQUIRE(classes13.size() == 1);
  CHECK(classes13[0].elements.size() == 117);

  CHECK_THROWS_AS(enumerate_stingray_elements(Field(2), 3, 1), EmptyClass);
}

TEST_CASE("orbit construction matches the full sweep") {
  Caps force_orbit;
  force_orbit.group_sweep = 1;  // push the small group onto the orbit path
  auto by_orbit = enumerate_stingray_elements(Field(2), 3, 2, force_orbit);
  auto by_sweep = enumerate_stingray_elements(Field(2), 3, 2);
  REQUIRE(by_orbit.size() == by_sweep.size());
  CHECK(by_orbit[0].elements.size() == by_sweep[0].elements.size());
  CHECK(by_orbit[0].charpoly == by_sweep[0].charpoly);
}

TEST_CASE("exhaustive duo census in GL_3(3), (e1,e2) = (2,1)") {
  DuoCensus dc = exhaustive_duo_census(Field(3), 3, 2, 1);
  REQUIRE(dc.status == DuoCensus::Status::ok);
  CHECK(dc.classes1.size() == 3);
  for (const auto& [key, size] : dc.classes1) CHECK(size == 702);
  REQUIRE(dc.classes2.size() == 1);
  CHECK(dc.classes2[0].second == 117);
  CHECK(dc.pairs == 3 * 702ull * 117);
  CHECK(dc.duos() == 170586);
  CHECK(dc.irreducible_duo == 84240);
  CHECK(dc.spin_checked > 0);
  CHECK(dc.spin_mismatches == 0);
  for (const auto& st : dc.class_pairs) {
    CHECK(st.duos == 56862);
    CHECK(st.fibre_constant);
    CHECK(st.fibre_size == 6);
    CHECK(st.distinct_walk_images == 9477);  // = walk3_count(2,1,3)
  }
  CHECK(duo_census_discrepancies(dc).empty());

  nlohmann::json j = nlohmann::json::parse(to_json(dc));
  CHECK(j["schema"] == "stingray-kneser/1");
  CHECK(j["counts"]["irreducible_duo"] == 84240);
}

TEST_CASE("duo census reports empty classes as skipped") {
  DuoCensus dc = exhaustive_duo_census(Field(2), 3, 2, 1);
  CHECK(dc.status == DuoCensus::Status::skipped_empty_class);
  nlohmann::json j = nlohmann::json::parse(to_json(dc));
  CHECK(j["status"] == "skipped (no such stingray elements)");
}

TEST_CASE("class independence between SL and GL conjugacy") {
  const Field f3(3);
  auto r1 = verify_class_independence(f3, 3, canonical_stingray_representative(f3, 3, 2));
  CHECK(r1.status == ClassIndependenceReport::Status::ok);
  CHECK(r1.sl_orbit == 702);
  CHECK(r1.gl_orbit == 702);
  CHECK(r1.pass);

  auto r2 = verify_class_independence(f3, 2, canonical_stingray_representative(f3, 2, 1));
  CHECK(r2.sl_orbit == 12);
  CHECK(r2.pass);

  auto r3 = verify_class_independence(Field(2), 3, canonical_stingray_representative(Field(2), 3, 2));
  CHECK(r3.status == ClassIndependenceReport::Status::skipped_trivial_quotient);
}

TEST_CASE("walk census JSON") {
  WalkCensus wc = graph_walk_census(Field(2), 1, 1);
  nlohmann::json j = nlohmann::json::parse(to_json(wc));
  CHECK(j["schema"] == "stingray-kneser/1");
  CHECK(j["counts"]["walks3"] == "24");
  CHECK(j["oracle_kind"] == "graph");
}

TEST_CASE("caps respect STINGRAY_CAP_OVERRIDE") {
  setenv("STINGRAY_CAP_OVERRIDE", "12345", 1);
  Caps c = Caps::defaults();
  CHECK(c.edge_checks == 12345);
  CHECK(c.pair_sweep == 12345);
  unsetenv("STINGRAY_CAP_OVERRIDE");
  Caps d = Caps::defaults();
  CHECK(d.edge_checks == 10'000'000);
}
