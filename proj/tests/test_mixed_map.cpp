#include <doctest.h>

#include "etrails/mixed_map.hpp"
#include "fixtures.hpp"

using namespace etrails;

TEST_CASE("codec round-trips the single-graph-vertex fixture byte-identically") {
  // SGG: 1 vertex, 4 externals
  MixedMap m;
  m.kind = MapKind::Graph;
  m.vertices.push_back({0, {0, 1, 2, 3}});
  m.externals = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  std::string text = serialize_map_json(m);
  CHECK(serialize_map_json(parse_map_json(text)) == text);
}

TEST_CASE("parse then serialize is canonicalization for shuffled ids") {
  MixedMap m;
  m.kind = MapKind::Graph;
  m.vertices.push_back({7, {10, 20}});
  m.vertices.push_back({3, {30, 40}});
  m.edges = {{10, 30}, {20, 40}};
  std::string text = serialize_map_json(m);
  MixedMap parsed = parse_map_json(text);
  CHECK(serialize_map_json(parsed) == text);
  CHECK(parsed.vertices[0].rotation == std::vector<HalfEdge>{0, 1});
  CHECK(parsed.vertices[1].rotation == std::vector<HalfEdge>{2, 3});
}

TEST_CASE("half-edge reuse is rejected with the offending id") {
  MixedMap m;
  m.kind = MapKind::Graph;
  m.vertices.push_back({0, {0, 1, 2, 3}});
  m.vertices.push_back({1, {4, 5, 6, 7}});
  m.edges = {{0, 4}, {0, 5}, {2, 6}, {3, 7}};  // 0 used twice
  CHECK_THROWS_WITH_AS(compile(m), doctest::Contains("half-edge reused"), MapError);
}

TEST_CASE("dangling ids are rejected") {
  MixedMap m;
  m.kind = MapKind::Graph;
  m.vertices.push_back({0, {0, 1}});
  m.edges = {{0, 1}, {2, 3}};  // 2,3 in no rotation
  CHECK_THROWS_WITH_AS(compile(m), doctest::Contains("dangling"), MapError);

  MixedMap m2;
  m2.kind = MapKind::Graph;
  m2.vertices.push_back({0, {0, 1, 2}});
  m2.edges = {{0, 1}};  // 2 in no edge or external
  CHECK_THROWS_WITH_AS(compile(m2), doctest::Contains("dangling"), MapError);
}

TEST_CASE("external labels must be 0..2d-1") {
  MixedMap m;
  m.kind = MapKind::Graph;
  m.vertices.push_back({0, {0, 1}});
  m.externals = {{0, 0}, {2, 1}};
  CHECK_THROWS_AS(compile(m), MapError);
}

TEST_CASE("4-dipole has degrees (4,4) and is connected") {
  CompiledMap c = compile(fixtures::dipole4());
  CHECK(c.n_vertices == 2);
  CHECK(c.degree(0) == 4);
  CHECK(c.degree(1) == 4);
  CHECK(c.connected());
  CHECK(c.all_degrees_even());
}

TEST_CASE("loops occupy two slots of one rotation") {
  MixedMap m = fixtures::rose2();
  CompiledMap c = compile(m);
  CHECK(c.degree(0) == 4);
  auto prof = degree_profile(m);
  REQUIRE(prof.size() == 1);
  CHECK(prof[0] == std::pair<int, int>{4, 1});
}
