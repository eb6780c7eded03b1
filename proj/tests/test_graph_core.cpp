#include <doctest.h>

#include <random>
#include <sstream>

#include "spinnet/errors.hpp"
#include "spinnet/exact_eval.hpp"
#include "spinnet/ribbon_graph.hpp"

using namespace spinnet;

namespace {

RibbonGraph bundled(const std::string& name) {
  return load_graph(std::string(SPINNET_DATA_DIR) + "/graphs/" + name + ".graph");
}

// Rotates the half-edge list of every vertex line by `shift[v]` positions.
std::string rotate_slots(const std::string& text, const std::vector<int>& shift) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  int v = 0;
  while (std::getline(in, line)) {
    if (line.rfind("vertex", 0) == 0) {
      const auto colon = line.find(':');
      std::istringstream hs(line.substr(colon + 1));
      std::vector<std::string> h(3);
      hs >> h[0] >> h[1] >> h[2];
      const int s = shift[v++ % shift.size()];
      out << line.substr(0, colon + 1);
      for (int k = 0; k < 3; ++k) out << ' ' << h[(k + s) % 3];
      out << '\n';
    } else {
      out << line << '\n';
    }
  }
  return out.str();
}

}  // namespace

TEST_CASE("bundled graphs have the expected topology") {
  CHECK(tetrahedron_graph().genus() == 0);
  CHECK(tetrahedron_graph().face_count() == 4);
  CHECK(theta_graph().face_count() == 3);
  CHECK(bundled("k33").genus() == 1);
  CHECK(bundled("circle").num_free_loops() == 1);
  CHECK(bundled("circle").num_vertices() == 0);
}

TEST_CASE("curve count is two to the cycle-space dimension") {
  for (const char* name : {"theta", "tetrahedron", "k33", "drum1", "drum3", "drum4", "circle"}) {
    const RibbonGraph g = bundled(name);
    CAPTURE(name);
    CHECK(curves(g).size() == (std::size_t{1} << g.cycle_space_dimension()));
  }
}

TEST_CASE("cyclic rotation of vertex slots leaves the ribbon graph unchanged") {
  std::mt19937_64 rng(5);
  for (const char* name : {"tetrahedron", "k33", "drum3"}) {
    const RibbonGraph g = bundled(name);
    const std::string text = g.to_text();
    std::vector<int> shift(g.num_vertices());
    for (auto& s : shift) s = static_cast<int>(rng() % 3);
    const RibbonGraph h = parse_graph(rotate_slots(text, shift));
    CAPTURE(name);
    CHECK(h.face_count() == g.face_count());
    CHECK(h.genus() == g.genus());
    Coloring c(std::vector<long>(g.num_strands(), 2));
    CHECK(chromatic_eval(h, c) == chromatic_eval(g, c));
  }
}

TEST_CASE("malformed graph text is rejected") {
  CHECK_THROWS_AS(parse_graph("vertex 1: a b\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex 1: a b c\nedge x: a q\n"), ParseError);
}

TEST_CASE("admissibility") {
  CHECK(admissible_triple(2, 2, 2));
  CHECK_FALSE(admissible_triple(1, 1, 1));
  CHECK_FALSE(admissible_triple(1, 1, 4));
  const RibbonGraph& t = theta_graph();
  CHECK(admissible(t, Coloring({1, 1, 2})));
  CHECK_FALSE(admissible(t, Coloring({1, 2, 2})));
}

TEST_CASE("colorings parse by edge id") {
  const RibbonGraph& t = theta_graph();
  const Coloring c = parse_coloring("t 4\nm 2\nb 2\n", t);
  CHECK(c == Coloring({4, 2, 2}));
  CHECK(parse_coloring(to_text(c, t), t) == c);
  CHECK_THROWS_AS(parse_coloring("t 4\n", t), ParseError);
}

TEST_CASE("curves are validated") {
  const RibbonGraph& t = theta_graph();
  CHECK_NOTHROW(validate_curve(t, Curve{{0, 1}}));
  CHECK_THROWS_AS(validate_curve(t, Curve{{0}}), ParseError);
}
