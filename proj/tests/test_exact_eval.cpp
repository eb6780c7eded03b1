#include <doctest.h>

#include "spinnet/errors.hpp"
#include "spinnet/exact_eval.hpp"

using namespace spinnet;

TEST_CASE("theta (2,2,2) in every normalization") {
  const Coloring c({2, 2, 2});
  const ExactValue s = chromatic_eval(theta_graph(), c);
  CHECK(s.as_rational() == -24);
  CHECK(convert_normalization(s, theta_graph(), c, Norm::P).as_rational() == -24);
  CHECK(convert_normalization(s, theta_graph(), c, Norm::B).as_rational() == -3);
  CHECK(edge_factorial(theta_graph(), c) == 8);
}

TEST_CASE("regular tetrahedron at color 2") {
  const TetColoring g{2, 2, 2, 2, 2, 2};
  CHECK(closed_form_sixj(g) == 96);
  CHECK(chromatic_eval(tetrahedron_graph(), tet_coloring(g)).as_rational() == 96);
  const Surd u = sixj_unitary(g);
  CHECK(u.coef == Rational(1, 6));
  CHECK(u.radicand == 1);
}

TEST_CASE("state sum agrees with chromatic evaluation times I!") {
  for (const Coloring& c : {Coloring({1, 1, 2}), Coloring({2, 2, 2}), Coloring({3, 3, 2})}) {
    const Rational p = penrose_state_sum(theta_graph(), c).as_rational();
    CHECK(p == Rational(vertex_factorial(theta_graph(), c)) * chromatic_eval(theta_graph(), c).as_rational());
  }
}

TEST_CASE("closed-form theta") {
  CHECK(closed_form_theta(2, 2, 2) == -24);
  CHECK(closed_form_theta(0, 0, 0) == 1);
  const ChromaticEvaluator ev(theta_graph());
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= 6; ++b)
      for (long c = 0; c <= 6; ++c)
        if (admissible_triple(a, b, c)) CHECK(closed_form_theta(a, b, c) == ev.evaluate(Coloring({a, b, c})));
}

TEST_CASE("free loop") {
  const RibbonGraph circle = parse_graph("freeloop o\n");
  for (long n = 0; n <= 5; ++n) {
    const Coloring c({n});
    const Rational expected = Rational((n % 2 ? -1 : 1) * (n + 1));
    CHECK(penrose_state_sum(circle, c).as_rational() == expected);
    CHECK(chromatic_eval(circle, c).as_rational() == expected);
  }
}

TEST_CASE("vertex flip changes the sign by the flip factor") {
  const RibbonGraph& tet = tetrahedron_graph();
  const Coloring c = tet_coloring({2, 3, 3, 2, 3, 3});
  REQUIRE(admissible(tet, c));
  for (int v = 0; v < tet.num_vertices(); ++v) {
    const auto vc = vertex_colors(tet, c, v);
    CHECK(chromatic_eval(tet.with_flipped_vertex(v), c).as_rational() ==
          flip_sign(vc[0], vc[1], vc[2]) * chromatic_eval(tet, c).as_rational());
  }
}

TEST_CASE("zero-edge insertion keeps the evaluation") {
  const Coloring c({2, 4, 2});
  for (int e1 = 0; e1 < 3; ++e1)
    for (int e2 = 0; e2 < 3; ++e2) {
      const ColoredGraph h = insert_zero_edge(theta_graph(), c, e1, e2);
      CHECK(chromatic_eval(h.graph, h.coloring) == chromatic_eval(theta_graph(), c));
    }
}

TEST_CASE("unitary values are undefined when a vertex theta vanishes") {
  const RibbonGraph drum1 = load_graph(std::string(SPINNET_DATA_DIR) + "/graphs/drum1.graph");
  CHECK(chromatic_eval(drum1, Coloring(std::vector<long>(drum1.num_strands(), 2))).as_rational() == 0);
}

TEST_CASE("inadmissible colorings evaluate to zero, malformed ones are rejected") {
  CHECK(chromatic_eval(theta_graph(), Coloring({1, 1, 1})).as_rational() == 0);
  CHECK_THROWS_AS(chromatic_eval(theta_graph(), Coloring({2, 2})), ParseError);
}

TEST_CASE("scaled sequences") {
  const auto seq = scaled_sequence(theta_graph(), Coloring({1, 1, 2}), 4, Norm::standard);
  REQUIRE(seq.size() == 5);
  for (long n = 0; n <= 4; ++n)
    CHECK(seq[n].as_rational() == Rational(closed_form_theta(n, n, 2 * n)));
}
