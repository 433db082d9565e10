#include <doctest.h>

#include "test_util.hpp"
#include "ybsim/braid.hpp"
#include "ybsim/solutions.hpp"

using namespace ybsim;
using namespace testutil;

TEST_CASE("braid words parse with inferred strand counts") {
  BraidWord w = parse_braid("s1 s2^-1 s1");
  CHECK(w.n_strands == 3);
  REQUIRE(w.letters.size() == 3);
  CHECK(w.letters[0].index == 1);
  CHECK(w.letters[0].sign == 1);
  CHECK(w.letters[1].index == 2);
  CHECK(w.letters[1].sign == -1);
}

TEST_CASE("a declared strand count overrides the inference") {
  BraidWord w = parse_braid("n=5 s1");
  CHECK(w.n_strands == 5);
  CHECK(w.letters.size() == 1);
  w = parse_braid("n=2");
  CHECK(w.n_strands == 2);
  CHECK(w.letters.empty());
  w = parse_braid("");
  CHECK(w.n_strands == 2);
  CHECK(w.letters.empty());
}

TEST_CASE("malformed words are rejected with positions") {
  for (const char* bad : {"s0", "x1", "s1^-2", "s1^", "n=1", "s", "s1 n=3",
                          "n=4 s9", "s1.5"}) {
    CHECK_THROWS_AS(parse_braid(bad), ValidationError);
  }
  try {
    parse_braid("s1 s2 bogus");
    FAIL_CHECK("expected a parse error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("render and parse round-trip") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    BraidWord w;
    w.n_strands = uniform_int(rng, 2, 6);
    int len = uniform_int(rng, 0, 8);
    for (int i = 0; i < len; ++i)
      w.letters.push_back({uniform_int(rng, 1, w.n_strands - 1),
                           uniform_int(rng, 0, 1) == 0 ? 1 : -1});
    BraidWord back = parse_braid(render_braid(w));
    CHECK(back.n_strands == w.n_strands);
    REQUIRE(back.letters.size() == w.letters.size());
    for (size_t i = 0; i < w.letters.size(); ++i) {
      CHECK(back.letters[i].index == w.letters[i].index);
      CHECK(back.letters[i].sign == w.letters[i].sign);
    }
  }
}

TEST_CASE("braid words compile to adjacent-wire circuits") {
  Circuit c = braid_to_circuit(parse_braid("n=4 s1 s3^-1 s2"), "g", 3);
  CHECK(c.n_wires == 4);
  CHECK(c.d == 3);
  REQUIRE(c.ops.size() == 3);
  CHECK(c.ops[0].wires == std::vector<int>{0, 1});
  CHECK(c.ops[0].inverse == false);
  CHECK(c.ops[1].wires == std::vector<int>{2, 3});
  CHECK(c.ops[1].inverse == true);
  CHECK(c.ops[2].wires == std::vector<int>{1, 2});
  CHECK(c.ops[0].gate_id == "g");
}

TEST_CASE("circuit text renders and parses back") {
  Circuit c;
  c.n_wires = 4;
  c.d = 3;
  c.ops = {{"g", {0, 1}, false}, {"g", {2, 3}, true}, {"h", {1, 2}, false}};
  std::string text = render_circuit_text(c);
  CHECK(text.find("circuit n=4 d=3") != std::string::npos);
  CHECK(text.find("inv") != std::string::npos);
  Circuit back = parse_circuit_text(text);
  CHECK(back.n_wires == 4);
  CHECK(back.d == 3);
  REQUIRE(back.ops.size() == 3);
  CHECK(back.ops[1].inverse);
  CHECK(back.ops[2].gate_id == "h");
  CHECK(back.ops[2].wires == std::vector<int>{1, 2});
}

TEST_CASE("headerless circuit text infers the wire count") {
  Circuit c = parse_circuit_text("g 0,1\ng 2,3 inv\n", 2);
  CHECK(c.n_wires == 4);
  CHECK(c.d == 2);
  CHECK(c.ops.size() == 2);
  CHECK_THROWS_AS(parse_circuit_text("g 0,zebra\n", 2), ValidationError);
  CHECK_THROWS_AS(parse_circuit_text("circuit n=2 d=2\ng 0,5\n", 2),
                  ValidationError);
}

TEST_CASE("built family gates satisfy the braid relations densely") {
  std::mt19937_64 rng(52);
  for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4}) {
    CMatrix gate = raw_family_gate(random_params(f, rng));
    CHECK(representation_check(gate, 2, 4));
  }
}

TEST_CASE("CNOT fails the braid relation") {
  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  CHECK(!representation_check(cnot, 2, 4));
}

TEST_CASE("braid relation holds as a dense circuit identity") {
  std::mt19937_64 rng(53);
  FamilyParams pr = random_params(Family::F1, rng);
  CMatrix gate = raw_family_gate(pr);
  DenseGateTable table{{"g", gate}};
  Circuit lhs = braid_to_circuit(parse_braid("n=3 s1 s2 s1"), "g", 2);
  Circuit rhs = braid_to_circuit(parse_braid("n=3 s2 s1 s2"), "g", 2);
  CHECK(frob_dist(dense_circuit(lhs, table), dense_circuit(rhs, table)) <
        1e-10);
  Circuit far_l = braid_to_circuit(parse_braid("n=4 s1 s3"), "g", 2);
  Circuit far_r = braid_to_circuit(parse_braid("n=4 s3 s1"), "g", 2);
  CHECK(frob_dist(dense_circuit(far_l, table), dense_circuit(far_r, table)) <
        1e-12);
}

TEST_CASE("inverse letters cancel in the dense representation") {
  std::mt19937_64 rng(54);
  CMatrix gate = raw_family_gate(random_params(Family::F3, rng));
  DenseGateTable table{{"g", gate}};
  Circuit c = braid_to_circuit(parse_braid("n=3 s1 s2 s2^-1 s1^-1"), "g", 2);
  CHECK(frob_dist(dense_circuit(c, table), identity(8)) < 1e-12);
}
