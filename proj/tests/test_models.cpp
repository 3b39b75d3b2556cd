#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcfa/compile.hpp"
#include "qcfa/models.hpp"
#include "qcfa/semantics.hpp"
#include "testutil.hpp"

using namespace qcfa;

TEST_CASE("length-divisibility DFA structure") {
  const Dfa d3 = build_lm_dfa(3);
  CHECK(d3.states.size() == 8);
  CHECK(validate(d3).empty());
  CHECK(dfa_accepts(d3, word_from_string("aaa")));
  CHECK(dfa_accepts(d3, word_from_string("abb")));
  CHECK(dfa_accepts(d3, word_from_string("bbb")));
  CHECK_FALSE(dfa_accepts(d3, {}));
  CHECK_FALSE(dfa_accepts(d3, word_from_string("a")));
  CHECK_FALSE(dfa_accepts(d3, word_from_string("ba")));

  const Dfa d1 = build_lm_dfa(1);
  CHECK(d1.states.size() == 4);
  CHECK(dfa_accepts(d1, word_from_string("a")));
  CHECK(dfa_accepts(d1, word_from_string("b")));
  CHECK(dfa_accepts(d1, word_from_string("ab")));

  CHECK_THROWS_AS(build_lm_dfa(0), std::invalid_argument);
}

TEST_CASE("any a-after-b falls into the dead state") {
  for (int m : {1, 2, 3, 5}) {
    const Dfa d = build_lm_dfa(m);
    const int r = d.state_index("r");
    REQUIRE(r >= 0);
    CHECK(d.run_from(d.initial, word_from_string("ba")) == r);
    CHECK(d.run_from(r, word_from_string("a")) == r);
    CHECK(d.run_from(r, word_from_string("b")) == r);
  }
}

TEST_CASE("divisibility DFA matches the membership predicate") {
  for (int m : {1, 2, 3, 4, 5}) {
    const Dfa d = build_lm_dfa(m);
    CHECK(d.states.size() == static_cast<std::size_t>(2 * m + 2));
    CHECK(validate(d).empty());
    for (const Word& w : testutil::all_words_up_to(3 * m)) {
      CAPTURE(m);
      CAPTURE(word_to_string(w));
      CHECK(dfa_accepts(d, w) == is_lm_member(w, m));
    }
  }
}

TEST_CASE("a*b* DFA") {
  const Dfa d = build_ab_star_dfa();
  CHECK(d.states.size() == 3);
  CHECK(validate(d).empty());
  CHECK(dfa_accepts(d, {}));
  CHECK(dfa_accepts(d, word_from_string("aabb")));
  CHECK_FALSE(dfa_accepts(d, word_from_string("aba")));
  for (const Word& w : testutil::all_words_up_to(6)) {
    CHECK(dfa_accepts(d, w) == is_ab_star(w));
  }
}

TEST_CASE("pfa row stochasticity violations are reported with a path") {
  std::mt19937_64 rng(5);
  Pfa p = testutil::random_strict_pfa(3, rng);
  CHECK(validate(p).empty());
  p.weight[1][0].assign(p.states.size(), 0.0);
  p.weight[1][0][0] = 0.75;
  const ValidationReport report = validate(p);
  REQUIRE_FALSE(report.empty());
  bool found = false;
  for (const auto& v : report) {
    if (v.message.find("row stochasticity") != std::string::npos &&
        v.path.find("s1") != std::string::npos) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("strict mode rejects general weights, general mode accepts them") {
  std::mt19937_64 rng(6);
  Pfa p = testutil::random_strict_pfa(2, rng);
  p.weight[0][0].assign(2, 0.0);
  p.weight[0][0][0] = 0.25;
  p.weight[0][0][1] = 0.75;
  CHECK_FALSE(validate(p).empty());
  p.strict_coins = false;
  CHECK(validate(p).empty());
}

TEST_CASE("dropping the end-marker routing makes a qcfa non-halting") {
  Qcfa a = compile_dfa(build_ab_star_dfa());
  CHECK(validate(a).empty());
  // Re-route the right-marker step of the dead state back to itself.
  const int r = a.state_index("r");
  const int g = a.alphabet.tape_index(kRightMarker);
  REQUIRE(r >= 0);
  a.step[r][g].next[kTrivialOutcomeLabel] = r;
  const ValidationReport report = validate(a);
  REQUIRE_FALSE(report.empty());
  CHECK(report.front().message.find("non-halting") != std::string::npos);
}

TEST_CASE("qcfa validation catches structural defects") {
  Qcfa a = compile_dfa(build_ab_star_dfa());

  SUBCASE("non-unitary step") {
    a.step[0][0].unitary(0, 0) = 2.0;
    bool found = false;
    for (const auto& v : validate(a)) {
      if (v.message == "not unitary") found = true;
    }
    CHECK(found);
  }
  SUBCASE("overlapping accepting and rejecting sets") {
    a.rejecting.insert(*a.accepting.begin());
    CHECK_FALSE(validate(a).empty());
  }
  SUBCASE("missing outcome move") {
    a.step[0][0].next.clear();
    bool found = false;
    for (const auto& v : validate(a)) {
      if (v.message.find("no move for outcome") != std::string::npos) {
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("unnormalized initial state") {
    a.initial_quantum *= 2.0;
    bool found = false;
    for (const auto& v : validate(a)) {
      if (v.path == "initial_quantum") found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("validate is pure and idempotent") {
  const Dfa d = build_lm_dfa(3);
  const MachineDescription m{d};
  const ValidationReport first = validate(m);
  const ValidationReport second = validate(m);
  CHECK(first.empty());
  CHECK(second.empty());
  CHECK(kind_of(m) == "dfa");
}

TEST_CASE("alphabet rejects markers and duplicates") {
  Dfa d = build_ab_star_dfa();
  d.alphabet.symbols.push_back("$");
  CHECK_FALSE(validate(d).empty());

  Dfa dup = build_ab_star_dfa();
  dup.alphabet.symbols = {"a", "a"};
  CHECK_FALSE(validate(dup).empty());
}

TEST_CASE("symbols outside the alphabet are rejected by the engines") {
  const Dfa d = build_ab_star_dfa();
  CHECK_THROWS_AS(dfa_accepts(d, word_from_string("ac")),
                  std::invalid_argument);
}
