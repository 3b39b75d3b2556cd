#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcfa/closure.hpp"
#include "qcfa/compile.hpp"
#include "qcfa/models.hpp"
#include "qcfa/semantics.hpp"
#include "qcfa/serialize.hpp"
#include "testutil.hpp"

#include <cmath>

using namespace qcfa;

namespace {

Dfa trivial_dfa(bool accepting) {
  Dfa d;
  d.alphabet.symbols = {"a", "b"};
  d.states = {"s"};
  d.next = {{0, 0}};
  if (accepting) d.accepting = {0};
  return d;
}

}  // namespace

TEST_CASE("error budget combination") {
  CHECK(combine_error({0.0, }, {0.3}).epsilon == 0.3);
  CHECK(combine_error({0.1}, {0.1}).epsilon ==
        doctest::Approx(0.19).epsilon(1e-12));
  CHECK(combine_error({0.1}, {0.1}).epsilon == 0.1 + 0.1 - 0.1 * 0.1);
  CHECK(combine_error({0.0}, {0.1}).epsilon == 0.1);
  CHECK(combine_error({0.4}, {0.4}).meaningful() == false);
  CHECK(combine_error({0.05}, {0.05}).meaningful());
}

TEST_CASE("intersection with a neutral machine") {
  std::mt19937_64 rng(3);
  const Qcfa x = testutil::random_qcfa(2, 3, 2, rng);
  const Qcfa all = compile_dfa(trivial_dfa(true));
  const Qcfa both = intersect(x, all);
  CHECK(both.quantum_dim == x.quantum_dim * 1);
  CHECK(both.classical_states.size() == x.classical_states.size() * 2);
  for (const Word& w : testutil::all_words_up_to(4)) {
    CHECK(std::abs(qcfa_run(both, w).accept - qcfa_run(x, w).accept) <= 1e-9);
  }
}

TEST_CASE("union with an always-rejecting machine") {
  std::mt19937_64 rng(5);
  const Qcfa x = testutil::random_qcfa(2, 3, 2, rng);
  const Qcfa nothing = compile_dfa(trivial_dfa(false));
  const Qcfa either = union_of(x, nothing);
  for (const Word& w : testutil::all_words_up_to(4)) {
    CHECK(std::abs(qcfa_run(either, w).accept - qcfa_run(x, w).accept) <=
          1e-9);
  }
}

TEST_CASE("products of compiled DFAs recognize the boolean combinations") {
  std::mt19937_64 rng(7);
  const auto words = testutil::all_words_up_to(5);
  for (int rep = 0; rep < 25; ++rep) {
    const Dfa da = testutil::random_dfa(3, rng);
    const Dfa db = testutil::random_dfa(3, rng);
    const Qcfa a = compile_dfa(da);
    const Qcfa b = compile_dfa(db);
    const Qcfa inter = intersect(a, b);
    const Qcfa uni = union_of(a, b);
    CHECK(validate(inter).empty());
    CHECK(validate(uni).empty());
    CHECK(inter.quantum_dim == a.quantum_dim * b.quantum_dim);
    CHECK(inter.classical_states.size() ==
          a.classical_states.size() * b.classical_states.size());
    CHECK(uni.classical_states.size() == inter.classical_states.size());
    const Dfa inter_oracle = testutil::dfa_product(da, db, true);
    const Dfa union_oracle = testutil::dfa_product(da, db, false);
    for (const Word& w : words) {
      CHECK(qcfa_run(inter, w).accept ==
            (dfa_accepts(inter_oracle, w) ? 1.0 : 0.0));
      CHECK(qcfa_run(uni, w).accept ==
            (dfa_accepts(union_oracle, w) ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("complement swaps accept and reject exactly") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Qcfa a = testutil::random_qcfa(2, 3, 2, rng);
    const Qcfa c = complement(a);
    for (int len = 0; len <= 4; ++len) {
      const Word w = testutil::random_word(len, rng);
      const RunOutcome base = qcfa_run(a, w);
      const RunOutcome comp = qcfa_run(c, w);
      CHECK(comp.accept == base.reject);
      CHECK(comp.reject == base.accept);
      CHECK(std::abs(base.accept + base.reject - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("complement is an involution, byte for byte") {
  std::mt19937_64 rng(13);
  const Qcfa a = testutil::random_qcfa(2, 3, 2, rng);
  const Qcfa back = complement(complement(a));
  CHECK(serialize(MachineDescription{back}) == serialize(MachineDescription{a}));
}

TEST_CASE("complement of the a*b* filter") {
  const Qcfa c = complement(compile_dfa(build_ab_star_dfa()));
  for (const Word& w : testutil::all_words_up_to(6)) {
    CHECK(qcfa_run(c, w).accept == (is_ab_star(w) ? 0.0 : 1.0));
  }
}

TEST_CASE("de morgan on sampled words") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const Qcfa a = testutil::random_qcfa(2, 3, 2, rng);
    const Qcfa b = testutil::random_qcfa(2, 3, 2, rng);
    const Qcfa lhs = complement(intersect(complement(a), complement(b)));
    const Qcfa rhs = union_of(a, b);
    for (int len = 0; len <= 3; ++len) {
      const Word w = testutil::random_word(len, rng);
      CHECK(std::abs(qcfa_run(lhs, w).accept - qcfa_run(rhs, w).accept) <=
            1e-9);
    }
  }
}

TEST_CASE("joint runs factor into component runs") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 10; ++rep) {
    const Qcfa a = testutil::random_qcfa(2, 3, 2, rng);
    const Qcfa b = testutil::random_qcfa(2, 2, 2, rng);
    const Qcfa prod = intersect(a, b);
    const Word w = testutil::random_word(3, rng);
    std::vector<QcfaTraceEntry> ta, tb, tp;
    qcfa_run(a, w, &ta);
    qcfa_run(b, w, &tb);
    qcfa_run(prod, w, &tp);
    REQUIRE(ta.size() == tp.size());
    const std::size_t nb = b.classical_states.size();
    for (std::size_t step = 0; step < tp.size(); ++step) {
      for (std::size_t i = 0; i < a.classical_states.size(); ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          CHECK(std::abs(tp[step].classical_mass[i * nb + j] -
                         ta[step].classical_mass[i] *
                             tb[step].classical_mass[j]) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("joint recognition error stays within the combined budget") {
  // Machines accepting every word with probability 3/4 (one coin pair at
  // the left marker, three of four joint outcomes accept): the product
  // accepts members with probability 9/16 >= 1 - (1/4 + 1/4 - 1/16).
  const auto biased = [] {
    Qcfa a;
    a.quantum_dim = 2;
    a.alphabet.symbols = {"a"};
    a.classical_states = {"s0", "acc", "rej"};
    a.initial_quantum = CVector::Zero(2);
    a.initial_quantum(0) = 1.0;
    a.initial_classical = 0;
    a.accepting = {1};
    a.rejecting = {2};
    a.step.assign(3, std::vector<QcfaStep>(3));
    QcfaStep first;
    first.unitary = coin_operator();
    first.measurement = coin_measurement();
    first.next["0"] = 1;
    first.next["1"] = 0;
    a.step[0][a.alphabet.tape_index(kLeftMarker)] = first;
    QcfaStep stay;
    stay.unitary = CMatrix::Identity(2, 2);
    stay.measurement = trivial_measurement(2);
    stay.next[kTrivialOutcomeLabel] = 0;
    a.step[0][a.alphabet.index("a")] = stay;
    QcfaStep final_flip;
    final_flip.unitary = coin_operator();
    final_flip.measurement = coin_measurement();
    final_flip.next["0"] = 1;
    final_flip.next["1"] = 2;
    a.step[0][a.alphabet.tape_index(kRightMarker)] = final_flip;
    for (int s : {1, 2}) {
      for (int g = 0; g < 3; ++g) {
        QcfaStep keep;
        keep.unitary = CMatrix::Identity(2, 2);
        keep.measurement = trivial_measurement(2);
        keep.next[kTrivialOutcomeLabel] = s;
        a.step[s][g] = keep;
      }
    }
    return a;
  };
  const Qcfa a = biased();
  REQUIRE(validate(a).empty());
  // Accepts any word with probability 1/2 (left marker) + 1/4 (final coin).
  const double single = qcfa_run(a, word_from_string("a")).accept;
  CHECK(single == doctest::Approx(0.75).epsilon(1e-12));
  const Qcfa joint = intersect(a, a);
  const double eps = combine_error({0.25}, {0.25}).epsilon;
  for (const Word& w : testutil::all_words_up_to(3, {"a"})) {
    CHECK(qcfa_run(joint, w).accept >= 1.0 - eps - 1e-12);
  }

  // Mixed memberships: the extended noisy acceptor recognizes a* (words
  // with a b fall into its sink), the filter recognizes a*b* exactly, so
  // the intersection recognizes a* within the combined budget.
  const Qcfa wide = extend_alphabet(a, Alphabet{{"a", "b"}});
  const Qcfa filtered = intersect(wide, compile_dfa(build_ab_star_dfa()));
  const double mixed_eps = combine_error({0.25}, {0.0}).epsilon;
  CHECK(mixed_eps == 0.25);
  for (const Word& w : testutil::all_words_up_to(4)) {
    const RunOutcome out = qcfa_run(filtered, w);
    const bool member =
        std::find(w.begin(), w.end(), Symbol("b")) == w.end();
    if (member) {
      CHECK(out.accept >= 1.0 - mixed_eps - 1e-12);
    } else {
      CHECK(out.reject >= 1.0 - mixed_eps - 1e-12);
    }
  }
}

TEST_CASE("alphabet extension") {
  Pfa p;  // {a}-machine: fair coin on a, accept in s1
  p.alphabet.symbols = {"a"};
  p.states = {"s0", "s1"};
  p.accepting = {1};
  p.weight.assign(2, std::vector<std::vector<double>>(3, {0.0, 0.0}));
  for (int s = 0; s < 2; ++s) {
    p.weight[s][0] = {0.5, 0.5};
    p.weight[s][1][s] = 1.0;
    p.weight[s][2][s] = 1.0;
  }
  const Qcfa a = compile_pfa(p);

  SUBCASE("extending to the same alphabet only adds the sink") {
    const Qcfa same = extend_alphabet(a, a.alphabet);
    CHECK(validate(same).empty());
    CHECK(same.classical_states.size() == a.classical_states.size() + 1);
    for (const Word& w : testutil::all_words_up_to(4, {"a"})) {
      CHECK(std::abs(qcfa_run(same, w).accept - qcfa_run(a, w).accept) <=
            1e-12);
    }
  }
  SUBCASE("new symbols reject with certainty") {
    const Qcfa wide = extend_alphabet(a, Alphabet{{"a", "b"}});
    CHECK(validate(wide).empty());
    for (const Word& w : testutil::all_words_up_to(4)) {
      const bool has_b =
          std::find(w.begin(), w.end(), Symbol("b")) != w.end();
      const RunOutcome out = qcfa_run(wide, w);
      if (has_b) {
        CHECK(out.reject >= 1.0 - 1e-12);
      } else {
        CHECK(std::abs(out.accept - qcfa_run(a, w).accept) <= 1e-12);
      }
    }
  }
  SUBCASE("missing original symbols are rejected") {
    CHECK_THROWS_AS(extend_alphabet(a, Alphabet{{"b"}}), std::invalid_argument);
  }
  SUBCASE("union-mode products extend and stay valid") {
    std::mt19937_64 rng(23);
    const Qcfa b = testutil::random_qcfa(2, 2, 2, rng);  // over {a,b}
    const Qcfa joint =
        intersect(a, b, AlphabetMode::kUnionWithExtension);
    CHECK(validate(joint).empty());
    CHECK(joint.alphabet.symbols.size() == 2);
    // Any word with a b hits the left machine's sink: certain rejection.
    CHECK(qcfa_run(joint, word_from_string("ab")).reject >= 1.0 - 1e-12);
  }
}

TEST_CASE("empty alphabet intersection is an error") {
  std::mt19937_64 rng(29);
  const Qcfa a = testutil::random_qcfa(2, 2, 2, rng);
  Qcfa disjoint = testutil::random_qcfa(2, 2, 2, rng);
  disjoint.alphabet.symbols = {"c", "d"};  // same arity, no common symbols
  CHECK_THROWS_AS(intersect(a, disjoint), std::invalid_argument);
}
