#pragma once

#include "qcfa/linalg.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcfa {

// File-system failures (unreadable/unwritable paths); kept apart from
// domain violations so the CLI can map them to distinct exit codes.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input symbols are short strings; every machine in this repo uses
// single-character symbols but outcome-label alphabets (control languages)
// need more.
using Symbol = std::string;
using Word = std::vector<Symbol>;

// Reserved tape end-markers. Every engine processes the tape as
// left-marker, input word, right-marker, in that order.
inline const Symbol kLeftMarker = "^";
inline const Symbol kRightMarker = "$";

/// One symbol per character; the inverse of word_to_string for the
/// single-character alphabets used throughout.
Word word_from_string(const std::string& s);
std::string word_to_string(const Word& w);

struct Alphabet {
  std::vector<Symbol> symbols;

  bool contains(const Symbol& s) const;
  /// Index of an input symbol; throws std::invalid_argument when absent.
  int index(const Symbol& s) const;
  /// Tape index: input symbols first, then left marker, then right marker.
  int tape_index(const Symbol& s) const;
  int tape_count() const { return static_cast<int>(symbols.size()) + 2; }
  /// Symbol for a tape index (inverse of tape_index).
  Symbol tape_symbol(int idx) const;

  static bool is_marker(const Symbol& s) {
    return s == kLeftMarker || s == kRightMarker;
  }
};

/// The full tape for a word: left marker, word, right marker.
std::vector<Symbol> tape_of(const Word& w);

// ---------------------------------------------------------------------------
// The six machine kinds.
// ---------------------------------------------------------------------------

struct Dfa {
  std::vector<std::string> states;
  Alphabet alphabet;
  // next[state][symbol index] -> state; -1 marks a missing transition
  // (reported by validate, never produced by the builders).
  std::vector<std::vector<int>> next;
  int initial = 0;
  std::set<int> accepting;

  int state_index(const std::string& name) const;  // -1 when absent
  int step(int state, const Symbol& s) const;
  /// Extended transition: run the word from a given state.
  int run_from(int state, const Word& w) const;
};

// One-way probabilistic automaton. Transitions happen on the end-markers
// too. With strict_coins set, every row is either deterministic or a fair
// coin (weights in {0, 1/2, 1}); the general stochastic class sits behind
// the flag.
struct Pfa {
  std::vector<std::string> states;
  Alphabet alphabet;
  // weight[state][tape symbol][target state] = transition probability
  std::vector<std::vector<std::vector<double>>> weight;
  int initial = 0;
  std::set<int> accepting;
  bool strict_coins = true;
};

// Measure-once quantum automaton: unitaries per tape symbol, one projective
// measurement after the right marker.
struct Mo1qfa {
  Eigen::Index dim = 0;
  Alphabet alphabet;
  std::vector<CMatrix> unitary;  // indexed by tape symbol
  CVector initial;
  CMatrix accept_projector;
};

// Measure-many quantum automaton: measures {accept, reject, continue}
// after every tape symbol.
struct Mm1qfa {
  Eigen::Index dim = 0;
  Alphabet alphabet;
  std::vector<CMatrix> unitary;
  CVector initial;
  CMatrix accept_projector;
  CMatrix reject_projector;

  CMatrix nonhalting_projector() const;
};

// Quantum automaton with a control language: one fixed observable measured
// after every tape symbol; the outcome string must land in the control
// DFA's language. The control alphabet is the observable's label set.
struct Qfacl {
  Eigen::Index dim = 0;
  Alphabet alphabet;
  std::vector<CMatrix> unitary;
  CVector initial;
  MeasurementFamily observable;
  Dfa control;
};

// Per (classical state, tape symbol) step of a 1QCFA: apply the unitary,
// measure, then move classically on the observed label.
struct QcfaStep {
  CMatrix unitary;
  MeasurementFamily measurement;
  std::map<std::string, int> next;  // outcome label -> classical state
};

struct Qcfa {
  Eigen::Index quantum_dim = 0;
  std::vector<std::string> classical_states;
  Alphabet alphabet;
  std::vector<std::vector<QcfaStep>> step;  // [state][tape symbol]
  CVector initial_quantum;
  int initial_classical = 0;
  std::set<int> accepting;
  std::set<int> rejecting;

  int state_index(const std::string& name) const;  // -1 when absent
};

using MachineDescription = std::variant<Dfa, Pfa, Mo1qfa, Mm1qfa, Qfacl, Qcfa>;

/// Kind tag: "dfa", "pfa", "mo1qfa", "mm1qfa", "qfacl" or "qcfa".
std::string kind_of(const MachineDescription& m);

// ---------------------------------------------------------------------------
// Validation. Violations are data, not failures.
// ---------------------------------------------------------------------------

struct Violation {
  std::string path;     // location of the offending element
  std::string message;  // which invariant broke
};

using ValidationReport = std::vector<Violation>;

std::string to_string(const ValidationReport& report);

ValidationReport validate(const Dfa& d);
ValidationReport validate(const Pfa& p);
ValidationReport validate(const Mo1qfa& m);
ValidationReport validate(const Mm1qfa& m);
ValidationReport validate(const Qfacl& q);
// Includes the halting check: every classical state reachable after the
// right marker (over the outcome-label reachability graph) must be
// accepting or rejecting.
ValidationReport validate(const Qcfa& a);
ValidationReport validate(const MachineDescription& m);

// ---------------------------------------------------------------------------
// Reference automata and the ground-truth language predicates.
// ---------------------------------------------------------------------------

/// The 2m+2 state DFA for the words in a*b* whose length is a positive
/// multiple of m: an a-cycle p0..pm (pm accepting, wrapping to p1), b-edges
/// into a b-cycle q1..qm (qm accepting), and an absorbing dead state r.
Dfa build_lm_dfa(int m);

/// Three-state DFA for a*b*: accepting p0/p1, absorbing dead state r.
Dfa build_ab_star_dfa();

bool is_ab_star(const Word& w);

/// Ground truth for the succinctness experiments: w in a*b*, |w| > 0 and
/// |w| divisible by m. The empty word is not a member.
bool is_lm_member(const Word& w, int m);

}  // namespace qcfa
