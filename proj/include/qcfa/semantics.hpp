#pragma once

#include "qcfa/models.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qcfa {

// Result of a probabilistic run. For halting-complete models (DFA, 1PFA,
// 1QCFA, 1QFACL) accept + reject = 1 up to rounding; a measure-many run
// reports the mass that never halted as residual instead of folding it
// into reject.
struct RunOutcome {
  double accept = 0.0;
  double reject = 0.0;
  double residual = 0.0;
};

// Per-symbol trace entry of a 1QCFA run: the density mass sitting in each
// classical state after the symbol was processed.
struct QcfaTraceEntry {
  Symbol symbol;
  std::vector<double> classical_mass;
};

struct BranchCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A run left more than kTol of mass outside accepting/rejecting states
// after the right marker; validate() flags such machines as non-halting.
struct NonHaltingRun : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBranchCap = 1'000'000;

/// True iff the unique run ends in the accepting set. Throws on symbols
/// outside the alphabet.
bool dfa_accepts(const Dfa& d, const Word& w);

/// Final state-distribution mass on accepting states after applying the
/// stochastic matrices for left marker, word, right marker in order.
double pfa_accept_prob(const Pfa& p, const Word& w);

/// Squared norm of the accepting projection of the final state.
double mo1qfa_accept_prob(const Mo1qfa& m, const Word& w);

/// Measure-many run: after every tape symbol the accept/reject projections
/// halt and the non-halting projection continues unnormalized.
RunOutcome mm1qfa_run(const Mm1qfa& m, const Word& w);

/// Control-language acceptance via dynamic programming over pairs of
/// (control state, unnormalized density matrix); equals the explicit sum
/// over accepted outcome strings.
double qfacl_accept_prob(const Qfacl& q, const Word& w);

/// Exact 1QCFA run: evolves one unnormalized density matrix per classical
/// state (polynomial in word length). Throws NonHaltingRun when more than
/// kTol of mass ends outside accepting/rejecting states. When trace is
/// non-null, appends one entry per tape symbol.
RunOutcome qcfa_run(const Qcfa& a, const Word& w,
                    std::vector<QcfaTraceEntry>* trace = nullptr);

/// Independent oracle for qcfa_run: enumerates every measurement-outcome
/// sequence with pure-state collapse, pruning branches below 1e-15
/// probability. Throws BranchCapExceeded when the live branch count passes
/// the cap. branches_out, when non-null, receives the final branch count.
RunOutcome qcfa_run_branching(const Qcfa& a, const Word& w,
                              std::size_t branch_cap = kDefaultBranchCap,
                              std::size_t* branches_out = nullptr);

struct RecognitionCheck {
  bool ok = false;
  Word worst_word;
  double worst_margin = 0.0;  // negative when the bound is violated
};

/// Bounded-error recognition sweep: every member must accept with
/// probability >= 1-epsilon and every non-member reject with probability
/// >= 1-epsilon. Reports the word with the smallest margin.
RecognitionCheck recognizes_with_error(
    const Qcfa& a, const std::function<bool(const Word&)>& membership,
    const std::vector<Word>& words, double epsilon);

}  // namespace qcfa
