#pragma once

#include "qcfa/analysis.hpp"
#include "qcfa/models.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcfa {

// Parameters of the track-rotation recognizer for the length-divisibility
// language: d planar tracks rotated by 2*pi*k_j/m per input symbol inside
// one superposition, taken to the t-th tensor power. The acceptance
// probability of a length-i word is
//     ((1/d) * sum_j cos(2*pi*k_j*i/m)) ^ (2t),
// exactly 1 whenever m divides i.
struct DivisibilityParams {
  int modulus = 0;              // m, prime
  std::vector<int> tracks;      // k_1 < ... < k_d
  int copies = 1;               // t, tensor-power count
  double epsilon = 0.0;         // target error bound
  std::uint64_t seed = 0;
  // max over residues i in 1..m-1 of the squared mean cosine above,
  // evaluated exhaustively; the machine's one-sided error is this to the
  // t-th power.
  double residue_bound = 1.0;

  int track_count() const { return static_cast<int>(tracks.size()); }
  double error_bound() const;
  Eigen::Index quantum_dim() const;  // (2d)^t
};

struct SearchBudgetExceeded : std::runtime_error {
  DivisibilityParams best;
  explicit SearchBudgetExceeded(const std::string& what,
                                DivisibilityParams best_found)
      : std::runtime_error(what), best(std::move(best_found)) {}
};

/// Exhaustive residue evaluation: max over i in 1..m-1 of the squared mean
/// cosine for the given track set. This is the correctness oracle for the
/// search; nothing rides on a probabilistic argument.
double worst_residue_value(int m, const std::vector<int>& tracks);

/// Closed-form acceptance probability for a word of the given length.
double closed_form_accept_prob(const DivisibilityParams& p, long length);

/// Deterministic search for track sets: starts at d = ceil(2*ln m) tracks,
/// evaluates candidate sets exhaustively over residues (complete
/// enumeration of subsets when feasible, seeded sampling otherwise), picks
/// the smallest t <= 3 with residue_bound^t <= epsilon, and grows d when no
/// t works. Tracks are drawn from {1..m-1}; for m = 2 the rotation by pi is
/// a global phase, so an identity track (k = 0) joins the universe — see
/// the per-candidate cosine bound, which is still verified exhaustively.
/// Throws SearchBudgetExceeded (carrying the best candidate) when every
/// admissible d fails.
DivisibilityParams search_divisibility_params(int m, double epsilon,
                                              std::uint64_t seed);

/// Measure-once machine realizing the closed form: block rotations per
/// input symbol (identical for every letter; only length matters), a
/// basis-aligning unitary at the right marker, and a rank-one accepting
/// projector, all in the t-th tensor power.
Mo1qfa build_divisibility_mo1qfa(const DivisibilityParams& p);

/// The 12-classical-state recognizer for the words in a*b* of positive
/// length divisible by m: the compiled a*b* filter (4 classical states,
/// exact) intersected with the compiled divisibility machine (3 classical
/// states, one-sided error epsilon).
Qcfa build_lm_qcfa(const DivisibilityParams& p);
Qcfa build_lm_qcfa(int m, double epsilon, std::uint64_t seed);

struct LmExperimentRow {
  Word word;
  bool member = false;
  double accept_prob = 0.0;
  double margin = 0.0;  // slack against the error bound; negative = violated
};

struct LmExperimentReport {
  int m = 0;
  double epsilon = 0.0;
  int max_len = 0;
  std::uint64_t seed = 0;
  DivisibilityParams params;
  Eigen::Index quantum_dim = 0;
  int classical_states = 0;
  int dfa_states = 0;          // reference DFA, 2m+2
  int minimal_dfa_states = 0;  // after minimization (equal when minimal)
  std::optional<ForbiddenConstructionWitness> forbidden;
  std::vector<std::string> forbidden_names;  // s, t as state names
  std::vector<LmExperimentRow> rows;
  double worst_member_margin = 0.0;
  Word worst_member_word;
  double worst_nonmember_margin = 0.0;
  Word worst_nonmember_word;
  int violations = 0;
  // The product construction accepts the empty word even though the
  // language excludes it; surfaced here instead of patching the machine.
  double empty_word_accept = 0.0;
};

/// Sweeps every word in a*b* of length 1..max_len plus 200 seeded random
/// words outside a*b*, and attaches the reference-DFA analysis. Throws
/// std::invalid_argument for non-prime m; search failures propagate.
LmExperimentReport run_lm_experiment(int m, double epsilon, int max_len,
                                     std::uint64_t seed);

/// CSV columns: word,length,member,accept_prob,margin.
void write_experiment_csv(const LmExperimentReport& report,
                          const std::string& path);

/// JSON summary: parameters, dimensions, counts, witnesses, margins, and
/// the two known limits quoted as context (the minimum 1PFA size and the
/// measure-many error floor), which this experiment does not re-prove.
void write_experiment_json(const LmExperimentReport& report,
                           const std::string& path);

bool is_prime(int n);

}  // namespace qcfa
