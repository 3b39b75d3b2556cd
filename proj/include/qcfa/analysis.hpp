#pragma once

#include "qcfa/models.hpp"

#include <optional>
#include <vector>

namespace qcfa {

struct MinimizationResult {
  Dfa dfa;
  // Old state index -> new state index; -1 for pruned unreachable states.
  std::vector<int> state_map;
};

/// Reachability pruning followed by Moore partition refinement. The output
/// is minimal and language-equivalent; merged states take the name of the
/// lowest-index representative.
MinimizationResult minimize_dfa(const Dfa& d);

// A word that tells two states apart: exactly one of the runs starting at
// s and t ends accepting.
struct DistinguishabilityCertificate {
  int s = 0;
  int t = 0;
  Word witness;
};

/// Shortest distinguishing word (ties broken by alphabet order) via BFS
/// over state pairs, or nullopt when s and t are equivalent.
std::optional<DistinguishabilityCertificate> distinguish(const Dfa& d, int s,
                                                         int t);

// States s != t and a word x with s -x-> t and t -x-> t, where both an
// accepting and a non-accepting state are reachable from t. Presence of
// this pattern in a minimal DFA certifies that no measure-many quantum
// automaton recognizes the language below error 7/9.
struct ForbiddenConstructionWitness {
  int s = 0;
  int t = 0;
  Word word;
};

/// Searches all ordered state pairs in the synchronized product for the
/// pattern above; expects a minimal DFA (minimize first otherwise).
/// Returns the witness with the shortest word, ties broken by alphabet
/// order and then by (s, t) state order.
std::optional<ForbiddenConstructionWitness> find_forbidden_construction(
    const Dfa& d);

/// Replays a candidate witness against all four pattern conditions.
bool check_forbidden_witness(const Dfa& d, int s, int t, const Word& x);

}  // namespace qcfa
