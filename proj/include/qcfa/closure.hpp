#pragma once

#include "qcfa/models.hpp"

namespace qcfa {

// How product constructions reconcile differing input alphabets: keep the
// common symbols, or extend both machines to the union (each extension
// adds one rejecting sink that swallows the foreign symbols).
enum class AlphabetMode { kIntersectAlphabets, kUnionWithExtension };

struct ErrorBudget {
  double epsilon = 0.0;

  /// Bounded-error recognition only means something below 1/2.
  bool meaningful() const { return epsilon >= 0.0 && epsilon < 0.5; }
};

/// Combined budget e1 + e2 - e1*e2 of running two machines jointly.
ErrorBudget combine_error(ErrorBudget e1, ErrorBudget e2);

/// Product machine accepting when both components accept. Quantum parts
/// combine by Kronecker product, measurements outcome-pairwise (labels
/// joined as "c1|c2"), classical parts componentwise. Joint measurement
/// families are revalidated rather than assumed complete.
Qcfa intersect(const Qcfa& a, const Qcfa& b,
               AlphabetMode mode = AlphabetMode::kIntersectAlphabets);

/// Same product with accepting/rejecting roles rearranged: accepts when
/// either component accepts, rejects only when both reject.
Qcfa union_of(const Qcfa& a, const Qcfa& b,
              AlphabetMode mode = AlphabetMode::kIntersectAlphabets);

/// Swaps the accepting and rejecting state sets; everything else is
/// shared, so accept/reject probabilities swap exactly and the operation
/// is an involution.
Qcfa complement(const Qcfa& a);

/// Extends the input alphabet: adds one absorbing rejecting sink and
/// routes every new symbol there with identity quantum action. The target
/// must contain the machine's alphabet.
Qcfa extend_alphabet(const Qcfa& a, const Alphabet& target);

}  // namespace qcfa
