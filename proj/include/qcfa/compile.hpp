#pragma once

#include "qcfa/models.hpp"

namespace qcfa {

// Constructive simulations of the weaker models by 1QCFA. Each compiler
// hits its exact state budget: quantum/classical counts are
//   dfa    -> 1 / n+1
//   pfa    -> 2 / n+1
//   mo1qfa -> n / 3
//   mm1qfa -> n / 3
//   qfacl  -> n / m+1   (m = control DFA states)
// and every output passes validate, halting check included.

/// Classical simulation: trivial quantum part, the source transitions on
/// input symbols, and a rejecting sink entered at the right marker from
/// non-accepting states.
Qcfa compile_dfa(const Dfa& d);

/// Fair coin rows become the 2x2 balanced reflection followed by the basis
/// measurement with outcomes "0"/"1" (routed to the smaller-index target
/// first); deterministic rows keep a trivial measurement. Requires strict
/// coin weights {0, 1/2, 1}; throws std::invalid_argument otherwise.
Qcfa compile_pfa(const Pfa& p);

/// Keeps the quantum evolution, measures {accept, complement} only at the
/// right marker, and books the outcome into one of 3 classical states.
Qcfa compile_mo1qfa(const Mo1qfa& m);

/// Measures {accept, reject, nonhalting} after every symbol with outcomes
/// "ca"/"cr"/"cn"; accept/reject states absorb, and the nonhalting outcome
/// at the right marker rejects.
Qcfa compile_mm1qfa(const Mm1qfa& m);

/// The classical part walks the control DFA on measurement outcomes; at
/// the right marker a non-accepting control successor falls into the sink.
/// The control DFA must have exactly the observable's labels as alphabet.
Qcfa compile_qfacl(const Qfacl& q, const Dfa& control);
Qcfa compile_qfacl(const Qfacl& q);

/// The 2x2 unitary with rows (1,1)/sqrt2 and (1,-1)/sqrt2: sends either
/// basis state to a balanced superposition, realizing one fair coin flip
/// together with coin_measurement().
CMatrix coin_operator();

/// Basis measurement {("0", |0><0|), ("1", |1><1|)}.
MeasurementFamily coin_measurement();

}  // namespace qcfa
