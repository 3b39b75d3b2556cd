#include "qcfa/closure.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcfa {

ErrorBudget combine_error(ErrorBudget e1, ErrorBudget e2) {
  return {e1.epsilon + e2.epsilon - e1.epsilon * e2.epsilon};
}

namespace {

// Joint outcome labels are "left|right"; a bare '|' in a component label
// would make the pairing ambiguous.
void check_labels(const Qcfa& a) {
  for (const auto& row : a.step) {
    for (const auto& st : row) {
      for (const auto& o : st.measurement.outcomes) {
        if (o.label.find('|') != std::string::npos) {
          throw std::invalid_argument(
              "product: outcome label '" + o.label + "' contains '|'");
        }
      }
    }
  }
}

enum class ProductRule { kBothAccept, kEitherAccepts };

Qcfa build_product(const Qcfa& a, const Qcfa& b, ProductRule rule) {
  check_labels(a);
  check_labels(b);
  Qcfa out;
  // Common symbols in a's order.
  for (const auto& s : a.alphabet.symbols) {
    if (b.alphabet.contains(s)) out.alphabet.symbols.push_back(s);
  }
  if (out.alphabet.symbols.empty()) {
    throw std::invalid_argument("product: empty alphabet intersection");
  }
  const int na = static_cast<int>(a.classical_states.size());
  const int nb = static_cast<int>(b.classical_states.size());
  const auto pair_index = [nb](int i, int j) { return i * nb + j; };
  out.quantum_dim = a.quantum_dim * b.quantum_dim;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      out.classical_states.push_back("(" + a.classical_states[i] + "," +
                                     b.classical_states[j] + ")");
    }
  }
  out.initial_quantum = tensor(a.initial_quantum, b.initial_quantum);
  out.initial_classical = pair_index(a.initial_classical, b.initial_classical);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      const bool ia = a.accepting.count(i) > 0;
      const bool ir = a.rejecting.count(i) > 0;
      const bool ja = b.accepting.count(j) > 0;
      const bool jr = b.rejecting.count(j) > 0;
      const int idx = pair_index(i, j);
      if (rule == ProductRule::kBothAccept) {
        if (ia && ja) out.accepting.insert(idx);
        if ((ia && jr) || (ir && ja) || (ir && jr)) out.rejecting.insert(idx);
      } else {
        if ((ia && ja) || (ia && jr) || (ir && ja)) out.accepting.insert(idx);
        if (ir && jr) out.rejecting.insert(idx);
      }
    }
  }
  out.step.assign(out.classical_states.size(),
                  std::vector<QcfaStep>(out.alphabet.tape_count()));
  for (int g = 0; g < out.alphabet.tape_count(); ++g) {
    const Symbol sym = out.alphabet.tape_symbol(g);
    const int ga = a.alphabet.tape_index(sym);
    const int gb = b.alphabet.tape_index(sym);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) {
        const QcfaStep& sa = a.step[i][ga];
        const QcfaStep& sb = b.step[j][gb];
        QcfaStep st;
        st.unitary = tensor(sa.unitary, sb.unitary);
        for (const auto& oa : sa.measurement.outcomes) {
          for (const auto& ob : sb.measurement.outcomes) {
            st.measurement.outcomes.push_back(
                {oa.label + "|" + ob.label,
                 tensor(oa.projector, ob.projector)});
            st.next[oa.label + "|" + ob.label] =
                pair_index(sa.next.at(oa.label), sb.next.at(ob.label));
          }
        }
        if (!is_valid_measurement(st.measurement, kTol)) {
          throw std::runtime_error(
              "product: joint measurement family failed revalidation");
        }
        out.step[pair_index(i, j)][g] = std::move(st);
      }
    }
  }
  return out;
}

Qcfa product_with_mode(const Qcfa& a, const Qcfa& b, AlphabetMode mode,
                       ProductRule rule) {
  if (mode == AlphabetMode::kIntersectAlphabets) {
    return build_product(a, b, rule);
  }
  Alphabet target = a.alphabet;
  for (const auto& s : b.alphabet.symbols) {
    if (!target.contains(s)) target.symbols.push_back(s);
  }
  return build_product(extend_alphabet(a, target), extend_alphabet(b, target),
                       rule);
}

}  // namespace

Qcfa intersect(const Qcfa& a, const Qcfa& b, AlphabetMode mode) {
  return product_with_mode(a, b, mode, ProductRule::kBothAccept);
}

Qcfa union_of(const Qcfa& a, const Qcfa& b, AlphabetMode mode) {
  return product_with_mode(a, b, mode, ProductRule::kEitherAccepts);
}

Qcfa complement(const Qcfa& a) {
  Qcfa out = a;
  std::swap(out.accepting, out.rejecting);
  return out;
}

Qcfa extend_alphabet(const Qcfa& a, const Alphabet& target) {
  for (const auto& s : a.alphabet.symbols) {
    if (!target.contains(s)) {
      throw std::invalid_argument(
          "extend_alphabet: target alphabet is missing original symbol '" +
          s + "'");
    }
  }
  Qcfa out;
  out.quantum_dim = a.quantum_dim;
  out.alphabet = target;
  out.classical_states = a.classical_states;
  std::string sink_name = "s_ext";
  int suffix = 1;
  while (std::find(out.classical_states.begin(), out.classical_states.end(),
                   sink_name) != out.classical_states.end()) {
    sink_name = "s_ext" + std::to_string(suffix++);
  }
  const int sink = static_cast<int>(out.classical_states.size());
  out.classical_states.push_back(sink_name);
  out.initial_quantum = a.initial_quantum;
  out.initial_classical = a.initial_classical;
  out.accepting = a.accepting;
  out.rejecting = a.rejecting;
  out.rejecting.insert(sink);
  out.step.assign(out.classical_states.size(),
                  std::vector<QcfaStep>(out.alphabet.tape_count()));
  const int n = static_cast<int>(a.classical_states.size());
  for (int g = 0; g < out.alphabet.tape_count(); ++g) {
    const Symbol sym = out.alphabet.tape_symbol(g);
    const bool original = Alphabet::is_marker(sym) || a.alphabet.contains(sym);
    for (int s = 0; s < n; ++s) {
      if (original) {
        out.step[s][g] = a.step[s][a.alphabet.tape_index(sym)];
      } else {
        QcfaStep st;
        st.unitary = CMatrix::Identity(a.quantum_dim, a.quantum_dim);
        st.measurement = trivial_measurement(a.quantum_dim);
        st.next[kTrivialOutcomeLabel] = sink;
        out.step[s][g] = st;
      }
    }
    QcfaStep loop;
    loop.unitary = CMatrix::Identity(a.quantum_dim, a.quantum_dim);
    loop.measurement = trivial_measurement(a.quantum_dim);
    loop.next[kTrivialOutcomeLabel] = sink;
    out.step[sink][g] = loop;
  }
  return out;
}

}  // namespace qcfa
