#include "qcfa/compile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcfa {

namespace {

std::string fresh_name(const std::vector<std::string>& taken,
                       const std::string& base) {
  std::string name = base;
  int suffix = 1;
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) {
    name = base + std::to_string(suffix++);
  }
  return name;
}

QcfaStep identity_step(Eigen::Index dim, int target) {
  QcfaStep st;
  st.unitary = CMatrix::Identity(dim, dim);
  st.measurement = trivial_measurement(dim);
  st.next[kTrivialOutcomeLabel] = target;
  return st;
}

// Absorbing row for states that are only entered at the right marker.
void fill_absorbing(Qcfa& a, int state) {
  for (int g = 0; g < a.alphabet.tape_count(); ++g) {
    a.step[state][g] = identity_step(a.quantum_dim, state);
  }
}

}  // namespace

CMatrix coin_operator() {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix u(2, 2);
  u << s, s, s, -s;
  return u;
}

MeasurementFamily coin_measurement() {
  MeasurementFamily m;
  CMatrix p0 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CMatrix p1 = CMatrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  m.outcomes.push_back({"0", p0});
  m.outcomes.push_back({"1", p1});
  return m;
}

Qcfa compile_dfa(const Dfa& d) {
  Qcfa a;
  a.quantum_dim = 1;
  a.alphabet = d.alphabet;
  a.classical_states = d.states;
  const int sink = static_cast<int>(a.classical_states.size());
  a.classical_states.push_back(fresh_name(a.classical_states, "s_r"));
  a.initial_quantum = CVector::Ones(1);
  a.initial_classical = d.initial;
  a.accepting = d.accepting;
  a.rejecting = {sink};
  a.step.assign(a.classical_states.size(),
                std::vector<QcfaStep>(a.alphabet.tape_count()));
  const int n = static_cast<int>(d.states.size());
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < a.alphabet.tape_count(); ++g) {
      const Symbol sym = a.alphabet.tape_symbol(g);
      int target;
      if (sym == kLeftMarker) {
        target = s;
      } else if (sym == kRightMarker) {
        target = d.accepting.count(s) ? s : sink;
      } else {
        target = d.next[s][g];
      }
      a.step[s][g] = identity_step(1, target);
    }
  }
  fill_absorbing(a, sink);
  return a;
}

Qcfa compile_pfa(const Pfa& p) {
  Qcfa a;
  a.quantum_dim = 2;
  a.alphabet = p.alphabet;
  a.classical_states = p.states;
  const int sink = static_cast<int>(a.classical_states.size());
  a.classical_states.push_back(fresh_name(a.classical_states, "s_r"));
  a.initial_quantum = CVector::Zero(2);
  a.initial_quantum(0) = 1.0;
  a.initial_classical = p.initial;
  a.accepting = p.accepting;
  a.rejecting = {sink};
  a.step.assign(a.classical_states.size(),
                std::vector<QcfaStep>(a.alphabet.tape_count()));

  const int n = static_cast<int>(p.states.size());
  // At the right marker the executed transition also decides acceptance.
  const auto route = [&](int target, const Symbol& sym) {
    if (sym == kRightMarker) {
      return p.accepting.count(target) ? target : sink;
    }
    return target;
  };
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < a.alphabet.tape_count(); ++g) {
      const Symbol sym = a.alphabet.tape_symbol(g);
      const auto& row = p.weight[s][g];
      std::vector<int> half_targets;
      int sure_target = -1;
      for (int t = 0; t < n; ++t) {
        if (row[t] == 1.0) {
          sure_target = t;
        } else if (row[t] == 0.5) {
          half_targets.push_back(t);
        } else if (row[t] != 0.0) {
          throw std::invalid_argument(
              "compile_pfa: weight outside {0, 1/2, 1} at state '" +
              p.states[s] + "', symbol '" + sym +
              "'; only the strict coin-tossing class compiles (enable the "
              "general-stochastic flag for simulation only)");
        }
      }
      QcfaStep st;
      if (sure_target >= 0 && half_targets.empty()) {
        st = identity_step(2, route(sure_target, sym));
      } else if (sure_target < 0 && half_targets.size() == 2) {
        st.unitary = coin_operator();
        st.measurement = coin_measurement();
        st.next["0"] = route(half_targets[0], sym);
        st.next["1"] = route(half_targets[1], sym);
      } else {
        throw std::invalid_argument(
            "compile_pfa: row at state '" + p.states[s] + "', symbol '" +
            sym + "' is neither deterministic nor a single fair coin");
      }
      a.step[s][g] = st;
    }
  }
  fill_absorbing(a, sink);
  return a;
}

Qcfa compile_mo1qfa(const Mo1qfa& m) {
  Qcfa a;
  a.quantum_dim = m.dim;
  a.alphabet = m.alphabet;
  a.classical_states = {"s0", "s_acc", "s_rej"};
  a.initial_quantum = m.initial;
  a.initial_classical = 0;
  a.accepting = {1};
  a.rejecting = {2};
  a.step.assign(3, std::vector<QcfaStep>(a.alphabet.tape_count()));
  MeasurementFamily final_meas;
  final_meas.outcomes.push_back({"ca", m.accept_projector});
  final_meas.outcomes.push_back(
      {"cr", CMatrix::Identity(m.dim, m.dim) - m.accept_projector});
  for (int g = 0; g < a.alphabet.tape_count(); ++g) {
    const Symbol sym = a.alphabet.tape_symbol(g);
    QcfaStep st;
    st.unitary = m.unitary[g];
    if (sym == kRightMarker) {
      st.measurement = final_meas;
      st.next["ca"] = 1;
      st.next["cr"] = 2;
    } else {
      st.measurement = trivial_measurement(m.dim);
      st.next[kTrivialOutcomeLabel] = 0;
    }
    a.step[0][g] = st;
  }
  fill_absorbing(a, 1);
  fill_absorbing(a, 2);
  return a;
}

Qcfa compile_mm1qfa(const Mm1qfa& m) {
  Qcfa a;
  a.quantum_dim = m.dim;
  a.alphabet = m.alphabet;
  a.classical_states = {"s0", "s_acc", "s_rej"};
  a.initial_quantum = m.initial;
  a.initial_classical = 0;
  a.accepting = {1};
  a.rejecting = {2};
  a.step.assign(3, std::vector<QcfaStep>(a.alphabet.tape_count()));
  MeasurementFamily meas;
  meas.outcomes.push_back({"ca", m.accept_projector});
  meas.outcomes.push_back({"cr", m.reject_projector});
  meas.outcomes.push_back({"cn", m.nonhalting_projector()});
  for (int g = 0; g < a.alphabet.tape_count(); ++g) {
    const Symbol sym = a.alphabet.tape_symbol(g);
    QcfaStep st;
    st.unitary = m.unitary[g];
    st.measurement = meas;
    st.next["ca"] = 1;
    st.next["cr"] = 2;
    // Unfinished mass at the right marker counts as rejection.
    st.next["cn"] = sym == kRightMarker ? 2 : 0;
    a.step[0][g] = st;
  }
  fill_absorbing(a, 1);
  fill_absorbing(a, 2);
  return a;
}

Qcfa compile_qfacl(const Qfacl& q, const Dfa& control) {
  std::set<Symbol> labels;
  for (const auto& o : q.observable.outcomes) labels.insert(o.label);
  std::set<Symbol> control_syms(control.alphabet.symbols.begin(),
                                control.alphabet.symbols.end());
  if (labels != control_syms) {
    throw std::invalid_argument(
        "compile_qfacl: control DFA alphabet does not equal the "
        "observable's outcome labels");
  }
  Qcfa a;
  a.quantum_dim = q.dim;
  a.alphabet = q.alphabet;
  a.classical_states = control.states;
  const int sink = static_cast<int>(a.classical_states.size());
  a.classical_states.push_back(fresh_name(a.classical_states, "s_r"));
  a.initial_quantum = q.initial;
  a.initial_classical = control.initial;
  a.accepting = control.accepting;
  a.rejecting = {sink};
  a.step.assign(a.classical_states.size(),
                std::vector<QcfaStep>(a.alphabet.tape_count()));
  const int n = static_cast<int>(control.states.size());
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < a.alphabet.tape_count(); ++g) {
      const Symbol sym = a.alphabet.tape_symbol(g);
      QcfaStep st;
      st.unitary = q.unitary[g];
      st.measurement = q.observable;
      for (const auto& o : q.observable.outcomes) {
        const int t = control.step(s, o.label);
        st.next[o.label] = sym == kRightMarker && !control.accepting.count(t)
                               ? sink
                               : t;
      }
      a.step[s][g] = st;
    }
  }
  fill_absorbing(a, sink);
  return a;
}

Qcfa compile_qfacl(const Qfacl& q) { return compile_qfacl(q, q.control); }

}  // namespace qcfa
