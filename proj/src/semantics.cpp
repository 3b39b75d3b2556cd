#include "qcfa/semantics.hpp"

#include <cmath>
#include <stdexcept>

namespace qcfa {

bool dfa_accepts(const Dfa& d, const Word& w) {
  return d.accepting.count(d.run_from(d.initial, w)) > 0;
}

double pfa_accept_prob(const Pfa& p, const Word& w) {
  const int n = static_cast<int>(p.states.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(p.initial) = 1.0;
  for (const Symbol& sym : tape_of(w)) {
    const int g = p.alphabet.tape_index(sym);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    // weight[from][g][to]; the step matrix has column = from, row = to.
    for (int from = 0; from < n; ++from) {
      if (v(from) == 0.0) continue;
      for (int to = 0; to < n; ++to) {
        u(to) += p.weight[from][g][to] * v(from);
      }
    }
    v = u;
  }
  double acc = 0.0;
  for (int s : p.accepting) acc += v(s);
  return acc;
}

double mo1qfa_accept_prob(const Mo1qfa& m, const Word& w) {
  CVector psi = m.initial;
  for (const Symbol& sym : tape_of(w)) {
    psi = m.unitary[m.alphabet.tape_index(sym)] * psi;
  }
  return (m.accept_projector * psi).squaredNorm();
}

RunOutcome mm1qfa_run(const Mm1qfa& m, const Word& w) {
  const CMatrix nonhalt = m.nonhalting_projector();
  CVector psi = m.initial;  // unnormalized continuation branch
  RunOutcome out;
  for (const Symbol& sym : tape_of(w)) {
    const CVector evolved = m.unitary[m.alphabet.tape_index(sym)] * psi;
    out.accept += (m.accept_projector * evolved).squaredNorm();
    out.reject += (m.reject_projector * evolved).squaredNorm();
    psi = nonhalt * evolved;
  }
  out.residual = psi.squaredNorm();
  return out;
}

double qfacl_accept_prob(const Qfacl& q, const Word& w) {
  const int n = static_cast<int>(q.control.states.size());
  std::vector<CMatrix> rho(n, CMatrix::Zero(q.dim, q.dim));
  rho[q.control.initial] = q.initial * q.initial.adjoint();
  for (const Symbol& sym : tape_of(w)) {
    const CMatrix& u = q.unitary[q.alphabet.tape_index(sym)];
    std::vector<CMatrix> next(n, CMatrix::Zero(q.dim, q.dim));
    for (int c = 0; c < n; ++c) {
      if (rho[c].squaredNorm() == 0.0) continue;
      const CMatrix evolved = u * rho[c] * u.adjoint();
      for (const auto& o : q.observable.outcomes) {
        next[q.control.step(c, o.label)] +=
            o.projector * evolved * o.projector;
      }
    }
    rho = std::move(next);
  }
  double acc = 0.0;
  for (int c : q.control.accepting) acc += trace_real(rho[c]);
  return acc;
}

RunOutcome qcfa_run(const Qcfa& a, const Word& w,
                    std::vector<QcfaTraceEntry>* trace) {
  const int n = static_cast<int>(a.classical_states.size());
  std::vector<CMatrix> rho(n, CMatrix::Zero(a.quantum_dim, a.quantum_dim));
  rho[a.initial_classical] = a.initial_quantum * a.initial_quantum.adjoint();
  for (const Symbol& sym : tape_of(w)) {
    const int g = a.alphabet.tape_index(sym);
    std::vector<CMatrix> next(n, CMatrix::Zero(a.quantum_dim, a.quantum_dim));
    for (int s = 0; s < n; ++s) {
      if (rho[s].squaredNorm() == 0.0) continue;
      const QcfaStep& st = a.step[s][g];
      CMatrix evolved = st.unitary * rho[s] * st.unitary.adjoint();
      if (is_trivial_measurement(st.measurement)) {
        next[st.next.at(st.measurement.outcomes.front().label)] += evolved;
        continue;
      }
      for (const auto& o : st.measurement.outcomes) {
        next[st.next.at(o.label)] += o.projector * evolved * o.projector;
      }
    }
    rho = std::move(next);
    if (trace) {
      QcfaTraceEntry entry{sym, {}};
      entry.classical_mass.reserve(n);
      for (int s = 0; s < n; ++s) {
        entry.classical_mass.push_back(trace_real(rho[s]));
      }
      trace->push_back(std::move(entry));
    }
  }
  RunOutcome out;
  for (int s = 0; s < n; ++s) {
    const double mass = trace_real(rho[s]);
    if (a.accepting.count(s)) {
      out.accept += mass;
    } else if (a.rejecting.count(s)) {
      out.reject += mass;
    } else {
      out.residual += mass;
    }
  }
  if (out.residual > kTol) {
    throw NonHaltingRun("qcfa_run: " + std::to_string(out.residual) +
                        " of probability mass ended outside accepting and "
                        "rejecting states");
  }
  return out;
}

RunOutcome qcfa_run_branching(const Qcfa& a, const Word& w,
                              std::size_t branch_cap,
                              std::size_t* branches_out) {
  struct Branch {
    int state;
    CVector psi;  // normalized pure state
    double weight;
  };
  std::vector<Branch> layer{{a.initial_classical, a.initial_quantum, 1.0}};
  for (const Symbol& sym : tape_of(w)) {
    const int g = a.alphabet.tape_index(sym);
    std::vector<Branch> next;
    next.reserve(layer.size());
    for (const Branch& br : layer) {
      const QcfaStep& st = a.step[br.state][g];
      const CVector evolved = st.unitary * br.psi;
      for (const auto& o : st.measurement.outcomes) {
        const CVector projected = o.projector * evolved;
        const double p = projected.squaredNorm();
        if (p < 1e-15) continue;  // never normalize a ~0 branch
        next.push_back(
            {st.next.at(o.label), projected / std::sqrt(p), br.weight * p});
      }
    }
    if (next.size() > branch_cap) {
      throw BranchCapExceeded(
          "qcfa_run_branching: branch count " + std::to_string(next.size()) +
          " exceeds cap " + std::to_string(branch_cap));
    }
    layer = std::move(next);
  }
  if (branches_out) *branches_out = layer.size();
  RunOutcome out;
  for (const Branch& br : layer) {
    if (a.accepting.count(br.state)) {
      out.accept += br.weight;
    } else if (a.rejecting.count(br.state)) {
      out.reject += br.weight;
    } else {
      out.residual += br.weight;
    }
  }
  return out;
}

RecognitionCheck recognizes_with_error(
    const Qcfa& a, const std::function<bool(const Word&)>& membership,
    const std::vector<Word>& words, double epsilon) {
  if (epsilon < 0.0 || epsilon >= 0.5) {
    throw std::invalid_argument(
        "recognizes_with_error: epsilon must lie in [0, 1/2)");
  }
  RecognitionCheck check;
  check.ok = true;
  bool first = true;
  for (const Word& w : words) {
    const RunOutcome out = qcfa_run(a, w);
    const double margin = membership(w) ? out.accept - (1.0 - epsilon)
                                        : out.reject - (1.0 - epsilon);
    if (first || margin < check.worst_margin) {
      check.worst_margin = margin;
      check.worst_word = w;
      first = false;
    }
    if (margin < 0.0) check.ok = false;
  }
  return check;
}

}  // namespace qcfa
