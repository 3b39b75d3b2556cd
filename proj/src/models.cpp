#include "qcfa/models.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace qcfa {

Word word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) w.push_back(std::string(1, c));
  return w;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (const auto& s : w) out += s;
  return out;
}

bool Alphabet::contains(const Symbol& s) const {
  return std::find(symbols.begin(), symbols.end(), s) != symbols.end();
}

int Alphabet::index(const Symbol& s) const {
  auto it = std::find(symbols.begin(), symbols.end(), s);
  if (it == symbols.end()) {
    throw std::invalid_argument("symbol outside alphabet: '" + s + "'");
  }
  return static_cast<int>(it - symbols.begin());
}

int Alphabet::tape_index(const Symbol& s) const {
  if (s == kLeftMarker) return static_cast<int>(symbols.size());
  if (s == kRightMarker) return static_cast<int>(symbols.size()) + 1;
  return index(s);
}

Symbol Alphabet::tape_symbol(int idx) const {
  const int n = static_cast<int>(symbols.size());
  if (idx >= 0 && idx < n) return symbols[idx];
  if (idx == n) return kLeftMarker;
  if (idx == n + 1) return kRightMarker;
  throw std::invalid_argument("tape index out of range");
}

std::vector<Symbol> tape_of(const Word& w) {
  std::vector<Symbol> tape;
  tape.reserve(w.size() + 2);
  tape.push_back(kLeftMarker);
  tape.insert(tape.end(), w.begin(), w.end());
  tape.push_back(kRightMarker);
  return tape;
}

int Dfa::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int Dfa::step(int state, const Symbol& s) const {
  return next.at(state).at(alphabet.index(s));
}

int Dfa::run_from(int state, const Word& w) const {
  for (const auto& s : w) state = step(state, s);
  return state;
}

CMatrix Mm1qfa::nonhalting_projector() const {
  return CMatrix::Identity(dim, dim) - accept_projector - reject_projector;
}

int Qcfa::state_index(const std::string& name) const {
  auto it = std::find(classical_states.begin(), classical_states.end(), name);
  return it == classical_states.end()
             ? -1
             : static_cast<int>(it - classical_states.begin());
}

std::string kind_of(const MachineDescription& m) {
  switch (m.index()) {
    case 0: return "dfa";
    case 1: return "pfa";
    case 2: return "mo1qfa";
    case 3: return "mm1qfa";
    case 4: return "qfacl";
    default: return "qcfa";
  }
}

std::string to_string(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& v : report) os << v.path << ": " << v.message << "\n";
  return os.str();
}

namespace {

void check_alphabet(const Alphabet& a, ValidationReport& out) {
  std::set<Symbol> seen;
  for (const auto& s : a.symbols) {
    if (Alphabet::is_marker(s)) {
      out.push_back({"alphabet", "reserved end-marker '" + s + "' used as input symbol"});
    }
    if (!seen.insert(s).second) {
      out.push_back({"alphabet", "duplicate symbol '" + s + "'"});
    }
    if (s.empty()) out.push_back({"alphabet", "empty symbol"});
  }
}

void check_state_names(const std::vector<std::string>& states,
                       const std::string& path, ValidationReport& out) {
  if (states.empty()) out.push_back({path, "no states"});
  std::set<std::string> seen;
  for (const auto& s : states) {
    if (!seen.insert(s).second) {
      out.push_back({path, "duplicate state name '" + s + "'"});
    }
  }
}

// Unitary table indexed by tape symbol, shared by the quantum kinds.
void check_unitaries(const std::vector<CMatrix>& unitary, Eigen::Index dim,
                     const Alphabet& alphabet, ValidationReport& out) {
  if (static_cast<int>(unitary.size()) != alphabet.tape_count()) {
    out.push_back({"unitaries", "table does not cover every tape symbol"});
    return;
  }
  for (int g = 0; g < alphabet.tape_count(); ++g) {
    const std::string path = "unitaries[" + alphabet.tape_symbol(g) + "]";
    const CMatrix& u = unitary[g];
    if (u.rows() != dim || u.cols() != dim) {
      out.push_back({path, "dimension mismatch"});
      continue;
    }
    if (!is_unitary(u, kTol)) out.push_back({path, "not unitary"});
  }
}

}  // namespace

ValidationReport validate(const Dfa& d) {
  ValidationReport out;
  check_alphabet(d.alphabet, out);
  check_state_names(d.states, "states", out);
  const int n = static_cast<int>(d.states.size());
  if (d.initial < 0 || d.initial >= n) {
    out.push_back({"initial", "not a state"});
  }
  for (int s : d.accepting) {
    if (s < 0 || s >= n) out.push_back({"accepting", "not a state"});
  }
  if (static_cast<int>(d.next.size()) != n) {
    out.push_back({"transitions", "table does not cover every state"});
    return out;
  }
  for (int s = 0; s < n; ++s) {
    if (d.next[s].size() != d.alphabet.symbols.size()) {
      out.push_back({"transitions[" + d.states[s] + "]",
                     "row does not cover every symbol"});
      continue;
    }
    for (std::size_t a = 0; a < d.alphabet.symbols.size(); ++a) {
      const int t = d.next[s][a];
      if (t < 0 || t >= n) {
        out.push_back({"transitions[" + d.states[s] + "][" +
                           d.alphabet.symbols[a] + "]",
                       "missing or out-of-range target"});
      }
    }
  }
  return out;
}

ValidationReport validate(const Pfa& p) {
  ValidationReport out;
  check_alphabet(p.alphabet, out);
  check_state_names(p.states, "states", out);
  const int n = static_cast<int>(p.states.size());
  if (p.initial < 0 || p.initial >= n) out.push_back({"initial", "not a state"});
  for (int s : p.accepting) {
    if (s < 0 || s >= n) out.push_back({"accepting", "not a state"});
  }
  if (static_cast<int>(p.weight.size()) != n) {
    out.push_back({"weights", "table does not cover every state"});
    return out;
  }
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(p.weight[s].size()) != p.alphabet.tape_count()) {
      out.push_back({"weights[" + p.states[s] + "]",
                     "row does not cover every tape symbol"});
      continue;
    }
    for (int g = 0; g < p.alphabet.tape_count(); ++g) {
      const std::string path =
          "weights[" + p.states[s] + "][" + p.alphabet.tape_symbol(g) + "]";
      const auto& row = p.weight[s][g];
      if (static_cast<int>(row.size()) != n) {
        out.push_back({path, "row does not cover every target state"});
        continue;
      }
      double sum = 0.0;
      bool strict_ok = true;
      for (double w : row) {
        sum += w;
        if (w < 0.0 || w > 1.0) strict_ok = false;
        if (p.strict_coins && w != 0.0 && w != 0.5 && w != 1.0) {
          strict_ok = false;
        }
      }
      // Row sums are exact for coin-tossing rows; 1e-12 absorbs decimal
      // representation error in the general class.
      if (std::abs(sum - 1.0) > 1e-12) {
        out.push_back({path, "row stochasticity: weights sum to " +
                                 std::to_string(sum)});
      }
      if (!strict_ok) {
        out.push_back({path, p.strict_coins
                                 ? "weight outside {0, 1/2, 1} in strict mode"
                                 : "weight outside [0, 1]"});
      }
    }
  }
  return out;
}

namespace {

void validate_mo_like(const Mo1qfa& m, ValidationReport& out) {
  check_alphabet(m.alphabet, out);
  if (m.dim < 1) out.push_back({"dim", "quantum dimension must be positive"});
  check_unitaries(m.unitary, m.dim, m.alphabet, out);
  if (m.initial.size() != m.dim) {
    out.push_back({"initial", "dimension mismatch"});
  } else if (!is_normalized(m.initial, kTol)) {
    out.push_back({"initial", "not normalized"});
  }
  if (m.accept_projector.rows() != m.dim || m.accept_projector.cols() != m.dim) {
    out.push_back({"accept_projector", "dimension mismatch"});
  } else if (!is_projector(m.accept_projector, kTol)) {
    out.push_back({"accept_projector", "not a projector"});
  }
}

}  // namespace

ValidationReport validate(const Mo1qfa& m) {
  ValidationReport out;
  validate_mo_like(m, out);
  return out;
}

ValidationReport validate(const Mm1qfa& m) {
  ValidationReport out;
  Mo1qfa mo{m.dim, m.alphabet, m.unitary, m.initial, m.accept_projector};
  validate_mo_like(mo, out);
  if (m.reject_projector.rows() != m.dim || m.reject_projector.cols() != m.dim) {
    out.push_back({"reject_projector", "dimension mismatch"});
    return out;
  }
  MeasurementFamily fam;
  fam.outcomes.push_back({"ca", m.accept_projector});
  fam.outcomes.push_back({"cr", m.reject_projector});
  fam.outcomes.push_back({"cn", m.nonhalting_projector()});
  try {
    if (!is_valid_measurement(fam, kTol)) {
      out.push_back({"projectors", "{accept, reject, nonhalting} is not a "
                                   "valid measurement family"});
    }
  } catch (const std::invalid_argument&) {
    out.push_back({"projectors", "projector dimension mismatch"});
  }
  return out;
}

ValidationReport validate(const Qfacl& q) {
  ValidationReport out;
  check_alphabet(q.alphabet, out);
  if (q.dim < 1) out.push_back({"dim", "quantum dimension must be positive"});
  check_unitaries(q.unitary, q.dim, q.alphabet, out);
  if (q.initial.size() != q.dim) {
    out.push_back({"initial", "dimension mismatch"});
  } else if (!is_normalized(q.initial, kTol)) {
    out.push_back({"initial", "not normalized"});
  }
  if (q.observable.dim() != q.dim) {
    out.push_back({"observable", "dimension mismatch"});
  } else {
    try {
      if (!is_valid_measurement(q.observable, kTol)) {
        out.push_back({"observable", "not a valid measurement family"});
      }
    } catch (const std::invalid_argument&) {
      out.push_back({"observable", "projector dimension mismatch"});
    }
  }
  for (const auto& v : validate(q.control)) {
    out.push_back({"control." + v.path, v.message});
  }
  std::set<Symbol> labels;
  for (const auto& o : q.observable.outcomes) labels.insert(o.label);
  std::set<Symbol> control_syms(q.control.alphabet.symbols.begin(),
                                q.control.alphabet.symbols.end());
  if (labels != control_syms) {
    out.push_back(
        {"control.alphabet", "does not equal the observable's label set"});
  }
  return out;
}

ValidationReport validate(const Qcfa& a) {
  ValidationReport out;
  check_alphabet(a.alphabet, out);
  check_state_names(a.classical_states, "classical_states", out);
  const int n = static_cast<int>(a.classical_states.size());
  if (a.quantum_dim < 1) {
    out.push_back({"quantum_dim", "must be positive"});
  }
  if (a.initial_classical < 0 || a.initial_classical >= n) {
    out.push_back({"initial_classical", "not a state"});
  }
  if (a.initial_quantum.size() != a.quantum_dim) {
    out.push_back({"initial_quantum", "dimension mismatch"});
  } else if (!is_normalized(a.initial_quantum, kTol)) {
    out.push_back({"initial_quantum", "not normalized"});
  }
  for (int s : a.accepting) {
    if (s < 0 || s >= n) out.push_back({"accepting", "not a state"});
  }
  for (int s : a.rejecting) {
    if (s < 0 || s >= n) out.push_back({"rejecting", "not a state"});
  }
  for (int s : a.accepting) {
    if (a.rejecting.count(s)) {
      out.push_back({"accepting",
                     "state '" + a.classical_states[s] + "' also rejects"});
    }
  }
  if (static_cast<int>(a.step.size()) != n) {
    out.push_back({"steps", "table does not cover every classical state"});
    return out;
  }
  bool table_ok = true;
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(a.step[s].size()) != a.alphabet.tape_count()) {
      out.push_back({"steps[" + a.classical_states[s] + "]",
                     "row does not cover every tape symbol"});
      table_ok = false;
      continue;
    }
    for (int g = 0; g < a.alphabet.tape_count(); ++g) {
      const std::string path = "steps[" + a.classical_states[s] + "][" +
                               a.alphabet.tape_symbol(g) + "]";
      const QcfaStep& st = a.step[s][g];
      if (st.unitary.rows() != a.quantum_dim ||
          st.unitary.cols() != a.quantum_dim) {
        out.push_back({path + ".unitary", "dimension mismatch"});
        table_ok = false;
      } else if (!is_unitary(st.unitary, kTol)) {
        out.push_back({path + ".unitary", "not unitary"});
      }
      if (st.measurement.dim() != a.quantum_dim) {
        out.push_back({path + ".measurement", "dimension mismatch"});
        table_ok = false;
      } else {
        try {
          if (!is_valid_measurement(st.measurement, kTol)) {
            out.push_back({path + ".measurement", "not a valid measurement family"});
          }
        } catch (const std::invalid_argument&) {
          out.push_back({path + ".measurement", "projector dimension mismatch"});
          table_ok = false;
        }
      }
      // The classical move must be total over exactly the outcome labels.
      for (const auto& o : st.measurement.outcomes) {
        auto it = st.next.find(o.label);
        if (it == st.next.end()) {
          out.push_back({path + ".next", "no move for outcome '" + o.label + "'"});
          table_ok = false;
        } else if (it->second < 0 || it->second >= n) {
          out.push_back({path + ".next[" + o.label + "]", "not a state"});
          table_ok = false;
        }
      }
      for (const auto& [label, t] : st.next) {
        (void)t;
        if (!st.measurement.find(label)) {
          out.push_back({path + ".next", "unknown outcome label '" + label + "'"});
        }
      }
    }
  }
  if (!table_ok || a.initial_classical < 0 || a.initial_classical >= n) {
    return out;
  }

  // Halting check over the outcome-label reachability graph: left-marker
  // step, closure under input-symbol steps, then the right-marker step.
  auto step_targets = [&](const std::set<int>& from, int g) {
    std::set<int> to;
    for (int s : from) {
      for (const auto& o : a.step[s][g].measurement.outcomes) {
        to.insert(a.step[s][g].next.at(o.label));
      }
    }
    return to;
  };
  std::set<int> reach =
      step_targets({a.initial_classical}, a.alphabet.tape_index(kLeftMarker));
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t sym = 0; sym < a.alphabet.symbols.size(); ++sym) {
      for (int t : step_targets(reach, static_cast<int>(sym))) {
        if (reach.insert(t).second) grew = true;
      }
    }
  }
  const std::set<int> post =
      step_targets(reach, a.alphabet.tape_index(kRightMarker));
  for (int s : post) {
    if (!a.accepting.count(s) && !a.rejecting.count(s)) {
      out.push_back({"steps", "non-halting: state '" + a.classical_states[s] +
                                  "' is reachable after the right marker but "
                                  "neither accepts nor rejects"});
    }
  }
  return out;
}

ValidationReport validate(const MachineDescription& m) {
  return std::visit([](const auto& x) { return validate(x); }, m);
}

Dfa build_lm_dfa(int m) {
  if (m < 1) throw std::invalid_argument("build_lm_dfa: m must be >= 1");
  Dfa d;
  d.alphabet.symbols = {"a", "b"};
  for (int i = 0; i <= m; ++i) d.states.push_back("p" + std::to_string(i));
  for (int i = 1; i <= m; ++i) d.states.push_back("q" + std::to_string(i));
  d.states.push_back("r");
  const auto p = [&](int i) { return i; };
  const auto q = [&](int i) { return m + i; };  // q1..qm
  const int r = 2 * m + 1;
  d.next.assign(d.states.size(), {r, r});
  // a-cycle through the p-states; the cycle re-enters at p1.
  for (int i = 0; i < m; ++i) d.next[p(i)][0] = p(i + 1);
  d.next[p(m)][0] = p(1);
  // b-edges drop into the q-cycle one step ahead of the current count.
  for (int i = 0; i < m; ++i) d.next[p(i)][1] = q(i + 1);
  d.next[p(m)][1] = q(1);
  // b-cycle through the q-states; any a after a b is fatal.
  for (int i = 1; i < m; ++i) d.next[q(i)][1] = q(i + 1);
  d.next[q(m)][1] = q(1);
  for (int i = 1; i <= m; ++i) d.next[q(i)][0] = r;
  d.initial = p(0);
  d.accepting = {p(m), q(m)};
  return d;
}

Dfa build_ab_star_dfa() {
  Dfa d;
  d.alphabet.symbols = {"a", "b"};
  d.states = {"p0", "p1", "r"};
  d.next = {{0, 1}, {2, 1}, {2, 2}};
  d.initial = 0;
  d.accepting = {0, 1};
  return d;
}

bool is_ab_star(const Word& w) {
  bool seen_b = false;
  for (const auto& s : w) {
    if (s == "b") {
      seen_b = true;
    } else if (s == "a") {
      if (seen_b) return false;
    } else {
      return false;
    }
  }
  return true;
}

bool is_lm_member(const Word& w, int m) {
  return !w.empty() && is_ab_star(w) &&
         static_cast<int>(w.size()) % m == 0;
}

}  // namespace qcfa
