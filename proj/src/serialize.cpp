#include "qcfa/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace qcfa {

namespace {

constexpr int kFormatVersion = 1;

// --- emitters ---------------------------------------------------------------

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json measurement_to_json(const MeasurementFamily& f) {
  Json out = Json::object();
  for (const auto& o : f.outcomes) out[o.label] = matrix_to_json(o.projector);
  return out;
}

Json names_of(const std::vector<std::string>& states, const std::set<int>& set) {
  Json out = Json::array();
  for (int s : set) out.push_back(states[s]);
  return out;
}

Json alphabet_to_json(const Alphabet& a) {
  Json out = Json::array();
  for (const auto& s : a.symbols) out.push_back(s);
  return out;
}

Json dfa_body(const Dfa& d) {
  Json j;
  j["alphabet"] = alphabet_to_json(d.alphabet);
  j["states"] = d.states;
  j["initial"] = d.states.at(d.initial);
  j["accepting"] = names_of(d.states, d.accepting);
  Json trans = Json::object();
  for (std::size_t s = 0; s < d.states.size(); ++s) {
    Json row = Json::object();
    for (std::size_t a = 0; a < d.alphabet.symbols.size(); ++a) {
      row[d.alphabet.symbols[a]] = d.states.at(d.next[s][a]);
    }
    trans[d.states[s]] = std::move(row);
  }
  j["transitions"] = std::move(trans);
  return j;
}

Json unitaries_to_json(const std::vector<CMatrix>& unitary, const Alphabet& a) {
  Json out = Json::object();
  for (int g = 0; g < a.tape_count(); ++g) {
    out[a.tape_symbol(g)] = matrix_to_json(unitary[g]);
  }
  return out;
}

// --- readers ----------------------------------------------------------------

void expect_keys(const Json& j, const std::set<std::string>& required,
                 const std::set<std::string>& optional, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key)) {
      throw ParseError(where + ": unknown field '" + key + "'");
    }
  }
  for (const auto& key : required) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  }
}

double number_from_json(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(where + ": complex numbers are [re, im] pairs");
  }
  return {number_from_json(j[0], where), number_from_json(j[1], where)};
}

CVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a vector");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where);
  }
  return v;
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a matrix");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw ParseError(where + ": expected a matrix");
  }
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError(where + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], where);
    }
  }
  return m;
}

MeasurementFamily measurement_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || j.empty()) {
    throw ParseError(where + ": expected a label -> matrix map");
  }
  MeasurementFamily f;
  for (const auto& [label, mat] : j.items()) {
    f.outcomes.push_back({label, matrix_from_json(mat, where + "[" + label + "]")});
  }
  return f;
}

std::vector<std::string> strings_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Alphabet alphabet_from_json(const Json& j) {
  return Alphabet{strings_from_json(j, "alphabet")};
}

int resolve_state(const std::vector<std::string>& states, const Json& j,
                  const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a state name");
  const std::string name = j.get<std::string>();
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw ParseError(where + ": unknown state '" + name + "'");
  return static_cast<int>(it - states.begin());
}

std::set<int> resolve_states(const std::vector<std::string>& states,
                             const Json& j, const std::string& where) {
  std::set<int> out;
  if (!j.is_array()) throw ParseError(where + ": expected an array of state names");
  for (const auto& e : j) out.insert(resolve_state(states, e, where));
  return out;
}

Dfa dfa_from_body(const Json& j, const std::string& where) {
  expect_keys(j, {"alphabet", "states", "initial", "accepting", "transitions"},
              {"format_version", "kind"}, where);
  Dfa d;
  d.alphabet = alphabet_from_json(j.at("alphabet"));
  d.states = strings_from_json(j.at("states"), where + ".states");
  d.initial = resolve_state(d.states, j.at("initial"), where + ".initial");
  d.accepting = resolve_states(d.states, j.at("accepting"), where + ".accepting");
  d.next.assign(d.states.size(),
                std::vector<int>(d.alphabet.symbols.size(), -1));
  const Json& trans = j.at("transitions");
  if (!trans.is_object()) throw ParseError(where + ".transitions: expected an object");
  for (const auto& [from, row] : trans.items()) {
    const int s = resolve_state(d.states, Json(from), where + ".transitions");
    if (!row.is_object()) throw ParseError(where + ".transitions: expected an object");
    for (const auto& [sym, to] : row.items()) {
      if (!d.alphabet.contains(sym)) {
        throw ParseError(where + ".transitions[" + from + "]: unknown symbol '" +
                         sym + "'");
      }
      d.next[s][d.alphabet.index(sym)] =
          resolve_state(d.states, to, where + ".transitions[" + from + "]");
    }
  }
  return d;
}

std::vector<CMatrix> unitaries_from_json(const Json& j, const Alphabet& a,
                                         const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected a symbol -> matrix map");
  std::vector<CMatrix> out(a.tape_count());
  std::set<std::string> expected;
  for (int g = 0; g < a.tape_count(); ++g) expected.insert(a.tape_symbol(g));
  for (const auto& [sym, mat] : j.items()) {
    if (!expected.count(sym)) {
      throw ParseError(where + ": unknown tape symbol '" + sym + "'");
    }
    out[a.tape_index(sym)] = matrix_from_json(mat, where + "[" + sym + "]");
  }
  for (int g = 0; g < a.tape_count(); ++g) {
    if (out[g].size() == 0) {
      throw ParseError(where + ": missing tape symbol '" + a.tape_symbol(g) + "'");
    }
  }
  return out;
}

}  // namespace

Json to_json(const MachineDescription& m) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind_of(m);
  if (const Dfa* d = std::get_if<Dfa>(&m)) {
    j.update(dfa_body(*d));
  } else if (const Pfa* p = std::get_if<Pfa>(&m)) {
    j["strict"] = p->strict_coins;
    j["alphabet"] = alphabet_to_json(p->alphabet);
    j["states"] = p->states;
    j["initial"] = p->states.at(p->initial);
    j["accepting"] = names_of(p->states, p->accepting);
    Json weights = Json::object();
    for (std::size_t s = 0; s < p->states.size(); ++s) {
      Json row = Json::object();
      for (int g = 0; g < p->alphabet.tape_count(); ++g) {
        Json targets = Json::object();
        for (std::size_t t = 0; t < p->states.size(); ++t) {
          if (p->weight[s][g][t] != 0.0) {
            targets[p->states[t]] = p->weight[s][g][t];
          }
        }
        row[p->alphabet.tape_symbol(g)] = std::move(targets);
      }
      weights[p->states[s]] = std::move(row);
    }
    j["weights"] = std::move(weights);
  } else if (const Mo1qfa* mo = std::get_if<Mo1qfa>(&m)) {
    j["dim"] = static_cast<long>(mo->dim);
    j["alphabet"] = alphabet_to_json(mo->alphabet);
    j["unitaries"] = unitaries_to_json(mo->unitary, mo->alphabet);
    j["initial"] = vector_to_json(mo->initial);
    j["accept_projector"] = matrix_to_json(mo->accept_projector);
  } else if (const Mm1qfa* mm = std::get_if<Mm1qfa>(&m)) {
    j["dim"] = static_cast<long>(mm->dim);
    j["alphabet"] = alphabet_to_json(mm->alphabet);
    j["unitaries"] = unitaries_to_json(mm->unitary, mm->alphabet);
    j["initial"] = vector_to_json(mm->initial);
    j["accept_projector"] = matrix_to_json(mm->accept_projector);
    j["reject_projector"] = matrix_to_json(mm->reject_projector);
  } else if (const Qfacl* q = std::get_if<Qfacl>(&m)) {
    j["dim"] = static_cast<long>(q->dim);
    j["alphabet"] = alphabet_to_json(q->alphabet);
    j["unitaries"] = unitaries_to_json(q->unitary, q->alphabet);
    j["initial"] = vector_to_json(q->initial);
    j["observable"] = measurement_to_json(q->observable);
    j["control"] = dfa_body(q->control);
  } else if (const Qcfa* a = std::get_if<Qcfa>(&m)) {
    j["quantum_dim"] = static_cast<long>(a->quantum_dim);
    j["alphabet"] = alphabet_to_json(a->alphabet);
    j["classical_states"] = a->classical_states;
    j["initial_classical"] = a->classical_states.at(a->initial_classical);
    j["initial_quantum"] = vector_to_json(a->initial_quantum);
    j["accepting"] = names_of(a->classical_states, a->accepting);
    j["rejecting"] = names_of(a->classical_states, a->rejecting);
    Json steps = Json::object();
    for (std::size_t s = 0; s < a->classical_states.size(); ++s) {
      Json row = Json::object();
      for (int g = 0; g < a->alphabet.tape_count(); ++g) {
        const QcfaStep& st = a->step[s][g];
        Json cell;
        cell["unitary"] = matrix_to_json(st.unitary);
        cell["measurement"] = measurement_to_json(st.measurement);
        Json next = Json::object();
        for (const auto& o : st.measurement.outcomes) {
          next[o.label] = a->classical_states.at(st.next.at(o.label));
        }
        cell["next"] = std::move(next);
        row[a->alphabet.tape_symbol(g)] = std::move(cell);
      }
      steps[a->classical_states[s]] = std::move(row);
    }
    j["steps"] = std::move(steps);
  }
  return j;
}

MachineDescription machine_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("machine: expected an object");
  if (!j.contains("format_version") || !j.at("format_version").is_number_integer() ||
      j.at("format_version").get<int>() != kFormatVersion) {
    throw ParseError("machine: missing or unsupported format_version");
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("machine: missing kind");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dfa") {
    return dfa_from_body(j, "dfa");
  }
  if (kind == "pfa") {
    expect_keys(j,
                {"format_version", "kind", "alphabet", "states", "initial",
                 "accepting", "weights"},
                {"strict"}, "pfa");
    Pfa p;
    p.alphabet = alphabet_from_json(j.at("alphabet"));
    p.states = strings_from_json(j.at("states"), "pfa.states");
    p.initial = resolve_state(p.states, j.at("initial"), "pfa.initial");
    p.accepting = resolve_states(p.states, j.at("accepting"), "pfa.accepting");
    p.strict_coins = j.value("strict", true);
    p.weight.assign(
        p.states.size(),
        std::vector<std::vector<double>>(p.alphabet.tape_count(),
                                         std::vector<double>(p.states.size(), 0.0)));
    const Json& weights = j.at("weights");
    if (!weights.is_object()) throw ParseError("pfa.weights: expected an object");
    for (const auto& [from, row] : weights.items()) {
      const int s = resolve_state(p.states, Json(from), "pfa.weights");
      if (!row.is_object()) throw ParseError("pfa.weights: expected an object");
      for (const auto& [sym, targets] : row.items()) {
        int g = 0;
        try {
          g = p.alphabet.tape_index(sym);
        } catch (const std::invalid_argument&) {
          throw ParseError("pfa.weights[" + from + "]: unknown tape symbol '" +
                           sym + "'");
        }
        if (!targets.is_object()) {
          throw ParseError("pfa.weights[" + from + "][" + sym +
                           "]: expected a target -> weight map");
        }
        for (const auto& [to, weight] : targets.items()) {
          const int t = resolve_state(p.states, Json(to),
                                      "pfa.weights[" + from + "][" + sym + "]");
          p.weight[s][g][t] = number_from_json(
              weight, "pfa.weights[" + from + "][" + sym + "][" + to + "]");
        }
      }
    }
    return p;
  }
  if (kind == "mo1qfa" || kind == "mm1qfa") {
    std::set<std::string> required{"format_version", "kind",    "dim",
                                   "alphabet",       "unitaries", "initial",
                                   "accept_projector"};
    if (kind == "mm1qfa") required.insert("reject_projector");
    expect_keys(j, required, {}, kind);
    Mo1qfa mo;
    if (!j.at("dim").is_number_integer()) throw ParseError(kind + ".dim: expected an integer");
    mo.dim = j.at("dim").get<long>();
    mo.alphabet = alphabet_from_json(j.at("alphabet"));
    mo.unitary = unitaries_from_json(j.at("unitaries"), mo.alphabet, kind + ".unitaries");
    mo.initial = vector_from_json(j.at("initial"), kind + ".initial");
    mo.accept_projector =
        matrix_from_json(j.at("accept_projector"), kind + ".accept_projector");
    if (kind == "mo1qfa") return mo;
    Mm1qfa mm;
    mm.dim = mo.dim;
    mm.alphabet = mo.alphabet;
    mm.unitary = mo.unitary;
    mm.initial = mo.initial;
    mm.accept_projector = mo.accept_projector;
    mm.reject_projector =
        matrix_from_json(j.at("reject_projector"), "mm1qfa.reject_projector");
    return mm;
  }
  if (kind == "qfacl") {
    expect_keys(j,
                {"format_version", "kind", "dim", "alphabet", "unitaries",
                 "initial", "observable", "control"},
                {}, "qfacl");
    Qfacl q;
    if (!j.at("dim").is_number_integer()) throw ParseError("qfacl.dim: expected an integer");
    q.dim = j.at("dim").get<long>();
    q.alphabet = alphabet_from_json(j.at("alphabet"));
    q.unitary = unitaries_from_json(j.at("unitaries"), q.alphabet, "qfacl.unitaries");
    q.initial = vector_from_json(j.at("initial"), "qfacl.initial");
    q.observable = measurement_from_json(j.at("observable"), "qfacl.observable");
    q.control = dfa_from_body(j.at("control"), "qfacl.control");
    return q;
  }
  if (kind == "qcfa") {
    expect_keys(j,
                {"format_version", "kind", "quantum_dim", "alphabet",
                 "classical_states", "initial_classical", "initial_quantum",
                 "accepting", "rejecting", "steps"},
                {}, "qcfa");
    Qcfa a;
    if (!j.at("quantum_dim").is_number_integer()) {
      throw ParseError("qcfa.quantum_dim: expected an integer");
    }
    a.quantum_dim = j.at("quantum_dim").get<long>();
    a.alphabet = alphabet_from_json(j.at("alphabet"));
    a.classical_states =
        strings_from_json(j.at("classical_states"), "qcfa.classical_states");
    a.initial_classical = resolve_state(a.classical_states, j.at("initial_classical"),
                                        "qcfa.initial_classical");
    a.initial_quantum = vector_from_json(j.at("initial_quantum"), "qcfa.initial_quantum");
    a.accepting = resolve_states(a.classical_states, j.at("accepting"), "qcfa.accepting");
    a.rejecting = resolve_states(a.classical_states, j.at("rejecting"), "qcfa.rejecting");
    a.step.assign(a.classical_states.size(),
                  std::vector<QcfaStep>(a.alphabet.tape_count()));
    const Json& steps = j.at("steps");
    if (!steps.is_object()) throw ParseError("qcfa.steps: expected an object");
    std::set<std::string> seen_states;
    for (const auto& [from, row] : steps.items()) {
      const int s = resolve_state(a.classical_states, Json(from), "qcfa.steps");
      seen_states.insert(from);
      if (!row.is_object()) throw ParseError("qcfa.steps: expected an object");
      std::set<std::string> seen_syms;
      for (const auto& [sym, cell] : row.items()) {
        const std::string where = "qcfa.steps[" + from + "][" + sym + "]";
        int g = 0;
        try {
          g = a.alphabet.tape_index(sym);
        } catch (const std::invalid_argument&) {
          throw ParseError(where + ": unknown tape symbol");
        }
        seen_syms.insert(sym);
        expect_keys(cell, {"unitary", "measurement", "next"}, {}, where);
        QcfaStep st;
        st.unitary = matrix_from_json(cell.at("unitary"), where + ".unitary");
        st.measurement =
            measurement_from_json(cell.at("measurement"), where + ".measurement");
        const Json& next = cell.at("next");
        if (!next.is_object()) throw ParseError(where + ".next: expected an object");
        for (const auto& [label, to] : next.items()) {
          st.next[label] =
              resolve_state(a.classical_states, to, where + ".next[" + label + "]");
        }
        a.step[s][g] = std::move(st);
      }
      if (static_cast<int>(seen_syms.size()) != a.alphabet.tape_count()) {
        throw ParseError("qcfa.steps[" + from + "]: a tape symbol is missing");
      }
    }
    if (seen_states.size() != a.classical_states.size()) {
      throw ParseError("qcfa.steps: a classical state is missing");
    }
    return a;
  }
  throw ParseError("machine: unknown kind '" + kind + "'");
}

std::string serialize(const MachineDescription& m) {
  return to_json(m).dump(2) + "\n";
}

MachineDescription parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("machine: invalid JSON: ") + e.what());
  }
  return machine_from_json(j);
}

void save_machine(const MachineDescription& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  os << serialize(m);
}

MachineDescription load_machine(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

}  // namespace qcfa
