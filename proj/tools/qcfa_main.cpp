// qcfa: validate, run, compile, combine and analyze the automata in this
// repo, plus the reproducible succinctness experiment.
//
// Exit codes: 0 success, 1 domain violation, 2 I/O or parse error.

#include "qcfa/analysis.hpp"
#include "qcfa/closure.hpp"
#include "qcfa/compile.hpp"
#include "qcfa/models.hpp"
#include "qcfa/semantics.hpp"
#include "qcfa/serialize.hpp"
#include "qcfa/succinct.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitParse = 2;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12f", p);
  return buf;
}

qcfa::MachineDescription load_valid(const std::string& path) {
  const qcfa::MachineDescription m = qcfa::load_machine(path);
  const qcfa::ValidationReport report = qcfa::validate(m);
  if (!report.empty()) {
    throw DomainError("invalid machine " + path + ":\n" +
                      qcfa::to_string(report));
  }
  return m;
}

std::size_t branch_cap_from_env() {
  if (const char* cap = std::getenv("QCFA_BRANCH_CAP")) {
    try {
      return std::stoull(cap);
    } catch (const std::exception&) {
      throw DomainError("QCFA_BRANCH_CAP is not a number");
    }
  }
  return qcfa::kDefaultBranchCap;
}

int cmd_validate(const std::string& path) {
  const qcfa::MachineDescription m = qcfa::load_machine(path);
  const qcfa::ValidationReport report = qcfa::validate(m);
  if (report.empty()) {
    std::cout << "ok: valid " << qcfa::kind_of(m) << "\n";
    return kExitOk;
  }
  std::cout << qcfa::to_string(report);
  return kExitDomain;
}

int cmd_run(const std::string& path, const std::string& word_text,
            const std::string& engine, bool oracle_check) {
  const qcfa::MachineDescription m = load_valid(path);
  const qcfa::Word word = qcfa::word_from_string(word_text);
  if (engine == "branch" || oracle_check) {
    if (!std::holds_alternative<qcfa::Qcfa>(m)) {
      throw DomainError("the branching engine only runs 1QCFA machines");
    }
  }
  if (const auto* d = std::get_if<qcfa::Dfa>(&m)) {
    const bool acc = qcfa::dfa_accepts(*d, word);
    std::cout << "accept " << prob(acc ? 1.0 : 0.0) << "\n"
              << "reject " << prob(acc ? 0.0 : 1.0) << "\n";
  } else if (const auto* p = std::get_if<qcfa::Pfa>(&m)) {
    const double acc = qcfa::pfa_accept_prob(*p, word);
    std::cout << "accept " << prob(acc) << "\n"
              << "reject " << prob(1.0 - acc) << "\n";
  } else if (const auto* mo = std::get_if<qcfa::Mo1qfa>(&m)) {
    const double acc = qcfa::mo1qfa_accept_prob(*mo, word);
    std::cout << "accept " << prob(acc) << "\n"
              << "reject " << prob(1.0 - acc) << "\n";
  } else if (const auto* mm = std::get_if<qcfa::Mm1qfa>(&m)) {
    const qcfa::RunOutcome out = qcfa::mm1qfa_run(*mm, word);
    std::cout << "accept " << prob(out.accept) << "\n"
              << "reject " << prob(out.reject) << "\n"
              << "residual " << prob(out.residual) << "\n";
  } else if (const auto* q = std::get_if<qcfa::Qfacl>(&m)) {
    const double acc = qcfa::qfacl_accept_prob(*q, word);
    std::cout << "accept " << prob(acc) << "\n"
              << "reject " << prob(1.0 - acc) << "\n";
  } else {
    const auto& a = std::get<qcfa::Qcfa>(m);
    const std::size_t cap = branch_cap_from_env();
    qcfa::RunOutcome out;
    if (engine == "branch") {
      out = qcfa::qcfa_run_branching(a, word, cap);
    } else {
      out = qcfa::qcfa_run(a, word);
    }
    std::cout << "accept " << prob(out.accept) << "\n"
              << "reject " << prob(out.reject) << "\n";
    if (oracle_check) {
      const qcfa::RunOutcome density = qcfa::qcfa_run(a, word);
      const qcfa::RunOutcome branch = qcfa::qcfa_run_branching(a, word, cap);
      const double discrepancy =
          std::max(std::abs(density.accept - branch.accept),
                   std::abs(density.reject - branch.reject));
      std::cout << "max-discrepancy " << prob(discrepancy) << "\n";
    }
  }
  return kExitOk;
}

int cmd_compile(const std::string& path, const std::string& out_path) {
  const qcfa::MachineDescription m = load_valid(path);
  qcfa::Qcfa compiled;
  if (const auto* d = std::get_if<qcfa::Dfa>(&m)) {
    compiled = qcfa::compile_dfa(*d);
  } else if (const auto* p = std::get_if<qcfa::Pfa>(&m)) {
    compiled = qcfa::compile_pfa(*p);
  } else if (const auto* mo = std::get_if<qcfa::Mo1qfa>(&m)) {
    compiled = qcfa::compile_mo1qfa(*mo);
  } else if (const auto* mm = std::get_if<qcfa::Mm1qfa>(&m)) {
    compiled = qcfa::compile_mm1qfa(*mm);
  } else if (const auto* q = std::get_if<qcfa::Qfacl>(&m)) {
    compiled = qcfa::compile_qfacl(*q);
  } else {
    throw DomainError("already a 1QCFA");
  }
  qcfa::save_machine(qcfa::MachineDescription{compiled}, out_path);
  std::cout << "compiled " << qcfa::kind_of(m) << " -> 1qcfa: "
            << compiled.quantum_dim << " quantum state"
            << (compiled.quantum_dim == 1 ? "" : "s") << ", "
            << compiled.classical_states.size() << " classical states\n";
  return kExitOk;
}

int cmd_product(const std::string& op, const std::string& path_a,
                const std::string& path_b, const std::string& alphabet_mode,
                const std::string& out_path) {
  const qcfa::MachineDescription ma = load_valid(path_a);
  const qcfa::MachineDescription mb = load_valid(path_b);
  const auto* a = std::get_if<qcfa::Qcfa>(&ma);
  const auto* b = std::get_if<qcfa::Qcfa>(&mb);
  if (!a || !b) throw DomainError("product operands must be 1QCFA machines");
  const qcfa::AlphabetMode mode =
      alphabet_mode == "union" ? qcfa::AlphabetMode::kUnionWithExtension
                               : qcfa::AlphabetMode::kIntersectAlphabets;
  const qcfa::Qcfa out = op == "union" ? qcfa::union_of(*a, *b, mode)
                                       : qcfa::intersect(*a, *b, mode);
  qcfa::save_machine(qcfa::MachineDescription{out}, out_path);
  std::cout << "QS = " << out.quantum_dim << " (" << a->quantum_dim << "*"
            << b->quantum_dim << ")\n"
            << "CS = " << out.classical_states.size() << " ("
            << a->classical_states.size() << "*" << b->classical_states.size()
            << ")\n";
  return kExitOk;
}

int cmd_complement(const std::string& path, const std::string& out_path) {
  const qcfa::MachineDescription m = load_valid(path);
  const auto* a = std::get_if<qcfa::Qcfa>(&m);
  if (!a) throw DomainError("complement operand must be a 1QCFA machine");
  const qcfa::Qcfa out = qcfa::complement(*a);
  qcfa::save_machine(qcfa::MachineDescription{out}, out_path);
  std::cout << "QS = " << out.quantum_dim << "\n"
            << "CS = " << out.classical_states.size() << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& path, bool do_minimize, bool do_forbidden,
                bool certificates) {
  const qcfa::MachineDescription m = load_valid(path);
  const auto* d = std::get_if<qcfa::Dfa>(&m);
  if (!d) throw DomainError("analyze expects a dfa machine file");
  if (!do_minimize && !do_forbidden) {
    do_minimize = do_forbidden = true;
  }
  std::cout << "states: " << d->states.size() << "\n";
  qcfa::Dfa minimal = *d;
  if (do_minimize) {
    const qcfa::MinimizationResult res = qcfa::minimize_dfa(*d);
    minimal = res.dfa;
    if (res.dfa.states.size() == d->states.size()) {
      std::cout << "minimal: yes (" << d->states.size() << " states)\n";
    } else {
      std::cout << "minimal: no (" << res.dfa.states.size()
                << " states after minimization)\n";
      for (std::size_t s = 0; s < d->states.size(); ++s) {
        std::cout << "  " << d->states[s] << " -> "
                  << (res.state_map[s] < 0 ? "(unreachable)"
                                           : res.dfa.states[res.state_map[s]])
                  << "\n";
      }
    }
    if (certificates) {
      for (std::size_t s = 0; s < minimal.states.size(); ++s) {
        for (std::size_t t = s + 1; t < minimal.states.size(); ++t) {
          const auto cert = qcfa::distinguish(minimal, static_cast<int>(s),
                                              static_cast<int>(t));
          std::cout << "  distinguish(" << minimal.states[s] << ", "
                    << minimal.states[t] << "): "
                    << (cert ? "\"" + qcfa::word_to_string(cert->witness) + "\""
                             : "equivalent")
                    << "\n";
        }
      }
    }
  }
  if (do_forbidden) {
    const auto witness = qcfa::find_forbidden_construction(minimal);
    if (witness) {
      std::cout << "forbidden construction: s=" << minimal.states[witness->s]
                << " t=" << minimal.states[witness->t] << " x="
                << qcfa::word_to_string(witness->word) << "\n";
    } else {
      std::cout << "forbidden construction: none\n";
    }
  }
  return kExitOk;
}

int cmd_experiment(int m, double epsilon, int max_len, std::uint64_t seed,
                   const std::string& csv_path, const std::string& json_path) {
  if (!qcfa::is_prime(m)) throw DomainError("m must be prime");
  const qcfa::LmExperimentReport report =
      qcfa::run_lm_experiment(m, epsilon, max_len, seed);
  if (!csv_path.empty()) qcfa::write_experiment_csv(report, csv_path);
  if (!json_path.empty()) qcfa::write_experiment_json(report, json_path);
  std::cout << "m " << report.m << "\n"
            << "epsilon " << report.epsilon << "\n"
            << "tracks " << report.params.track_count() << " copies "
            << report.params.copies << "\n"
            << "residue_bound " << prob(report.params.residue_bound)
            << " error_bound " << prob(report.params.error_bound()) << "\n"
            << "quantum_dim " << report.quantum_dim << "\n"
            << "classical_states " << report.classical_states << "\n"
            << "dfa_states " << report.dfa_states << " minimal "
            << report.minimal_dfa_states << "\n";
  if (report.forbidden) {
    std::cout << "forbidden construction: s=" << report.forbidden_names[0]
              << " t=" << report.forbidden_names[1] << " x="
              << qcfa::word_to_string(report.forbidden->word) << "\n";
  }
  std::cout << "words_swept " << report.rows.size() << "\n"
            << "violations " << report.violations << "\n"
            << "worst_member_margin " << prob(report.worst_member_margin)
            << "\n"
            << "worst_nonmember_margin "
            << prob(report.worst_nonmember_margin) << "\n";
  return report.violations == 0 ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for one-way automata with quantum and classical "
               "states"};
  app.require_subcommand(1);

  std::string path, path_b, out_path, word;
  std::string engine = "density";
  std::string op = "intersect";
  std::string alphabet_mode = "intersect";
  bool oracle_check = false;
  bool flag_minimize = false;
  bool flag_forbidden = false;
  bool flag_certificates = false;
  int m = 3;
  double epsilon = 0.1;
  int max_len = 12;
  std::uint64_t seed = 1;
  std::string csv_path, json_path;

  CLI::App* validate = app.add_subcommand("validate", "check a machine file");
  validate->add_option("path", path)->required();

  CLI::App* run = app.add_subcommand("run", "acceptance probabilities for a word");
  run->add_option("path", path)->required();
  run->add_option("word", word, "input word, one symbol per character")
      ->required();
  run->add_option("--engine", engine, "density|branch (1QCFA only)")
      ->check(CLI::IsMember({"density", "branch"}));
  run->add_flag("--oracle-check", oracle_check,
                "run both engines and report the discrepancy");

  CLI::App* compile = app.add_subcommand("compile", "compile a weaker model to 1QCFA");
  compile->add_option("path", path)->required();
  compile->add_option("-o,--output", out_path)->required();

  CLI::App* product = app.add_subcommand("product", "intersection or union of two 1QCFA");
  product->add_option("path_a", path)->required();
  product->add_option("path_b", path_b)->required();
  product->add_option("--op", op)->check(CLI::IsMember({"intersect", "union"}));
  product->add_option("--alphabet", alphabet_mode,
                      "intersect common symbols or extend to the union")
      ->check(CLI::IsMember({"intersect", "union"}));
  product->add_option("-o,--output", out_path)->required();

  CLI::App* complement = app.add_subcommand("complement", "swap accepting and rejecting states");
  complement->add_option("path", path)->required();
  complement->add_option("-o,--output", out_path)->required();

  CLI::App* analyze = app.add_subcommand("analyze", "minimize a DFA and hunt the forbidden construction");
  analyze->add_option("path", path)->required();
  analyze->add_flag("--minimize", flag_minimize);
  analyze->add_flag("--forbidden", flag_forbidden);
  analyze->add_flag("--certificates", flag_certificates,
                    "print pairwise distinguishing words");

  CLI::App* experiment = app.add_subcommand(
      "experiment-lm", "succinctness sweep for the length-divisibility language");
  experiment->add_option("-m", m, "prime modulus")->required();
  experiment->add_option("--epsilon", epsilon);
  experiment->add_option("--max-len", max_len);
  experiment->add_option("--seed", seed);
  experiment->add_option("--csv", csv_path);
  experiment->add_option("--json", json_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(path);
    if (*run) return cmd_run(path, word, engine, oracle_check);
    if (*compile) return cmd_compile(path, out_path);
    if (*product) return cmd_product(op, path, path_b, alphabet_mode, out_path);
    if (*complement) return cmd_complement(path, out_path);
    if (*analyze) return cmd_analyze(path, flag_minimize, flag_forbidden,
                                     flag_certificates);
    if (*experiment) return cmd_experiment(m, epsilon, max_len, seed, csv_path,
                                           json_path);
  } catch (const qcfa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qcfa::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const qcfa::SearchBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
