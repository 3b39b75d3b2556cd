#include "qcfa/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace qcfa {

namespace {

std::vector<int> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.states.size(), false);
  std::deque<int> queue{d.initial};
  seen[d.initial] = true;
  std::vector<int> order;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (std::size_t a = 0; a < d.alphabet.symbols.size(); ++a) {
      const int t = d.next[s][a];
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<bool> reachable_from(const Dfa& d, int start) {
  std::vector<bool> seen(d.states.size(), false);
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < d.alphabet.symbols.size(); ++a) {
      const int t = d.next[s][a];
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

MinimizationResult minimize_dfa(const Dfa& d) {
  const auto report = validate(d);
  if (!report.empty()) {
    throw std::invalid_argument("minimize_dfa: invalid DFA: " +
                                to_string(report));
  }
  const std::vector<int> reachable = reachable_states(d);
  const int n = static_cast<int>(d.states.size());
  const int k = static_cast<int>(d.alphabet.symbols.size());

  // block[s] for reachable s; refine on (block, successor blocks).
  std::vector<int> block(n, -1);
  for (int s : reachable) block[s] = d.accepting.count(s) ? 1 : 0;
  bool changed = true;
  while (changed) {
    std::map<std::vector<int>, int> signature_block;
    std::vector<int> next_block(n, -1);
    for (int s : reachable) {
      std::vector<int> sig{block[s]};
      for (int a = 0; a < k; ++a) sig.push_back(block[d.next[s][a]]);
      auto [it, inserted] = signature_block.try_emplace(
          sig, static_cast<int>(signature_block.size()));
      (void)inserted;
      next_block[s] = it->second;
    }
    changed = false;
    for (int s : reachable) {
      if (next_block[s] != block[s]) changed = true;
    }
    block = std::move(next_block);
  }

  // Order the classes by their lowest-index representative.
  std::map<int, int> block_to_new;
  std::vector<int> representative;
  for (int s : reachable) {
    if (block_to_new.try_emplace(block[s], static_cast<int>(representative.size()))
            .second) {
      representative.push_back(s);
    }
  }

  MinimizationResult result;
  result.state_map.assign(n, -1);
  for (int s : reachable) result.state_map[s] = block_to_new.at(block[s]);
  Dfa& out = result.dfa;
  out.alphabet = d.alphabet;
  for (int rep : representative) out.states.push_back(d.states[rep]);
  out.next.assign(out.states.size(), std::vector<int>(k, -1));
  for (std::size_t c = 0; c < representative.size(); ++c) {
    const int rep = representative[c];
    for (int a = 0; a < k; ++a) {
      out.next[c][a] = result.state_map[d.next[rep][a]];
    }
    if (d.accepting.count(rep)) out.accepting.insert(static_cast<int>(c));
  }
  out.initial = result.state_map[d.initial];
  return result;
}

std::optional<DistinguishabilityCertificate> distinguish(const Dfa& d, int s,
                                                         int t) {
  const int n = static_cast<int>(d.states.size());
  if (s < 0 || s >= n || t < 0 || t >= n) {
    throw std::invalid_argument("distinguish: unknown state");
  }
  const int k = static_cast<int>(d.alphabet.symbols.size());
  const auto id = [n](int u, int v) { return u * n + v; };
  std::vector<int> parent(n * n, -2);  // -2 unvisited, -1 root
  std::vector<int> parent_symbol(n * n, -1);
  std::deque<int> queue{id(s, t)};
  parent[id(s, t)] = -1;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const int u = cur / n;
    const int v = cur % n;
    if (d.accepting.count(u) != d.accepting.count(v)) {
      Word witness;
      int node = cur;
      while (parent[node] != -1) {
        witness.push_back(d.alphabet.symbols[parent_symbol[node]]);
        node = parent[node];
      }
      std::reverse(witness.begin(), witness.end());
      return DistinguishabilityCertificate{s, t, witness};
    }
    for (int a = 0; a < k; ++a) {
      const int nxt = id(d.next[u][a], d.next[v][a]);
      if (parent[nxt] == -2) {
        parent[nxt] = cur;
        parent_symbol[nxt] = a;
        queue.push_back(nxt);
      }
    }
  }
  return std::nullopt;
}

bool check_forbidden_witness(const Dfa& d, int s, int t, const Word& x) {
  if (s == t) return false;
  if (d.run_from(s, x) != t) return false;
  if (d.run_from(t, x) != t) return false;
  const std::vector<bool> reach = reachable_from(d, t);
  bool some_accepting = false;
  bool some_rejecting = false;
  for (int u = 0; u < static_cast<int>(d.states.size()); ++u) {
    if (!reach[u]) continue;
    if (d.accepting.count(u)) {
      some_accepting = true;
    } else {
      some_rejecting = true;
    }
  }
  return some_accepting && some_rejecting;
}

std::optional<ForbiddenConstructionWitness> find_forbidden_construction(
    const Dfa& d) {
  const int n = static_cast<int>(d.states.size());
  const int k = static_cast<int>(d.alphabet.symbols.size());
  const auto id = [n](int u, int v) { return u * n + v; };

  // Candidate anchors: both an accepting and a non-accepting state must be
  // reachable from t.
  std::vector<bool> anchor_ok(n, false);
  for (int t = 0; t < n; ++t) {
    const std::vector<bool> reach = reachable_from(d, t);
    bool acc = false;
    bool rej = false;
    for (int u = 0; u < n; ++u) {
      if (!reach[u]) continue;
      (d.accepting.count(u) ? acc : rej) = true;
    }
    anchor_ok[t] = acc && rej;
  }

  std::optional<ForbiddenConstructionWitness> best;
  const auto better = [&](const ForbiddenConstructionWitness& w) {
    if (!best) return true;
    if (w.word.size() != best->word.size()) {
      return w.word.size() < best->word.size();
    }
    if (w.word != best->word) return w.word < best->word;
    if (w.s != best->s) return w.s < best->s;
    return w.t < best->t;
  };

  for (int t = 0; t < n; ++t) {
    if (!anchor_ok[t]) continue;
    for (int s = 0; s < n; ++s) {
      if (s == t) continue;
      // BFS in the synchronized product from (s, t) to (t, t); symbol-order
      // expansion makes the first shortest path lexicographically least.
      std::vector<int> parent(n * n, -2);
      std::vector<int> parent_symbol(n * n, -1);
      std::deque<int> queue{id(s, t)};
      parent[id(s, t)] = -1;
      while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        if (cur == id(t, t)) break;
        const int u = cur / n;
        const int v = cur % n;
        for (int a = 0; a < k; ++a) {
          const int nxt = id(d.next[u][a], d.next[v][a]);
          if (parent[nxt] == -2) {
            parent[nxt] = cur;
            parent_symbol[nxt] = a;
            queue.push_back(nxt);
          }
        }
      }
      if (parent[id(t, t)] == -2) continue;
      Word word;
      int node = id(t, t);
      while (parent[node] != -1) {
        word.push_back(d.alphabet.symbols[parent_symbol[node]]);
        node = parent[node];
      }
      std::reverse(word.begin(), word.end());
      ForbiddenConstructionWitness w{s, t, word};
      if (better(w)) best = w;
    }
  }
  return best;
}

}  // namespace qcfa
