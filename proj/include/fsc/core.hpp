#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "fsc/network.hpp"

namespace fsc {

// ---------------------------------------------------------------------------
// Sigma harmonization. IDENTITY / UNKNOWN on an arc denote symbols outside
// the owning network's sigma. Before a binary operation, each operand's
// unknown-symbol arcs are expanded with explicit arcs for every symbol the
// other operand knows, so that both machines agree on what "unknown" means.

inline Network expand_unknowns(const Network& n, const std::set<SymbolId>& other_sigma) {
  std::vector<SymbolId> fresh;
  for (SymbolId s : other_sigma)
    if (!n.sigma.count(s)) fresh.push_back(s);
  if (fresh.empty()) return n;

  Network out = n;
  for (SymbolId s : fresh) out.sigma.insert(s);
  for (StateId q = 0; q < n.num_states(); ++q) {
    for (const Arc& a : n.arcs[static_cast<std::size_t>(q)]) {
      const Label& l = a.label;
      auto& dst = out.arcs[static_cast<std::size_t>(q)];
      if (l.upper == kIdentity && l.lower == kIdentity) {
        for (SymbolId s : fresh) dst.push_back(Arc{Label{s, s}, a.target});
      } else if (l.upper == kUnknown && l.lower == kUnknown) {
        for (SymbolId s : fresh) {
          dst.push_back(Arc{Label{s, kUnknown}, a.target});
          dst.push_back(Arc{Label{kUnknown, s}, a.target});
          for (SymbolId t : fresh)
            if (s != t) dst.push_back(Arc{Label{s, t}, a.target});
        }
      } else if (l.upper == kUnknown) {
        for (SymbolId s : fresh) dst.push_back(Arc{Label{s, l.lower}, a.target});
      } else if (l.lower == kUnknown) {
        for (SymbolId s : fresh) dst.push_back(Arc{Label{l.upper, s}, a.target});
      }
    }
  }
  normalize_arcs(out);
  return out;
}

inline void harmonize(Network& a, Network& b) {
  Network ea = expand_unknowns(a, b.sigma);
  Network eb = expand_unknowns(b, a.sigma);
  a = std::move(ea);
  b = std::move(eb);
}

// ---------------------------------------------------------------------------
// Epsilon removal: eliminates EPSILON:EPSILON arcs via forward closure.
// One-sided epsilon labels carry relation content and are kept.

inline bool is_pure_epsilon(const Label& l) {
  return l.upper == kEpsilon && l.lower == kEpsilon;
}

inline Network remove_epsilons(const Network& n) {
  StateId ns = n.num_states();
  std::vector<std::set<StateId>> closure(static_cast<std::size_t>(ns));
  for (StateId s = 0; s < ns; ++s) {
    std::deque<StateId> queue{s};
    closure[static_cast<std::size_t>(s)].insert(s);
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      for (const Arc& a : n.arcs[static_cast<std::size_t>(q)])
        if (is_pure_epsilon(a.label) && closure[static_cast<std::size_t>(s)].insert(a.target).second)
          queue.push_back(a.target);
    }
  }
  Network out;
  out.sigma = n.sigma;
  out.start = n.start;
  for (StateId s = 0; s < ns; ++s) out.add_state();
  for (StateId s = 0; s < ns; ++s) {
    for (StateId c : closure[static_cast<std::size_t>(s)]) {
      if (n.is_final(c)) out.finals.insert(s);
      for (const Arc& a : n.arcs[static_cast<std::size_t>(c)])
        if (!is_pure_epsilon(a.label))
          out.arcs[static_cast<std::size_t>(s)].push_back(a);
    }
  }
  normalize_arcs(out);
  return trim(out);
}

// ---------------------------------------------------------------------------
// Subset construction over atomic labels (acceptor view of the pair
// alphabet). Input is epsilon-removed internally.

inline Network determinize(const Network& input) {
  Network n = remove_epsilons(input);
  Network out;
  out.sigma = n.sigma;
  std::map<std::vector<StateId>, StateId> subset_id;
  std::deque<std::vector<StateId>> queue;

  std::vector<StateId> start{n.start};
  subset_id.emplace(start, out.add_state());
  queue.push_back(start);
  if (n.is_final(n.start)) out.finals.insert(0);

  while (!queue.empty()) {
    std::vector<StateId> cur = queue.front();
    queue.pop_front();
    StateId cur_id = subset_id[cur];
    std::map<Label, std::set<StateId>> moves;
    for (StateId s : cur)
      for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
        moves[a.label].insert(a.target);
    for (const auto& [label, targets] : moves) {
      std::vector<StateId> next(targets.begin(), targets.end());
      auto it = subset_id.find(next);
      StateId next_id;
      if (it == subset_id.end()) {
        next_id = out.add_state();
        subset_id.emplace(next, next_id);
        queue.push_back(next);
        for (StateId t : next)
          if (n.is_final(t)) {
            out.finals.insert(next_id);
            break;
          }
      } else {
        next_id = it->second;
      }
      out.arcs[static_cast<std::size_t>(cur_id)].push_back(Arc{label, next_id});
    }
  }
  normalize_arcs(out);
  out.deterministic = true;
  return out;
}

// ---------------------------------------------------------------------------
// Minimization: deterministic acceptor over the pair alphabet, reduced by
// partition refinement, then renumbered canonically (BFS over sorted arcs).

inline Network renumber_canonical(const Network& n) {
  Network t = trim(n);  // trim already renumbers BFS-first over sorted arcs
  t.deterministic = n.deterministic;
  return t;
}

inline Network minimize(const Network& input) {
  Network n = trim(determinize(input));
  StateId ns = n.num_states();
  std::vector<int> cls(static_cast<std::size_t>(ns));
  for (StateId s = 0; s < ns; ++s) cls[static_cast<std::size_t>(s)] = n.is_final(s) ? 1 : 0;

  while (true) {
    std::map<std::pair<int, std::vector<std::pair<Label, int>>>, int> sig_to_class;
    std::vector<int> next(static_cast<std::size_t>(ns));
    for (StateId s = 0; s < ns; ++s) {
      std::vector<std::pair<Label, int>> moves;
      for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
        moves.emplace_back(a.label, cls[static_cast<std::size_t>(a.target)]);
      std::sort(moves.begin(), moves.end());
      auto key = std::make_pair(cls[static_cast<std::size_t>(s)], std::move(moves));
      auto [it, inserted] = sig_to_class.emplace(std::move(key), static_cast<int>(sig_to_class.size()));
      next[static_cast<std::size_t>(s)] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }

  int nclasses = 0;
  for (int c : cls) nclasses = std::max(nclasses, c + 1);
  Network out;
  out.sigma = n.sigma;
  for (int i = 0; i < nclasses; ++i) out.add_state();
  out.start = cls[static_cast<std::size_t>(n.start)];
  for (StateId s = 0; s < ns; ++s) {
    if (n.is_final(s)) out.finals.insert(cls[static_cast<std::size_t>(s)]);
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
      out.arcs[static_cast<std::size_t>(cls[static_cast<std::size_t>(s)])].push_back(
          Arc{a.label, cls[static_cast<std::size_t>(a.target)]});
  }
  normalize_arcs(out);
  out.deterministic = true;
  return renumber_canonical(out);
}

// ---------------------------------------------------------------------------
// Completion over sigma plus IDENTITY: total transition function via a
// nonfinal sink. Acceptor view.

inline Network complete(const Network& input, const std::set<SymbolId>& sigma) {
  Network n = determinize(input);
  for (SymbolId s : sigma) n.sigma.insert(s);
  std::set<SymbolId> letters = n.sigma;
  letters.insert(kIdentity);
  StateId sink = n.add_state();
  for (StateId q = 0; q < n.num_states(); ++q) {
    std::set<SymbolId> present;
    for (const Arc& a : n.arcs[static_cast<std::size_t>(q)]) present.insert(a.label.upper);
    for (SymbolId s : letters)
      if (!present.count(s))
        n.arcs[static_cast<std::size_t>(q)].push_back(Arc{identity_label(s), sink});
  }
  normalize_arcs(n);
  n.deterministic = true;
  return n;
}

// ---------------------------------------------------------------------------
// Pair-string equivalence after sigma harmonization.

inline bool isomorphic_canonical(const Network& a, const Network& b) {
  if (a.num_states() != b.num_states()) return false;
  if (a.start != b.start || a.finals != b.finals) return false;
  return a.arcs == b.arcs;
}

inline bool equivalent(const Network& a, const Network& b) {
  Network ha = a, hb = b;
  harmonize(ha, hb);
  return isomorphic_canonical(minimize(ha), minimize(hb));
}

}  // namespace fsc
