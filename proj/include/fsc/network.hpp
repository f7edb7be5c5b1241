#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsc/symbols.hpp"

namespace fsc {

using StateId = std::int32_t;

struct Arc {
  Label label;
  StateId target = 0;

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.label == b.label && a.target == b.target;
  }
  friend auto operator<=>(const Arc& a, const Arc& b) = default;
};

// A finite-state machine over Labels. An acceptor when every label has
// upper == lower, a transducer otherwise. Treated as immutable once built;
// every operation returns a fresh network.
struct Network {
  StateId start = 0;
  std::vector<std::vector<Arc>> arcs;  // indexed by state id
  std::set<StateId> finals;
  std::set<SymbolId> sigma;  // declared alphabet; never contains reserved ids
  bool deterministic = false;

  StateId num_states() const { return static_cast<StateId>(arcs.size()); }

  std::size_t num_arcs() const {
    std::size_t n = 0;
    for (const auto& a : arcs) n += a.size();
    return n;
  }

  StateId add_state() {
    arcs.emplace_back();
    return static_cast<StateId>(arcs.size() - 1);
  }

  void add_arc(StateId src, Label label, StateId dst) {
    arcs[static_cast<std::size_t>(src)].push_back(Arc{label, dst});
    note_symbol(label.upper);
    note_symbol(label.lower);
  }

  void note_symbol(SymbolId s) {
    // BOUNDARY participates in sigma while rule machinery is being built;
    // it is stripped from final results together with auxiliary brackets.
    if (s >= kBoundary) sigma.insert(s);
  }

  bool is_final(StateId s) const { return finals.count(s) != 0; }

  bool is_relation() const {
    for (const auto& out : arcs)
      for (const Arc& a : out)
        if (a.label.upper != a.label.lower) return true;
    return false;
  }
};

// The empty language: one nonfinal state, no arcs.
inline Network empty_network() {
  Network n;
  n.add_state();
  return n;
}

// The language {epsilon}.
inline Network epsilon_network() {
  Network n;
  n.add_state();
  n.finals.insert(0);
  return n;
}

// Single symbol or symbol pair.
inline Network label_network(Label l) {
  Network n;
  n.add_state();
  n.add_state();
  n.add_arc(0, l, 1);
  n.finals.insert(1);
  return n;
}

inline Network symbol_network(SymbolId s) { return label_network(identity_label(s)); }

// The universal language ?* as an open-alphabet machine: one final state
// with an IDENTITY self-loop. Its sigma is empty, so IDENTITY covers every
// symbol; harmonization makes symbols of other operands explicit.
inline Network universal_network() {
  Network n;
  n.add_state();
  n.finals.insert(0);
  n.add_arc(0, identity_label(kIdentity), 0);
  return n;
}

// Sort arcs and drop duplicates. Keeps behavior, stabilizes serialization.
inline void normalize_arcs(Network& n) {
  for (auto& out : n.arcs) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

// Keep only states reachable from the start and co-reachable to a final
// state, renumbered densely in BFS order from the start. The empty result
// collapses to the canonical one-state empty network.
inline Network trim(const Network& n) {
  StateId ns = n.num_states();
  std::vector<char> reach(static_cast<std::size_t>(ns), 0);
  std::deque<StateId> queue;
  if (n.start < ns) {
    reach[static_cast<std::size_t>(n.start)] = 1;
    queue.push_back(n.start);
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
      if (!reach[static_cast<std::size_t>(a.target)]) {
        reach[static_cast<std::size_t>(a.target)] = 1;
        queue.push_back(a.target);
      }
  }
  // co-reachability over reversed arcs
  std::vector<std::vector<StateId>> rev(static_cast<std::size_t>(ns));
  for (StateId s = 0; s < ns; ++s)
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
      rev[static_cast<std::size_t>(a.target)].push_back(s);
  std::vector<char> coreach(static_cast<std::size_t>(ns), 0);
  for (StateId f : n.finals)
    if (f < ns && !coreach[static_cast<std::size_t>(f)]) {
      coreach[static_cast<std::size_t>(f)] = 1;
      queue.push_back(f);
    }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : rev[static_cast<std::size_t>(s)])
      if (!coreach[static_cast<std::size_t>(p)]) {
        coreach[static_cast<std::size_t>(p)] = 1;
        queue.push_back(p);
      }
  }

  std::vector<StateId> remap(static_cast<std::size_t>(ns), -1);
  Network out;
  out.sigma = n.sigma;
  auto live = [&](StateId s) {
    return reach[static_cast<std::size_t>(s)] && coreach[static_cast<std::size_t>(s)];
  };
  if (n.start >= ns || !live(n.start)) {
    out.add_state();
    return out;
  }
  remap[static_cast<std::size_t>(n.start)] = out.add_state();
  queue.push_back(n.start);
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)]) {
      if (!live(a.target)) continue;
      if (remap[static_cast<std::size_t>(a.target)] < 0) {
        remap[static_cast<std::size_t>(a.target)] = out.add_state();
        queue.push_back(a.target);
      }
    }
  }
  for (StateId s = 0; s < ns; ++s) {
    if (remap[static_cast<std::size_t>(s)] < 0) continue;
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)]) {
      if (!live(a.target)) continue;
      out.arcs[static_cast<std::size_t>(remap[static_cast<std::size_t>(s)])].push_back(
          Arc{a.label, remap[static_cast<std::size_t>(a.target)]});
    }
  }
  for (StateId f : n.finals)
    if (f < ns && remap[static_cast<std::size_t>(f)] >= 0)
      out.finals.insert(remap[static_cast<std::size_t>(f)]);
  normalize_arcs(out);
  return out;
}

// ---------------------------------------------------------------------------
// Text serialization: one arc per line `src<TAB>dst<TAB>upper<TAB>lower`,
// final states as single-field lines, start state is the source of the first
// line. States are renumbered so the start is 0 before writing.

inline void write_network(const Network& net, std::ostream& os) {
  Network n = trim(net);
  for (StateId s = 0; s < n.num_states(); ++s)
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
      os << s << '\t' << a.target << '\t' << symbol_name(a.label.upper) << '\t'
         << symbol_name(a.label.lower) << '\n';
  for (StateId f : n.finals) os << f << '\n';
}

inline void write_sigma(const Network& net, std::ostream& os) {
  for (SymbolId s : net.sigma) os << symbol_name(s) << '\n';
}

inline Network read_network(std::istream& is) {
  Network n;
  bool have_start = false;
  std::map<StateId, StateId> remap;
  auto state_of = [&](StateId file_id) {
    auto it = remap.find(file_id);
    if (it != remap.end()) return it->second;
    StateId s = n.add_state();
    remap.emplace(file_id, s);
    return s;
  };
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() == 1) {
      n.finals.insert(state_of(static_cast<StateId>(std::stol(fields[0]))));
    } else if (fields.size() == 4) {
      StateId src = state_of(static_cast<StateId>(std::stol(fields[0])));
      StateId dst = state_of(static_cast<StateId>(std::stol(fields[1])));
      if (!have_start) {
        n.start = src;
        have_start = true;
      }
      n.add_arc(src, Label{intern_symbol(fields[2]), intern_symbol(fields[3])}, dst);
    } else {
      throw std::runtime_error("malformed network line: " + line);
    }
  }
  if (n.num_states() == 0) n.add_state();
  if (!have_start) n.start = 0;
  return n;
}

inline void save_network(const Network& n, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_network(n, os);
  std::ofstream ss(path + ".sigma");
  if (!ss) throw std::runtime_error("cannot open for writing: " + path + ".sigma");
  write_sigma(n, ss);
}

inline Network load_network(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  Network n = read_network(is);
  std::ifstream ss(path + ".sigma");
  if (ss) {
    std::string line;
    while (std::getline(ss, line))
      if (!line.empty()) {
        SymbolId s = intern_symbol(line);
        if (s >= kBoundary) n.sigma.insert(s);
      }
  }
  return n;
}

}  // namespace fsc
