#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "fsc/algebra.hpp"

namespace fsc {

struct TokenizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApplyResult {
  std::vector<std::string> outputs;  // sorted shortest-first, then lexicographic
  bool truncated = false;
  std::size_t limit = 0;
};

inline constexpr std::size_t kDefaultLimit = 1000;

// ---------------------------------------------------------------------------
// Input tokenization: greedy longest match against the network's sigma
// names, falling back to one symbol per character.

inline std::vector<SymbolId> tokenize(const std::string& input, const Network& net) {
  std::vector<std::string> names;
  for (SymbolId s : net.sigma)
    if (s > kBoundary) names.push_back(symbol_name(s));
  std::sort(names.begin(), names.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::vector<SymbolId> out;
  std::size_t i = 0;
  while (i < input.size()) {
    const std::string* hit = nullptr;
    for (const std::string& name : names)
      if (input.compare(i, name.size(), name) == 0) {
        hit = &name;
        break;
      }
    if (hit) {
      out.push_back(intern_symbol(*hit));
      i += hit->size();
    } else {
      char c = input[i];
      if (std::isspace(static_cast<unsigned char>(c)))
        throw TokenizationError("whitespace in input string at offset " + std::to_string(i));
      out.push_back(intern_symbol(std::string(1, c)));
      ++i;
    }
  }
  return out;
}

inline Network word_network(const std::vector<SymbolId>& word) {
  Network n;
  n.add_state();
  for (SymbolId s : word) {
    StateId next = n.add_state();
    n.add_arc(next - 1, identity_label(s), next);
  }
  n.finals.insert(n.num_states() - 1);
  return n;
}

// ---------------------------------------------------------------------------
// String enumeration from an acceptor: shortest strings first, ties broken
// by symbol-name lexicographic order. If the trimmed acceptor is cyclic its
// language is infinite and the result is truncated at the limit.

namespace detail {

inline std::string render_symbol(SymbolId s) {
  if (s == kUnknown || s == kIdentity) return "?";
  return symbol_name(s);
}

}  // namespace detail

inline ApplyResult enumerate_strings(const Network& input, std::size_t limit = kDefaultLimit) {
  Network n = minimize(input);
  ApplyResult res;
  res.limit = limit;
  if (n.finals.empty()) return res;

  // Frontier of (rendered-prefix, state) pairs in lexicographic order; the
  // machine is deterministic and trimmed, so distinct frontier entries denote
  // distinct strings and every entry leads to at least one accepted string.
  std::vector<std::pair<std::string, StateId>> frontier{{"", n.start}};
  while (!frontier.empty()) {
    for (const auto& [prefix, s] : frontier) {
      if (!n.is_final(s)) continue;
      if (res.outputs.size() == limit) {
        res.truncated = true;
        return res;
      }
      res.outputs.push_back(prefix);
    }
    std::vector<std::pair<std::string, StateId>> next;
    for (const auto& [prefix, s] : frontier)
      for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
        next.emplace_back(prefix + detail::render_symbol(a.label.upper), a.target);
    std::sort(next.begin(), next.end());
    if (!next.empty() && res.outputs.size() == limit) {
      res.truncated = true;
      return res;
    }
    frontier = std::move(next);
  }
  return res;
}

enum class ApplyDir { Up, Down };

// Apply a network to an input string. Down feeds the input to the upper side
// and reads the lower side; Up is the converse.
inline ApplyResult apply(const Network& net, const std::string& input, ApplyDir dir,
                         std::size_t limit = kDefaultLimit) {
  Network word = word_network(tokenize(input, net));
  Network result = dir == ApplyDir::Down ? compose_nets(word, net) : compose_nets(net, word);
  Network outputs = project_net(result, dir == ApplyDir::Down ? Side::Lower : Side::Upper);
  return enumerate_strings(outputs, limit);
}

inline ApplyResult enumerate_words(const Network& net, Side side,
                                   std::size_t limit = kDefaultLimit) {
  return enumerate_strings(project_net(net, side), limit);
}

// Enumerate pair strings as `upper<TAB>lower` lines, shortest paths first.
inline ApplyResult enumerate_pairs(const Network& input, std::size_t limit = kDefaultLimit) {
  Network n = minimize(input);
  ApplyResult res;
  res.limit = limit;
  if (n.finals.empty()) return res;

  struct Entry {
    std::string upper, lower;
    StateId state;
    auto key() const { return std::tie(upper, lower); }
  };
  std::vector<Entry> frontier{{"", "", n.start}};
  std::set<std::string> seen;  // one-sided epsilons let distinct paths render alike
  while (!frontier.empty()) {
    for (const Entry& e : frontier) {
      if (!n.is_final(e.state)) continue;
      std::string line = e.upper + "\t" + e.lower;
      if (!seen.insert(line).second) continue;
      if (res.outputs.size() == limit) {
        res.truncated = true;
        return res;
      }
      res.outputs.push_back(std::move(line));
    }
    std::vector<Entry> next;
    for (const Entry& e : frontier)
      for (const Arc& a : n.arcs[static_cast<std::size_t>(e.state)]) {
        Entry x = e;
        if (a.label.upper != kEpsilon) x.upper += detail::render_symbol(a.label.upper);
        if (a.label.lower != kEpsilon) x.lower += detail::render_symbol(a.label.lower);
        x.state = a.target;
        next.push_back(std::move(x));
      }
    std::sort(next.begin(), next.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.upper, a.lower, a.state) < std::tie(b.upper, b.lower, b.state);
    });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Entry& a, const Entry& b) {
                             return a.key() == b.key() && a.state == b.state;
                           }),
               next.end());
    if (!next.empty() && res.outputs.size() == limit) {
      res.truncated = true;
      return res;
    }
    frontier = std::move(next);
  }
  return res;
}

}  // namespace fsc
