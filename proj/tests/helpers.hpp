#pragma once

// Shared test utilities: compiling expressions, collecting apply outputs
// and bounded language/pair sets from networks.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsc/script.hpp"

namespace testutil {

inline fsc::Network rx(const std::string& src, const fsc::Environment& env = {}) {
  return fsc::compile(src, env);
}

inline std::set<std::string> outs(const fsc::Network& n, const std::string& input,
                                  fsc::ApplyDir dir = fsc::ApplyDir::Down,
                                  std::size_t limit = 2000) {
  fsc::ApplyResult r = fsc::apply(n, input, dir, limit);
  return {r.outputs.begin(), r.outputs.end()};
}

// Outputs of length <= maxlen; requires that enumeration reached past that
// length (or exhausted the language) so the bounded set is complete.
inline std::set<std::string> outs_bounded(const fsc::Network& n, const std::string& input,
                                          std::size_t maxlen,
                                          fsc::ApplyDir dir = fsc::ApplyDir::Down,
                                          std::size_t limit = 50000) {
  fsc::ApplyResult r = fsc::apply(n, input, dir, limit);
  std::set<std::string> out;
  bool complete = !r.truncated;
  for (const std::string& s : r.outputs) {
    if (s.size() <= maxlen)
      out.insert(s);
    else
      complete = true;  // shortest-first: everything <= maxlen already seen
  }
  if (!complete) throw std::runtime_error("outs_bounded: enumeration limit too small");
  return out;
}

// The language of an acceptor, up to maxlen symbols.
inline std::set<std::string> lang_bounded(const fsc::Network& n, std::size_t maxlen,
                                          std::size_t limit = 50000) {
  fsc::ApplyResult r = fsc::enumerate_strings(n, limit);
  std::set<std::string> out;
  bool complete = !r.truncated;
  for (const std::string& s : r.outputs) {
    if (s.size() <= maxlen)
      out.insert(s);
    else
      complete = true;
  }
  if (!complete) throw std::runtime_error("lang_bounded: enumeration limit too small");
  return out;
}

// Full finite language of an acceptor; throws if truncated.
inline std::set<std::string> lang(const fsc::Network& n, std::size_t limit = 50000) {
  fsc::ApplyResult r = fsc::enumerate_strings(n, limit);
  if (r.truncated) throw std::runtime_error("lang: language not finite within limit");
  return {r.outputs.begin(), r.outputs.end()};
}

// Full finite pair set of a transducer; throws if truncated.
inline std::set<std::pair<std::string, std::string>> pairs(const fsc::Network& n,
                                                           std::size_t limit = 50000) {
  fsc::ApplyResult r = fsc::enumerate_pairs(n, limit);
  if (r.truncated) throw std::runtime_error("pairs: relation not finite within limit");
  std::set<std::pair<std::string, std::string>> out;
  for (const std::string& line : r.outputs) {
    std::size_t tab = line.find('\t');
    out.insert({line.substr(0, tab), tab == std::string::npos ? "" : line.substr(tab + 1)});
  }
  return out;
}

inline std::set<std::string> strset(std::initializer_list<const char*> xs) {
  std::set<std::string> out;
  for (const char* x : xs) out.insert(x);
  return out;
}

}  // namespace testutil
