#pragma once

// Independent reference implementations used to check the library:
//  - a bounded set-language algebra (strings and string pairs up to a
//    length bound) mirroring the rational operations, and
//  - a site-selection rewrite oracle computing upward-oriented conditional
//    replacement directly on strings.
// Both are deliberately naive; they share no code with the library.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using StrSet = std::set<std::string>;
using Pair = std::pair<std::string, std::string>;
using PairSet = std::set<Pair>;

// All strings over `alphabet` (one char per symbol) up to `maxlen`.
inline StrSet universe(const std::string& alphabet, std::size_t maxlen) {
  StrSet out{""};
  StrSet layer{""};
  for (std::size_t n = 0; n < maxlen; ++n) {
    StrSet next;
    for (const std::string& s : layer)
      for (char c : alphabet) next.insert(s + c);
    out.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline StrSet set_union(const StrSet& a, const StrSet& b) {
  StrSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline StrSet set_intersect(const StrSet& a, const StrSet& b) {
  StrSet out;
  for (const auto& s : a)
    if (b.count(s)) out.insert(s);
  return out;
}

inline StrSet set_minus(const StrSet& a, const StrSet& b) {
  StrSet out;
  for (const auto& s : a)
    if (!b.count(s)) out.insert(s);
  return out;
}

inline StrSet set_complement(const StrSet& a, const StrSet& univ) { return set_minus(univ, a); }

inline StrSet set_concat(const StrSet& a, const StrSet& b, std::size_t maxlen) {
  StrSet out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.size() + y.size() <= maxlen) out.insert(x + y);
  return out;
}

inline StrSet set_star(const StrSet& a, std::size_t maxlen) {
  StrSet out{""};
  StrSet layer{""};
  while (true) {
    StrSet next = set_concat(layer, a, maxlen);
    next = set_minus(next, out);
    if (next.empty()) break;
    out.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline StrSet set_plus(const StrSet& a, std::size_t maxlen) {
  return set_concat(a, set_star(a, maxlen), maxlen);
}

inline StrSet set_option(const StrSet& a) {
  StrSet out = a;
  out.insert("");
  return out;
}

inline StrSet set_contains(const StrSet& a, const std::string& alphabet, std::size_t maxlen) {
  StrSet out;
  for (const std::string& u : universe(alphabet, maxlen))
    for (const auto& s : a)
      if (u.find(s) != std::string::npos) {
        out.insert(u);
        break;
      }
  return out;
}

// B-strings insertable anywhere between the symbols of an A-string.
inline StrSet set_ignore(const StrSet& a, const StrSet& b, std::size_t maxlen) {
  StrSet out = a;
  bool grew = true;
  while (grew) {
    grew = false;
    StrSet next;
    for (const auto& s : out)
      for (const auto& ins : b) {
        if (ins.empty() || s.size() + ins.size() > maxlen) continue;
        for (std::size_t i = 0; i <= s.size(); ++i)
          next.insert(s.substr(0, i) + ins + s.substr(i));
      }
    for (const auto& s : next)
      if (out.insert(s).second) grew = true;
  }
  return out;
}

inline StrSet set_ignore_inside(const StrSet& a, const StrSet& b, std::size_t maxlen) {
  StrSet ign = set_ignore(a, b, maxlen);
  StrSet out;
  for (const auto& s : ign) {
    bool edge = false;
    for (const auto& x : b) {
      if (x.empty() || x.size() > s.size()) continue;
      if (s.compare(0, x.size(), x) == 0 || s.compare(s.size() - x.size(), x.size(), x) == 0)
        edge = true;
    }
    if (!edge) out.insert(s);
  }
  return out;
}

inline PairSet pair_crossproduct(const StrSet& a, const StrSet& b) {
  PairSet out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert({x, y});
  return out;
}

inline PairSet pair_compose(const PairSet& a, const PairSet& b) {
  PairSet out;
  for (const auto& [x, m1] : a)
    for (const auto& [m2, y] : b)
      if (m1 == m2) out.insert({x, y});
  return out;
}

inline PairSet pair_invert(const PairSet& a) {
  PairSet out;
  for (const auto& [x, y] : a) out.insert({y, x});
  return out;
}

// ---------------------------------------------------------------------------
// Site-selection rewrite oracle for conditional parallel replacement.
// Contexts are membership predicates over a boundary-padded string (one
// char per symbol, '#' at both edges):
//   left(padded, pos)  — true iff some context instance ends at `pos`
//   right(padded, pos) — true iff some context instance starts at `pos`
// The orientation decides which side (input or output) each predicate
// is evaluated on.

using CtxFn = std::function<bool(const std::string&, std::size_t)>;

struct OracleCtx {
  CtxFn left, right;
};

struct OracleRule {
  StrSet upper;        // non-empty replacement targets
  StrSet lower;        // replacement choices
  StrSet empty_lower;  // insertion choices; empty set = no insertion part
  std::vector<OracleCtx> contexts;  // site is licensed by any one of these
};

struct Orient {
  bool left_on_output = false;
  bool right_on_output = false;
};
inline Orient upward() { return {false, false}; }
inline Orient rightward() { return {true, false}; }
inline Orient leftward() { return {false, true}; }
inline Orient downward() { return {true, true}; }

namespace detail {

struct Site {
  std::size_t rule, from, to;  // [from, to) in the padded input; from==to inserts
  std::string repl;            // chosen replacement text
};

inline bool overlaps_span(std::size_t af, std::size_t at, std::size_t bf, std::size_t bt) {
  if (af == at) return bf < af && af < bt;
  if (bf == bt) return af < bf && bf < at;
  return af < bt && bf < at;
}

struct Config {
  std::vector<Site> sites;  // chosen, sorted by (from, to)
};

// Assemble the output for a configuration and record, for every padded
// input position not strictly inside a replaced span, its output position
// before and after insertions applied there.
struct Assembly {
  std::string out_padded;  // '#' + output + '#'
  std::vector<std::size_t> before, after;  // indexed by input position
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // per site: [from,to) in out_padded
};

inline Assembly assemble(const std::string& padded, const Config& cfg) {
  Assembly a;
  std::size_t n = padded.size();
  a.before.assign(n + 1, std::string::npos);
  a.after.assign(n + 1, std::string::npos);
  a.spans.resize(cfg.sites.size());
  std::string out = "#";
  std::size_t pos = 1;
  while (true) {
    if (a.before[pos] == std::string::npos) a.before[pos] = out.size();
    // insertions at this position, in site order
    for (std::size_t k = 0; k < cfg.sites.size(); ++k) {
      const Site& s = cfg.sites[k];
      if (s.from == s.to && s.from == pos) {
        a.spans[k] = {out.size(), out.size() + s.repl.size()};
        out += s.repl;
      }
    }
    a.after[pos] = out.size();
    if (pos == padded.size() - 1) break;
    bool replaced = false;
    for (std::size_t k = 0; k < cfg.sites.size(); ++k) {
      const Site& s = cfg.sites[k];
      if (s.from == pos && s.to > s.from) {
        a.spans[k] = {out.size(), out.size() + s.repl.size()};
        out += s.repl;
        pos = s.to;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out += padded[pos];
      ++pos;
    }
  }
  out += '#';
  a.out_padded = out;
  return a;
}

inline bool ctx_ok(const OracleRule& rule, const Orient& o, const std::string& in_padded,
                   std::size_t in_l, std::size_t in_r, const std::string& out_padded,
                   std::size_t out_l, std::size_t out_r) {
  for (const OracleCtx& c : rule.contexts) {
    bool l = o.left_on_output ? c.left(out_padded, out_l) : c.left(in_padded, in_l);
    bool r = o.right_on_output ? c.right(out_padded, out_r) : c.right(in_padded, in_r);
    if (l && r) return true;
  }
  return false;
}

}  // namespace detail

// All outputs of the parallel replacement of `rules` applied to `input`.
// Enumerates every choice of non-overlapping sites and replacement texts,
// assembles the output, then validates contexts on the side the
// orientation dictates; for obligatory replacement additionally rejects
// configurations that leave a licensed, uncovered site unreplaced.
inline StrSet rewrite(const std::vector<OracleRule>& rules, const std::string& input,
                      Orient orient = upward(), bool optional = false) {
  std::string padded = "#" + input + "#";
  std::size_t last = padded.size() - 1;  // positions 1..last usable; spans end <= last

  struct Cand {
    std::size_t rule, from, to;
  };
  std::vector<Cand> ne, es;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (std::size_t i = 1; i <= last; ++i) {
      if (!rules[r].empty_lower.empty()) es.push_back({r, i, i});
      for (std::size_t j = i + 1; j <= last; ++j)
        if (rules[r].upper.count(padded.substr(i, j - i))) ne.push_back({r, i, j});
    }
  }

  StrSet outputs;
  std::vector<detail::Site> chosen;
  std::vector<std::size_t> skipped_ne;  // indices into ne left unreplaced

  std::function<void()> finish;  // forward: validate current configuration

  // choose insertions after NE sites are fixed
  std::function<void(std::size_t)> pick_es = [&](std::size_t k) {
    if (k == es.size()) {
      finish();
      return;
    }
    const Cand& e = es[k];
    bool inside = false;
    for (const auto& s : chosen)
      if (s.from < s.to && s.from < e.from && e.from < s.to) inside = true;
    // skip this insertion point
    pick_es(k + 1);
    if (inside) return;
    for (const std::string& w : rules[e.rule].empty_lower) {
      chosen.push_back({e.rule, e.from, e.to, w});
      pick_es(k + 1);
      chosen.pop_back();
    }
  };

  std::function<void(std::size_t)> pick_ne = [&](std::size_t k) {
    if (k == ne.size()) {
      pick_es(0);
      return;
    }
    const Cand& c = ne[k];
    skipped_ne.push_back(k);
    pick_ne(k + 1);
    skipped_ne.pop_back();
    for (const auto& s : chosen)
      if (detail::overlaps_span(s.from, s.to, c.from, c.to)) return;
    for (const std::string& w : rules[c.rule].lower) {
      chosen.push_back({c.rule, c.from, c.to, w});
      pick_ne(k + 1);
      chosen.pop_back();
    }
  };

  finish = [&]() {
    detail::Config cfg{chosen};
    std::stable_sort(cfg.sites.begin(), cfg.sites.end(),
                     [](const detail::Site& a, const detail::Site& b) {
                       return a.from != b.from ? a.from < b.from : a.to < b.to;
                     });
    detail::Assembly a = detail::assemble(padded, cfg);
    // every chosen site's contexts must license it
    for (std::size_t k = 0; k < cfg.sites.size(); ++k) {
      const detail::Site& s = cfg.sites[k];
      std::size_t out_l = a.spans[k].first, out_r = a.spans[k].second;
      if (!detail::ctx_ok(rules[s.rule], orient, padded, s.from, s.to, a.out_padded, out_l,
                          out_r))
        return;
    }
    // When a context is checked on the output side, the bracket that would
    // force an unreplaced site can be absorbed into an adjacent replaced
    // span, so obligatoriness does not bind at span edges.
    auto absorbed_right = [&](std::size_t out_r) {
      if (!orient.right_on_output) return false;
      for (const auto& sp : a.spans)
        if (sp.first == out_r) return true;
      return false;
    };
    auto absorbed_left = [&](std::size_t out_l) {
      if (!orient.left_on_output) return false;
      for (const auto& sp : a.spans)
        if (sp.second == out_l) return true;
      return false;
    };
    if (!optional) {
      // no licensed, uncovered NE site may stay unreplaced
      for (std::size_t k : skipped_ne) {
        const Cand& c = ne[k];
        bool covered = false;
        for (const auto& s : chosen)
          if (s.from < s.to && detail::overlaps_span(s.from, s.to, c.from, c.to)) covered = true;
        if (covered) continue;
        std::size_t out_l = a.after[c.from], out_r = a.before[c.to];
        if (absorbed_right(out_r) || absorbed_left(out_l)) continue;
        if (detail::ctx_ok(rules[c.rule], orient, padded, c.from, c.to, a.out_padded, out_l,
                           out_r))
          return;
      }
      // no licensed insertion point may be left empty
      for (const Cand& e : es) {
        bool used = false, inside = false;
        for (const auto& s : chosen) {
          if (s.from == s.to && s.rule == e.rule && s.from == e.from) used = true;
          if (s.from < s.to && s.from < e.from && e.from < s.to) inside = true;
        }
        if (used || inside) continue;
        std::size_t out_p = a.before[e.from];
        if (absorbed_right(out_p) || absorbed_left(out_p)) continue;
        if (detail::ctx_ok(rules[e.rule], orient, padded, e.from, e.to, a.out_padded, out_p,
                           out_p))
          return;
      }
    }
    outputs.insert(a.out_padded.substr(1, a.out_padded.size() - 2));
  };

  pick_ne(0);
  return outputs;
}

// Convenience context predicates.
inline CtxFn always() {
  return [](const std::string&, std::size_t) { return true; };
}
inline CtxFn ends_with(std::string t) {
  return [t](const std::string& s, std::size_t pos) {
    return pos >= t.size() && s.compare(pos - t.size(), t.size(), t) == 0;
  };
}
inline CtxFn starts_with(std::string t) {
  return [t](const std::string& s, std::size_t pos) {
    return pos + t.size() <= s.size() && s.compare(pos, t.size(), t) == 0;
  };
}

inline OracleCtx ctx(CtxFn l, CtxFn r) { return OracleCtx{std::move(l), std::move(r)}; }
inline OracleCtx no_ctx() { return OracleCtx{always(), always()}; }

}  // namespace oracle
