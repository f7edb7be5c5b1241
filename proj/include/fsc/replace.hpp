#pragma once

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsc/algebra.hpp"

namespace fsc {

// Which side each context is checked on is realized by the order in which
// the context constraints are composed around the replacement relation.
enum class Orientation { Upward, Right, Left, Downward };

// Forward maps upper to lower unambiguously, inverse the opposite,
// bidirectional both ways.
enum class Direction { Forward, Inverse, Bidirectional };

// One expanded replacement: one UPPER, one LOWER, one LEFT and one RIGHT.
// Unspecified contexts are stored as the universal language.
struct ElementaryRule {
  Network upper;
  Network lower;
  Network left;
  Network right;
  bool empty_upper = false;   // UPPER denotes exactly {epsilon}
  bool from_dot_brackets = false;  // originated from [. .] (no Kleene star on LOWER)
};

// A parsed-but-unexpanded brace group: pairwise U_i -> L_i plus shared
// alternative contexts.
struct RuleBlock {
  std::vector<Network> uppers;
  std::vector<Network> lowers;
  std::vector<bool> dotted;  // per upper: wrapped in [. .]
  std::vector<std::pair<std::optional<Network>, std::optional<Network>>> contexts;
};

struct RuleSetSpec {
  std::vector<RuleBlock> blocks;
  Orientation orientation = Orientation::Upward;
  bool optional = false;
  Direction direction = Direction::Forward;
};

// Auxiliary bracket symbols for one compilation: one pair per elementary
// rule, separate series for empty and non-empty UPPER. Fresh reserved-style
// spellings keep them out of every user sigma.
struct BracketAlphabet {
  std::vector<SymbolId> left_ne, right_ne;  // <_1..<_n, >_1..>_n
  std::vector<SymbolId> left_e, right_e;    // <_1E..<_mE, >_1E..>_mE

  std::vector<SymbolId> all_left() const {
    std::vector<SymbolId> v = left_e;
    v.insert(v.end(), left_ne.begin(), left_ne.end());
    return v;
  }
  std::vector<SymbolId> all_right() const {
    std::vector<SymbolId> v = right_e;
    v.insert(v.end(), right_ne.begin(), right_ne.end());
    return v;
  }
  std::vector<SymbolId> all_e() const {
    std::vector<SymbolId> v = left_e;
    v.insert(v.end(), right_e.begin(), right_e.end());
    return v;
  }
  std::vector<SymbolId> all_ne() const {
    std::vector<SymbolId> v = left_ne;
    v.insert(v.end(), right_ne.begin(), right_ne.end());
    return v;
  }
  std::vector<SymbolId> all() const {
    std::vector<SymbolId> v = all_e();
    auto ne = all_ne();
    v.insert(v.end(), ne.begin(), ne.end());
    return v;
  }
};

namespace detail {

inline Network symbols_union(const std::vector<SymbolId>& syms) {
  Network n;
  n.add_state();
  n.add_state();
  for (SymbolId s : syms) n.add_arc(0, identity_label(s), 1);
  n.finals.insert(1);
  if (syms.empty()) return empty_network();
  return n;
}

inline std::vector<SymbolId> without(std::vector<SymbolId> v, SymbolId drop) {
  std::erase(v, drop);
  return v;
}

// Declare extra symbols in a network's sigma so that IDENTITY arcs (the
// regex "?") never cover them inside the rule machinery.
inline Network with_sigma(Network n, const std::set<SymbolId>& extra) {
  for (SymbolId s : extra) n.sigma.insert(s);
  return n;
}

// The universal language over the working alphabet: explicit loops for the
// auxiliary symbols plus an IDENTITY loop for everything truly unknown.
inline Network universal_over(const std::set<SymbolId>& working) {
  Network n;
  n.add_state();
  n.finals.insert(0);
  n.add_arc(0, identity_label(kIdentity), 0);
  for (SymbolId s : working) n.add_arc(0, identity_label(s), 0);
  return n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Preparatory transformations.

// Cartesian expansion of (replacement pairs x context pairs).
inline std::vector<ElementaryRule> expand_rules(const RuleBlock& block) {
  std::vector<ElementaryRule> out;
  std::vector<std::pair<std::optional<Network>, std::optional<Network>>> contexts = block.contexts;
  if (contexts.empty()) contexts.push_back({std::nullopt, std::nullopt});
  for (std::size_t i = 0; i < block.uppers.size(); ++i) {
    for (const auto& [left, right] : contexts) {
      ElementaryRule r;
      r.upper = block.uppers[i];
      r.lower = block.lowers[i];
      r.from_dot_brackets = block.dotted.empty() ? false : block.dotted[i];
      // Unspecified contexts are the empty string: every position qualifies.
      r.left = left ? *left : epsilon_network();
      r.right = right ? *right : epsilon_network();
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline bool accepts_epsilon(const Network& n) {
  Network e = remove_epsilons(n);
  return e.is_final(e.start);
}

inline bool denotes_only_epsilon(const Network& n) {
  return equivalent(n, epsilon_network());
}

// Split into the non-empty-UPPER and empty-UPPER groups. A rule whose UPPER
// contains epsilon without being {epsilon} lands in both, with UPPER minus
// epsilon on the non-empty side.
inline void split_rule_groups(const std::vector<ElementaryRule>& rules,
                              std::vector<ElementaryRule>& non_empty,
                              std::vector<ElementaryRule>& empty_group) {
  for (const ElementaryRule& r : rules) {
    bool has_eps = accepts_epsilon(r.upper);
    bool only_eps = has_eps && denotes_only_epsilon(r.upper);
    if (!has_eps) {
      non_empty.push_back(r);
      continue;
    }
    if (!only_eps) {
      ElementaryRule ne = r;
      ne.upper = minus_nets(r.upper, epsilon_network());
      ne.empty_upper = false;
      non_empty.push_back(std::move(ne));
    }
    ElementaryRule e = r;
    e.upper = epsilon_network();
    e.empty_upper = true;
    empty_group.push_back(std::move(e));
  }
}

// Empty UPPER of type [] becomes type [. .] with LOWER starred.
inline std::vector<ElementaryRule> normalize_empty_upper(std::vector<ElementaryRule> empty_group) {
  for (ElementaryRule& r : empty_group) {
    if (!r.from_dot_brackets) {
      r.lower = star_net(r.lower);
      r.from_dot_brackets = true;
    }
  }
  return empty_group;
}

// ---------------------------------------------------------------------------
// The six auxiliary relations.

struct ReplaceContext {
  BracketAlphabet ba;
  std::set<SymbolId> working;  // user sigma + brackets + BOUNDARY
  std::vector<ElementaryRule> non_empty;
  std::vector<ElementaryRule> empty_rules;
};

// Inserts instances of all brackets on the lower side, anywhere, in any
// number and order.
inline Network insert_brackets(const ReplaceContext& rc) {
  Network n;
  n.add_state();
  n.finals.insert(0);
  n.add_arc(0, identity_label(kIdentity), 0);
  std::vector<SymbolId> brackets = rc.ba.all();
  for (SymbolId s : rc.working)
    if (std::find(brackets.begin(), brackets.end(), s) == brackets.end())
      n.add_arc(0, identity_label(s), 0);
  for (SymbolId b : brackets) n.add_arc(0, Label{kEpsilon, b}, 0);
  return detail::with_sigma(n, rc.working);
}

// Erases every bracket from the lower side.
inline Network remove_brackets(const ReplaceContext& rc) {
  Network n;
  n.add_state();
  n.finals.insert(0);
  n.add_arc(0, identity_label(kIdentity), 0);
  std::vector<SymbolId> brackets = rc.ba.all();
  for (SymbolId s : rc.working)
    if (std::find(brackets.begin(), brackets.end(), s) == brackets.end())
      n.add_arc(0, identity_label(s), 0);
  for (SymbolId b : brackets) n.add_arc(0, Label{b, kEpsilon}, 0);
  return detail::with_sigma(n, rc.working);
}

// At any position, bracket runs may only follow the type order
// >allNE* >allE* <allE* <allNE*.
inline Network constrain_brackets(const ReplaceContext& rc) {
  const BracketAlphabet& ba = rc.ba;
  Network univ = detail::universal_over(rc.working);
  auto forbid = [&](const std::vector<SymbolId>& first, const std::vector<SymbolId>& second) {
    Network pattern = concat_nets(detail::symbols_union(first), detail::symbols_union(second));
    return complement_net(detail::with_sigma(
        concat_nets(univ, concat_nets(pattern, univ)), rc.working));
  };
  std::vector<SymbolId> right_all = ba.all_right();
  std::vector<SymbolId> e_left = ba.left_e;
  std::vector<SymbolId> e_right = ba.right_e;
  std::vector<SymbolId> ne_left = ba.left_ne;
  std::vector<SymbolId> ne_right = ba.right_ne;

  std::vector<SymbolId> left_e_or_right_all = e_left;
  left_e_or_right_all.insert(left_e_or_right_all.end(), right_all.begin(), right_all.end());

  Network c1 = forbid(e_right, ne_right);           // no >allE immediately before >allNE
  Network c2 = forbid(e_left, right_all);           // no <allE immediately before >all
  Network c3 = forbid(ne_left, left_e_or_right_all);  // no <allNE before <allE or >all
  return intersect_nets(intersect_nets(c1, c2), c3);
}

namespace detail {

// Constraint tying a left bracket to its left context: every instance of
// the bracket is immediately preceded by a context instance (brackets other
// than this one skipped in between, all brackets ignored inside the
// context), and every context instance is followed by the bracket within
// the same bracket run. Context instances are confined to the BOUNDARY
// envelope by requiring a BOUNDARY in the licensing prefix.
inline Network lambda_constraint(const ReplaceContext& rc, const Network& context,
                                 SymbolId bracket) {
  Network univ = universal_over(rc.working);
  std::vector<SymbolId> brackets = rc.ba.all();
  Network skip = star_net(symbols_union(without(brackets, bracket)));
  Network br = symbol_network(bracket);
  // The context with brackets ignored strictly inside it.
  Network inner = with_sigma(ignore_inside_nets(context, symbols_union(brackets)), rc.working);
  // Prefixes ending in a context instance, trailing non-own brackets
  // allowed, with at least one BOUNDARY seen.
  Network licensed = intersect_nets(
      concat_nets(univ, concat_nets(inner, skip)),
      concat_nets(univ, concat_nets(symbol_network(kBoundary), univ)));
  auto co = [&](const Network& n) {
    return with_sigma(complement_net(with_sigma(n, rc.working)), rc.working);
  };

  // Bad 1: the bracket follows a prefix that is not licensed.
  Network bad1 = concat_nets(co(licensed), concat_nets(br, univ));
  // Bad 2: a licensed prefix whose bracket run does not contain the bracket:
  // the prefix does not already end in the bracket, and what follows is the
  // string end or a non-bracket symbol before any own bracket appears.
  Network non_bracket;
  non_bracket.add_state();
  non_bracket.add_state();
  non_bracket.add_arc(0, identity_label(kIdentity), 1);
  for (SymbolId s : rc.working)
    if (std::find(brackets.begin(), brackets.end(), s) == brackets.end())
      non_bracket.add_arc(0, identity_label(s), 1);
  non_bracket.finals.insert(1);
  non_bracket = with_sigma(std::move(non_bracket), rc.working);
  Network pending = minus_nets(with_sigma(licensed, rc.working),
                               with_sigma(concat_nets(univ, concat_nets(br, skip)), rc.working));
  Network bad2 = concat_nets(pending, option_net(concat_nets(non_bracket, univ)));
  return intersect_nets(co(bad1), co(bad2));
}

}  // namespace detail

// Intersection of the per-rule left-context constraints.
inline Network left_context(const ReplaceContext& rc) {
  Network acc = detail::universal_over(rc.working);
  std::size_t ie = 0, ine = 0;
  for (const ElementaryRule& r : rc.empty_rules)
    acc = intersect_nets(acc, detail::lambda_constraint(rc, r.left, rc.ba.left_e[ie++]));
  for (const ElementaryRule& r : rc.non_empty)
    acc = intersect_nets(acc, detail::lambda_constraint(rc, r.left, rc.ba.left_ne[ine++]));
  return minimize(acc);
}

// Mirror image of left_context: reverse each right context, build the
// left-style constraint against the right bracket, and reverse the result.
inline Network right_context(const ReplaceContext& rc) {
  Network acc = detail::universal_over(rc.working);
  std::size_t ie = 0, ine = 0;
  for (const ElementaryRule& r : rc.empty_rules)
    acc = intersect_nets(
        acc, detail::lambda_constraint(rc, reverse_net(r.right), rc.ba.right_e[ie++]));
  for (const ElementaryRule& r : rc.non_empty)
    acc = intersect_nets(
        acc, detail::lambda_constraint(rc, reverse_net(r.right), rc.ba.right_ne[ine++]));
  return minimize(reverse_net(acc));
}

// ---------------------------------------------------------------------------
// The Replace relation [N R]* N.

namespace detail {

// N_i for an empty rule: no unreplaced >_i ... <_i site, with the other
// empty-series brackets free in between.
inline Network no_match_empty(const ReplaceContext& rc, SymbolId lb, SymbolId rb) {
  Network univ = universal_over(rc.working);
  std::vector<SymbolId> mid = rc.ba.all_e();
  std::erase(mid, lb);
  std::erase(mid, rb);
  Network pattern = concat_nets(symbol_network(rb),
                                concat_nets(star_net(symbols_union(mid)), symbol_network(lb)));
  return with_sigma(complement_net(with_sigma(concat_nets(univ, concat_nets(pattern, univ)),
                                              rc.working)),
                    rc.working);
}

// N_i for a non-empty rule: no unreplaced <_i (U_i mod brackets) >_i site.
inline Network no_match_non_empty(const ReplaceContext& rc, const Network& upper, SymbolId lb,
                                  SymbolId rb) {
  Network univ = universal_over(rc.working);
  Network u_ign = with_sigma(ignore_nets(upper, symbols_union(rc.ba.all())), rc.working);
  Network left_run = star_net(symbols_union(without(rc.ba.left_ne, lb)));
  Network right_run = star_net(symbols_union(without(rc.ba.right_ne, rb)));
  Network pattern = concat_nets(symbol_network(lb),
                                concat_nets(left_run,
                                            concat_nets(u_ign,
                                                        concat_nets(right_run, symbol_network(rb)))));
  return with_sigma(complement_net(with_sigma(concat_nets(univ, concat_nets(pattern, univ)),
                                              rc.working)),
                    rc.working);
}

// R_i for a non-empty rule: <_i (U_i mod brackets .x. L_i mod brackets) >_i.
inline Network replacement_non_empty(const ReplaceContext& rc, const Network& upper,
                                     const Network& lower, SymbolId lb, SymbolId rb) {
  Network brackets = symbols_union(rc.ba.all());
  Network core = crossproduct_nets(with_sigma(ignore_nets(upper, brackets), rc.working),
                                   with_sigma(ignore_nets(lower, brackets), rc.working));
  return concat_nets(symbol_network(lb), concat_nets(core, symbol_network(rb)));
}

// R_i for an empty rule: maps >_i <_i to <_i L_i >_i, inserting optional
// brackets on the lower side around the replacement. The permitted sets
// exclude the rule's own bracket on each side and the non-empty brackets
// that could confirm an adjacent replacement.
inline Network replacement_empty(const ReplaceContext& rc, const Network& lower, SymbolId lb,
                                 SymbolId rb) {
  std::vector<SymbolId> left_set = rc.ba.all_e();
  std::erase(left_set, lb);
  for (SymbolId s : rc.ba.left_ne) left_set.push_back(s);
  std::vector<SymbolId> right_set = rc.ba.all_e();
  std::erase(right_set, rb);
  for (SymbolId s : rc.ba.right_ne) right_set.push_back(s);

  auto inserted = [&](const std::vector<SymbolId>& set) {
    Network n;
    n.add_state();
    n.finals.insert(0);
    for (SymbolId s : set) n.add_arc(0, Label{kEpsilon, s}, 0);
    return n;
  };
  Network l_ign = with_sigma(ignore_nets(lower, symbols_union(rc.ba.all())), rc.working);
  Network mid = crossproduct_nets(epsilon_network(), l_ign);  // 0 .x. L_i
  Network open = label_network(Label{rb, lb});   // >_i : <_i
  Network close = label_network(Label{lb, rb});  // <_i : >_i
  return concat_nets(inserted(left_set),
                     concat_nets(open, concat_nets(mid, concat_nets(close, inserted(right_set)))));
}

}  // namespace detail

// The core [N R]* N relation; for the optional variant N is the universal
// language, for the bidirectional direction N additionally excludes
// bracketed LOWER sites.
inline Network replace_core(const ReplaceContext& rc, bool optional, bool bidirectional) {
  Network univ = detail::universal_over(rc.working);
  Network no_match = univ;
  if (!optional) {
    std::size_t ie = 0, ine = 0;
    for (const ElementaryRule& r : rc.empty_rules) {
      SymbolId lb = rc.ba.left_e[ie], rb = rc.ba.right_e[ie];
      ++ie;
      no_match = intersect_nets(no_match, detail::no_match_empty(rc, lb, rb));
      if (bidirectional) {
        // An unreplaced LOWER between validated contexts is illegal too.
        Network low_ign = detail::with_sigma(
            ignore_nets(r.lower, detail::symbols_union(rc.ba.all())), rc.working);
        Network pattern = concat_nets(symbol_network(lb), concat_nets(low_ign, symbol_network(rb)));
        no_match = intersect_nets(
            no_match, detail::with_sigma(
                          complement_net(detail::with_sigma(
                              concat_nets(univ, concat_nets(pattern, univ)), rc.working)),
                          rc.working));
      }
    }
    for (const ElementaryRule& r : rc.non_empty) {
      SymbolId lb = rc.ba.left_ne[ine], rb = rc.ba.right_ne[ine];
      ++ine;
      no_match = intersect_nets(no_match, detail::no_match_non_empty(rc, r.upper, lb, rb));
      if (bidirectional)
        no_match = intersect_nets(no_match, detail::no_match_non_empty(rc, r.lower, lb, rb));
    }
    no_match = minimize(no_match);
  }

  Network r_union = empty_network();
  std::size_t ie = 0, ine = 0;
  for (const ElementaryRule& r : rc.empty_rules) {
    r_union = union_nets(r_union,
                         detail::replacement_empty(rc, r.lower, rc.ba.left_e[ie], rc.ba.right_e[ie]));
    ++ie;
  }
  for (const ElementaryRule& r : rc.non_empty) {
    r_union = union_nets(r_union, detail::replacement_non_empty(rc, r.upper, r.lower,
                                                                rc.ba.left_ne[ine],
                                                                rc.ba.right_ne[ine]));
    ++ine;
  }

  Network nr = concat_nets(no_match, r_union);
  return concat_nets(star_net(nr), no_match);
}

// ---------------------------------------------------------------------------
// Full assembly.

struct ReplaceDebug {
  std::map<std::string, Network> stages;  // populated when debug requested
};

inline Network assemble_replacement(const RuleSetSpec& spec, ReplaceDebug* debug = nullptr);

namespace detail {

inline ReplaceContext make_context(const RuleSetSpec& spec, bool swap_sides) {
  std::vector<ElementaryRule> expanded;
  for (const RuleBlock& b : spec.blocks) {
    RuleBlock blk = b;
    if (swap_sides) std::swap(blk.uppers, blk.lowers);
    auto rules = expand_rules(blk);
    expanded.insert(expanded.end(), rules.begin(), rules.end());
  }

  ReplaceContext rc;
  split_rule_groups(expanded, rc.non_empty, rc.empty_rules);
  rc.empty_rules = normalize_empty_upper(std::move(rc.empty_rules));

  for (const ElementaryRule& r : rc.non_empty) {
    if (equivalent(r.upper, empty_network()))
      std::cerr << "warning: rule with empty-language UPPER is vacuous\n";
    if (equivalent(r.lower, empty_network()))
      std::cerr << "warning: rule with empty-language LOWER removes matched inputs\n";
  }

  // Deterministic bracket allocation by rule order.
  for (std::size_t i = 0; i < rc.non_empty.size(); ++i) {
    rc.ba.left_ne.push_back(intern_symbol("@<" + std::to_string(i + 1) + "@"));
    rc.ba.right_ne.push_back(intern_symbol("@>" + std::to_string(i + 1) + "@"));
  }
  for (std::size_t i = 0; i < rc.empty_rules.size(); ++i) {
    rc.ba.left_e.push_back(intern_symbol("@<" + std::to_string(i + 1) + "E@"));
    rc.ba.right_e.push_back(intern_symbol("@>" + std::to_string(i + 1) + "E@"));
  }

  rc.working.insert(kBoundary);
  for (SymbolId b : rc.ba.all()) rc.working.insert(b);
  auto note_net = [&](const Network& n) {
    for (SymbolId s : n.sigma) rc.working.insert(s);
  };
  for (const ElementaryRule& r : rc.non_empty) {
    note_net(r.upper);
    note_net(r.lower);
    note_net(r.left);
    note_net(r.right);
  }
  for (const ElementaryRule& r : rc.empty_rules) {
    note_net(r.lower);
    note_net(r.left);
    note_net(r.right);
  }

  // Expand every ingredient's "?" over the user alphabet plus BOUNDARY, then
  // declare the brackets in sigma without arcs: "?" keeps covering the user
  // symbols but never the auxiliary brackets.
  std::set<SymbolId> visible = rc.working;
  for (SymbolId b : rc.ba.all()) visible.erase(b);
  auto widen = [&](Network& n) {
    n = with_sigma(expand_unknowns(n, visible), rc.working);
  };
  for (ElementaryRule& r : rc.non_empty) {
    widen(r.upper);
    widen(r.lower);
    widen(r.left);
    widen(r.right);
  }
  for (ElementaryRule& r : rc.empty_rules) {
    widen(r.upper);
    widen(r.lower);
    widen(r.left);
    widen(r.right);
  }
  return rc;
}

// Relation inserting BOUNDARY padding around a string, over an open
// alphabet that excludes the auxiliary symbols.
inline Network pad_relation(const std::set<SymbolId>& user_sigma) {
  Network n;
  n.add_state();
  n.add_state();
  n.add_state();
  n.add_arc(0, Label{kEpsilon, kBoundary}, 1);
  n.add_arc(1, identity_label(kIdentity), 1);
  for (SymbolId s : user_sigma) n.add_arc(1, identity_label(s), 1);
  n.add_arc(1, Label{kEpsilon, kBoundary}, 2);
  n.finals.insert(2);
  n.note_symbol(kBoundary);
  return n;
}

}  // namespace detail

inline Network assemble_replacement(const RuleSetSpec& spec, ReplaceDebug* debug) {
  bool inverse = spec.direction == Direction::Inverse;
  ReplaceContext rc = detail::make_context(spec, /*swap_sides=*/inverse);

  Network insert = insert_brackets(rc);
  Network constrain = constrain_brackets(rc);
  Network left = left_context(rc);
  Network right = right_context(rc);
  Network replace = replace_core(rc, spec.optional, spec.direction == Direction::Bidirectional);
  Network remove = remove_brackets(rc);

  if (debug) {
    debug->stages["insert_brackets"] = insert;
    debug->stages["constrain_brackets"] = constrain;
    debug->stages["left_context"] = left;
    debug->stages["right_context"] = right;
    debug->stages["replace"] = replace;
    debug->stages["remove_brackets"] = remove;
  }

  Orientation o = spec.orientation;
  if (inverse) {
    // The inverse direction builds the mirrored replacement and inverts it;
    // the context orientation flips sides along with the tapes.
    switch (o) {
      case Orientation::Upward: o = Orientation::Downward; break;
      case Orientation::Downward: o = Orientation::Upward; break;
      case Orientation::Right: o = Orientation::Left; break;
      case Orientation::Left: o = Orientation::Right; break;
    }
  }

  std::vector<Network> chain;
  chain.push_back(insert);
  chain.push_back(constrain);
  switch (o) {
    case Orientation::Upward:
      chain.push_back(left);
      chain.push_back(right);
      chain.push_back(replace);
      break;
    case Orientation::Right:
      chain.push_back(right);
      chain.push_back(replace);
      chain.push_back(left);
      break;
    case Orientation::Left:
      chain.push_back(left);
      chain.push_back(replace);
      chain.push_back(right);
      break;
    case Orientation::Downward:
      chain.push_back(replace);
      chain.push_back(left);
      chain.push_back(right);
      break;
  }
  chain.push_back(remove);

  Network core = chain[0];
  for (std::size_t i = 1; i < chain.size(); ++i) {
    core = compose_nets(core, chain[i]);
    core = minimize(core);
  }

  // Boundary padding around the whole pipeline.
  std::set<SymbolId> user_sigma;
  for (SymbolId s : rc.working) user_sigma.insert(s);
  for (SymbolId b : rc.ba.all()) user_sigma.erase(b);
  user_sigma.erase(kBoundary);
  Network pad = detail::pad_relation(user_sigma);
  Network result = compose_nets(pad, compose_nets(core, invert_net(pad)));

  if (inverse) result = invert_net(result);

  // Bracket hygiene: auxiliary symbols leave the alphabet with the
  // brackets' arcs.
  result = minimize(result);
  for (SymbolId b : rc.ba.all()) result.sigma.erase(b);
  result.sigma.erase(kBoundary);
  return result;
}

inline Network compile_ruleset(const RuleSetSpec& spec, ReplaceDebug* debug = nullptr) {
  return assemble_replacement(spec, debug);
}

}  // namespace fsc
