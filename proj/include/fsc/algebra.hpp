#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fsc/core.hpp"

namespace fsc {

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RelationOperandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_language(const Network& n, const char* op) {
  if (n.is_relation())
    throw RelationOperandError(std::string(op) + " requires a language operand");
}

// ---------------------------------------------------------------------------
// Structure-copy helper: append all states of src to dst, returning the
// offset of src's former state 0.

inline StateId graft(Network& dst, const Network& src) {
  StateId offset = dst.num_states();
  for (StateId s = 0; s < src.num_states(); ++s) dst.add_state();
  for (StateId s = 0; s < src.num_states(); ++s)
    for (const Arc& a : src.arcs[static_cast<std::size_t>(s)])
      dst.arcs[static_cast<std::size_t>(offset + s)].push_back(Arc{a.label, offset + a.target});
  for (SymbolId s : src.sigma) dst.sigma.insert(s);
  return offset;
}

inline Label eps_label() { return Label{kEpsilon, kEpsilon}; }

// ---------------------------------------------------------------------------
// Regular operations.

inline Network concat_nets(const Network& a, const Network& b) {
  Network ha = a, hb = b;
  harmonize(ha, hb);
  Network out;
  StateId oa = graft(out, ha);
  StateId ob = graft(out, hb);
  out.start = oa + ha.start;
  for (StateId f : ha.finals) out.arcs[static_cast<std::size_t>(oa + f)].push_back(Arc{eps_label(), ob + hb.start});
  for (StateId f : hb.finals) out.finals.insert(ob + f);
  return remove_epsilons(out);
}

inline Network concat_nets(const Network& a, const Network& b, const Network& c) {
  return concat_nets(concat_nets(a, b), c);
}

inline Network union_nets(const Network& a, const Network& b) {
  Network ha = a, hb = b;
  harmonize(ha, hb);
  Network out;
  out.start = out.add_state();
  StateId oa = graft(out, ha);
  StateId ob = graft(out, hb);
  out.arcs[0].push_back(Arc{eps_label(), oa + ha.start});
  out.arcs[0].push_back(Arc{eps_label(), ob + hb.start});
  for (StateId f : ha.finals) out.finals.insert(oa + f);
  for (StateId f : hb.finals) out.finals.insert(ob + f);
  return remove_epsilons(out);
}

inline Network star_net(const Network& a) {
  Network out;
  out.start = out.add_state();
  out.finals.insert(0);
  StateId oa = graft(out, a);
  out.arcs[0].push_back(Arc{eps_label(), oa + a.start});
  for (StateId f : a.finals) out.arcs[static_cast<std::size_t>(oa + f)].push_back(Arc{eps_label(), 0});
  return remove_epsilons(out);
}

inline Network plus_net(const Network& a) { return concat_nets(a, star_net(a)); }

inline Network option_net(const Network& a) { return union_nets(a, epsilon_network()); }

// Product construction over atomic labels; language operands.
inline Network intersect_nets(const Network& a, const Network& b) {
  require_language(a, "intersection");
  require_language(b, "intersection");
  Network ha = remove_epsilons(a), hb = remove_epsilons(b);
  harmonize(ha, hb);
  Network out;
  out.sigma = ha.sigma;
  for (SymbolId s : hb.sigma) out.sigma.insert(s);
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> queue;
  auto state_of = [&](StateId x, StateId y) {
    auto key = std::make_pair(x, y);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId s = out.add_state();
    ids.emplace(key, s);
    queue.push_back(key);
    if (ha.is_final(x) && hb.is_final(y)) out.finals.insert(s);
    return s;
  };
  out.start = state_of(ha.start, hb.start);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    StateId src = ids[{x, y}];
    for (const Arc& ax : ha.arcs[static_cast<std::size_t>(x)])
      for (const Arc& ay : hb.arcs[static_cast<std::size_t>(y)])
        if (ax.label == ay.label) {
          StateId dst = state_of(ax.target, ay.target);
          out.arcs[static_cast<std::size_t>(src)].push_back(Arc{ax.label, dst});
        }
  }
  normalize_arcs(out);
  return trim(out);
}

// Complement against the operand's (already harmonized) sigma plus the
// open-alphabet IDENTITY symbol.
inline Network complement_net(const Network& a) {
  require_language(a, "complement");
  Network d = complete(a, a.sigma);
  Network out = d;
  out.finals.clear();
  for (StateId s = 0; s < d.num_states(); ++s)
    if (!d.is_final(s)) out.finals.insert(s);
  return trim(out);
}

inline Network minus_nets(const Network& a, const Network& b) {
  Network ha = a, hb = b;
  harmonize(ha, hb);
  return intersect_nets(ha, complement_net(hb));
}

inline Network contains_net(const Network& a) {
  require_language(a, "contains");
  return concat_nets(universal_network(), concat_nets(a, universal_network()));
}

// A with strings of B freely interspersed at any position (edges included).
inline Network ignore_nets(const Network& a, const Network& b) {
  require_language(a, "ignore");
  require_language(b, "ignore");
  Network ha = remove_epsilons(a), hb = remove_epsilons(b);
  harmonize(ha, hb);
  Network out = ha;
  StateId base_states = ha.num_states();
  for (StateId s = 0; s < base_states; ++s) {
    StateId ob = graft(out, hb);
    out.arcs[static_cast<std::size_t>(s)].push_back(Arc{eps_label(), ob + hb.start});
    for (StateId f : hb.finals)
      out.arcs[static_cast<std::size_t>(ob + f)].push_back(Arc{eps_label(), s});
  }
  return remove_epsilons(out);
}

// Interspersal strictly between the first and last symbol of A.
inline Network ignore_inside_nets(const Network& a, const Network& b) {
  Network ig = ignore_nets(a, b);
  Network b_then = concat_nets(b, universal_network());
  Network then_b = concat_nets(universal_network(), b);
  return minus_nets(minus_nets(ig, b_then), then_b);
}

// ---------------------------------------------------------------------------
// Letter view of a language arc: the symbol on its (identical) tapes, with
// IDENTITY meaning "a symbol outside sigma".

inline Label pair_letters(SymbolId up, SymbolId low, std::vector<Label>& extra) {
  bool uu = (up == kIdentity || up == kUnknown);
  bool lu = (low == kIdentity || low == kUnknown);
  if (uu && lu) {
    extra.push_back(Label{kUnknown, kUnknown});
    return identity_label(kIdentity);
  }
  if (uu) return Label{kUnknown, low};
  if (lu) return Label{up, kUnknown};
  return Label{up, low};
}

// Relation pairing every string of a with every string of b; the shorter
// string is padded at its end with one-sided epsilons.
inline Network crossproduct_nets(const Network& a, const Network& b) {
  require_language(a, "crossproduct");
  require_language(b, "crossproduct");
  Network ha = remove_epsilons(a), hb = remove_epsilons(b);
  harmonize(ha, hb);
  Network out;
  out.sigma = ha.sigma;
  for (SymbolId s : hb.sigma) out.sigma.insert(s);
  // phase 0: both tapes advance; 1: only a (b exhausted); 2: only b.
  std::map<std::tuple<StateId, StateId, int>, StateId> ids;
  std::deque<std::tuple<StateId, StateId, int>> queue;
  auto state_of = [&](StateId x, StateId y, int phase) {
    auto key = std::make_tuple(x, y, phase);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId s = out.add_state();
    ids.emplace(key, s);
    queue.push_back(key);
    if (ha.is_final(x) && hb.is_final(y)) out.finals.insert(s);
    return s;
  };
  out.start = state_of(ha.start, hb.start, 0);
  while (!queue.empty()) {
    auto [x, y, phase] = queue.front();
    queue.pop_front();
    StateId src = ids[{x, y, phase}];
    auto emit = [&](Label l, StateId dst) {
      out.arcs[static_cast<std::size_t>(src)].push_back(Arc{l, dst});
    };
    if (phase == 0) {
      for (const Arc& ax : ha.arcs[static_cast<std::size_t>(x)])
        for (const Arc& ay : hb.arcs[static_cast<std::size_t>(y)]) {
          std::vector<Label> extra;
          Label l = pair_letters(ax.label.upper, ay.label.lower, extra);
          emit(l, state_of(ax.target, ay.target, 0));
          for (Label e : extra) emit(e, state_of(ax.target, ay.target, 0));
        }
    }
    if (phase == 0 || phase == 1) {
      for (const Arc& ax : ha.arcs[static_cast<std::size_t>(x)]) {
        SymbolId up = (ax.label.upper == kIdentity) ? kUnknown : ax.label.upper;
        emit(Label{up, kEpsilon}, state_of(ax.target, y, 1));
      }
    }
    if (phase == 0 || phase == 2) {
      for (const Arc& ay : hb.arcs[static_cast<std::size_t>(y)]) {
        SymbolId low = (ay.label.lower == kIdentity) ? kUnknown : ay.label.lower;
        emit(Label{kEpsilon, low}, state_of(x, ay.target, 2));
      }
    }
  }
  normalize_arcs(out);
  return trim(out);
}

// ---------------------------------------------------------------------------
// Composition with a three-way epsilon-coordination filter so one-sided
// epsilons in both operands neither drop nor duplicate pairs.

// Join of A's arc (upper:mid_a) with B's arc (mid_b:lower); emits zero or
// more result labels.
inline void join_labels(const Label& la, const Label& lb, std::vector<Label>& out) {
  SymbolId u = la.upper, m1 = la.lower, m2 = lb.upper, v = lb.lower;
  bool a_ident = (u == kIdentity && m1 == kIdentity);
  bool b_ident = (m2 == kIdentity && v == kIdentity);
  bool m1_unknown = (m1 == kUnknown || a_ident);
  bool m2_unknown = (m2 == kUnknown || b_ident);
  if (!m1_unknown && !m2_unknown) {
    if (m1 == m2) out.push_back(Label{u, v});
    return;
  }
  if (!m1_unknown || !m2_unknown) return;  // concrete middle cannot match unknown
  // Both middles are unknown symbols (outside the harmonized sigma).
  if (a_ident && b_ident) {
    out.push_back(identity_label(kIdentity));
    return;
  }
  if (a_ident) {
    // A maps the unknown to itself, so the result upper is that unknown.
    out.push_back(Label{kUnknown, v});
    return;
  }
  if (b_ident) {
    out.push_back(Label{u, kUnknown});
    return;
  }
  // Neither side is an identity pair. The middle unknown can always be chosen
  // to satisfy both inequality constraints; when both outer symbols are
  // unknown they may coincide or differ.
  if (u == kUnknown && v == kUnknown) {
    out.push_back(identity_label(kIdentity));
    out.push_back(Label{kUnknown, kUnknown});
  } else {
    out.push_back(Label{u, v});
  }
}

inline Network compose_nets(const Network& a, const Network& b) {
  Network ha = remove_epsilons(a), hb = remove_epsilons(b);
  harmonize(ha, hb);
  Network out;
  out.sigma = ha.sigma;
  for (SymbolId s : hb.sigma) out.sigma.insert(s);
  std::map<std::tuple<StateId, StateId, int>, StateId> ids;
  std::deque<std::tuple<StateId, StateId, int>> queue;
  auto state_of = [&](StateId x, StateId y, int f) {
    auto key = std::make_tuple(x, y, f);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId s = out.add_state();
    ids.emplace(key, s);
    queue.push_back(key);
    if (ha.is_final(x) && hb.is_final(y)) out.finals.insert(s);
    return s;
  };
  out.start = state_of(ha.start, hb.start, 0);
  while (!queue.empty()) {
    auto [x, y, f] = queue.front();
    queue.pop_front();
    StateId src = ids[{x, y, f}];
    auto emit = [&](Label l, StateId tx, StateId ty, int tf) {
      StateId dst = state_of(tx, ty, tf);
      out.arcs[static_cast<std::size_t>(src)].push_back(Arc{l, dst});
    };
    for (const Arc& ax : ha.arcs[static_cast<std::size_t>(x)]) {
      if (ax.label.lower == kEpsilon) {
        // Epsilon output of A meeting epsilon input of B advances both.
        for (const Arc& ay : hb.arcs[static_cast<std::size_t>(y)])
          if (ay.label.upper == kEpsilon)
            emit(Label{ax.label.upper, ay.label.lower}, ax.target, ay.target, 0);
        if (f != 2) emit(Label{ax.label.upper, kEpsilon}, ax.target, y, 1);
        continue;
      }
      for (const Arc& ay : hb.arcs[static_cast<std::size_t>(y)]) {
        if (ay.label.upper == kEpsilon) continue;
        std::vector<Label> joined;
        join_labels(ax.label, ay.label, joined);
        for (Label l : joined) emit(l, ax.target, ay.target, 0);
      }
    }
    for (const Arc& ay : hb.arcs[static_cast<std::size_t>(y)]) {
      if (ay.label.upper == kEpsilon && f != 1)
        emit(Label{kEpsilon, ay.label.lower}, x, ay.target, 2);
    }
  }
  normalize_arcs(out);
  return remove_epsilons(trim(out));
}

// ---------------------------------------------------------------------------
// Structural conversions.

inline Network invert_net(const Network& n) {
  Network out = n;
  for (auto& state_arcs : out.arcs)
    for (Arc& a : state_arcs) std::swap(a.label.upper, a.label.lower);
  normalize_arcs(out);
  return out;
}

inline Network reverse_net(const Network& n) {
  Network out;
  out.sigma = n.sigma;
  for (StateId s = 0; s < n.num_states(); ++s) out.add_state();
  StateId new_start = out.add_state();
  out.start = new_start;
  for (StateId s = 0; s < n.num_states(); ++s)
    for (const Arc& a : n.arcs[static_cast<std::size_t>(s)])
      out.arcs[static_cast<std::size_t>(a.target)].push_back(Arc{a.label, s});
  for (StateId f : n.finals)
    out.arcs[static_cast<std::size_t>(new_start)].push_back(Arc{eps_label(), f});
  out.finals.insert(n.start);
  return remove_epsilons(out);
}

enum class Side { Upper, Lower };

inline Network project_net(const Network& n, Side side) {
  Network out = n;
  for (auto& state_arcs : out.arcs)
    for (Arc& a : state_arcs) {
      SymbolId s = (side == Side::Upper) ? a.label.upper : a.label.lower;
      if (s == kUnknown) s = kIdentity;
      a.label = identity_label(s);
    }
  normalize_arcs(out);
  return remove_epsilons(out);
}

// ---------------------------------------------------------------------------
// Dispatch surface for the operator table.

enum class OpKind {
  Option, Star, Plus, Complement, Contains, Concat, Union, Intersect, Minus,
  Ignore, IgnoreInside, Crossproduct, Compose, Reverse, Invert,
  ProjectUpper, ProjectLower,
};

inline int op_arity(OpKind k) {
  switch (k) {
    case OpKind::Option: case OpKind::Star: case OpKind::Plus:
    case OpKind::Complement: case OpKind::Contains: case OpKind::Reverse:
    case OpKind::Invert: case OpKind::ProjectUpper: case OpKind::ProjectLower:
      return 1;
    default:
      return 2;
  }
}

inline Network apply_op(OpKind kind, const std::vector<Network>& args) {
  if (static_cast<int>(args.size()) != op_arity(kind))
    throw ArityError("wrong number of operands");
  switch (kind) {
    case OpKind::Option: return option_net(args[0]);
    case OpKind::Star: return star_net(args[0]);
    case OpKind::Plus: return plus_net(args[0]);
    case OpKind::Complement: return complement_net(args[0]);
    case OpKind::Contains: return contains_net(args[0]);
    case OpKind::Concat: return concat_nets(args[0], args[1]);
    case OpKind::Union: return union_nets(args[0], args[1]);
    case OpKind::Intersect:
      require_language(args[0], "intersection");
      require_language(args[1], "intersection");
      return intersect_nets(args[0], args[1]);
    case OpKind::Minus:
      require_language(args[0], "minus");
      require_language(args[1], "minus");
      return minus_nets(args[0], args[1]);
    case OpKind::Ignore: return ignore_nets(args[0], args[1]);
    case OpKind::IgnoreInside: return ignore_inside_nets(args[0], args[1]);
    case OpKind::Crossproduct: return crossproduct_nets(args[0], args[1]);
    case OpKind::Compose: return compose_nets(args[0], args[1]);
    case OpKind::Reverse: return reverse_net(args[0]);
    case OpKind::Invert: return invert_net(args[0]);
    case OpKind::ProjectUpper: return project_net(args[0], Side::Upper);
    case OpKind::ProjectLower: return project_net(args[0], Side::Lower);
  }
  throw ArityError("unreachable");
}

}  // namespace fsc
