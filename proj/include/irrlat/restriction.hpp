#pragma once

// Composition factors of diagonal and weight-map subgroups: expand a parent
// class's factor list through an embedding descriptor and decompose in the
// target factors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrlat/catalog.hpp"

namespace irrlat {

// ---------------------------------------------------------------------------
// Characters of factor-list components
// ---------------------------------------------------------------------------

// Character of a single component (one tensor slot of one entry).
// Throws Unresolved for factor types without character support.
inline character component_char(const entry_component& c, const simple_type& t,
                                characteristic p) {
  character base(0);
  if (t.series == 'A' && t.rank == 1) {
    switch (c.kind) {
      case 'W': base = weyl_char_a1(c.w[0]); break;
      case 'T': base = tilting_char_a1(c.w[0], p); break;
      default: base = irr_char_a1(c.w[0], p); break;
    }
  } else if (t.series == 'A' && t.rank == 2) {
    switch (c.kind) {
      case 'W': base = weyl_char_a2(c.w); break;
      case 'T': fail(errc::unsupported_type, "tilting entries only on A1 factors");
      default: base = irr_char_a2(c.w, p); break;
    }
  } else {
    fail(errc::unresolved, "character of type " + t.str() + " component");
  }
  return twist(base, c.twist, p);
}

// Character of a full entry on the product torus of the given factors.
inline character entry_char(const factor_entry& e, const std::vector<decorated_factor>& factors,
                            characteristic p) {
  character out(0);
  bool first = true;
  for (size_t i = 0; i < e.comps.size(); ++i) {
    character comp = component_char(e.comps[i], factors[i].type, p);
    out = first ? comp : outer_tensor(out, comp);
    first = false;
  }
  return out;
}

inline character list_char(const factor_list& fl, const std::vector<decorated_factor>& factors,
                           characteristic p) {
  character out(0);
  bool first = true;
  for (auto& e : fl.entries) {
    character ec = entry_char(e, factors, p);
    if (first) {
      out = ec;
      first = false;
    } else {
      out = out + ec;
    }
  }
  return out;
}

inline std::vector<high_weight> decompose_in(const character& c, const simple_type& t,
                                             characteristic p) {
  if (t.series == 'A' && t.rank == 1) {
    std::vector<high_weight> out;
    for (int n : decompose_a1(c, p)) out.push_back({n});
    return out;
  }
  if (t.series == 'A' && t.rank == 2) return decompose_a2(c, p);
  fail(errc::unresolved, "decomposition in type " + t.str());
}

// Expands a single component into irreducible high weights of its factor.
inline std::vector<high_weight> expand_entry(const entry_component& c, const simple_type& t,
                                             characteristic p) {
  return decompose_in(component_char(c, t, p), t, p);
}

// ---------------------------------------------------------------------------
// Descriptor structure
// ---------------------------------------------------------------------------

struct letter_group {
  char letter = 0;
  std::vector<int> positions;
  simple_type target;
  bool pass_through = false;  // single position, identity label
};

// Weight-lattice pullback for a position label: maps a parent-factor weight
// to a target-factor weight.  Identity labels map identically; "01" on an A2
// slot composes with the graph automorphism; "2" on an A2 slot is the
// principal rank-one subgroup.
inline std::vector<std::vector<int>> label_pullback(const simple_type& slot,
                                                    const std::string& label) {
  auto identity = [&](int n) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
    return rows;
  };
  if (slot.series == 'A' && slot.rank == 2) {
    if (label == "10") return identity(2);
    if (label == "01") return {{0, 1}, {1, 0}};
    if (label == "2") return {{2, 2}};
  }
  if (slot.series == 'A' && slot.rank == 1) {
    if (label == "1") return identity(1);
  }
  // Identity embeddings of higher-rank slots keep their own label.
  return identity(slot.rank);
}

inline simple_type label_target_type(const simple_type& slot, const std::string& label) {
  if (slot.series == 'A' && slot.rank == 2 && label == "2") return {'A', 1};
  return slot;
}

inline bool label_is_identity(const simple_type& slot, const std::string& label) {
  if (slot.series == 'A' && slot.rank == 1) return label == "1";
  if (slot.series == 'A' && slot.rank == 2) return label == "10";
  // For other slot types only the natural label is used.
  return true;
}

// Groups descriptor positions into target factors.  Explicit letters come
// first in alphabetical order; positions without letters are grouped by slot
// type, one implicit factor per maximal run of like-typed unlabeled slots.
inline std::vector<letter_group> letter_structure(const embedding_descriptor& desc,
                                                  const std::vector<decorated_factor>& parent) {
  if (desc.positions.size() != parent.size())
    fail(errc::rank_mismatch, "descriptor arity does not match parent factors");
  std::map<char, letter_group> explicit_groups;
  std::vector<letter_group> implicit_groups;
  for (size_t i = 0; i < desc.positions.size(); ++i) {
    const position_spec& pos = desc.positions[i];
    simple_type slot = parent[i].type;
    simple_type target = label_target_type(slot, pos.label);
    if (pos.letter) {
      auto& g = explicit_groups[pos.letter];
      if (g.positions.empty()) {
        g.letter = pos.letter;
        g.target = target;
      } else if (!(g.target == target)) {
        fail(errc::parse_error, "letter " + std::string(1, pos.letter) + " mixes factor types");
      }
      g.positions.push_back(static_cast<int>(i));
    } else {
      // Merge with the previous implicit group of the same target type.
      letter_group* home = nullptr;
      for (auto& g : implicit_groups)
        if (g.target == target) home = &g;
      if (home == nullptr) {
        implicit_groups.push_back({0, {}, target, false});
        home = &implicit_groups.back();
      }
      home->positions.push_back(static_cast<int>(i));
    }
  }
  std::vector<letter_group> out;
  for (auto& [ch, g] : explicit_groups) out.push_back(g);
  for (auto& g : implicit_groups) out.push_back(g);
  char next = 'a';
  for (auto& g : out) {
    if (!g.letter) {
      while (std::any_of(out.begin(), out.end(), [&](const letter_group& h) {
        return h.letter == next;
      }))
        ++next;
      g.letter = next;
    }
    if (g.positions.size() == 1) {
      const position_spec& pos = desc.positions[g.positions[0]];
      g.pass_through = label_is_identity(parent[g.positions[0]].type, pos.label);
    }
  }
  return out;
}

inline std::vector<decorated_factor> target_factors(const std::vector<letter_group>& groups) {
  std::vector<decorated_factor> out;
  for (auto& g : groups) out.push_back({g.target, ' '});
  return out;
}

inline int twist_value(const position_spec& pos, const assignment& env) {
  switch (pos.twist.k) {
    case twist_expr::kind::omitted: return 0;
    case twist_expr::kind::literal: return pos.twist.lit;
    case twist_expr::kind::variable: {
      auto it = env.find(pos.twist.var);
      if (it == env.end()) fail(errc::unbound_variable, pos.twist.var);
      return static_cast<int>(it->second);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Canonical factor entries
// ---------------------------------------------------------------------------

// Expands every resolvable component of an entry into irreducibles and sorts
// the resulting entries canonically (descending).  Unresolvable components
// are kept symbolic.
inline void append_expanded(std::vector<factor_entry>& out, const factor_entry& entry,
                            const std::vector<decorated_factor>& factors, characteristic p) {
  std::vector<std::vector<entry_component>> slots;
  for (size_t i = 0; i < entry.comps.size(); ++i) {
    const entry_component& c = entry.comps[i];
    std::vector<entry_component> alt;
    bool expandable = factors[i].type.series == 'A' && factors[i].type.rank <= 2;
    if (expandable && !(c.kind == 'L' && c.twist == 0)) {
      try {
        for (auto& w : expand_entry(c, factors[i].type, p)) alt.push_back({w, 'L', 0});
        expandable = true;
      } catch (const error& e) {
        if (e.code() != errc::unresolved) throw;
        expandable = false;
      }
    } else if (expandable) {
      alt.push_back(c);
    }
    if (!expandable) alt.push_back(c);  // symbolic pass-through
    slots.push_back(alt);
  }
  // Cartesian product across slots.
  std::vector<factor_entry> acc{factor_entry{}};
  for (auto& alt : slots) {
    std::vector<factor_entry> next;
    for (auto& partial : acc)
      for (auto& c : alt) {
        factor_entry e = partial;
        e.comps.push_back(c);
        next.push_back(e);
      }
    acc = std::move(next);
  }
  out.insert(out.end(), acc.begin(), acc.end());
}

inline void sort_canonical(factor_list& fl) {
  std::sort(fl.entries.begin(), fl.entries.end(),
            [](const factor_entry& a, const factor_entry& b) { return b < a; });
}

// ---------------------------------------------------------------------------
// Restriction along a descriptor
// ---------------------------------------------------------------------------

struct restriction_result {
  std::vector<decorated_factor> factors;
  factor_list list;
};

// Restricts a parent factor list along a diagonal embedding with the given
// twist assignment, decomposing per target letter.
inline restriction_result restrict_diagonal(const factor_list& parent_list,
                                            const std::vector<decorated_factor>& parent_factors,
                                            const embedding_descriptor& desc,
                                            const assignment& twists, characteristic p) {
  if (desc.cond && !eval_condition(desc.cond, twists))
    fail(errc::condition_violated, "twists violate the embedding condition");
  auto groups = letter_structure(desc, parent_factors);
  auto targets = target_factors(groups);

  restriction_result result;
  result.factors = targets;
  for (auto& entry : parent_list.entries) {
    // Per letter: either pass a single component through, or form the
    // character product across the letter's positions and decompose.
    std::vector<std::vector<entry_component>> slot_factors;
    for (auto& g : groups) {
      std::vector<entry_component> comps;
      int pos_twist0 = twist_value(desc.positions[g.positions[0]], twists);
      if (g.pass_through) {
        entry_component c = entry.comps[g.positions[0]];
        c.twist += pos_twist0;
        comps.push_back(c);
      } else {
        character prod(g.target.rank);
        bool first = true;
        for (int pi : g.positions) {
          const position_spec& pos = desc.positions[pi];
          entry_component c = entry.comps[pi];
          character base = component_char(c, parent_factors[pi].type, p);
          character mapped = map_weights(base, label_pullback(parent_factors[pi].type, pos.label));
          mapped = twist(mapped, twist_value(pos, twists), p);
          prod = first ? mapped : tensor(prod, mapped);
          first = false;
        }
        for (auto& w : decompose_in(prod, g.target, p)) comps.push_back({w, 'L', 0});
      }
      slot_factors.push_back(comps);
    }
    // Cartesian product of per-letter factor multisets.
    std::vector<factor_entry> acc{factor_entry{}};
    for (auto& comps : slot_factors) {
      std::vector<factor_entry> next;
      for (auto& partial : acc)
        for (auto& c : comps) {
          factor_entry e = partial;
          e.comps.push_back(c);
          next.push_back(e);
        }
      acc = std::move(next);
    }
    for (auto& e : acc) append_expanded(result.list.entries, e, targets, p);
  }
  sort_canonical(result.list);
  return result;
}

// Restriction along an explicit weight-lattice map into a single target
// factor (rows of `map` give the target coordinates).
inline restriction_result restrict_weight_map(const factor_list& parent_list,
                                              const std::vector<decorated_factor>& parent_factors,
                                              const std::vector<std::vector<int>>& map,
                                              const simple_type& target, characteristic p) {
  restriction_result result;
  result.factors = {{target, ' '}};
  for (auto& entry : parent_list.entries) {
    character total(0);
    bool first = true;
    for (size_t i = 0; i < entry.comps.size(); ++i) {
      character comp = component_char(entry.comps[i], parent_factors[i].type, p);
      total = first ? comp : outer_tensor(total, comp);
      first = false;
    }
    character mapped = map_weights(total, map);
    for (auto& w : decompose_in(mapped, target, p))
      result.list.entries.push_back({{{w, 'L', 0}}});
  }
  sort_canonical(result.list);
  return result;
}

// Total dimension of a factor list (used for conservation checks).
inline std::int64_t total_dim(const restriction_result& r, characteristic p) {
  return list_dim(r.list, r.factors, p);
}

}  // namespace irrlat
