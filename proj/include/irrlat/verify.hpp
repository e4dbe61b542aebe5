#pragma once

// Mechanical re-verification of the classification's corollaries against the
// catalog: composition-factor separation, existence of subgroups of a given
// type, maximal-overgroup coverage, and the tensor-product-theorem variant.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "irrlat/lattice.hpp"

namespace irrlat {

enum class cmp_result { different, same, unresolved };

namespace verify_detail {

// Divides all weights by p while every nonzero coordinate is divisible;
// normalizes away a global Frobenius twist.
inline character strip_global_twist(character c, characteristic p) {
  if (!p.finite()) return c;
  for (;;) {
    bool divisible = false, all = true;
    for (auto& [w, m] : c.terms())
      for (int x : w) {
        if (x == 0) continue;
        divisible = true;
        if (x % p.p() != 0) all = false;
      }
    if (!divisible || !all) return c;
    character next(c.rank());
    for (auto& [w, m] : c.terms()) {
      weight_vec sw = w;
      for (auto& x : sw) x /= p.p();
      next.add(sw, m);
    }
    c = next;
  }
}

// Applies a factor permutation and per-factor duality to a character living
// on the product torus of `factors`.
inline character relabel(const character& c, const std::vector<decorated_factor>& factors,
                         const std::vector<int>& perm, const std::vector<bool>& dual) {
  // Coordinate offsets per factor.
  std::vector<int> offset(factors.size() + 1, 0);
  for (size_t i = 0; i < factors.size(); ++i)
    offset[i + 1] = offset[i] + factors[i].type.rank;
  character out(c.rank());
  for (auto& [w, m] : c.terms()) {
    weight_vec img(c.rank(), 0);
    for (size_t i = 0; i < factors.size(); ++i) {
      int src = offset[i], dst = offset[perm[i]], rank = factors[i].type.rank;
      for (int k = 0; k < rank; ++k) {
        int coord = w[src + k];
        int pos = k;
        if (dual[i]) {
          if (factors[i].type.series == 'A') pos = rank - 1 - k;
          else if (factors[i].type.series == 'D' && k >= rank - 2) pos = 2 * rank - 3 - k;
        }
        img[dst + pos] = coord;
      }
    }
    out.add(img, m);
  }
  return out;
}

inline bool factor_can_dualize(const simple_type& t) {
  return (t.series == 'A' && t.rank >= 2) || (t.series == 'D');
}

}  // namespace verify_detail

// Do two factor lists name the same composition factors up to an abstract
// isomorphism (factor permutation, per-factor graph automorphism, global
// Frobenius shift)?  Falls back to entry-dimension comparison when the
// characters are not computable.
inline cmp_result same_composition_factors(const std::vector<decorated_factor>& fa,
                                           const factor_list& la,
                                           const std::vector<decorated_factor>& fb,
                                           const factor_list& lb, characteristic p) {
  // The abstract types must agree for a meaningful comparison.
  auto type_of = [](const std::vector<decorated_factor>& f) {
    std::vector<simple_type> t;
    for (auto& x : f) t.push_back(x.type);
    std::sort(t.begin(), t.end());
    return t;
  };
  if (type_of(fa) != type_of(fb)) return cmp_result::different;

  try {
    character ca = verify_detail::strip_global_twist(list_char(la, fa, p), p);
    // Enumerate permutations of b's factors onto a's (type-preserving) and
    // per-factor dualities; compare transformed characters.
    std::vector<int> perm(fb.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end());
    character cb_raw = list_char(lb, fb, p);
    do {
      bool type_ok = true;
      for (size_t i = 0; i < fb.size(); ++i)
        if (!(fb[i].type == fa[perm[i]].type)) type_ok = false;
      if (!type_ok) continue;
      int n_dual = 0;
      std::vector<int> dual_slots;
      for (size_t i = 0; i < fb.size(); ++i)
        if (verify_detail::factor_can_dualize(fb[i].type)) dual_slots.push_back(static_cast<int>(i));
      n_dual = static_cast<int>(dual_slots.size());
      for (int mask = 0; mask < (1 << n_dual); ++mask) {
        std::vector<bool> dual(fb.size(), false);
        for (int k = 0; k < n_dual; ++k)
          if (mask & (1 << k)) dual[dual_slots[k]] = true;
        character cb = verify_detail::strip_global_twist(
            verify_detail::relabel(cb_raw, fb, perm, dual), p);
        if (ca == cb) return cmp_result::same;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return cmp_result::different;
  } catch (const error& e) {
    if (e.code() != errc::unresolved) throw;
  }
  // Symbolic fallback: multisets of entry dimensions.
  auto dims = [&](const factor_list& l, const std::vector<decorated_factor>& f) {
    std::vector<std::int64_t> d;
    for (auto& entry : l.entries) d.push_back(entry_dim(entry, f, p));
    std::sort(d.begin(), d.end());
    return d;
  };
  try {
    if (dims(la, fa) != dims(lb, fb)) return cmp_result::different;
  } catch (const error&) {
  }
  return cmp_result::unresolved;
}

// ---------------------------------------------------------------------------
// The subgroup universe at a characteristic
// ---------------------------------------------------------------------------

struct subgroup_value {
  subgroup_ref ref;
  std::vector<simple_type> abstract;
  std::vector<decorated_factor> factors;
  std::optional<factor_list> vmin, vadj;
};

// Composition factors of a family instance by restriction from its parent.
inline std::optional<restriction_result> instance_restriction(const catalog& cat,
                                                              const class_record& family,
                                                              const std::vector<int>& values,
                                                              bool adjoint, characteristic p) {
  const class_record& parent = cat.cls(family.group, *family.parent);
  const std::optional<factor_list>& src = adjoint ? parent.vadj : parent.vmin;
  if (!src || parent.stub || !family.embed) return std::nullopt;
  assignment env;
  auto vars = family.twist_vars();
  for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = values[i];
  try {
    return restrict_diagonal(*src, parent.factors, *family.embed, env, p);
  } catch (const error& e) {
    if (e.code() == errc::unresolved) return std::nullopt;
    throw;
  }
}

// All classes plus admissible family instances with twists <= bound.
inline std::vector<subgroup_value> subgroup_universe(const catalog& cat, group_id g,
                                                     characteristic p, int bound) {
  std::vector<subgroup_value> out;
  for (const class_record* rec : cat.classes_of(g)) {
    if (rec->id == 0 || rec->stub || !rec->cond.admits(p)) continue;
    if (rec->is_family) {
      for (auto& vals : enumerate_instances(cat, *rec, bound, p)) {
        subgroup_value v;
        v.ref = {rec->id, vals};
        auto shape = letter_structure(*rec->embed, cat.cls(g, *rec->parent).factors);
        v.factors = target_factors(shape);
        for (auto& f : v.factors) v.abstract.push_back(f.type);
        std::sort(v.abstract.begin(), v.abstract.end());
        if (auto r = instance_restriction(cat, *rec, vals, false, p)) v.vmin = r->list;
        if (auto r = instance_restriction(cat, *rec, vals, true, p)) v.vadj = r->list;
        out.push_back(v);
      }
    } else {
      subgroup_value v;
      v.ref = {rec->id, std::nullopt};
      v.factors = rec->factors;
      v.abstract = rec->abstract_type();
      v.vmin = rec->vmin;
      v.vadj = rec->vadj;
      if (!v.vmin && rec->embed && rec->parent)
        if (auto r = instance_restriction(cat, *rec, {}, false, p)) v.vmin = r->list;
      if (!v.vadj && rec->embed && rec->parent)
        if (auto r = instance_restriction(cat, *rec, {}, true, p)) v.vadj = r->list;
      out.push_back(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Collision checks
// ---------------------------------------------------------------------------

struct collision_report {
  std::string check;
  characteristic p;
  std::vector<std::tuple<std::string, std::string, bool>> collisions;  // (a, b, unresolved)
  std::vector<std::string> skipped;  // classes without the needed factor data
  int pairs_compared = 0;

  bool ok() const { return collisions.empty(); }

  std::string str(group_id) const {
    std::ostringstream os;
    for (auto& [a, b, unresolved] : collisions)
      os << check << " p=" << p.str() << " " << a << " ~ " << b
         << (unresolved ? " potential collision - unresolved" : " collision") << "\n";
    return os.str();
  }
};

inline collision_report check_determines(const catalog& cat, group_id g, characteristic p,
                                         bool adjoint, int bound) {
  collision_report report;
  report.check = adjoint ? "adjoint-determines" : "min-determines";
  report.p = p;
  auto universe = subgroup_universe(cat, g, p, bound);
  for (auto& v : universe) {
    const auto& list = adjoint ? v.vadj : v.vmin;
    if (!list) report.skipped.push_back(v.ref.str(g));
  }
  for (size_t i = 0; i < universe.size(); ++i) {
    const auto& a = universe[i];
    const auto& la = adjoint ? a.vadj : a.vmin;
    if (!la) continue;
    for (size_t j = i + 1; j < universe.size(); ++j) {
      const auto& b = universe[j];
      if (a.abstract != b.abstract) continue;
      const auto& lb = adjoint ? b.vadj : b.vmin;
      if (!lb) continue;
      ++report.pairs_compared;
      cmp_result r = same_composition_factors(a.factors, *la, b.factors, *lb, p);
      if (r == cmp_result::same)
        report.collisions.emplace_back(a.ref.str(g), b.ref.str(g), false);
      else if (r == cmp_result::unresolved)
        report.collisions.emplace_back(a.ref.str(g), b.ref.str(g), true);
    }
  }
  return report;
}

inline collision_report check_adjoint_determines(const catalog& cat, group_id g,
                                                 characteristic p, int bound = 2) {
  return check_determines(cat, g, p, true, bound);
}

inline collision_report check_min_determines(const catalog& cat, group_id g, characteristic p,
                                             int bound = 2) {
  return check_determines(cat, g, p, false, bound);
}

// ---------------------------------------------------------------------------
// Type existence and coverage
// ---------------------------------------------------------------------------

inline std::vector<simple_type> type_pattern(const simple_type& base, int count) {
  std::vector<simple_type> t(count, base);
  return t;
}

// Classes (and families with at least one admissible instance) matching an
// abstract type at p.
inline std::vector<const class_record*> classes_of_type(const catalog& cat, group_id g,
                                                        const std::vector<simple_type>& pattern,
                                                        characteristic p, int bound = 3) {
  std::vector<const class_record*> out;
  for (const class_record* rec : cat.classes_of(g)) {
    if (rec->id == 0 || rec->stub || !rec->cond.admits(p)) continue;
    std::vector<simple_type> abstract;
    if (rec->is_family || (rec->embed && rec->parent)) {
      if (cat.cls(g, *rec->parent).stub) {
        abstract = rec->abstract_type();
      } else {
        auto shape = letter_structure(*rec->embed, cat.cls(g, *rec->parent).factors);
        for (auto& f : target_factors(shape)) abstract.push_back(f.type);
        std::sort(abstract.begin(), abstract.end());
      }
    } else {
      abstract = rec->abstract_type();
    }
    if (abstract != pattern) continue;
    if (rec->is_family && enumerate_instances(cat, *rec, bound, p).empty()) continue;
    out.push_back(rec);
  }
  return out;
}

struct existence_result {
  bool exists = false;
  std::optional<subgroup_ref> witness;
};

inline existence_result check_type_existence(const catalog& cat, group_id g, int n,
                                             const simple_type& base, characteristic p) {
  existence_result res;
  auto matches = classes_of_type(cat, g, type_pattern(base, n), p);
  if (matches.empty()) return res;
  const class_record* best = matches.front();
  for (auto* rec : matches)
    if (!rec->is_family && (best->is_family || rec->id < best->id)) best = rec;
  res.exists = true;
  if (best->is_family) {
    auto vals = enumerate_instances(cat, *best, 3, p);
    res.witness = subgroup_ref{best->id, vals.front()};
  } else {
    res.witness = subgroup_ref{best->id, std::nullopt};
  }
  return res;
}

struct cover_result {
  std::optional<int> maximal;       // smallest qualifying maximal class, if any
  std::vector<int> all_qualifying;
  int universe_size = 0;
};

// The reductive maximal class containing (a conjugate of) every irreducible
// subgroup of type base^n, any n, at characteristic p.
inline cover_result check_single_maximal_cover(const catalog& cat, group_id g, characteristic p,
                                               const simple_type& base, int bound = 2) {
  cover_result res;
  // Universe: every class/instance whose abstract type is a power of the
  // given simple type.
  std::vector<subgroup_ref> members;
  for (auto& v : subgroup_universe(cat, g, p, bound)) {
    if (v.abstract.empty()) continue;
    bool pure = true;
    for (auto& t : v.abstract)
      if (!(t == base)) pure = false;
    if (pure) members.push_back(v.ref);
  }
  res.universe_size = static_cast<int>(members.size());
  if (members.empty()) return res;

  // Candidate maximals: immediate children of #0 at p.
  std::set<int> candidates;
  for (auto& e : cat.edges)
    if (e.group == g && e.parent == 0 && e.cond.admits(p) &&
        cat.cls(g, e.child).cond.admits(p))
      candidates.insert(e.child);

  for (int m : candidates) {
    bool covers = true;
    for (auto& ref : members) {
      auto closure = overgroup_closure(cat, g, ref, p);
      bool found = false;
      for (auto& c : closure)
        if (c.id == m && !c.twists) found = true;
      if (!found) {
        covers = false;
        break;
      }
    }
    if (covers) res.all_qualifying.push_back(m);
  }
  if (!res.all_qualifying.empty()) res.maximal = res.all_qualifying.front();
  return res;
}

// ---------------------------------------------------------------------------
// Tensor product theorem variant
// ---------------------------------------------------------------------------

struct steinberg_component {
  int twist = 0;
  bool restricted = true;
  int max_weight = 0;
};

struct steinberg_result {
  std::vector<steinberg_component> components;
  bool satisfies = true;
  bool resolvable = true;
};

namespace verify_detail {

inline std::string identity_label(const simple_type& t) {
  if (t.series == 'A' && t.rank == 1) return "1";
  std::string s = "1";
  for (int i = 1; i < t.rank; ++i) s += "0";
  return s;
}

inline bool component_restricted(const entry_component& c, const simple_type& t,
                                 characteristic p) {
  if (!p.finite()) return true;
  if (c.kind != 'L' || c.twist != 0) fail(errc::unresolved, "unexpanded component");
  if (t.series == 'A' && t.rank == 1) return c.w[0] <= 2 * p.p() - 2;
  for (int x : c.w)
    if (x > p.p() - 1) return false;
  return true;
}

}  // namespace verify_detail

// Decides whether a simple class or family instance satisfies the restricted
// tensor-factorization conclusion: the commuting product E_1...E_k formed by
// grouping its embedding positions by field twist must consist of restricted
// factors carrying distinct twists.
inline steinberg_result steinberg_product(const catalog& cat, group_id g,
                                          const subgroup_ref& ref, characteristic p) {
  const class_record& rec = cat.cls(g, ref.id);
  steinberg_result res;
  if (!p.finite()) return res;

  factor_list adjoint;
  std::vector<decorated_factor> comp_factors;
  std::vector<int> comp_twists;

  if (ref.twists || (rec.embed && rec.parent)) {
    const class_record& parent = cat.cls(g, *rec.parent);
    if (!parent.vadj) {
      res.resolvable = false;
      return res;
    }
    // Group positions by twist value into the components E_i.
    assignment env;
    auto vars = rec.twist_vars();
    std::vector<int> vals = ref.twists ? *ref.twists : std::vector<int>(vars.size(), 0);
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = vals[i];
    std::map<int, char> twist_letter;
    embedding_descriptor comp_desc;
    for (auto& pos : rec.embed->positions) {
      int t = twist_value(pos, env);
      if (!twist_letter.count(t))
        twist_letter[t] = static_cast<char>('a' + twist_letter.size());
      position_spec ps;
      ps.label = pos.label;
      ps.letter = twist_letter[t];
      comp_desc.positions.push_back(ps);
    }
    // Components are reported in letter order, matching the letter_structure
    // ordering used by the restriction.
    comp_twists.resize(twist_letter.size());
    for (auto& [t, letter] : twist_letter) comp_twists[letter - 'a'] = t;
    try {
      auto r = restrict_diagonal(*parent.vadj, parent.factors, comp_desc, {}, p);
      adjoint = r.list;
      comp_factors = r.factors;
    } catch (const error& e) {
      if (e.code() != errc::unresolved) throw;
      res.resolvable = false;
      return res;
    }
  } else {
    if (rec.factors.size() != 1) fail(errc::unsupported_type, "not a simple class");
    if (!rec.vadj) {
      res.resolvable = false;
      return res;
    }
    // Re-expand through the identity embedding to canonicalize entries.
    embedding_descriptor ident;
    position_spec ps;
    ps.label = verify_detail::identity_label(rec.factors[0].type);
    ident.positions.push_back(ps);
    try {
      auto r = restrict_diagonal(*rec.vadj, rec.factors, ident, {}, p);
      adjoint = r.list;
      comp_factors = r.factors;
    } catch (const error& e) {
      if (e.code() != errc::unresolved) throw;
      res.resolvable = false;
      return res;
    }
    comp_twists = {0};
  }

  for (size_t i = 0; i < comp_factors.size(); ++i) {
    steinberg_component comp;
    comp.twist = comp_twists.size() == comp_factors.size() ? comp_twists[i] : 0;
    for (auto& entry : adjoint.entries) {
      const entry_component& c = entry.comps[i];
      try {
        if (!verify_detail::component_restricted(c, comp_factors[i].type, p))
          comp.restricted = false;
      } catch (const error& e) {
        if (e.code() != errc::unresolved) throw;
        res.resolvable = false;
      }
      for (int x : c.w) comp.max_weight = std::max(comp.max_weight, x);
    }
    if (!comp.restricted) res.satisfies = false;
    res.components.push_back(comp);
  }
  std::set<int> distinct(comp_twists.begin(), comp_twists.end());
  if (distinct.size() != comp_twists.size()) res.satisfies = false;
  return res;
}

}  // namespace irrlat
