#pragma once

// Enumeration and canonicalization of diagonal conjugacy classes under
// Out-group actions, instance containment, and the audits that re-check the
// condition tables.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "irrlat/catalog.hpp"
#include "irrlat/restriction.hpp"

namespace irrlat {

// A concrete diagonal tuple: per position a weight label, a letter and a
// twist.  Letters are normalized to first-occurrence order 'a', 'b', ...
struct twist_tuple {
  std::vector<std::string> labels;
  std::vector<char> letters;
  std::vector<int> twists;

  auto operator<=>(const twist_tuple&) const = default;

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < labels.size(); ++i) {
      if (i) s += ",";
      s += labels[i];
      if (std::count(letters.begin(), letters.end(), letters[i]) < static_cast<long>(letters.size()))
        s += std::string("_") + letters[i];
      if (twists[i]) s += "^{[" + std::to_string(twists[i]) + "]}";
    }
    return s + ")";
  }
};

namespace diag_detail {

inline std::string dual_label(const simple_type& slot, const std::string& label) {
  if (slot.series == 'A' && slot.rank == 2) return label == "10" ? "01" : label == "01" ? "10" : label;
  if (slot.series == 'B' && slot.rank == 2) return label == "10" ? "02" : label == "02" ? "10" : label;
  if (slot.series == 'D') return label;  // triality markers out of scope
  return label;
}

inline void normalize_letters(twist_tuple& t) {
  std::map<char, char> rename;
  char next = 'a';
  for (auto& ch : t.letters) {
    auto it = rename.find(ch);
    if (it == rename.end()) {
      rename[ch] = next;
      ch = next++;
    } else {
      ch = it->second;
    }
  }
}

inline void normalize_twists(twist_tuple& t) {
  std::map<char, int> mins;
  for (size_t i = 0; i < t.letters.size(); ++i) {
    auto it = mins.find(t.letters[i]);
    if (it == mins.end() || t.twists[i] < it->second) mins[t.letters[i]] = t.twists[i];
  }
  for (size_t i = 0; i < t.letters.size(); ++i) t.twists[i] -= mins[t.letters[i]];
}

}  // namespace diag_detail

inline void normalize(twist_tuple& t) {
  diag_detail::normalize_letters(t);
  diag_detail::normalize_twists(t);
}

inline twist_tuple apply_generator(const twist_tuple& t, const out_action::generator& g,
                                   const std::vector<decorated_factor>& slots) {
  twist_tuple out = t;
  for (size_t i = 0; i < t.labels.size(); ++i) {
    int j = g.perm[i];
    out.labels[j] = g.flip[i] ? diag_detail::dual_label(slots[i].type, t.labels[i]) : t.labels[i];
    out.letters[j] = t.letters[i];
    out.twists[j] = t.twists[i];
  }
  normalize(out);
  return out;
}

// Full orbit of a tuple under the action, all elements normalized.
inline std::set<twist_tuple> orbit(const twist_tuple& t, const out_action& act,
                                   const std::vector<decorated_factor>& slots) {
  twist_tuple start = t;
  normalize(start);
  std::set<twist_tuple> seen{start};
  std::vector<twist_tuple> frontier{start};
  while (!frontier.empty()) {
    std::vector<twist_tuple> next;
    for (auto& x : frontier)
      for (auto& g : act.generators) {
        twist_tuple y = apply_generator(x, g, slots);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

// Lexicographically least element of the orbit.
inline twist_tuple canonicalize(const twist_tuple& t, const out_action& act,
                                const std::vector<decorated_factor>& slots) {
  auto orb = orbit(t, act, slots);
  return *orb.begin();
}

// ---------------------------------------------------------------------------
// Family instances
// ---------------------------------------------------------------------------

// Letters and slot types of a family within the catalog.
struct family_shape {
  std::vector<decorated_factor> slots;   // parent factor per position
  std::vector<char> letters;             // resolved letter per position
  std::vector<std::string> labels;       // descriptor labels
};

inline family_shape shape_of(const catalog& cat, const class_record& family) {
  const class_record& parent = cat.cls(family.group, *family.parent);
  family_shape shape;
  shape.slots = parent.factors;
  auto groups = letter_structure(*family.embed, parent.factors);
  shape.letters.assign(family.embed->positions.size(), 0);
  for (auto& g : groups)
    for (int i : g.positions) shape.letters[i] = g.letter;
  for (auto& pos : family.embed->positions) shape.labels.push_back(pos.label);
  return shape;
}

inline twist_tuple instance_tuple(const catalog& cat, const class_record& family,
                                  const std::vector<int>& values) {
  family_shape shape = shape_of(cat, family);
  auto vars = family.twist_vars();
  if (values.size() != vars.size()) fail(errc::condition_violated, "twist arity mismatch");
  assignment env;
  for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = values[i];
  twist_tuple t;
  t.labels = shape.labels;
  t.letters = shape.letters;
  for (auto& pos : family.embed->positions) t.twists.push_back(twist_value(pos, env));
  normalize(t);
  return t;
}

// Checks the family's own condition, its p-guards and its row table.
inline bool instance_admissible(const catalog& cat, const class_record& family,
                                const std::vector<int>& values, characteristic p) {
  if (!family.cond.admits(p)) return false;
  auto vars = family.twist_vars();
  if (values.size() != vars.size()) return false;
  assignment env;
  bool all_zero = true;
  for (size_t i = 0; i < vars.size(); ++i) {
    env[vars[i]] = values[i];
    if (values[i]) all_zero = false;
  }
  if (!p.finite() && !all_zero) return false;  // no Frobenius twists in characteristic 0
  if (family.embed && !eval_condition(family.embed->cond, env)) return false;
  for (auto& [guard_p, guard_cond] : family.pguards)
    if (guard_p.admits(p) && !eval_condition(guard_cond, env)) return false;
  if (!family.row_table.empty()) {
    auto it = cat.row_tables.find(family.row_table);
    if (it == cat.row_tables.end()) fail(errc::dangling_reference, family.row_table);
    if (!eval_row_table(it->second, env)) return false;
  }
  return true;
}

// All admissible instances with every twist variable <= bound, ordered by
// ascending variable values; tuples are the canonical class representatives.
inline std::vector<std::vector<int>> enumerate_instances(const catalog& cat,
                                                         const class_record& family, int bound,
                                                         characteristic p) {
  std::vector<std::vector<int>> out;
  auto vars = family.twist_vars();
  std::vector<int> vals(vars.size(), 0);
  for (;;) {
    if (instance_admissible(cat, family, vals, p)) out.push_back(vals);
    size_t i = 0;
    while (i < vals.size() && ++vals[i] > bound) vals[i++] = 0;
    if (i == vals.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<twist_tuple> enumerate_classes(const catalog& cat, const class_record& family,
                                                  int bound, characteristic p) {
  std::vector<twist_tuple> out;
  for (auto& vals : enumerate_instances(cat, family, bound, p))
    out.push_back(instance_tuple(cat, family, vals));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Containment between instances of one parent
// ---------------------------------------------------------------------------

// Is X a diagonal subgroup of Z?  Both are tuples over the same parent
// positions.  Tests every Out-conjugate of X against Z; containment requires
// per-Z-letter a twist shift d >= 0 and an optional graph flip.
inline bool tuple_contains(const class_record& parent, const twist_tuple& Z,
                           const twist_tuple& X) {
  for (auto& Xc : orbit(X, parent.out, parent.factors)) {
    std::map<char, std::pair<int, int>> assigned;  // letter -> (shift, flip)
    std::map<char, char> letter_map;
    bool ok = true;
    for (size_t i = 0; i < Z.labels.size() && ok; ++i) {
      char g = Z.letters[i];
      int d = Xc.twists[i] - Z.twists[i];
      int flip = Xc.labels[i] == Z.labels[i]
                     ? 0
                     : Xc.labels[i] == diag_detail::dual_label(parent.factors[i].type, Z.labels[i])
                           ? 1
                           : -1;
      if (d < 0 || flip < 0) {
        ok = false;
        break;
      }
      auto it = assigned.find(g);
      if (it == assigned.end()) {
        assigned[g] = {d, flip};
        letter_map[g] = Xc.letters[i];
      } else if (it->second != std::pair<int, int>{d, flip} || letter_map[g] != Xc.letters[i]) {
        ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

inline int letter_count(const twist_tuple& t) {
  return static_cast<int>(std::set<char>(t.letters.begin(), t.letters.end()).size());
}

// Proper containment: Z genuinely larger (more independent factors).
inline bool tuple_contains_properly(const class_record& parent, const twist_tuple& Z,
                                    const twist_tuple& X) {
  return letter_count(Z) > letter_count(X) && tuple_contains(parent, Z, X);
}

// ---------------------------------------------------------------------------
// Audits
// ---------------------------------------------------------------------------

struct audit_report {
  std::string family;
  int bound = 0;
  characteristic p;
  int satisfying = 0;
  bool injective = true;
  std::vector<std::pair<twist_tuple, twist_tuple>> collisions;
  std::vector<twist_tuple> excluded;  // canonical reps of fully excluded orbits

  std::string str() const {
    std::ostringstream os;
    os << "family=" << family << " bound=" << bound << " p=" << p.str()
       << " satisfying=" << satisfying << " injective=" << (injective ? "yes" : "no")
       << " excluded=" << excluded.size() << "\n";
    for (auto& [a, b] : collisions)
      os << "  collision: " << a.str() << " ~ " << b.str() << "\n";
    for (auto& t : excluded) os << "  excluded: " << t.str() << "\n";
    return os.str();
  }
};

// (a) No two condition-satisfying assignments may name one conjugacy class;
// (b) normalized non-satisfying tuples whose whole orbit misses the
//     satisfying set are reported as candidates excluded by the source.
inline audit_report audit_family(const catalog& cat, const class_record& family, int bound,
                                 characteristic p) {
  const class_record& parent = cat.cls(family.group, *family.parent);
  audit_report report;
  report.family = group_name(family.group) + "#" + std::to_string(family.id);
  report.bound = bound;
  report.p = p;

  auto satisfying = enumerate_instances(cat, family, bound, p);
  report.satisfying = static_cast<int>(satisfying.size());

  std::map<twist_tuple, twist_tuple> canon_to_tuple;
  std::set<twist_tuple> satisfied_canon;
  for (auto& vals : satisfying) {
    twist_tuple t = instance_tuple(cat, family, vals);
    twist_tuple c = canonicalize(t, parent.out, parent.factors);
    auto [it, fresh] = canon_to_tuple.emplace(c, t);
    if (!fresh) {
      report.injective = false;
      report.collisions.emplace_back(it->second, t);
    }
    satisfied_canon.insert(c);
  }

  // Sweep the whole variable box for tuples whose orbit misses every
  // satisfying tuple.
  auto vars = family.twist_vars();
  std::set<twist_tuple> excluded;
  std::vector<int> vals(vars.size(), 0);
  for (;;) {
    if (!instance_admissible(cat, family, vals, p) && family.cond.admits(p)) {
      twist_tuple t = instance_tuple(cat, family, vals);
      twist_tuple c = canonicalize(t, parent.out, parent.factors);
      if (!satisfied_canon.count(c)) excluded.insert(c);
    }
    size_t i = 0;
    while (i < vals.size() && ++vals[i] > bound) vals[i++] = 0;
    if (i == vals.size()) break;
  }
  report.excluded.assign(excluded.begin(), excluded.end());
  return report;
}

}  // namespace irrlat
