#pragma once

// The immediate-overgroup relation between conjugacy classes (and diagonal
// instances), closure queries and DOT export.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "irrlat/diagonal.hpp"

namespace irrlat {

// A class, or one concrete instance of a diagonal family.
struct subgroup_ref {
  int id = 0;
  std::optional<std::vector<int>> twists;  // family variable values

  auto operator<=>(const subgroup_ref&) const = default;

  std::string str(group_id g) const {
    std::string s = group_name(g) + "(#" + std::to_string(id);
    if (twists) {
      s += "^{";
      for (size_t i = 0; i < twists->size(); ++i) s += (i ? "," : "") + std::to_string((*twists)[i]);
      s += "}";
    }
    return s + ")";
  }
};

namespace lattice_detail {

inline subgroup_ref resolve_target(const catalog& cat, group_id g, int id,
                                   const twist_pattern& pat) {
  subgroup_ref ref;
  ref.id = id;
  if (pat.k == twist_pattern::kind::none) return ref;
  const class_record& rec = cat.cls(g, id);
  size_t nvars = rec.embed ? rec.twist_vars().size() : 0;
  std::vector<int> vals(nvars, 0);
  if (pat.k == twist_pattern::kind::exact) {
    vals = pat.values;
  } else if (pat.k == twist_pattern::kind::delta) {
    if (pat.delta_index >= 1 && pat.delta_index <= static_cast<int>(nvars))
      vals[pat.delta_index - 1] = 1;
  }
  ref.twists = vals;
  return ref;
}

}  // namespace lattice_detail

// Within-parent immediate overgroups of a family instance: the minimal
// admissible instances (over all sibling families of the parent) properly
// containing it, or the parent itself when none do.
inline std::vector<subgroup_ref> within_parent_overgroups(const catalog& cat,
                                                          const class_record& family,
                                                          const std::vector<int>& values,
                                                          characteristic p) {
  const class_record& parent = cat.cls(family.group, *family.parent);
  twist_tuple self = instance_tuple(cat, family, values);
  int max_twist = 0;
  for (int t : self.twists) max_twist = std::max(max_twist, t);

  struct container {
    subgroup_ref ref;
    twist_tuple tuple;
  };
  std::vector<container> containers;
  for (const class_record* sib : cat.families_of_parent(family.group, *family.parent)) {
    if (parent.stub) break;
    for (auto& vals : enumerate_instances(cat, *sib, max_twist, p)) {
      twist_tuple t = instance_tuple(cat, *sib, vals);
      if (tuple_contains_properly(parent, t, self)) {
        subgroup_ref ref;
        ref.id = sib->id;
        if (sib->is_family) ref.twists = vals;
        containers.push_back({ref, t});
      }
    }
  }
  // Keep the minimal containers.
  std::vector<subgroup_ref> out;
  for (size_t i = 0; i < containers.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < containers.size() && minimal; ++j)
      if (i != j && tuple_contains_properly(parent, containers[i].tuple, containers[j].tuple))
        minimal = false;
    if (minimal) out.push_back(containers[i].ref);
  }
  if (out.empty() && parent.cond.admits(p)) out.push_back({*family.parent, std::nullopt});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Immediate connected overgroups of a class or instance at characteristic p:
// the aux-table edges valid at p, plus within-parent diagonal overgroups for
// instances of described families.
inline std::vector<subgroup_ref> immediate_overgroups(const catalog& cat, group_id g,
                                                      const subgroup_ref& ref,
                                                      characteristic p) {
  const class_record& rec = cat.cls(g, ref.id);
  if (!rec.cond.admits(p)) fail(errc::unknown_id, ref.str(g) + " not defined at p=" + p.str());
  std::vector<subgroup_ref> out;
  for (const edge_record* e : cat.edges_from(g, ref.id)) {
    if (!e->cond.admits(p)) continue;
    bool applies;
    if (ref.twists) {
      applies = e->child_pattern.matches(*ref.twists);
    } else {
      applies = e->child_pattern.k == twist_pattern::kind::none;
    }
    if (!applies) continue;
    if (!cat.cls(g, e->parent).cond.admits(p)) continue;
    out.push_back(lattice_detail::resolve_target(cat, g, e->parent, e->parent_pattern));
  }
  if (ref.twists && rec.embed && rec.parent && !cat.cls(g, *rec.parent).stub) {
    if (!instance_admissible(cat, rec, *ref.twists, p))
      fail(errc::condition_violated, ref.str(g) + " at p=" + p.str());
    for (auto& o : within_parent_overgroups(cat, rec, *ref.twists, p)) out.push_back(o);
  } else if (!ref.twists && rec.parent && rec.embed && !rec.is_family) {
    // Non-family diagonal classes reach their parent directly unless an aux
    // edge already records it.
    if (cat.cls(g, *rec.parent).cond.admits(p)) out.push_back({*rec.parent, std::nullopt});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Reflexive-transitive closure under immediate overgroups.
inline std::set<subgroup_ref> overgroup_closure(const catalog& cat, group_id g,
                                                const subgroup_ref& start, characteristic p) {
  std::set<subgroup_ref> seen{start};
  std::vector<subgroup_ref> frontier{start};
  while (!frontier.empty()) {
    std::vector<subgroup_ref> next;
    for (auto& ref : frontier)
      for (auto& o : immediate_overgroups(cat, g, ref, p))
        if (seen.insert(o).second) next.push_back(o);
    frontier = std::move(next);
  }
  return seen;
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

struct dot_node {
  std::string node_id;
  std::string label;
};

struct dot_graph {
  std::vector<dot_node> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // child -> parent
};

inline std::string dot_node_id(group_id g, const subgroup_ref& ref) {
  std::string s = group_name(g) + "_" + std::to_string(ref.id);
  if (ref.twists)
    for (int t : *ref.twists) s += "_" + std::to_string(t);
  return s;
}

// One node per class valid at p.  A family instance named by an aux-table
// row additionally becomes its own node whenever its edge set at p differs
// from the generic family node's.
inline dot_graph build_dot_graph(const catalog& cat, group_id g, characteristic p) {
  dot_graph graph;
  std::vector<std::pair<subgroup_ref, std::vector<subgroup_ref>>> nodes;

  for (const class_record* rec : cat.classes_of(g)) {
    if (!rec->cond.admits(p)) continue;
    subgroup_ref ref{rec->id, std::nullopt};
    std::vector<subgroup_ref> generic_edges;
    if (rec->id != 0) {
      // Generic node edges: class-level aux edges plus, for diagonal
      // records, the parent.
      for (const edge_record* e : cat.edges_from(g, rec->id)) {
        if (!e->cond.admits(p)) continue;
        if (e->child_pattern.k != twist_pattern::kind::none) continue;
        if (!cat.cls(g, e->parent).cond.admits(p)) continue;
        generic_edges.push_back(lattice_detail::resolve_target(cat, g, e->parent, e->parent_pattern));
      }
      if (rec->parent && rec->embed && cat.cls(g, *rec->parent).cond.admits(p) &&
          generic_edges.empty())
        generic_edges.push_back({*rec->parent, std::nullopt});
      std::sort(generic_edges.begin(), generic_edges.end());
      generic_edges.erase(std::unique(generic_edges.begin(), generic_edges.end()),
                          generic_edges.end());
    }
    nodes.push_back({ref, generic_edges});

    if (rec->is_family && rec->embed) {
      // Instance-patterned aux rows.
      std::set<std::vector<int>> patterns;
      size_t nvars = rec->twist_vars().size();
      for (const edge_record* e : cat.edges_from(g, rec->id)) {
        if (e->child_pattern.k == twist_pattern::kind::none) continue;
        std::vector<int> vals(nvars, 0);
        if (e->child_pattern.k == twist_pattern::kind::exact) vals = e->child_pattern.values;
        if (e->child_pattern.k == twist_pattern::kind::delta &&
            e->child_pattern.delta_index <= static_cast<int>(nvars))
          vals[e->child_pattern.delta_index - 1] = 1;
        patterns.insert(vals);
      }
      for (auto& vals : patterns) {
        if (!instance_admissible(cat, *rec, vals, p)) continue;
        subgroup_ref iref{rec->id, vals};
        auto inst_edges = immediate_overgroups(cat, g, iref, p);
        if (inst_edges != generic_edges) nodes.push_back({iref, inst_edges});
      }
    }
  }

  for (auto& [ref, edges] : nodes) {
    const class_record& rec = cat.cls(g, ref.id);
    std::string label = rec.id == 0 ? group_name(g) : rec.type_str();
    label += " (#" + std::to_string(ref.id);
    if (ref.twists) {
      label += "^{";
      for (size_t i = 0; i < ref.twists->size(); ++i)
        label += (i ? "," : "") + std::to_string((*ref.twists)[i]);
      label += "}";
    }
    label += ")";
    if (!rec.cond.atoms.empty()) label += " [p " + rec.cond.str() + "]";
    graph.nodes.push_back({dot_node_id(g, ref), label});
    for (auto& o : edges) graph.edges.emplace_back(dot_node_id(g, ref), dot_node_id(g, o));
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
  return graph;
}

inline std::string export_dot(const catalog& cat, group_id g, characteristic p) {
  dot_graph graph = build_dot_graph(cat, g, p);
  std::ostringstream os;
  os << "digraph " << group_name(g) << "_p" << (p.finite() ? std::to_string(p.p()) : "inf")
     << " {\n";
  for (auto& n : graph.nodes) os << "  " << n.node_id << " [label=\"" << n.label << "\"];\n";
  for (auto& [a, b] : graph.edges) os << "  " << a << " -> " << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace irrlat
