#pragma once

// Data model for the classified conjugacy classes: class records, factor
// lists, diagonal families, overgroup edges and the .isl file loader.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "irrlat/characteristic.hpp"
#include "irrlat/rootdata.hpp"
#include "irrlat/twistlang.hpp"

namespace irrlat {

enum class group_id { G2, F4, E6, E7, E8 };

inline std::string group_name(group_id g) {
  switch (g) {
    case group_id::G2: return "G2";
    case group_id::F4: return "F4";
    case group_id::E6: return "E6";
    case group_id::E7: return "E7";
    case group_id::E8: return "E8";
  }
  return "?";
}

inline group_id parse_group(const std::string& s) {
  for (group_id g : {group_id::G2, group_id::F4, group_id::E6, group_id::E7, group_id::E8})
    if (group_name(g) == s) return g;
  fail(errc::parse_error, "unknown group: " + s);
}

// ---------------------------------------------------------------------------
// Characteristic conditions
// ---------------------------------------------------------------------------

struct char_condition {
  struct atom {
    enum class kind { all, eq, neq, geq } k = kind::all;
    int p = 0;
  };
  std::vector<atom> atoms;  // conjunction; empty = all

  bool admits(characteristic c) const {
    for (auto& a : atoms) {
      switch (a.k) {
        case atom::kind::all: break;
        case atom::kind::eq:
          if (!c.equals(a.p)) return false;
          break;
        case atom::kind::neq:
          if (c.equals(a.p)) return false;
          break;
        case atom::kind::geq:
          if (!c.at_least(a.p)) return false;
          break;
      }
    }
    return true;
  }

  static char_condition parse(const std::string& text) {
    char_condition cc;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || part == "all") continue;
      atom a;
      if (part.rfind("!=", 0) == 0) {
        a.k = atom::kind::neq;
        a.p = std::stoi(part.substr(2));
      } else if (part.rfind(">=", 0) == 0) {
        a.k = atom::kind::geq;
        a.p = std::stoi(part.substr(2));
      } else if (part.rfind("=", 0) == 0) {
        a.k = atom::kind::eq;
        a.p = std::stoi(part.substr(1));
      } else {
        fail(errc::parse_error, "bad characteristic condition: " + text);
      }
      cc.atoms.push_back(a);
    }
    return cc;
  }

  std::string str() const {
    if (atoms.empty()) return "all";
    std::string s;
    for (size_t i = 0; i < atoms.size(); ++i) {
      if (i) s += ",";
      auto& a = atoms[i];
      s += a.k == atom::kind::eq ? "=" : a.k == atom::kind::neq ? "!=" : ">=";
      s += std::to_string(a.p);
    }
    return s;
  }
};

inline char_condition intersect(const char_condition& a, const char_condition& b) {
  char_condition c = a;
  c.atoms.insert(c.atoms.end(), b.atoms.begin(), b.atoms.end());
  return c;
}

// ---------------------------------------------------------------------------
// Factors and factor lists
// ---------------------------------------------------------------------------

struct decorated_factor {
  simple_type type;
  char decoration = ' ';  // 'b' = long-root (bar), 't' = short-root (tilde)

  std::string str() const {
    std::string s;
    if (decoration != ' ') s += decoration;
    return s + type.str();
  }
};

inline decorated_factor parse_factor(const std::string& s) {
  decorated_factor f;
  std::string body = s;
  if (s[0] == 'b' || s[0] == 't') {
    f.decoration = s[0];
    body = s.substr(1);
  }
  f.type = simple_type::parse(body);
  return f;
}

inline std::vector<decorated_factor> parse_factors(const std::string& text) {
  std::vector<decorated_factor> out;
  std::stringstream ss(text);
  std::string part;
  while (ss >> part) out.push_back(parse_factor(part));
  return out;
}

// One tensor-factor component of a composition-factor entry.
struct entry_component {
  high_weight w;
  char kind = 'L';  // 'L' irreducible, 'W' Weyl, 'T' tilting
  int twist = 0;

  bool zero() const {
    for (int x : w)
      if (x) return false;
    return kind != 'T' && twist == 0;
  }
  auto operator<=>(const entry_component&) const = default;
};

// One composition factor of a module restricted to a product of simple
// factors: a tensor product across the factors.
struct factor_entry {
  std::vector<entry_component> comps;
  auto operator<=>(const factor_entry&) const = default;
};

struct factor_list {
  std::vector<factor_entry> entries;
};

inline std::string component_str(const entry_component& c) {
  std::string w;
  bool lambda_form = false;
  for (int x : c.w)
    if (x > 9) lambda_form = true;
  if (c.w.size() > 3 || lambda_form) {
    bool zero = true;
    for (int x : c.w)
      if (x) zero = false;
    if (zero) w = "0";
    else {
      for (size_t i = 0; i < c.w.size(); ++i) {
        if (c.w[i] == 0) continue;
        if (!w.empty()) w += "+";
        if (c.w[i] != 1) w += std::to_string(c.w[i]);
        w += "l" + std::to_string(i + 1);
      }
    }
  } else {
    for (int x : c.w) w += std::to_string(x);
  }
  std::string s = c.kind == 'L' ? w : std::string(1, c.kind) + "(" + w + ")";
  if (c.twist) s += "^{[" + std::to_string(c.twist) + "]}";
  return s;
}

inline std::string entry_str(const factor_entry& e) {
  if (e.comps.size() == 1) return component_str(e.comps[0]);
  std::string s = "(";
  for (size_t i = 0; i < e.comps.size(); ++i) s += (i ? "," : "") + component_str(e.comps[i]);
  return s + ")";
}

inline std::string factor_list_str(const factor_list& fl) {
  std::string s;
  for (size_t i = 0; i < fl.entries.size(); ++i) s += (i ? " / " : "") + entry_str(fl.entries[i]);
  return s;
}

namespace detail {

inline high_weight parse_weight_atom(const std::string& text, int rank) {
  if (text == "0") return high_weight(rank, 0);
  high_weight w(rank, 0);
  if (text.find('l') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '+')) {
      size_t lp = part.find('l');
      int coef = lp == 0 ? 1 : std::stoi(part.substr(0, lp));
      int idx = std::stoi(part.substr(lp + 1));
      if (idx < 1 || idx > rank) fail(errc::parse_error, "weight index out of range: " + text);
      w[idx - 1] += coef;
    }
    return w;
  }
  if (static_cast<int>(text.size()) != rank)
    fail(errc::parse_error, "weight '" + text + "' does not match rank " + std::to_string(rank));
  for (int i = 0; i < rank; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(errc::parse_error, "bad weight: " + text);
    w[i] = text[i] - '0';
  }
  return w;
}

inline entry_component parse_component(std::string text, int rank) {
  entry_component c;
  if (text.rfind("W(", 0) == 0 || text.rfind("T(", 0) == 0) {
    c.kind = text[0];
    if (text.back() != ')') fail(errc::parse_error, "unbalanced component: " + text);
    text = text.substr(2, text.size() - 3);
  }
  c.w = parse_weight_atom(text, rank);
  return c;
}

}  // namespace detail

inline factor_list parse_factor_list(const std::string& text,
                                     const std::vector<decorated_factor>& factors) {
  factor_list fl;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, '/')) {
    // trim
    size_t b = piece.find_first_not_of(" \t");
    size_t e = piece.find_last_not_of(" \t");
    if (b == std::string::npos) fail(errc::parse_error, "empty factor entry in: " + text);
    piece = piece.substr(b, e - b + 1);
    int mult = 1;
    size_t caret = piece.rfind('^');
    if (caret != std::string::npos && (piece[0] != '(' || piece.rfind(')') < caret)) {
      mult = std::stoi(piece.substr(caret + 1));
      piece = piece.substr(0, caret);
    }
    factor_entry entry;
    if (piece[0] == '(') {
      if (piece.back() != ')') fail(errc::parse_error, "unbalanced entry: " + piece);
      std::string inner = piece.substr(1, piece.size() - 2);
      std::stringstream cs(inner);
      std::string comp;
      size_t idx = 0;
      while (std::getline(cs, comp, ',')) {
        if (idx >= factors.size()) fail(errc::parse_error, "too many components: " + piece);
        entry.comps.push_back(detail::parse_component(comp, factors[idx].type.rank));
        ++idx;
      }
    } else {
      entry.comps.push_back(detail::parse_component(piece, factors[0].type.rank));
    }
    if (entry.comps.size() != factors.size())
      fail(errc::parse_error, "entry arity mismatch: " + piece);
    for (int k = 0; k < mult; ++k) fl.entries.push_back(entry);
  }
  return fl;
}

// Dimension of one entry at characteristic p.
inline std::int64_t entry_dim(const factor_entry& e, const std::vector<decorated_factor>& factors,
                              characteristic p) {
  std::int64_t d = 1;
  for (size_t i = 0; i < e.comps.size(); ++i) {
    const entry_component& c = e.comps[i];
    const simple_type& t = factors[i].type;
    switch (c.kind) {
      case 'W': d *= weyl_dim(t, c.w); break;
      case 'T':
        if (t.series != 'A' || t.rank != 1) fail(errc::unsupported_type, "T() on " + t.str());
        d *= tilting_char_a1(c.w[0], p).dim();
        break;
      default: d *= irr_dim(t, c.w, p); break;
    }
  }
  return d;
}

inline std::int64_t list_dim(const factor_list& fl, const std::vector<decorated_factor>& factors,
                             characteristic p) {
  std::int64_t d = 0;
  for (auto& e : fl.entries) d += entry_dim(e, factors, p);
  return d;
}

// ---------------------------------------------------------------------------
// Out-group actions
// ---------------------------------------------------------------------------

struct out_action {
  struct generator {
    std::vector<int> perm;   // image of each position (0-based)
    std::vector<bool> flip;  // per-position graph-automorphism toggle
  };
  std::vector<generator> generators;

  bool trivial() const { return generators.empty(); }
};

// Parses "(1,2,3)(5,6,7); (2,4)(3,5); d{1,2}" style generator lists.
inline out_action parse_out_action(const std::string& text, int n_positions) {
  out_action act;
  std::stringstream ss(text);
  std::string gen_text;
  while (std::getline(ss, gen_text, ';')) {
    size_t b = gen_text.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    out_action::generator g;
    g.perm.resize(n_positions);
    for (int i = 0; i < n_positions; ++i) g.perm[i] = i;
    g.flip.assign(n_positions, false);
    size_t i = b;
    while (i < gen_text.size()) {
      if (gen_text[i] == '(') {
        size_t close = gen_text.find(')', i);
        if (close == std::string::npos) fail(errc::parse_error, "unbalanced cycle: " + gen_text);
        std::vector<int> cycle;
        std::stringstream cyc(gen_text.substr(i + 1, close - i - 1));
        std::string num;
        while (std::getline(cyc, num, ',')) cycle.push_back(std::stoi(num) - 1);
        for (size_t k = 0; k < cycle.size(); ++k) {
          int from = cycle[k], to = cycle[(k + 1) % cycle.size()];
          if (from < 0 || from >= n_positions || to < 0 || to >= n_positions)
            fail(errc::parse_error, "cycle entry out of range: " + gen_text);
          g.perm[from] = to;
        }
        i = close + 1;
      } else if (gen_text[i] == 'd') {
        size_t open = gen_text.find('{', i);
        size_t close = gen_text.find('}', i);
        if (open == std::string::npos || close == std::string::npos)
          fail(errc::parse_error, "bad flip set: " + gen_text);
        std::stringstream fs(gen_text.substr(open + 1, close - open - 1));
        std::string num;
        while (std::getline(fs, num, ',')) {
          int idx = std::stoi(num) - 1;
          if (idx < 0 || idx >= n_positions) fail(errc::parse_error, "flip out of range");
          g.flip[idx] = true;
        }
        i = close + 1;
      } else if (std::isspace(static_cast<unsigned char>(gen_text[i]))) {
        ++i;
      } else {
        fail(errc::parse_error, "bad out-action generator: " + gen_text);
      }
    }
    act.generators.push_back(g);
  }
  return act;
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

// A twist pattern names a subset of a family's instances in the aux tables:
// all twists zero, a single twist variable set to one, or explicit values.
struct twist_pattern {
  enum class kind { none, all_zero, delta, exact };
  kind k = kind::none;
  int delta_index = 0;  // 1-based variable index for delta patterns
  std::vector<int> values;

  static twist_pattern parse(const std::string& text) {
    twist_pattern tp;
    if (text.empty()) return tp;
    if (text == "u0") {
      tp.k = kind::all_zero;
      return tp;
    }
    if (text[0] == 'd') {
      tp.k = kind::delta;
      tp.delta_index = std::stoi(text.substr(1));
      return tp;
    }
    tp.k = kind::exact;
    std::stringstream ss(text);
    std::string num;
    while (std::getline(ss, num, ',')) tp.values.push_back(std::stoi(num));
    return tp;
  }

  std::string str() const {
    switch (k) {
      case kind::none: return "";
      case kind::all_zero: return "u0";
      case kind::delta: return "d" + std::to_string(delta_index);
      case kind::exact: {
        std::string s;
        for (size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
        return s;
      }
    }
    return "";
  }

  // Does an instance with the given ordered variable values match?
  bool matches(const std::vector<int>& vals) const {
    switch (k) {
      case kind::none: return true;
      case kind::all_zero:
        for (int v : vals)
          if (v) return false;
        return true;
      case kind::delta:
        for (size_t i = 0; i < vals.size(); ++i)
          if (vals[i] != (static_cast<int>(i) + 1 == delta_index ? 1 : 0)) return false;
        return true;
      case kind::exact: return vals == values;
    }
    return false;
  }
};

struct class_record {
  group_id group = group_id::G2;
  int id = 0;
  std::vector<decorated_factor> factors;
  char_condition cond;
  bool is_family = false;      // carries twist variables
  bool stub = false;           // referenced by an aux table but not described
  std::optional<int> parent;   // class it is listed inside, when diagonal
  std::optional<embedding_descriptor> embed;
  std::vector<std::pair<char_condition, condition_ptr>> pguards;
  std::string row_table;       // name of attached condition table, if any
  out_action out;              // action on the positions of diagonal subgroups
  std::optional<factor_list> vmin, vadj;
  std::string vm;              // display-only V_M string

  std::string type_str() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) s += (i ? " " : "") + factors[i].str();
    return s;
  }

  // Abstract type: decorations dropped, factors sorted.
  std::vector<simple_type> abstract_type() const {
    std::vector<simple_type> t;
    for (auto& f : factors) t.push_back(f.type);
    std::sort(t.begin(), t.end());
    return t;
  }

  // Ordered twist variables of the family descriptor.
  std::vector<std::string> twist_vars() const {
    std::vector<std::string> vars;
    if (!embed) return vars;
    for (auto& pos : embed->positions)
      if (pos.twist.k == twist_expr::kind::variable &&
          std::find(vars.begin(), vars.end(), pos.twist.var) == vars.end())
        vars.push_back(pos.twist.var);
    return vars;
  }
};

struct edge_record {
  group_id group = group_id::G2;
  int child = 0;
  twist_pattern child_pattern;
  std::string child_variant;  // "a"/"b" occurrence tag
  int parent = 0;
  twist_pattern parent_pattern;
  char_condition cond;
  std::optional<embedding_descriptor> embed;  // inclusion used for restriction
};

struct levi_record {
  group_id group = group_id::G2;
  std::string label;
  std::vector<decorated_factor> factors;
  std::optional<factor_list> vmin, vadj;
};

struct group_info {
  int vmin_dim = 0;
  int vadj_dim = 0;
};

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

class catalog {
 public:
  std::map<group_id, group_info> groups;
  std::map<std::pair<group_id, int>, class_record> classes;
  std::vector<edge_record> edges;
  std::map<std::string, row_table> row_tables;
  std::vector<levi_record> levis;

  const class_record& cls(group_id g, int id) const {
    auto it = classes.find({g, id});
    if (it == classes.end())
      fail(errc::unknown_id, group_name(g) + "(#" + std::to_string(id) + ")");
    return it->second;
  }

  bool has_class(group_id g, int id) const { return classes.count({g, id}) > 0; }

  std::vector<const edge_record*> edges_from(group_id g, int child) const {
    std::vector<const edge_record*> out;
    for (auto& e : edges)
      if (e.group == g && e.child == child) out.push_back(&e);
    return out;
  }

  std::vector<const class_record*> classes_of(group_id g) const {
    std::vector<const class_record*> out;
    for (auto& [key, rec] : classes)
      if (key.first == g) out.push_back(&rec);
    return out;
  }

  std::vector<const class_record*> families_of_parent(group_id g, int parent) const {
    std::vector<const class_record*> out;
    for (auto& [key, rec] : classes)
      if (key.first == g && rec.parent && *rec.parent == parent && rec.embed) out.push_back(&rec);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Loader
// ---------------------------------------------------------------------------

namespace detail {

// Splits "key=value" attributes; values may be double-quoted.
inline std::map<std::string, std::string> parse_attrs(const std::string& line, size_t start,
                                                      std::vector<std::string>* positional) {
  std::map<std::string, std::string> attrs;
  size_t i = start;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '=')
      ++j;
    std::string word = line.substr(i, j - i);
    if (j < line.size() && line[j] == '=') {
      ++j;
      std::string value;
      if (j < line.size() && line[j] == '"') {
        size_t close = line.find('"', j + 1);
        if (close == std::string::npos) fail(errc::parse_error, "unterminated string: " + line);
        value = line.substr(j + 1, close - j - 1);
        j = close + 1;
      } else {
        size_t k = j;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        value = line.substr(j, k - j);
        j = k;
      }
      attrs[word] = value;
    } else {
      if (positional) positional->push_back(word);
    }
    i = j;
  }
  return attrs;
}

// "12", "12a", "12{u0}", "12a{1,0}" -> (id, variant, pattern)
inline std::tuple<int, std::string, twist_pattern> parse_id_ref(const std::string& text) {
  size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == 0) fail(errc::parse_error, "bad id reference: " + text);
  int id = std::stoi(text.substr(0, i));
  std::string variant;
  while (i < text.size() && (text[i] == 'a' || text[i] == 'b')) variant += text[i++];
  twist_pattern tp;
  if (i < text.size() && text[i] == '{') {
    if (text.back() != '}') fail(errc::parse_error, "bad id reference: " + text);
    tp = twist_pattern::parse(text.substr(i + 1, text.size() - i - 2));
    i = text.size();
  }
  if (i != text.size()) fail(errc::parse_error, "bad id reference: " + text);
  return {id, variant, tp};
}

}  // namespace detail

class catalog_loader {
 public:
  catalog load(const std::vector<std::filesystem::path>& paths) {
    for (auto& path : paths) {
      std::ifstream in(path);
      if (!in) fail(errc::parse_error, "cannot open " + path.string());
      std::string line;
      int lineno = 0;
      file_ = path.filename().string();
      while (std::getline(in, line)) {
        ++lineno;
        lineno_ = lineno;
        auto hash = find_comment(line);
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        parse_line(line);
      }
      if (in_rowtable_) fail(errc::parse_error, where() + "unterminated rowtable");
    }
    validate();
    return std::move(cat_);
  }

 private:
  static size_t find_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) return i;
    }
    return std::string::npos;
  }

  std::string where() const { return file_ + ":" + std::to_string(lineno_) + ": "; }

  void parse_line(const std::string& line) {
    std::vector<std::string> pos;
    std::stringstream head(line);
    std::string kind;
    head >> kind;
    size_t rest = line.find(kind) + kind.size();
    auto attrs = detail::parse_attrs(line, rest, &pos);

    if (in_rowtable_) {
      if (kind == "row") {
        row_table::row r;
        r.eq_text = attrs.count("eq") ? attrs["eq"] : "none";
        r.equalities = parse_row_pattern(r.eq_text);
        if (attrs.count("extra") && !attrs["extra"].empty())
          r.extra = parse_condition(attrs["extra"]);
        current_table_.rows.push_back(r);
        return;
      }
      if (kind == "end") {
        cat_.row_tables[current_table_.name] = current_table_;
        in_rowtable_ = false;
        return;
      }
      fail(errc::parse_error, where() + "expected row/end inside rowtable");
    }

    if (kind == "group") {
      group_id g = parse_group(pos.at(0));
      group_info gi;
      gi.vmin_dim = std::stoi(attrs.at("vmin"));
      gi.vadj_dim = std::stoi(attrs.at("vadj"));
      cat_.groups[g] = gi;
      return;
    }
    if (kind == "class" || kind == "family") {
      class_record rec;
      rec.group = parse_group(pos.at(0));
      rec.id = std::stoi(pos.at(1));
      rec.is_family = kind == "family";
      if (cat_.classes.count({rec.group, rec.id}))
        fail(errc::duplicate_id, where() + group_name(rec.group) + "#" + std::to_string(rec.id));
      rec.factors = parse_factors(attrs.at("type"));
      if (attrs.count("p")) rec.cond = char_condition::parse(attrs["p"]);
      if (attrs.count("parent")) rec.parent = std::stoi(attrs["parent"]);
      if (attrs.count("embed")) rec.embed = parse_embedding(attrs["embed"]);
      if (attrs.count("rowtable")) rec.row_table = attrs["rowtable"];
      if (attrs.count("out")) {
        int n = rec.embed ? static_cast<int>(rec.embed->positions.size())
                          : static_cast<int>(rec.factors.size());
        rec.out = parse_out_action(attrs["out"], n);
      }
      if (attrs.count("pguard")) {
        // "=2: r!=s" possibly "|"-separated for several guards
        std::stringstream gs(attrs["pguard"]);
        std::string guard;
        while (std::getline(gs, guard, '|')) {
          size_t colon = guard.find(':');
          if (colon == std::string::npos) fail(errc::parse_error, where() + "bad pguard");
          rec.pguards.emplace_back(char_condition::parse(guard.substr(0, colon)),
                                   parse_condition(guard.substr(colon + 1)));
        }
      }
      if (attrs.count("vmin")) rec.vmin = parse_factor_list(attrs["vmin"], rec.factors);
      if (attrs.count("vadj")) rec.vadj = parse_factor_list(attrs["vadj"], rec.factors);
      if (attrs.count("vm")) rec.vm = attrs["vm"];
      if (attrs.count("stub")) rec.stub = attrs["stub"] == "yes";
      cat_.classes[{rec.group, rec.id}] = rec;
      return;
    }
    if (kind == "edge") {
      // edge <G> <child> -> <parent> [p=...] [embed=...]
      edge_record e;
      e.group = parse_group(pos.at(0));
      auto [cid, cvar, cpat] = detail::parse_id_ref(pos.at(1));
      if (pos.at(2) != "->") fail(errc::parse_error, where() + "expected ->");
      auto [pid, pvar, ppat] = detail::parse_id_ref(pos.at(3));
      e.child = cid;
      e.child_variant = cvar;
      e.child_pattern = cpat;
      e.parent = pid;
      e.parent_pattern = ppat;
      if (attrs.count("p")) e.cond = char_condition::parse(attrs["p"]);
      if (attrs.count("embed")) e.embed = parse_embedding(attrs["embed"]);
      cat_.edges.push_back(e);
      return;
    }
    if (kind == "rowtable") {
      current_table_ = row_table{};
      current_table_.name = pos.at(0);
      current_table_.groups = parse_symbol_groups(attrs.at("groups"));
      in_rowtable_ = true;
      return;
    }
    if (kind == "levi") {
      levi_record lr;
      lr.group = parse_group(pos.at(0));
      lr.label = attrs.at("label");
      lr.factors = parse_factors(attrs.at("type"));
      if (attrs.count("vmin")) lr.vmin = parse_factor_list(attrs["vmin"], lr.factors);
      if (attrs.count("vadj")) lr.vadj = parse_factor_list(attrs["vadj"], lr.factors);
      cat_.levis.push_back(lr);
      return;
    }
    fail(errc::parse_error, where() + "unknown record kind: " + kind);
  }

  void validate() {
    for (auto& [key, rec] : cat_.classes) {
      if (rec.parent && !cat_.has_class(rec.group, *rec.parent))
        fail(errc::dangling_reference,
             group_name(rec.group) + "#" + std::to_string(rec.id) + " parent #" +
                 std::to_string(*rec.parent));
      if (rec.embed && rec.parent) {
        const class_record& par = cat_.cls(rec.group, *rec.parent);
        if (!par.stub && rec.embed->positions.size() != par.factors.size())
          fail(errc::parse_error, group_name(rec.group) + "#" + std::to_string(rec.id) +
                                      ": descriptor arity does not match parent factors");
      }
      if (!rec.row_table.empty() && !cat_.row_tables.count(rec.row_table))
        fail(errc::dangling_reference, "row table " + rec.row_table);
    }
    for (auto& e : cat_.edges) {
      if (!cat_.has_class(e.group, e.child))
        fail(errc::dangling_reference,
             "edge child " + group_name(e.group) + "#" + std::to_string(e.child));
      if (!cat_.has_class(e.group, e.parent))
        fail(errc::dangling_reference,
             "edge parent " + group_name(e.group) + "#" + std::to_string(e.parent));
    }
  }

  catalog cat_;
  row_table current_table_;
  bool in_rowtable_ = false;
  std::string file_;
  int lineno_ = 0;
};

inline catalog load_catalog(const std::vector<std::filesystem::path>& paths) {
  catalog_loader loader;
  return loader.load(paths);
}

// ---------------------------------------------------------------------------
// Structural audits
// ---------------------------------------------------------------------------

// Dimension conservation: every shipped factor list must add up to the
// module dimension at every admissible probe characteristic.
inline std::vector<std::string> dimension_audit(const catalog& cat) {
  std::vector<std::string> failures;
  auto check = [&](const std::string& what, const std::vector<decorated_factor>& factors,
                   const std::optional<factor_list>& fl, const char_condition& cond,
                   group_id g, bool adjoint) {
    if (!fl) return;
    const group_info& info = cat.groups.at(g);
    std::int64_t want = adjoint ? info.vadj_dim : info.vmin_dim;
    for (characteristic p : probe_characteristics()) {
      if (!cond.admits(p)) continue;
      try {
        std::int64_t got = list_dim(*fl, factors, p);
        if (got != want)
          failures.push_back(what + (adjoint ? " adjoint" : " minimal") + " p=" + p.str() +
                             ": dim " + std::to_string(got) + " != " + std::to_string(want));
      } catch (const error& e) {
        failures.push_back(what + " p=" + p.str() + ": " + e.what());
      }
    }
  };
  for (auto& [key, rec] : cat.classes) {
    std::string name = group_name(rec.group) + "#" + std::to_string(rec.id);
    check(name, rec.factors, rec.vmin, rec.cond, rec.group, false);
    check(name, rec.factors, rec.vadj, rec.cond, rec.group, true);
  }
  for (auto& lr : cat.levis) {
    std::string name = group_name(lr.group) + " Levi " + lr.label;
    check(name, lr.factors, lr.vmin, char_condition{}, lr.group, false);
    check(name, lr.factors, lr.vadj, char_condition{}, lr.group, true);
  }
  return failures;
}

// Every class except #0 must have an outgoing overgroup edge or a parent;
// enforced for the groups whose overgroup tables are complete.
inline std::vector<std::string> edge_audit(const catalog& cat,
                                           const std::vector<group_id>& complete_groups) {
  std::vector<std::string> failures;
  for (auto& [key, rec] : cat.classes) {
    if (rec.id == 0) continue;
    if (std::find(complete_groups.begin(), complete_groups.end(), rec.group) ==
        complete_groups.end())
      continue;
    bool has = rec.parent.has_value();
    for (auto& e : cat.edges)
      if (e.group == rec.group && e.child == rec.id) has = true;
    if (!has)
      failures.push_back(group_name(rec.group) + "#" + std::to_string(rec.id) +
                         " has no overgroup edge");
  }
  return failures;
}

// a/b occurrence tags must split a class's characteristic condition into
// disjoint pieces that cover it.
inline std::vector<std::string> variant_audit(const catalog& cat) {
  std::vector<std::string> failures;
  std::map<std::pair<group_id, int>, std::vector<const edge_record*>> tagged;
  for (auto& e : cat.edges)
    if (!e.child_variant.empty()) tagged[{e.group, e.child}].push_back(&e);
  for (auto& [key, edges] : tagged) {
    const class_record& rec = cat.cls(key.first, key.second);
    std::string name = group_name(key.first) + "#" + std::to_string(key.second);
    for (characteristic p : probe_characteristics()) {
      int admitted = 0;
      for (auto* e : edges)
        if (e->cond.admits(p)) ++admitted;
      bool class_ok = rec.cond.admits(p);
      if (class_ok && admitted != 1)
        failures.push_back(name + " p=" + p.str() + ": " + std::to_string(admitted) +
                           " variant occurrences");
      if (!class_ok && admitted != 0)
        failures.push_back(name + " p=" + p.str() + ": variant outside class condition");
    }
  }
  return failures;
}

// Every file in the bundled data directory, in deterministic order.
inline std::vector<std::filesystem::path> data_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".isl") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace irrlat
