#pragma once

// Parser and evaluator for embedding descriptors ("(1_a^{[r]},1_a,1_b)"),
// field-twist conditions ("rs=0; r!=s; if u=0 then s<t") and row-format
// condition tables.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "irrlat/error.hpp"

namespace irrlat {

using assignment = std::map<std::string, std::int64_t>;

// ---------------------------------------------------------------------------
// Terms and conditions
// ---------------------------------------------------------------------------

struct term {
  enum class kind { literal, variable, product, sum, min, max };
  kind k = kind::literal;
  std::int64_t lit = 0;
  std::string var;               // variable (single letter)
  std::vector<std::string> vars;  // product
  std::vector<term> args;         // sum / min / max

  static term literal(std::int64_t v) {
    term t;
    t.k = kind::literal;
    t.lit = v;
    return t;
  }
};

struct condition;
using condition_ptr = std::shared_ptr<const condition>;

struct condition {
  enum class kind {
    always,   // trivially true
    chain,    // t1 op t2 op t3 ...
    distinct,
    member,   // term in/notin {terms}
    set_ne,   // multiset {A} != multiset {B}
    lex_le,   // sorted listA <=_lex sorted listB (with optional prefix drop)
    cond_if,  // if A then B
    con_and,
    con_or,
  };
  kind k = kind::always;
  std::vector<term> terms;
  std::vector<std::string> ops;   // for chain: "=", "!=", "<", "<=", ">", ">="
  bool negated = false;           // member: true = notin
  std::vector<term> rhs_terms;    // member set / set_ne B / lex_le B
  int drop = 0;                   // lex_le: entries dropped from sorted B
  std::vector<condition_ptr> children;

  static condition_ptr always_true() {
    static const condition_ptr t = std::make_shared<condition>();
    return t;
  }
};

inline std::int64_t eval_term(const term& t, const assignment& env) {
  auto var_value = [&](const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) fail(errc::unbound_variable, v);
    return it->second;
  };
  switch (t.k) {
    case term::kind::literal: return t.lit;
    case term::kind::variable: return var_value(t.var);
    case term::kind::product: {
      std::int64_t x = 1;
      for (auto& v : t.vars) x *= var_value(v);
      return x;
    }
    case term::kind::sum: {
      std::int64_t x = 0;
      for (auto& a : t.args) x += eval_term(a, env);
      return x;
    }
    case term::kind::min:
    case term::kind::max: {
      std::int64_t x = eval_term(t.args[0], env);
      for (size_t i = 1; i < t.args.size(); ++i) {
        std::int64_t y = eval_term(t.args[i], env);
        x = (t.k == term::kind::min) ? std::min(x, y) : std::max(x, y);
      }
      return x;
    }
  }
  return 0;
}

inline bool eval_condition(const condition_ptr& c, const assignment& env) {
  switch (c->k) {
    case condition::kind::always: return true;
    case condition::kind::chain: {
      for (size_t i = 0; i < c->ops.size(); ++i) {
        std::int64_t a = eval_term(c->terms[i], env);
        std::int64_t b = eval_term(c->terms[i + 1], env);
        const std::string& op = c->ops[i];
        bool ok = op == "=" ? a == b
                : op == "!=" ? a != b
                : op == "<" ? a < b
                : op == "<=" ? a <= b
                : op == ">" ? a > b
                             : a >= b;
        if (!ok) return false;
      }
      return true;
    }
    case condition::kind::distinct: {
      std::set<std::int64_t> seen;
      for (auto& t : c->terms)
        if (!seen.insert(eval_term(t, env)).second) return false;
      return true;
    }
    case condition::kind::member: {
      std::int64_t v = eval_term(c->terms[0], env);
      bool found = false;
      for (auto& t : c->rhs_terms)
        if (eval_term(t, env) == v) found = true;
      return c->negated ? !found : found;
    }
    case condition::kind::set_ne: {
      std::multiset<std::int64_t> a, b;
      for (auto& t : c->terms) a.insert(eval_term(t, env));
      for (auto& t : c->rhs_terms) b.insert(eval_term(t, env));
      return c->negated ? a == b : a != b;  // negated here flags set equality
    }
    case condition::kind::lex_le: {
      std::vector<std::int64_t> a, b;
      for (auto& t : c->terms) a.push_back(eval_term(t, env));
      for (auto& t : c->rhs_terms) b.push_back(eval_term(t, env));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      b.erase(b.begin(), b.begin() + std::min<size_t>(c->drop, b.size()));
      return !std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
    case condition::kind::cond_if:
      return !eval_condition(c->children[0], env) || eval_condition(c->children[1], env);
    case condition::kind::con_and:
      for (auto& ch : c->children)
        if (!eval_condition(ch, env)) return false;
      return true;
    case condition::kind::con_or:
      for (auto& ch : c->children)
        if (eval_condition(ch, env)) return true;
      return false;
  }
  return false;
}

inline void collect_variables(const term& t, std::set<std::string>& out) {
  if (t.k == term::kind::variable) out.insert(t.var);
  for (auto& v : t.vars) out.insert(v);
  for (auto& a : t.args) collect_variables(a, out);
}

inline void collect_variables(const condition_ptr& c, std::set<std::string>& out) {
  for (auto& t : c->terms) collect_variables(t, out);
  for (auto& t : c->rhs_terms) collect_variables(t, out);
  for (auto& ch : c->children) collect_variables(ch, out);
}

// ---------------------------------------------------------------------------
// Embedding descriptors
// ---------------------------------------------------------------------------

struct twist_expr {
  enum class kind { omitted, variable, literal };
  kind k = kind::omitted;
  std::string var;
  int lit = 0;
  std::string marker;  // "tau" or "iota" for D4 graph markers; otherwise empty

  bool trivial() const { return k == kind::omitted || (k == kind::literal && lit == 0); }
};

struct position_spec {
  std::string label;    // weight label: "1", "10", "01", "2", "100", "l1", ...
  char letter = 0;      // explicit diagonal-factor tag, or 0
  bool shorthand = false;  // written as a bare letter (A1 shorthand)
  twist_expr twist;
};

struct embedding_descriptor {
  std::vector<position_spec> positions;
  condition_ptr cond = condition::always_true();

  std::set<std::string> twist_variables() const {
    std::set<std::string> vars;
    for (auto& p : positions)
      if (p.twist.k == twist_expr::kind::variable) vars.insert(p.twist.var);
    return vars;
  }
};

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

struct token {
  std::string text;
  size_t offset = 0;
};

inline bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

inline std::vector<token> lex(const std::string& s) {
  std::vector<token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      size_t j = i;
      bool digits = std::isdigit(static_cast<unsigned char>(c));
      while (j < s.size() && is_word_char(s[j])) {
        // Split at a digit/letter boundary except for lambda labels like "l1"
        // and coefficient forms like "2l1".
        ++j;
      }
      out.push_back({s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (c == '<' || c == '>' || c == '!') {
      if (i + 1 < s.size() && s[i + 1] == '=') {
        out.push_back({s.substr(i, 2), i});
        i += 2;
        continue;
      }
      out.push_back({std::string(1, c), i});
      ++i;
      continue;
    }
    out.push_back({std::string(1, c), i});
    ++i;
  }
  return out;
}

class token_stream {
 public:
  token_stream(const std::string& text) : text_(text), tokens_(lex(text)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const token& peek() const {
    static const token eof{"", 0};
    return done() ? eof : tokens_[pos_];
  }
  token next() {
    if (done()) fail_here("unexpected end of input");
    return tokens_[pos_++];
  }
  bool accept(const std::string& t) {
    if (!done() && tokens_[pos_].text == t) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& t) {
    if (!accept(t)) fail_here("expected '" + t + "'");
  }
  [[noreturn]] void fail_here(const std::string& msg) const {
    size_t off = done() ? text_.size() : tokens_[pos_].offset;
    fail(errc::syntax_error, msg + " at offset " + std::to_string(off) + " in \"" + text_ + "\"");
  }

 private:
  std::string text_;
  std::vector<token> tokens_;
  size_t pos_ = 0;
};

inline bool all_lower(const std::string& s) {
  for (char c : s)
    if (!std::islower(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

inline bool all_digits(const std::string& s) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

inline bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"if",  "then",     "or",  "and",  "min",
                                           "max", "distinct", "set", "lexle", "in",
                                           "notin", "drop",   "tau", "iota"};
  return kw.count(s) > 0;
}

// ---------------------------------------------------------------------------
// Condition parser
// ---------------------------------------------------------------------------

inline condition_ptr parse_or(token_stream& ts);

inline term parse_term(token_stream& ts) {
  auto parse_primary = [&](token_stream& s) -> term {
    if (s.peek().text == "min" || s.peek().text == "max") {
      term t;
      t.k = s.next().text == "min" ? term::kind::min : term::kind::max;
      s.expect("{");
      t.args.push_back(parse_term(s));
      while (s.accept(",")) t.args.push_back(parse_term(s));
      s.expect("}");
      return t;
    }
    token tok = s.next();
    if (all_digits(tok.text)) return term::literal(std::stoll(tok.text));
    if (!all_lower(tok.text) || is_keyword(tok.text)) s.fail_here("expected a term");
    if (tok.text.size() == 1) {
      term t;
      t.k = term::kind::variable;
      t.var = tok.text;
      return t;
    }
    term t;
    t.k = term::kind::product;
    for (char c : tok.text) t.vars.emplace_back(1, c);
    return t;
  };
  term first = parse_primary(ts);
  if (ts.peek().text != "+") return first;
  term sum;
  sum.k = term::kind::sum;
  sum.args.push_back(first);
  while (ts.accept("+")) sum.args.push_back(parse_primary(ts));
  return sum;
}

inline bool is_cmp_op(const std::string& s) {
  return s == "=" || s == "!=" || s == "<" || s == "<=" || s == ">" || s == ">=";
}

inline condition_ptr parse_atom(token_stream& ts) {
  auto node = std::make_shared<condition>();
  if (ts.accept("(")) {
    auto inner = parse_or(ts);
    ts.expect(")");
    return inner;
  }
  if (ts.peek().text == "distinct") {
    ts.next();
    ts.expect("{");
    node->k = condition::kind::distinct;
    node->terms.push_back(parse_term(ts));
    while (ts.accept(",")) node->terms.push_back(parse_term(ts));
    ts.expect("}");
    return node;
  }
  if (ts.peek().text == "lexle") {
    ts.next();
    ts.expect("{");
    node->k = condition::kind::lex_le;
    node->terms.push_back(parse_term(ts));
    while (ts.accept(",")) node->terms.push_back(parse_term(ts));
    ts.expect("|");
    node->rhs_terms.push_back(parse_term(ts));
    while (ts.accept(",")) node->rhs_terms.push_back(parse_term(ts));
    if (ts.accept("drop")) node->drop = static_cast<int>(std::stoll(ts.next().text));
    ts.expect("}");
    return node;
  }
  if (ts.peek().text == "set") {
    ts.next();
    ts.expect("{");
    node->k = condition::kind::set_ne;
    node->terms.push_back(parse_term(ts));
    while (ts.accept(",")) node->terms.push_back(parse_term(ts));
    ts.expect("}");
    if (ts.accept("=")) node->negated = true;  // set equality
    else ts.expect("!=");
    ts.expect("set");
    ts.expect("{");
    node->rhs_terms.push_back(parse_term(ts));
    while (ts.accept(",")) node->rhs_terms.push_back(parse_term(ts));
    ts.expect("}");
    return node;
  }
  term first = parse_term(ts);
  if (ts.peek().text == "in" || ts.peek().text == "notin") {
    node->k = condition::kind::member;
    node->negated = ts.next().text == "notin";
    node->terms.push_back(first);
    ts.expect("{");
    node->rhs_terms.push_back(parse_term(ts));
    while (ts.accept(",")) node->rhs_terms.push_back(parse_term(ts));
    ts.expect("}");
    return node;
  }
  node->k = condition::kind::chain;
  node->terms.push_back(first);
  if (!is_cmp_op(ts.peek().text)) ts.fail_here("expected a comparison");
  while (is_cmp_op(ts.peek().text)) {
    node->ops.push_back(ts.next().text);
    node->terms.push_back(parse_term(ts));
  }
  return node;
}

inline condition_ptr parse_and(token_stream& ts) {
  auto first = parse_atom(ts);
  if (ts.peek().text != "and") return first;
  auto node = std::make_shared<condition>();
  node->k = condition::kind::con_and;
  node->children.push_back(first);
  while (ts.accept("and")) node->children.push_back(parse_atom(ts));
  return node;
}

inline condition_ptr parse_or(token_stream& ts) {
  auto first = parse_and(ts);
  if (ts.peek().text != "or") return first;
  auto node = std::make_shared<condition>();
  node->k = condition::kind::con_or;
  node->children.push_back(first);
  while (ts.accept("or")) node->children.push_back(parse_and(ts));
  return node;
}

inline condition_ptr parse_clause(token_stream& ts) {
  if (ts.accept("if")) {
    auto node = std::make_shared<condition>();
    node->k = condition::kind::cond_if;
    node->children.push_back(parse_or(ts));
    ts.expect("then");
    node->children.push_back(parse_or(ts));
    return node;
  }
  return parse_or(ts);
}

inline condition_ptr parse_condition_body(token_stream& ts) {
  auto first = parse_clause(ts);
  if (ts.peek().text != ";") return first;
  auto node = std::make_shared<condition>();
  node->k = condition::kind::con_and;
  node->children.push_back(first);
  while (ts.accept(";")) node->children.push_back(parse_clause(ts));
  return node;
}

}  // namespace detail

inline condition_ptr parse_condition(const std::string& text) {
  detail::token_stream ts(text);
  if (ts.done()) return condition::always_true();
  auto c = detail::parse_condition_body(ts);
  if (!ts.done()) ts.fail_here("trailing input");
  return c;
}

// ---------------------------------------------------------------------------
// Descriptor parser
// ---------------------------------------------------------------------------

inline embedding_descriptor parse_embedding(const std::string& text) {
  detail::token_stream ts(text);
  embedding_descriptor desc;
  ts.expect("(");
  for (;;) {
    position_spec pos;
    detail::token tok = ts.next();
    if (!detail::is_word_char(tok.text[0])) ts.fail_here("expected a position label");
    pos.label = tok.text;
    if (tok.text.size() == 1 && std::islower(static_cast<unsigned char>(tok.text[0]))) {
      pos.shorthand = true;
      pos.letter = tok.text[0];
      pos.label = "1";
    }
    if (ts.accept("_")) {
      detail::token letter = ts.next();
      if (letter.text.size() != 1 || !std::islower(static_cast<unsigned char>(letter.text[0])))
        ts.fail_here("expected a factor letter");
      pos.letter = letter.text[0];
    }
    if (ts.accept("^")) {
      ts.expect("{");
      ts.expect("[");
      detail::token tw = ts.next();
      if (tw.text == "tau" || tw.text == "iota") {
        pos.twist.marker = tw.text;
        if (ts.peek().text != "]") tw = ts.next();
        else tw.text = "0";
      }
      if (detail::all_digits(tw.text)) {
        pos.twist.k = twist_expr::kind::literal;
        pos.twist.lit = std::stoi(tw.text);
      } else if (tw.text.size() == 1 && detail::all_lower(tw.text)) {
        pos.twist.k = twist_expr::kind::variable;
        pos.twist.var = tw.text;
      } else {
        ts.fail_here("expected a twist");
      }
      ts.expect("]");
      ts.expect("}");
    }
    desc.positions.push_back(pos);
    if (ts.accept(",")) continue;
    ts.expect(")");
    break;
  }
  if (ts.accept("|")) desc.cond = detail::parse_condition_body(ts);
  if (!ts.done()) ts.fail_here("trailing input");
  return desc;
}

// ---------------------------------------------------------------------------
// Rendering (canonical surface form; whitespace-normalized)
// ---------------------------------------------------------------------------

inline std::string render(const term& t) {
  switch (t.k) {
    case term::kind::literal: return std::to_string(t.lit);
    case term::kind::variable: return t.var;
    case term::kind::product: {
      std::string s;
      for (auto& v : t.vars) s += v;
      return s;
    }
    case term::kind::sum: {
      std::string s;
      for (size_t i = 0; i < t.args.size(); ++i) s += (i ? "+" : "") + render(t.args[i]);
      return s;
    }
    case term::kind::min:
    case term::kind::max: {
      std::string s = t.k == term::kind::min ? "min{" : "max{";
      for (size_t i = 0; i < t.args.size(); ++i) s += (i ? "," : "") + render(t.args[i]);
      return s + "}";
    }
  }
  return "";
}

inline std::string render(const condition_ptr& c, bool parenthesize = false) {
  auto list = [&](const std::vector<term>& ts) {
    std::string s;
    for (size_t i = 0; i < ts.size(); ++i) s += (i ? "," : "") + render(ts[i]);
    return s;
  };
  switch (c->k) {
    case condition::kind::always: return "";
    case condition::kind::chain: {
      std::string s = render(c->terms[0]);
      for (size_t i = 0; i < c->ops.size(); ++i) s += c->ops[i] + render(c->terms[i + 1]);
      return s;
    }
    case condition::kind::distinct: return "distinct{" + list(c->terms) + "}";
    case condition::kind::member:
      return render(c->terms[0]) + (c->negated ? " notin {" : " in {") + list(c->rhs_terms) + "}";
    case condition::kind::set_ne:
      return "set{" + list(c->terms) + (c->negated ? "} = set{" : "} != set{") +
             list(c->rhs_terms) + "}";
    case condition::kind::lex_le:
      return "lexle{" + list(c->terms) + " | " + list(c->rhs_terms) +
             (c->drop ? " drop " + std::to_string(c->drop) : "") + "}";
    case condition::kind::cond_if:
      return "if " + render(c->children[0], true) + " then " + render(c->children[1], true);
    case condition::kind::con_and: {
      bool top = !parenthesize;
      std::string sep = top ? "; " : " and ";
      std::string s;
      for (size_t i = 0; i < c->children.size(); ++i) {
        std::string part = render(c->children[i], true);
        if (!top && c->children[i]->k == condition::kind::con_or) part = "(" + part + ")";
        s += (i ? sep : "") + part;
      }
      return s;
    }
    case condition::kind::con_or: {
      std::string s;
      for (size_t i = 0; i < c->children.size(); ++i)
        s += (i ? " or " : "") + render(c->children[i], true);
      return s;
    }
  }
  return "";
}

inline std::string render(const embedding_descriptor& d) {
  std::string s = "(";
  for (size_t i = 0; i < d.positions.size(); ++i) {
    const position_spec& p = d.positions[i];
    if (i) s += ",";
    if (p.shorthand) s += p.letter;
    else {
      s += p.label;
      if (p.letter) s += std::string("_") + p.letter;
    }
    if (p.twist.k != twist_expr::kind::omitted || !p.twist.marker.empty()) {
      s += "^{[";
      if (!p.twist.marker.empty()) {
        s += p.twist.marker;
        if (!(p.twist.k == twist_expr::kind::literal && p.twist.lit == 0) ||
            p.twist.k == twist_expr::kind::variable)
          s += " ";
      }
      if (p.twist.k == twist_expr::kind::variable) s += p.twist.var;
      else if (!(p.twist.k == twist_expr::kind::literal && p.twist.lit == 0 &&
                 !p.twist.marker.empty()))
        s += std::to_string(p.twist.lit);
      s += "]}";
    }
  }
  s += ")";
  std::string cond = render(d.cond);
  if (!cond.empty()) s += " | " + cond;
  return s;
}

// ---------------------------------------------------------------------------
// Row-format condition tables
// ---------------------------------------------------------------------------

struct row_table {
  std::string name;
  // Symbols (variables or the literal "0") whose mutual equalities are
  // governed, split into independent groups.
  std::vector<std::vector<std::string>> groups;
  struct row {
    std::vector<std::vector<std::string>> equalities;  // each a set of symbols
    condition_ptr extra = condition::always_true();
    std::string eq_text;  // original pattern text ("none", "r=s; t=u", ...)
  };
  std::vector<row> rows;
};

// Partition of `group` induced by the row's stated equalities: symbols joined
// by some equality set, everything else a singleton.
inline std::vector<std::set<std::string>> row_partition(const std::vector<std::string>& group,
                                                        const row_table::row& r) {
  std::vector<std::set<std::string>> parts;
  std::set<std::string> used;
  for (auto& eq : r.equalities) {
    std::set<std::string> block;
    for (auto& sym : eq)
      if (std::find(group.begin(), group.end(), sym) != group.end()) block.insert(sym);
    if (block.empty()) continue;
    if (block.size() != eq.size())
      fail(errc::parse_error, "equality set straddles governed groups");
    parts.push_back(block);
    used.insert(block.begin(), block.end());
  }
  for (auto& sym : group)
    if (!used.count(sym)) parts.push_back({sym});
  return parts;
}

inline std::vector<std::set<std::string>> value_partition(const std::vector<std::string>& group,
                                                          const assignment& env) {
  std::map<std::int64_t, std::set<std::string>> by_value;
  for (auto& sym : group) {
    std::int64_t v;
    if (sym == "0") v = 0;
    else {
      auto it = env.find(sym);
      if (it == env.end()) fail(errc::unbound_variable, sym);
      v = it->second;
    }
    by_value[v].insert(sym);
  }
  std::vector<std::set<std::string>> parts;
  for (auto& [v, block] : by_value) parts.push_back(block);
  return parts;
}

inline bool partitions_equal(std::vector<std::set<std::string>> a,
                             std::vector<std::set<std::string>> b) {
  auto norm = [](std::vector<std::set<std::string>>& p) { std::sort(p.begin(), p.end()); };
  norm(a);
  norm(b);
  return a == b;
}

// A set of twists satisfies the table when the exact pattern of equalities it
// induces (within each governed group) matches a row and that row's extra
// requirements hold.
inline bool eval_row_table(const row_table& table, const assignment& env) {
  const row_table::row* match = nullptr;
  for (auto& r : table.rows) {
    bool all = true;
    for (auto& group : table.groups)
      if (!partitions_equal(row_partition(group, r), value_partition(group, env))) {
        all = false;
        break;
      }
    if (all) {
      if (match != nullptr)
        fail(errc::ambiguous_rows, table.name + ": two rows match one assignment");
      match = &r;
    }
  }
  if (match == nullptr) return false;
  return eval_condition(match->extra, env);
}

// Parses a row pattern: "none" or ";"-separated equality chains "r=s=t".
inline std::vector<std::vector<std::string>> parse_row_pattern(const std::string& text) {
  std::vector<std::vector<std::string>> eqs;
  if (text == "none" || text.empty()) return eqs;
  detail::token_stream ts(text);
  for (;;) {
    std::vector<std::string> block;
    block.push_back(ts.next().text);
    ts.expect("=");
    block.push_back(ts.next().text);
    while (ts.accept("=")) block.push_back(ts.next().text);
    eqs.push_back(block);
    if (!ts.accept(";")) break;
  }
  if (!ts.done()) ts.fail_here("trailing input in row pattern");
  return eqs;
}

inline std::vector<std::vector<std::string>> parse_symbol_groups(const std::string& text) {
  std::vector<std::vector<std::string>> groups(1);
  detail::token_stream ts(text);
  while (!ts.done()) {
    if (ts.accept("|")) {
      groups.emplace_back();
      continue;
    }
    if (ts.accept(",")) continue;
    groups.back().push_back(ts.next().text);
  }
  return groups;
}

}  // namespace irrlat
