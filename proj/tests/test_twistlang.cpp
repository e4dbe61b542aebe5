#include <catch2/catch_amalgamated.hpp>

#include "irrlat/twistlang.hpp"

using namespace irrlat;

namespace {
assignment env(std::initializer_list<std::pair<const char*, std::int64_t>> vals) {
  assignment e;
  for (auto& [k, v] : vals) e[k] = v;
  return e;
}

std::string strip_spaces(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}
}  // namespace

TEST_CASE("parse_embedding basic forms") {
  auto d = parse_embedding("(1^{[r]},1^{[s]}) | rs=0; r!=s");
  REQUIRE(d.positions.size() == 2);
  CHECK(d.positions[0].label == "1");
  CHECK(d.positions[0].twist.var == "r");
  CHECK(eval_condition(d.cond, env({{"r", 1}, {"s", 0}})));
  CHECK_FALSE(eval_condition(d.cond, env({{"r", 0}, {"s", 0}})));

  auto shorthand = parse_embedding("(a,a^{[r]},b,c,d,e,f)");
  REQUIRE(shorthand.positions.size() == 7);
  CHECK(shorthand.positions[0].shorthand);
  CHECK(shorthand.positions[0].label == "1");
  CHECK(shorthand.positions[0].letter == 'a');
  CHECK(shorthand.positions[1].twist.var == "r");
  CHECK(eval_condition(shorthand.cond, env({})));

  auto a2 = parse_embedding("(10_a,10_b,10_b^{[r]},10_c)");
  REQUIRE(a2.positions.size() == 4);
  CHECK(a2.positions[1].letter == 'b');
  CHECK(a2.positions[2].label == "10");
  CHECK(a2.positions[2].twist.var == "r");

  auto lit = parse_embedding("(1^{[1]},1)");
  CHECK(lit.positions[0].twist.k == twist_expr::kind::literal);
  CHECK(lit.positions[0].twist.lit == 1);
}

TEST_CASE("parse_embedding reports syntax errors with offsets") {
  CHECK_THROWS_AS(parse_embedding("(1^{[r]}"), error);
  CHECK_THROWS_AS(parse_embedding("1,1"), error);
  CHECK_THROWS_AS(parse_embedding("(1^{r})"), error);
  try {
    parse_embedding("(1,,1)");
    FAIL("expected a syntax error");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("render round-trips byte-identically modulo whitespace") {
  const char* samples[] = {
      "(1^{[r]},1^{[s]}) | rs=0; r!=s",
      "(a,a^{[r]},b,c,d,e,f)",
      "(10_a,10_b,10_b^{[r]},10_c)",
      "(a,a^{[r]},b,a^{[s]},c,d,a^{[t]}) | r<=s; s<=t; if r=s then s!=t",
      "(a^{[r]},a^{[s]},a^{[t]},b,b^{[u]},c,d) | rs=0; s<=t; if u=0 then s<t",
      "(a,b^{[r]},b^{[s]},b^{[t]}) | rs=0; s<t",
      "(a^{[r]},a^{[s]},a^{[t]},a^{[u]}) | rstu=0; distinct{s,t,u}",
      "(a,a^{[r]},a^{[s]},a^{[t]},b,b^{[u]},c,c^{[v]}) | u<=v; if u=0 then v!=0 and s<t",
      "(a^{[r]},b,a^{[s]},a^{[t]},a^{[u]}) | rstu=0; if t=u then r<s or r=s and s<t",
      "(a,b,c,c^{[r]}) | r!=0",
      "(1_a,1_a^{[r]},1_b,10_c,02_c^{[s]}) | r!=0",
      "(a,a^{[r]},a^{[s]},b^{[t]},b^{[u]},c,d,e) | 0<=r; r<=s; tu=0",
      "(a^{[r]},a^{[s]},b^{[t]},b^{[u]}) | rs=tu=0; t notin {r,s}",
      "(a,a^{[r]},a^{[s]},a^{[t]},b,b^{[u]},c,d) | s<=t; set{0,r} != set{s,t}",
      "(a^{[r]},a^{[s]},a^{[t]},a^{[u]},b^{[v]},b^{[w]},b^{[x]},b^{[y]}) | "
      "rstu=vwxy=0; lexle{s,t,u | w,x,y}",
      "(a^{[r]},a^{[s]},a^{[t]},b^{[v]},a^{[u]},b^{[w]},b^{[x]},b^{[y]}) | "
      "lexle{s,t,u | v,w,x,y drop 1}",
      "(l1^{[tau]},l1)",
      "(l1^{[tau r]},l1^{[iota]})",
  };
  for (const char* text : samples) {
    auto d = parse_embedding(text);
    std::string rendered = render(d);
    INFO(text << "  ->  " << rendered);
    CHECK(strip_spaces(rendered) == strip_spaces(text));
    // Idempotence of parse . render.
    CHECK(render(parse_embedding(rendered)) == rendered);
  }
}

TEST_CASE("condition semantics") {
  auto c = parse_condition("rs=0; r!=s");
  CHECK(eval_condition(c, env({{"r", 1}, {"s", 0}})));
  CHECK_FALSE(eval_condition(c, env({{"r", 0}, {"s", 0}})));
  CHECK_FALSE(eval_condition(c, env({{"r", 2}, {"s", 3}})));

  auto chain = parse_condition("0<r; r<s");
  CHECK(eval_condition(chain, env({{"r", 1}, {"s", 2}})));
  auto chain2 = parse_condition("0<r<s");
  CHECK(eval_condition(chain2, env({{"r", 1}, {"s", 2}})));
  CHECK_FALSE(eval_condition(chain2, env({{"r", 0}, {"s", 2}})));

  auto iff = parse_condition("if u=0 then s<t");
  CHECK(eval_condition(iff, env({{"u", 1}, {"s", 5}, {"t", 0}})));
  CHECK_FALSE(eval_condition(iff, env({{"u", 0}, {"s", 5}, {"t", 0}})));

  auto mins = parse_condition("r<min{s,t}; t<min{u,v,w}");
  CHECK(eval_condition(mins, env({{"r", 0}, {"s", 2}, {"t", 1}, {"u", 2}, {"v", 3}, {"w", 4}})));

  auto sums = parse_condition("r<=s+t");
  CHECK(eval_condition(sums, env({{"r", 3}, {"s", 1}, {"t", 2}})));
  CHECK_FALSE(eval_condition(sums, env({{"r", 4}, {"s", 1}, {"t", 2}})));

  auto dis = parse_condition("distinct{r,s,t}");
  CHECK(eval_condition(dis, env({{"r", 0}, {"s", 1}, {"t", 2}})));
  CHECK_FALSE(eval_condition(dis, env({{"r", 0}, {"s", 1}, {"t", 1}})));

  auto mem = parse_condition("t notin {r,s}");
  CHECK(eval_condition(mem, env({{"t", 3}, {"r", 1}, {"s", 2}})));
  CHECK_FALSE(eval_condition(mem, env({{"t", 1}, {"r", 1}, {"s", 2}})));

  auto setne = parse_condition("set{0,r} != set{s,t}");
  CHECK(eval_condition(setne, env({{"r", 1}, {"s", 1}, {"t", 1}})));
  CHECK_FALSE(eval_condition(setne, env({{"r", 1}, {"s", 1}, {"t", 0}})));

  auto lex = parse_condition("lexle{s,t,u | w,x,y}");
  CHECK(eval_condition(lex, env({{"s", 1}, {"t", 2}, {"u", 3}, {"w", 1}, {"x", 2}, {"y", 3}})));
  CHECK(eval_condition(lex, env({{"s", 1}, {"t", 2}, {"u", 3}, {"w", 3}, {"x", 2}, {"y", 2}})));
  CHECK_FALSE(
      eval_condition(lex, env({{"s", 2}, {"t", 2}, {"u", 3}, {"w", 1}, {"x", 2}, {"y", 3}})));

  auto either = parse_condition("if t=u then r<s or r=s and s<t");
  CHECK(eval_condition(either, env({{"t", 2}, {"u", 2}, {"r", 0}, {"s", 1}})));
  CHECK(eval_condition(either, env({{"t", 2}, {"u", 2}, {"r", 1}, {"s", 1}})));
  CHECK_FALSE(eval_condition(either, env({{"t", 2}, {"u", 2}, {"r", 1}, {"s", 0}})));

  auto prod = parse_condition("rstu=0");
  CHECK(eval_condition(prod, env({{"r", 1}, {"s", 1}, {"t", 0}, {"u", 5}})));
  auto nonzero = parse_condition("rs!=0");
  CHECK(eval_condition(nonzero, env({{"r", 1}, {"s", 2}})));
  CHECK_FALSE(eval_condition(nonzero, env({{"r", 1}, {"s", 0}})));
  auto mixed = parse_condition("rs=0!=t");
  CHECK(eval_condition(mixed, env({{"r", 0}, {"s", 1}, {"t", 2}})));
  CHECK_FALSE(eval_condition(mixed, env({{"r", 0}, {"s", 1}, {"t", 0}})));

  CHECK_THROWS_AS(eval_condition(c, env({{"r", 1}})), error);
}

TEST_CASE("row tables: exact equality-pattern matching") {
  row_table t;
  t.name = "demo";
  t.groups = parse_symbol_groups("0,r,s,t");
  t.rows.push_back({parse_row_pattern("none"), parse_condition("r<s"), "none"});
  t.rows.push_back({parse_row_pattern("r=s"), parse_condition("t!=0"), "r=s"});
  t.rows.push_back({parse_row_pattern("r=0"), condition::always_true(), "r=0"});

  CHECK(eval_row_table(t, env({{"r", 1}, {"s", 2}, {"t", 3}})));
  CHECK_FALSE(eval_row_table(t, env({{"r", 2}, {"s", 1}, {"t", 3}})));  // extras fail
  CHECK(eval_row_table(t, env({{"r", 1}, {"s", 1}, {"t", 2}})));
  CHECK_FALSE(eval_row_table(t, env({{"r", 1}, {"s", 1}, {"t", 0}})));  // t=0 joins literal 0
  CHECK(eval_row_table(t, env({{"r", 0}, {"s", 1}, {"t", 2}})));
  // r=0 and s=t: no row carries that exact pattern.
  CHECK_FALSE(eval_row_table(t, env({{"r", 0}, {"s", 2}, {"t", 2}})));

  row_table ambiguous = t;
  ambiguous.rows.push_back({parse_row_pattern("r=s"), condition::always_true(), "r=s"});
  CHECK_THROWS_AS(eval_row_table(ambiguous, env({{"r", 1}, {"s", 1}, {"t", 2}})),
                  error);
}

TEST_CASE("row tables with independent groups") {
  row_table t;
  t.name = "grouped";
  t.groups = parse_symbol_groups("r,s | v,w");
  t.rows.push_back({parse_row_pattern("none"), condition::always_true(), "none"});
  t.rows.push_back({parse_row_pattern("r=s"), condition::always_true(), "r=s"});
  // Cross-group coincidences are not equalities.
  CHECK(eval_row_table(t, env({{"r", 1}, {"s", 2}, {"v", 1}, {"w", 2}})));
  CHECK(eval_row_table(t, env({{"r", 1}, {"s", 1}, {"v", 2}, {"w", 3}})));
  // v=w has no row.
  CHECK_FALSE(eval_row_table(t, env({{"r", 1}, {"s", 2}, {"v", 3}, {"w", 3}})));
}
