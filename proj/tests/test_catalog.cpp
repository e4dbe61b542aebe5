#include <catch2/catch_amalgamated.hpp>

#include "irrlat/irrlat.hpp"

using namespace irrlat;

namespace {

const catalog& cat() {
  static const catalog c = load_catalog(data_files(IRRLAT_DATA_DIR));
  return c;
}

characteristic P(int p) { return characteristic::prime(p); }

}  // namespace

TEST_CASE("the bundled catalog loads and cross-references resolve") {
  const catalog& c = cat();
  CHECK(c.groups.size() == 5);
  CHECK(c.has_class(group_id::G2, 0));
  CHECK(c.cls(group_id::G2, 6).factors.size() == 2);
  CHECK(c.cls(group_id::G2, 6).factors[0].decoration == 'b');
  CHECK(c.cls(group_id::G2, 6).factors[1].decoration == 't');
  CHECK(c.cls(group_id::E6, 25).out.generators.size() == 3);
  CHECK(c.cls(group_id::E7, 43).out.generators.size() == 2);
  CHECK(c.row_tables.count("condE712") == 1);
  CHECK(c.row_tables.at("condE712").rows.size() == 16);
  CHECK(c.levis.size() > 30);
}

TEST_CASE("the G2 file holds seven records: six classes and one family") {
  const catalog& c = cat();
  auto classes = c.classes_of(group_id::G2);
  CHECK(classes.size() == 7);
  int families = 0;
  for (auto* rec : classes)
    if (rec->is_family) ++families;
  CHECK(families == 1);
  const class_record& f = c.cls(group_id::G2, 1);
  REQUIRE(f.embed.has_value());
  CHECK(f.twist_vars() == std::vector<std::string>{"r", "s"});
}

TEST_CASE("loader rejects malformed data") {
  auto load_text = [](const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / "irrlat_test.isl";
    std::ofstream out(path);
    out << text;
    out.close();
    return load_catalog({path});
  };
  CHECK_THROWS_AS(load_text("group G2 vmin=7 vadj=14\n"
                            "class G2 2 type=\"A1\" parent=6\n"),
                  error);  // dangling parent
  CHECK_THROWS_AS(load_text("group G2 vmin=7 vadj=14\n"
                            "class G2 2 type=\"A1\"\n"
                            "class G2 2 type=\"A1\"\n"),
                  error);  // duplicate id
  CHECK_THROWS_AS(load_text("group G2 vmin=7 vadj=14\n"
                            "edge G2 1 -> 0\n"),
                  error);  // unknown endpoints
  CHECK_THROWS_AS(load_text("class G2 2 type=\"Q9\"\n"), error);
}

TEST_CASE("factor list parsing and dimensions") {
  auto factors = parse_factors("bA1 tA1");
  factor_list fl = parse_factor_list("(1,1)/(0,W(2))", factors);
  REQUIRE(fl.entries.size() == 2);
  CHECK(list_dim(fl, factors, P(5)) == 7);
  CHECK(list_dim(fl, factors, P(2)) == 7);

  auto b4 = parse_factors("B4");
  factor_list v26 = parse_factor_list("W(l1)/l4/0", b4);
  CHECK(list_dim(v26, b4, P(2)) == 26);
  CHECK(list_dim(v26, b4, characteristic::infinity()) == 26);

  auto a5pair = parse_factors("bA1 A5");
  factor_list v27 = parse_factor_list("(1,l1)/(0,l4)", a5pair);
  CHECK(list_dim(v27, a5pair, P(3)) == 27);

  factor_list mult = parse_factor_list("1^4/0^3", parse_factors("A1"));
  CHECK(mult.entries.size() == 7);
}

TEST_CASE("catalog dimension audit passes at every probe characteristic") {
  auto failures = dimension_audit(cat());
  for (auto& f : failures) UNSCOPED_INFO(f);
  CHECK(failures.empty());
}

TEST_CASE("every class has an overgroup route where the tables are complete") {
  auto failures = edge_audit(cat(), {group_id::G2, group_id::E6});
  for (auto& f : failures) UNSCOPED_INFO(f);
  CHECK(failures.empty());
}

TEST_CASE("a/b occurrences split each class condition exactly") {
  auto failures = variant_audit(cat());
  for (auto& f : failures) UNSCOPED_INFO(f);
  CHECK(failures.empty());
}

TEST_CASE("characteristic conditions evaluate correctly") {
  auto all = char_condition::parse("all");
  auto ne2 = char_condition::parse("!=2");
  auto ge7 = char_condition::parse(">=7");
  auto eq3 = char_condition::parse("=3");
  CHECK(all.admits(P(2)));
  CHECK(all.admits(characteristic::infinity()));
  CHECK_FALSE(ne2.admits(P(2)));
  CHECK(ne2.admits(characteristic::infinity()));
  CHECK(ge7.admits(P(7)));
  CHECK(ge7.admits(characteristic::infinity()));
  CHECK_FALSE(ge7.admits(P(5)));
  CHECK(eq3.admits(P(3)));
  CHECK_FALSE(eq3.admits(characteristic::infinity()));
}

TEST_CASE("every shipped descriptor parses and round-trips") {
  const catalog& c = cat();
  int count = 0;
  for (auto& [key, rec] : c.classes) {
    if (!rec.embed) continue;
    ++count;
    std::string rendered = render(*rec.embed);
    auto reparsed = parse_embedding(rendered);
    CHECK(render(reparsed) == rendered);
  }
  CHECK(count > 300);
}

TEST_CASE("lookup semantics") {
  const catalog& c = cat();
  const class_record& fam = c.cls(group_id::G2, 1);
  CHECK(instance_admissible(c, fam, {1, 0}, P(5)));
  CHECK_FALSE(instance_admissible(c, fam, {1, 1}, P(5)));
  CHECK_FALSE(instance_admissible(c, fam, {0, 0}, P(5)));
  CHECK_THROWS_AS(c.cls(group_id::G2, 99), error);
  // No nontrivial Frobenius twists in characteristic zero.
  CHECK_FALSE(instance_admissible(c, fam, {1, 0}, characteristic::infinity()));
}
