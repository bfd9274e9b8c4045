#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "hlq/io.hpp"

using namespace hlq;
using json = nlohmann::json;

namespace {

const std::filesystem::path kHere = ".";

json skeletal_bz2() {
    return json::parse(R"({
        "kind": "skeletal",
        "components": [{"label": "a", "group": [[0,1],[1,0]]}]
    })");
}

}  // namespace

TEST_CASE("skeletal groupoid round-trips through table form") {
    FiniteGroupoid g = io::groupoid_from_json(skeletal_bz2());
    REQUIRE(g.validate().empty());
    json table = io::groupoid_to_json(g);
    FiniteGroupoid g2 = io::groupoid_from_json(table);
    REQUIRE(g2.validate().empty());
    CHECK(same_groupoid(g, g2));
}

TEST_CASE("skeletal loader keeps component labels verbatim") {
    json j = json::parse(R"({
        "kind": "skeletal",
        "components": [
            {"label": "alpha", "group": [[0]]},
            {"label": "beta", "group": [[0,1],[1,0]]}
        ]
    })");
    FiniteGroupoid g = io::groupoid_from_json(j);
    auto labels = component_labels(g);
    REQUIRE(labels.size() == 2);
    // thickened_group prefixes its object names with the label
    CHECK(labels[0].find("alpha") == 0);
    CHECK(labels[1].find("beta") == 0);
}

TEST_CASE("table groupoid with a bad inverse is rejected") {
    json j = json::parse(R"({
        "kind": "table",
        "objects": ["x"],
        "morphisms": [
            {"id": "id_x", "src": "x", "tgt": "x"},
            {"id": "f", "src": "x", "tgt": "x"},
            {"id": "g", "src": "x", "tgt": "x"}
        ],
        "identities": {"x": "id_x"},
        "compose": [
            ["id_x","id_x","id_x"], ["id_x","f","f"], ["f","id_x","f"],
            ["id_x","g","g"], ["g","id_x","g"],
            ["f","f","g"], ["f","g","id_x"], ["g","f","id_x"], ["g","g","f"]
        ]
    })");
    // this is Z/3 written out; it loads fine
    FiniteGroupoid g = io::groupoid_from_json(j);
    CHECK(g.validate().empty());
    // dropping one composite breaks totality; validate() reports it
    j["compose"].erase(5);
    FiniteGroupoid broken = io::groupoid_from_json(j);
    CHECK_FALSE(broken.validate().empty());
}

TEST_CASE("unknown references are io errors") {
    json j = json::parse(R"({"kind":"table","objects":["x"],
        "morphisms":[{"id":"id_x","src":"y","tgt":"x"}],
        "identities":{"x":"id_x"},"compose":[]})");
    CHECK_THROWS_AS(io::groupoid_from_json(j), io_error);
}

TEST_CASE("missing file is an io error") {
    CHECK_THROWS_AS(io::load_json("no_such_file.json"), io_error);
}

TEST_CASE("malformed json is an io error") {
    auto tmp = std::filesystem::temp_directory_path() / "hlq_bad.json";
    std::ofstream(tmp) << "{ not json";
    CHECK_THROWS_AS(io::load_json(tmp), io_error);
    std::filesystem::remove(tmp);
}

TEST_CASE("functor file loads and validates") {
    json g = skeletal_bz2();
    json f = {{"source", g},
              {"target", g},
              {"objects", {{"a", "a"}}},
              {"morphisms", {{"a.g0:0>0", "a.g0:0>0"}, {"a.g1:0>0", "a.g1:0>0"}}}};
    GroupoidFunctor F = io::functor_from_json(f, kHere);
    CHECK(check_functor(F).empty());
    // swapping identity and flip is not a functor
    f["morphisms"] = {{"a.g0:0>0", "a.g1:0>0"}, {"a.g1:0>0", "a.g0:0>0"}};
    CHECK_THROWS_AS(io::functor_from_json(f, kHere), validation_error);
}

TEST_CASE("non-total functor map is rejected") {
    json g = skeletal_bz2();
    json f = {{"source", g},
              {"target", g},
              {"objects", {{"a", "a"}}},
              {"morphisms", {{"a.g0:0>0", "a.g0:0>0"}}}};
    CHECK_THROWS_AS(io::functor_from_json(f, kHere), io_error);
}

TEST_CASE("span file shares the apex between legs") {
    json g = skeletal_bz2();
    json leg = {{"source", g},
                {"target", g},
                {"objects", {{"a", "a"}}},
                {"morphisms", {{"a.g0:0>0", "a.g0:0>0"}, {"a.g1:0>0", "a.g1:0>0"}}}};
    json s = {{"left", leg}, {"right", leg}};
    Span L = io::span_from_json(s, kHere);
    CHECK(L.left.source.get() == L.right.source.get());
    CHECK(span_matrix(L) == identity_matrix(component_labels(*L.left_foot())));
}

TEST_CASE("functor and span serializers round-trip") {
    json g = skeletal_bz2();
    json leg = {{"source", g},
                {"target", g},
                {"objects", {{"a", "a"}}},
                {"morphisms", {{"a.g0:0>0", "a.g0:0>0"}, {"a.g1:0>0", "a.g1:0>0"}}}};
    Span L = io::span_from_json(json{{"left", leg}, {"right", leg}}, kHere);
    json out = io::span_to_json(L);
    Span L2 = io::span_from_json(out, kHere);
    CHECK(span_matrix(L) == span_matrix(L2));
}

TEST_CASE("presheaf file with explicit action") {
    json base = skeletal_bz2();
    json value = {{"kind", "skeletal"},
                  {"components",
                   {{{"label", "v"}, {"group", json::parse("[[0]]")}},
                    {{"label", "w"}, {"group", json::parse("[[0]]")}}}}};
    json p = {{"base", base},
              {"values",
               {{"a",
                 {{"value", value},
                  {"action",
                   {{"a.g1:0>0",
                     {{"objects", {{"v", "w"}, {"w", "v"}}},
                      {"morphisms", {{"v.g0:0>0", "w.g0:0>0"}, {"w.g0:0>0", "v.g0:0>0"}}}}}}}}}}}};
    FinitePresheaf f = io::presheaf_from_json(p, kHere);
    REQUIRE(check_presheaf(f).empty());
    // two points swapped by the flip: the Grothendieck construction is one
    // free orbit, cardinality 1
    CHECK(groupoid_cardinality(*grothendieck(f).total()) == Rational(1));
}

TEST_CASE("presheaf missing a component value is rejected") {
    json p = {{"base", skeletal_bz2()}, {"values", json::object()}};
    CHECK_THROWS_AS(io::presheaf_from_json(p, kHere), io_error);
}

TEST_CASE("poset file loads with closure") {
    json j = json::parse(R"({"elements":["a","b","c"],"covers":[["a","b"],["b","c"]]})");
    FinitePoset p = io::poset_from_json(j);
    CHECK(p.leq[0][2]);
    CHECK_FALSE(p.leq[2][0]);
}

TEST_CASE("cyclic covers are rejected as a poset") {
    json j = json::parse(R"({"elements":["a","b"],"covers":[["a","b"],["b","a"]]})");
    CHECK_THROWS_AS(io::poset_from_json(j), validation_error);
}

TEST_CASE("truncated space file loads") {
    json j = {{"components",
               {{{"label", "c"}, {"pi_orders", {2, 3}}}, {{"label", "d"}, {"pi_orders", {4}}}}}};
    TruncatedSpace t = io::truncated_from_json(j);
    CHECK(truncated_cardinality(t) == Rational(7, 4));
}

TEST_CASE("rational serialization") {
    CHECK(to_string(Rational(0)) == "0");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(parse_rational("22/7") == Rational(22, 7));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("matrix serialization is sorted and sparse") {
    QMatrix m;
    m.rows = {"r1", "r2"};
    m.cols = {"c"};
    m.set("r2", "c", Rational(1, 2));
    m.set("r1", "c", Rational(3));
    json j = io::qmatrix_to_json(m);
    REQUIRE(j["entries"].size() == 2);
    CHECK(j["entries"][0] == json({"r1", "c", "3"}));
    CHECK(j["entries"][1] == json({"r2", "c", "1/2"}));
}
