#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "pb/scene.hpp"

using namespace pb;

TEST_CASE("parsing and canonical serialization") {
    Json s = parse_scene("{\"zeta\": 1, \"alpha\": [1, 2]}");
    std::string c = canonical_scene(s);
    // sorted keys, trailing newline, stable under a round trip
    CHECK(c.find("alpha") < c.find("zeta"));
    CHECK(c.back() == '\n');
    CHECK(canonical_scene(parse_scene(c)) == c);

    CHECK_THROWS_AS(parse_scene("{\"a\": }"), ParseError);
    CHECK_THROWS_AS(parse_scene(""), ParseError);
}

TEST_CASE("exact and float scalars from json") {
    CHECK(json_rat(Json("3/4")) == Rat(3, 4));
    CHECK(json_rat(Json("-7/2")) == Rat(-7, 2));
    CHECK(json_rat(Json(5)) == Rat(5));
    CHECK_THROWS_AS(json_rat(Json(1.5)), ParseError);

    CHECK(json_double(Json(0.25)) == 0.25);
    CHECK(json_double(Json("1/4")) == 0.25);
    CHECK(json_double(Json(3)) == 3.0);
    CHECK_THROWS_AS(json_double(Json::array()), ParseError);
}

TEST_CASE("preset gallery") {
    std::vector<std::string> names = preset_names();
    CHECK(names.size() == 13);
    for (auto& n : names) {
        Json s = preset_scene(n);
        std::string c = canonical_scene(s);
        CHECK(canonical_scene(parse_scene(c)) == c);
    }
    CHECK_THROWS_AS(preset_scene("no-such-preset"), ParseError);
}

TEST_CASE("pencil construction from scenes") {
    Pencil<Rat> p = build_pencil(preset_scene("type-a-square"));
    CHECK(classify_pencil(p).tag == 'a');

    // explicit generator matrices
    Json s = parse_scene(R"({"pencil": {"generators": [
        [["1","0","0"],["0","1","0"],["0","0","-1"]],
        [["1/25","0","0"],["0","1/16","0"],["0","0","-1"]]]}})");
    Pencil<Rat> pg = build_pencil(s);
    CHECK(pg.contains(pg.member(P1<Rat>(3))));

    CHECK_THROWS_AS(build_pencil(parse_scene("{}")), ParseError);
}

TEST_CASE("multibilliard construction from scenes") {
    Json s = preset_scene("type-a-square");
    DualMultibilliard<Rat> mb = build_multibilliard(s);
    REQUIRE(mb.curves.size() == 1);
    CHECK(mb.vertices.empty());
    MultibilliardReport rep = validate_pencil_multibilliard(mb);
    CHECK(rep.is_pencil_type);
    CHECK(rep.group_order == 1);
    CHECK(rep.predicted_min_degree == 2);

    // adjacent skew vertices by catalog label push the degree to 12
    s["multibilliard"]["vertices"] = Json::array({{{"catalog", "K_AB"}}, {{"catalog", "K_BC"}}});
    DualMultibilliard<Rat> mb2 = build_multibilliard(s);
    REQUIRE(mb2.vertices.size() == 2);
    MultibilliardReport rep2 = validate_pencil_multibilliard(mb2);
    CHECK(rep2.group_order == 6);
    CHECK(rep2.predicted_min_degree == 12);

    s["multibilliard"]["vertices"] = Json::array({{{"catalog", "K_XY"}}});
    CHECK_THROWS_AS(build_multibilliard(s), ParseError);
    CHECK_THROWS_AS(build_multibilliard(parse_scene("{}")), ParseError);
}

TEST_CASE("billiard construction from scenes") {
    Billiard<double> b = build_billiard(preset_scene("fig12-quadrilateral"));
    REQUIRE(b.pieces.size() == 4);
    CHECK(!b.pieces[0].is_segment);
    CHECK(b.pieces[1].is_segment);
    CHECK(b.excluded.size() == 2);

    Billiard<double> conf = build_billiard(preset_scene("confocal-ellipses"));
    REQUIRE(conf.pieces.size() == 1);
    CHECK(conf.pieces[0].field.kind == FieldKind::Normal);

    Billiard<double> ex = build_billiard(preset_scene("exotic-2c2"));
    CHECK(ex.pieces.size() == 4);
    CHECK(ex.pieces[0].field.kind == FieldKind::Exotic);

    CHECK_THROWS_AS(build_billiard(parse_scene("{}")), ParseError);
}

TEST_CASE("cli exit codes") {
    if (!std::filesystem::exists("./pbcli")) return;  // built alongside the tests
    auto run = [](const char* cmd) {
        int st = std::system(cmd);
        return WEXITSTATUS(st);
    };
    CHECK(run("./pbcli classify preset:type-a-square > /dev/null 2>&1") == 0);
    CHECK(run("./pbcli validate preset:fig12-quadrilateral > /dev/null 2>&1") == 0);
    CHECK(run("./pbcli integral preset:2a1-N2 > /dev/null 2>&1") == 0);
    CHECK(run("./pbcli classify preset:no-such-preset > /dev/null 2>&1") == 1);
}
