#include "pb/scene.hpp"

namespace pb {

namespace {

Json square_dual_pencil() {
    // type-a pencil with base points (+-1, 0), (0, +-1); the unit circle is
    // the member at lambda = -1/2
    return Json{{"type", "a"},
                {"points",
                 {{"-1", "0", "1"}, {"0", "-1", "1"}, {"1", "0", "1"}, {"0", "1", "1"}}}};
}

Json ellipse_conic_25_16() {
    return Json{{"1/25", "0", "0"}, {"0", "1/16", "0"}, {"0", "0", "-1"}};
}

Json unit_circle_conic() {
    return Json{{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "-1"}};
}

Json parabola_chart_conic() {
    // 2*(x2*x3 - x1^2)
    return Json{{"-2", "0", "0"}, {"0", "0", "1"}, {"0", "1", "0"}};
}

Json exotic_billiard(const std::string& family, int N) {
    Json arc = {{"arc",
                 {{"conic", parabola_chart_conic()},
                  {"cuts", {{{"line", {"0", "1", "-4"}}, {"sign", -1}}}},
                  {"endpoints", Json::array({{"-2", "4", "1"}, {"2", "4", "1"}})}}},
                {"field", {{"kind", "exotic"}, {"family", family}, {"N", N}}}};
    Json pieces = Json::array({arc});
    if (family == "2a1" || family == "2a2" || family == "2b2") {
        pieces.push_back({{"segment", {{"0", "1", "1"}, {"0", "4", "1"}}},
                          {"field", {{"kind", "parallel"}, {"direction", {"1", "0"}}}}});
    } else if (family == "2b1" || family == "2c1" || family == "2c2") {
        pieces.push_back({{"segment", {{"-3", "1", "1"}, {"3", "1", "1"}}},
                          {"field", {{"kind", "central"}, {"focus", {"0", "-1", "1"}}}}});
    }
    if (family == "2c2") {
        pieces.push_back({{"segment", {{"-1/2", "-3", "1"}, {"-1/2", "3", "1"}}},
                          {"field", {{"kind", "parallel"}, {"direction", {"-1", "1"}}}}});
        pieces.push_back({{"segment", {{"-1", "2", "1"}, {"1", "-2", "1"}}},
                          {"field", {{"kind", "central"}, {"focus", {"-1", "0", "1"}}}}});
    }
    Json scene;
    scene["backend"] = "rational";
    scene["billiard"] = {{"pieces", pieces}};
    scene["integral"] = {{"kind", "exotic-curve"}, {"family", family}, {"N", N}};
    return scene;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"type-a-square",   "confocal-ellipses", "figd4-triangle",
            "fig12-quadrilateral", "semi-euclidean-focus-line", "2a1-N2",
            "exotic-2a1",      "exotic-2a2",        "exotic-2b1",
            "exotic-2b2",      "exotic-2c1",        "exotic-2c2",
            "exotic-2d"};
}

Json preset_scene(const std::string& name) {
    if (name == "type-a-square") {
        Json scene;
        scene["backend"] = "rational";
        scene["multibilliard"] = {
            {"pencil", square_dual_pencil()},
            {"curves", {{{"lambda", "-1/2"}, {"sample_point", {"1", "0", "1"}}}}},
            {"vertices", Json::array()}};
        scene["integral"] = {{"kind", "degree12"}, {"mu", "2"}};
        return scene;
    }
    if (name == "confocal-ellipses") {
        Json scene;
        scene["backend"] = "float";
        scene["billiard"] = {
            {"pieces", {{{"arc", {{"conic", ellipse_conic_25_16()}}},
                         {"field", {{"kind", "normal"}}}}}}};
        scene["integral"] = {{"kind", "psi_piece"}, {"piece", 0}};
        scene["simulate"] = {{"start", {1.0, 0.5, 0.3, 1.0}}, {"steps", 200}};
        return scene;
    }
    if (name == "figd4-triangle") {
        Json field = {{"kind", "dual_pencil"},
                      {"pencil", square_dual_pencil()},
                      {"lambda", "-1/2"}};
        Json scene;
        scene["backend"] = "float";
        scene["billiard"] = {
            {"pieces",
             {// circle arc between (0,-1) and (sqrt2/2, -sqrt2/2)
              {{"arc",
                {{"conic", unit_circle_conic()},
                 {"cuts",
                  {{{"line", {"1", "0", "0"}}, {"sign", 1}},
                   {{"line", {"1", "1", "0"}}, {"sign", -1}}}},
                 {"endpoints",
                  Json::array({{0.0, -1.0, 1.0},
                               {0.7071067811865476, -0.7071067811865476, 1.0}})}}},
               {"field", field}},
              // the admissible line x1 = 0 with its horizontal parallel field
              {{"segment", {{"0", "0", "1"}, {"0", "-1", "1"}}},
               {"field", {{"kind", "parallel"}, {"direction", {"1", "0"}}}}},
              // the admissible line x2 = -x1 with the (1,1)-parallel field
              {{"segment",
                Json::array({{0.0, 0.0, 1.0},
                             {0.7071067811865476, -0.7071067811865476, 1.0}})},
               {"line", {"1", "1", "0"}},
               {"field", {{"kind", "parallel"}, {"direction", {"1", "1"}}}}}}},
            {"excluded",
             Json::array({{"-1", "0", "1"}, {"0", "-1", "1"}, {"1", "0", "1"}, {"0", "1", "1"}})}};
        scene["integral"] = {{"kind", "group"}, {"pencil", square_dual_pencil()}};
        scene["simulate"] = {{"start", {0.2, -0.6, 0.3, -0.7}}, {"steps", 200}};
        return scene;
    }
    if (name == "fig12-quadrilateral") {
        Json field = {{"kind", "dual_pencil"},
                      {"pencil", square_dual_pencil()},
                      {"lambda", "-1/2"}};
        Json scene;
        scene["backend"] = "float";
        scene["billiard"] = {
            {"pieces",
             {// circle arc in the first quadrant
              {{"arc",
                {{"conic", unit_circle_conic()},
                 {"cuts",
                  {{{"line", {"1", "0", "0"}}, {"sign", 1}},
                   {{"line", {"0", "1", "0"}}, {"sign", 1}}}},
                 {"endpoints", Json::array({{"1", "0", "1"}, {"0", "1", "1"}})}}},
               {"field", field}},
              {{"segment", {{"1", "0", "1"}, {"2", "0", "1"}}},
               {"field", {{"kind", "parallel"}, {"direction", {"0", "1"}}}}},
              {{"segment", {{"2", "0", "1"}, {"0", "2", "1"}}},
               {"field", {{"kind", "central"}, {"focus", {"-1", "-1", "1"}}}}},
              {{"segment", {{"0", "2", "1"}, {"0", "1", "1"}}},
               {"field", {{"kind", "parallel"}, {"direction", {"1", "0"}}}}}}},
            {"excluded", Json::array({{"1", "0", "1"}, {"0", "1", "1"}})}};
        scene["integral"] = {
            {"kind", "chi"},
            {"mu", "2"},
            {"lines",
             Json::array({{"1", "0", "-1"}, {"0", "1", "-1"}, {"1", "0", "1"}, {"0", "1", "1"}})}};
        scene["simulate"] = {{"start", {1.2, 0.5, -0.4, 0.9}}, {"steps", 200}};
        return scene;
    }
    if (name == "semi-euclidean-focus-line") {
        Json scene;
        scene["backend"] = "float";
        scene["billiard"] = {
            {"pieces",
             {{{"arc",
                {{"conic", ellipse_conic_25_16()},
                 {"cuts", {{{"line", {"1", "0", "3"}}, {"sign", -1}}}},
                 {"endpoints", Json::array({{"-3", "-16/5", "1"}, {"-3", "16/5", "1"}})}}},
               {"field", {{"kind", "normal"}}}},
              {{"segment", {{"-3", "-16/5", "1"}, {"-3", "16/5", "1"}}},
               {"field", {{"kind", "central"}, {"focus", {"3", "0", "1"}}}}}}}};
        scene["integral"] = {{"kind", "group"}};
        scene["simulate"] = {{"start", {-3.5, 0.5, -1.0, 0.4}}, {"steps", 200}};
        return scene;
    }
    if (name == "2a1-N2") {
        Json scene;
        scene["backend"] = "rational";
        scene["integral"] = {{"kind", "exotic-curve"}, {"family", "2a1"}, {"N", 2}};
        return scene;
    }
    for (auto& fam : {"2a1", "2a2", "2b1", "2b2", "2c1", "2c2", "2d"})
        if (name == std::string("exotic-") + fam) return exotic_billiard(fam, 1);
    throw ParseError("unknown preset: " + name);
}

} // namespace pb
