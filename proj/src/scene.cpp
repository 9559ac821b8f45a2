#include "pb/scene.hpp"

namespace pb {

Json parse_scene(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("scene parse error at byte ") + std::to_string(e.byte) +
                         ": " + e.what());
    }
}

std::string canonical_scene(const Json& scene) { return scene.dump(2) + "\n"; }

Rat json_rat(const Json& v) {
    if (v.is_string()) return rat_of_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw ParseError("expected an exact rational (integer or \"p/q\" string): " + v.dump());
}

double json_double(const Json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(rat_of_string(v.get<std::string>()));
    throw ParseError("expected a number: " + v.dump());
}

namespace {

template <class K>
K jscalar(const Json& v);
template <>
Rat jscalar<Rat>(const Json& v) { return json_rat(v); }
template <>
double jscalar<double>(const Json& v) { return json_double(v); }

template <class K>
Vec3<K> jvec3(const Json& v) {
    if (!v.is_array() || v.size() != 3) throw ParseError("expected a coordinate triple");
    return {jscalar<K>(v[0]), jscalar<K>(v[1]), jscalar<K>(v[2])};
}

template <class K>
Point<K> jpoint(const Json& v) { return Point<K>(jvec3<K>(v)); }
template <class K>
Line<K> jline(const Json& v) { return Line<K>(jvec3<K>(v)); }

template <class K>
Conic<K> jconic(const Json& v) {
    if (!v.is_array() || v.size() != 3) throw ParseError("expected a 3x3 conic matrix");
    Mat3<K> m;
    for (int i = 0; i < 3; ++i) m[i] = jvec3<K>(v[i]);
    return Conic<K>(m);
}

template <class K>
P1<K> jp1(const Json& v) {
    if (v.is_string() && v.get<std::string>() == "inf") return P1<K>::infinity();
    return P1<K>(jscalar<K>(v));
}

template <class K>
Pencil<K> jpencil(const Json& p) {
    if (p.contains("generators")) {
        return Pencil<K>(jconic<K>(p["generators"][0]), jconic<K>(p["generators"][1]));
    }
    std::string type = p.at("type").get<std::string>();
    if (type == "a")
        return pencil_type_a(jpoint<K>(p["points"][0]), jpoint<K>(p["points"][1]),
                             jpoint<K>(p["points"][2]), jpoint<K>(p["points"][3]));
    if (type == "b")
        return pencil_type_b(jpoint<K>(p["points"][0]), jpoint<K>(p["points"][1]),
                             jpoint<K>(p["points"][2]), jline<K>(p["line"]));
    if (type == "c")
        return pencil_type_c(jpoint<K>(p["points"][0]), jline<K>(p["lines"][0]),
                             jpoint<K>(p["points"][1]), jline<K>(p["lines"][1]));
    if (type == "d")
        return pencil_type_d(jconic<K>(p["conic"]), jpoint<K>(p["points"][0]),
                             jpoint<K>(p["points"][1]), jline<K>(p["line"]));
    if (type == "e") return pencil_type_e(jconic<K>(p["conic"]), jpoint<K>(p["point"]));
    throw ParseError("unknown pencil type: " + type);
}

ExoticKind jexotic(const Json& v) {
    std::string fam = v.at("family").get<std::string>();
    ExoticKind k;
    if (fam == "2a1") k.tag = ExoticTag::A1;
    else if (fam == "2a2") k.tag = ExoticTag::A2;
    else if (fam == "2b1") k.tag = ExoticTag::B1;
    else if (fam == "2b2") k.tag = ExoticTag::B2;
    else if (fam == "2c1") k.tag = ExoticTag::C1;
    else if (fam == "2c2") k.tag = ExoticTag::C2;
    else if (fam == "2d") k.tag = ExoticTag::D;
    else throw ParseError("unknown exotic family: " + fam);
    if (v.contains("N")) k.N = v["N"].get<int>();
    return k;
}

template <class K>
FieldSpec<K> jfield(const Json& f) {
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "normal") return FieldSpec<K>::normal(f.value("pseudo", false));
    if (kind == "central") return FieldSpec<K>::central(jpoint<K>(f["focus"]));
    if (kind == "parallel") {
        auto& d = f.at("direction");
        return FieldSpec<K>::parallel(jscalar<K>(d[0]), jscalar<K>(d[1]));
    }
    if (kind == "tangent")
        return FieldSpec<K>::tangent(jconic<K>(f["conic"]), f.value("branch", 0));
    if (kind == "dual_pencil")
        return FieldSpec<K>::dual_pencil_field(jpencil<K>(f["pencil"]), jp1<K>(f["lambda"]));
    if (kind == "exotic") return FieldSpec<K>::exotic_field(jexotic(f));
    throw ParseError("unknown field kind: " + kind);
}

} // namespace

Pencil<Rat> build_pencil(const Json& scene) {
    if (scene.contains("pencil")) return jpencil<Rat>(scene["pencil"]);
    if (scene.contains("multibilliard")) return jpencil<Rat>(scene["multibilliard"]["pencil"]);
    throw ParseError("scene declares no pencil");
}

Pencil<double> build_pencil_double(const Json& pencil_spec) { return jpencil<double>(pencil_spec); }

DualMultibilliard<Rat> build_multibilliard(const Json& scene) {
    if (!scene.contains("multibilliard")) throw ParseError("scene declares no multibilliard");
    const Json& mbj = scene["multibilliard"];
    Pencil<Rat> p = jpencil<Rat>(mbj.at("pencil"));
    DualMultibilliard<Rat> mb;
    for (auto& cj : mbj.value("curves", Json::array())) {
        std::optional<Point<Rat>> sample;
        if (cj.contains("sample_point")) sample = jpoint<Rat>(cj["sample_point"]);
        mb.curves.push_back(
            DualBilliardStructure<Rat>::pencil_defined(p, jp1<Rat>(cj.at("lambda")), sample));
    }
    std::optional<VertexCatalog<Rat>> cat;
    for (auto& vj : mbj.value("vertices", Json::array())) {
        if (vj.contains("catalog")) {
            if (!cat) cat = admissible_vertices(p);
            std::string label = vj["catalog"].get<std::string>();
            bool found = false;
            for (auto& e : cat->entries)
                if (e.label == label) {
                    mb.vertices.push_back(e.spec);
                    found = true;
                }
            if (!found) {
                auto fam = cat->families.find(label);
                if (fam == cat->families.end())
                    throw ParseError("unknown catalog vertex: " + label);
                mb.vertices.push_back(fam->second(jp1<Rat>(vj.at("parameter"))).spec);
            }
        } else if (vj.contains("over_member")) {
            mb.vertices.push_back(VertexSpec<Rat>::degenerate_over(
                jpoint<Rat>(vj.at("center")), p.member(jp1<Rat>(vj["over_member"]))));
        } else {
            mb.vertices.push_back(
                VertexSpec<Rat>::angular(jpoint<Rat>(vj.at("center")), jline<Rat>(vj.at("axis"))));
        }
    }
    return mb;
}

Billiard<double> build_billiard(const Json& scene) {
    if (!scene.contains("billiard")) throw ParseError("scene declares no billiard");
    const Json& bj = scene["billiard"];
    Billiard<double> b;
    for (auto& pj : bj.at("pieces")) {
        FieldSpec<double> f = jfield<double>(pj.at("field"));
        if (pj.contains("segment")) {
            b.pieces.push_back(BoundaryPiece<double>::segment(
                jpoint<double>(pj["segment"][0]), jpoint<double>(pj["segment"][1]), f));
        } else {
            const Json& aj = pj.at("arc");
            std::vector<std::pair<Line<double>, int>> cuts;
            for (auto& cj : aj.value("cuts", Json::array()))
                cuts.push_back({jline<double>(cj.at("line")), cj.at("sign").get<int>()});
            std::vector<Point<double>> ends;
            for (auto& ej : aj.value("endpoints", Json::array()))
                ends.push_back(jpoint<double>(ej));
            b.pieces.push_back(
                BoundaryPiece<double>::arc(jconic<double>(aj.at("conic")), cuts, ends, f));
        }
    }
    for (auto& ej : bj.value("excluded", Json::array())) b.excluded.push_back(jpoint<double>(ej));
    return b;
}

} // namespace pb
