// pbcli: classify / validate / integral / simulate for billiard scenes.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pb/scene.hpp"
#include "pb/svg.hpp"

using namespace pb;

namespace {

Json load_scene(const std::string& arg) {
    if (arg.rfind("preset:", 0) == 0) return preset_scene(arg.substr(7));
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open scene file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

Poly3<double> poly_to_double(const Poly3<Rat>& p) {
    Poly3<double> out;
    for (auto& [m, v] : p.t) out.add_term(m, to_double(v));
    return out;
}

RationalIntegral<double> integral_to_double(const RationalIntegral<Rat>& r) {
    return RationalIntegral<double>(poly_to_double(r.num), poly_to_double(r.den));
}

void dump_poly(std::ostream& os, const char* tag, const Poly3<Rat>& p) {
    for (auto& [m, v] : p.t)
        os << tag << " " << m[0] << " " << m[1] << " " << m[2] << " " << rat_to_string(v)
           << "\n";
}

// exact billiard for validation; segment endpoints may be given as decimals,
// in which case an explicit "line" entry is required
Billiard<Rat> build_billiard_exact(const Json& scene);

template <class K>
K jscalar_cli(const Json& v);
template <>
Rat jscalar_cli<Rat>(const Json& v) { return json_rat(v); }

Vec3<Rat> jvec3r(const Json& v) {
    return {json_rat(v[0]), json_rat(v[1]), json_rat(v[2])};
}

Billiard<Rat> build_billiard_exact(const Json& scene) {
    const Json& bj = scene.at("billiard");
    Billiard<Rat> b;
    for (auto& pj : bj.at("pieces")) {
        const Json& fj = pj.at("field");
        std::string kind = fj.at("kind").get<std::string>();
        FieldSpec<Rat> f;
        if (kind == "normal") f = FieldSpec<Rat>::normal(fj.value("pseudo", false));
        else if (kind == "central")
            f = FieldSpec<Rat>::central(Point<Rat>(jvec3r(fj.at("focus"))));
        else if (kind == "parallel")
            f = FieldSpec<Rat>::parallel(json_rat(fj.at("direction")[0]),
                                         json_rat(fj.at("direction")[1]));
        else if (kind == "dual_pencil") {
            Json sub;
            sub["pencil"] = fj.at("pencil");
            f = FieldSpec<Rat>::dual_pencil_field(
                build_pencil(sub),
                fj.at("lambda").is_string() && fj["lambda"] == "inf"
                    ? P1<Rat>::infinity()
                    : P1<Rat>(json_rat(fj.at("lambda"))));
        } else if (kind == "exotic") {
            ExoticKind k;
            std::string fam = fj.at("family").get<std::string>();
            if (fam == "2a1") k.tag = ExoticTag::A1;
            else if (fam == "2a2") k.tag = ExoticTag::A2;
            else if (fam == "2b1") k.tag = ExoticTag::B1;
            else if (fam == "2b2") k.tag = ExoticTag::B2;
            else if (fam == "2c1") k.tag = ExoticTag::C1;
            else if (fam == "2c2") k.tag = ExoticTag::C2;
            else k.tag = ExoticTag::D;
            if (fj.contains("N")) k.N = fj["N"].get<int>();
            f = FieldSpec<Rat>::exotic_field(k);
        } else {
            throw ParseError("field kind not supported on the exact backend: " + kind);
        }
        if (pj.contains("segment")) {
            Line<Rat> line;
            bool have_line = false;
            if (pj.contains("line")) {
                line = Line<Rat>(jvec3r(pj["line"]));
                have_line = true;
            }
            try {
                Point<Rat> a(jvec3r(pj["segment"][0])), bpt(jvec3r(pj["segment"][1]));
                auto piece = BoundaryPiece<Rat>::segment(a, bpt, f);
                if (have_line) piece.line = line;
                b.pieces.push_back(piece);
            } catch (const ParseError&) {
                if (!have_line)
                    throw ParseError("segment with decimal endpoints needs an explicit line");
                // synthesize two rational points on the line
                std::vector<Point<Rat>> pts;
                for (int i = 0; i < 3 && pts.size() < 2; ++i) {
                    Vec3<Rat> e{Rat(0), Rat(0), Rat(0)};
                    e[i] = 1;
                    Vec3<Rat> c = cross(line.xi, e);
                    if (vec_zero(c)) continue;
                    Point<Rat> p(c);
                    bool dup = false;
                    for (auto& q : pts)
                        if (q == p) dup = true;
                    if (!dup) pts.push_back(p);
                }
                auto piece = BoundaryPiece<Rat>::segment(pts[0], pts[1], f);
                piece.line = line;
                b.pieces.push_back(piece);
            }
        } else {
            const Json& aj = pj.at("arc");
            Mat3<Rat> m;
            for (int i = 0; i < 3; ++i) m[i] = jvec3r(aj.at("conic")[i]);
            b.pieces.push_back(BoundaryPiece<Rat>::arc(Conic<Rat>(m), {}, {}, f));
        }
    }
    return b;
}

RationalIntegral<double> build_log_integral(const Json& scene, const Json& ij) {
    std::string kind = ij.at("kind").get<std::string>();
    if (kind == "psi_piece") {
        Billiard<double> b = build_billiard(scene);
        const auto& piece = b.pieces.at(ij.value("piece", 0));
        if (piece.field.kind == FieldKind::Normal && !piece.is_segment) {
            Conic<double> dc = dual_conic(piece.conic);
            Mat3<double> iso = Mat3<double>::zero();
            iso[0][0] = 1;
            iso[1][1] = piece.field.pseudo ? -1 : 1;
            FieldSpec<double> f =
                FieldSpec<double>::dual_pencil_field(Pencil<double>(dc, Conic<double>(iso)),
                                                     P1<double>(0.0));
            return psi_integral(f);
        }
        return psi_integral(piece.field);
    }
    if (kind == "chi") {
        Rat mu = json_rat(ij.at("mu"));
        RationalIntegral<Rat> r = degree12_billiard_integral(
            Line<Rat>(jvec3r(ij.at("lines")[0])), Line<Rat>(jvec3r(ij.at("lines")[1])),
            Line<Rat>(jvec3r(ij.at("lines")[2])), Line<Rat>(jvec3r(ij.at("lines")[3])), mu,
            true);
        return integral_to_double(r);
    }
    if (kind == "group") {
        Billiard<Rat> b = build_billiard_exact(scene);
        DualMultibilliard<Rat> mb = dualize(b);
        if (mb.curves.empty()) throw ValidationFailed("no dual curve");
        const Pencil<Rat>& pen = *mb.curves[0].pencil;
        std::vector<Mob<Rat>> gens;
        for (auto& v : mb.vertices) gens.push_back(induced_lambda_involution(pen, v));
        GroupClosure<Rat> g = group_closure(gens);
        if (g.infinite) throw ValidationFailed("infinite parameter group");
        return integral_to_double(group_orbit_integral(pen, g, true));
    }
    throw ValidationFailed("no orbit integral available for kind " + kind);
}

int cmd_classify(const Json& scene) {
    Pencil<Rat> pen = [&]() {
        if (scene.contains("pencil") || scene.contains("multibilliard"))
            return build_pencil(scene);
        // billiard scene: look for a dual-pencil arc field
        for (auto& pj : scene.at("billiard").at("pieces"))
            if (pj.contains("arc") && pj["field"]["kind"] == "dual_pencil") {
                Json sub;
                sub["pencil"] = pj["field"]["pencil"];
                return build_pencil(sub);
            }
        for (auto& pj : scene.at("billiard").at("pieces"))
            if (pj.contains("arc") && pj["field"]["kind"] == "normal") {
                Mat3<Rat> m;
                for (int i = 0; i < 3; ++i) m[i] = jvec3r(pj["arc"]["conic"][i]);
                Conic<Rat> dc = dual_conic(Conic<Rat>(m));
                Mat3<Rat> iso = Mat3<Rat>::zero();
                iso[0][0] = 1;
                iso[1][1] = pj["field"].value("pseudo", false) ? -1 : 1;
                return Pencil<Rat>(dc, Conic<Rat>(iso));
            }
        for (auto& pj : scene.at("billiard").at("pieces"))
            if (pj.contains("arc") && pj["field"]["kind"] == "exotic") {
                std::cout << "exotic family " << pj["field"]["family"].get<std::string>()
                          << "\n";
                Billiard<Rat> b = build_billiard_exact(scene);
                for (auto& piece : b.pieces)
                    if (!piece.is_segment && piece.field.kind == FieldKind::Exotic) {
                        auto lines = exotic_admissible_lines<Rat>(piece.field.exotic);
                        std::cout << "admissible lines: " << lines.size() << "\n";
                        for (auto& e : lines) std::cout << "  " << e.label << "\n";
                        auto verts =
                            exotic_admissible_vertices<Rat>(piece.field.exotic, false);
                        std::cout << "dual admissible vertices (real): " << verts.size()
                                  << " (+" << exotic_complex_vertex_count(piece.field.exotic.tag)
                                  << " complex)\n";
                    }
                throw ValidationFailed("__exotic_done__");
            }
        throw ParseError("scene has no classifiable pencil");
    }();
    Classification cls = classify_pencil(pen);
    std::cout << "pencil type: " << cls.tag << "\nbase multiplicities:";
    for (int m : cls.pattern) std::cout << " " << m;
    std::cout << "\n";
    if (pen.base) {
        VertexCatalog<Rat> cat = admissible_vertices(pen);
        int std_count = 0, skew_count = 0;
        for (auto& e : cat.entries) (e.skew ? skew_count : std_count)++;
        std::cout << "admissible vertices: " << std_count << " standard, " << skew_count
                  << " skew";
        if (!cat.families.empty()) {
            std::cout << "; families:";
            for (auto& [name, f] : cat.families) std::cout << " " << name;
        }
        std::cout << "\n";
        for (auto& e : cat.entries)
            std::cout << "  " << e.label << (e.skew ? " (skew)" : " (standard)") << "\n";
    } else {
        std::cout << "base data: irrational or complex base points; catalog omitted\n";
    }
    return 0;
}

int cmd_validate(const Json& scene) {
    if (scene.contains("multibilliard")) {
        DualMultibilliard<Rat> mb = build_multibilliard(scene);
        MultibilliardReport rep = validate_pencil_multibilliard(mb);
        std::cout << (rep.is_pencil_type ? "valid pencil-type multibilliard" : "invalid")
                  << "\n";
        for (auto& v : rep.violations) std::cout << "  " << v << "\n";
        if (rep.group_order > 0)
            std::cout << "group order " << rep.group_order << ", predicted minimal degree "
                      << rep.predicted_min_degree << "\n";
        return rep.is_pencil_type ? 0 : 2;
    }
    Billiard<Rat> b = build_billiard_exact(scene);
    BilliardReport rep = validate_billiard(b);
    std::cout << (rep.valid ? "valid" : "invalid") << (rep.exotic ? " (exotic)" : "") << "\n";
    for (auto& n : rep.notes) std::cout << "  " << n << "\n";
    if (rep.valid) std::cout << "predicted minimal degree " << rep.predicted_min_degree << "\n";
    return rep.valid ? 0 : 2;
}

int cmd_integral(const Json& scene, const std::string& mu_flag) {
    if (!scene.contains("integral")) throw ValidationFailed("scene requests no integral");
    const Json& ij = scene["integral"];
    std::string kind = ij.at("kind").get<std::string>();
    Rat mu = mu_flag.empty() ? (ij.contains("mu") ? json_rat(ij["mu"]) : Rat(1))
                             : rat_of_string(mu_flag);
    if (kind == "degree12") {
        Pencil<Rat> pen = build_pencil(scene);
        RationalIntegral<Rat> r = degree12_integral(pen, mu);
        std::cout << "degree " << r.deg << "\n";
        dump_poly(std::cout, "num", r.num);
        dump_poly(std::cout, "den", r.den);
        // invariance self-check under the skew catalog vertices
        DualMultibilliard<Rat> mb;
        VertexCatalog<Rat> cat = admissible_vertices(pen);
        for (auto& e : cat.entries)
            if (e.skew) mb.vertices.push_back(e.spec);
        InvarianceReport rep = check_invariance(r, mb, 20, 5);
        std::cout << "invariance: " << rep.vertex_samples << " samples, "
                  << rep.vertex_failures << " failures, max deviation "
                  << (rep.ok() ? 0.0 : 1.0) << "\n";
        return rep.ok() ? 0 : 2;
    }
    if (kind == "exotic-curve") {
        ExoticKind k;
        std::string fam = ij.at("family").get<std::string>();
        if (fam == "2a1") k.tag = ExoticTag::A1;
        else if (fam == "2a2") k.tag = ExoticTag::A2;
        else if (fam == "2b1") k.tag = ExoticTag::B1;
        else if (fam == "2b2") k.tag = ExoticTag::B2;
        else if (fam == "2c1") k.tag = ExoticTag::C1;
        else if (fam == "2c2") k.tag = ExoticTag::C2;
        else k.tag = ExoticTag::D;
        if (ij.contains("N")) k.N = ij["N"].get<int>();
        RationalIntegral<Rat> r = exotic_integral_normal<Rat>(k);
        std::cout << "degree " << r.deg << "\n";
        dump_poly(std::cout, "num", r.num);
        dump_poly(std::cout, "den", r.den);
        DualMultibilliard<Rat> mb;
        mb.curves.push_back(DualBilliardStructure<Rat>::exotic_structure(k));
        InvarianceReport rep = check_invariance(r, mb, 50, 7);
        std::cout << "invariance: " << rep.curve_samples << " samples, " << rep.curve_failures
                  << " failures, max deviation " << (rep.ok() ? 0.0 : 1.0) << "\n";
        return rep.ok() ? 0 : 2;
    }
    if (kind == "chi") {
        RationalIntegral<Rat> r = degree12_billiard_integral(
            Line<Rat>(jvec3r(ij.at("lines")[0])), Line<Rat>(jvec3r(ij.at("lines")[1])),
            Line<Rat>(jvec3r(ij.at("lines")[2])), Line<Rat>(jvec3r(ij.at("lines")[3])), mu,
            true);
        std::cout << "degree " << r.deg << "\n";
        dump_poly(std::cout, "num", r.num);
        dump_poly(std::cout, "den", r.den);
        return 0;
    }
    if (kind == "group" || kind == "psi_piece") {
        RationalIntegral<double> r = build_log_integral(scene, ij);
        std::cout << "degree " << r.deg << "\n";
        for (auto& [m, v] : r.num.t)
            std::cout << "num " << m[0] << " " << m[1] << " " << m[2] << " " << v << "\n";
        for (auto& [m, v] : r.den.t)
            std::cout << "den " << m[0] << " " << m[1] << " " << m[2] << " " << v << "\n";
        return 0;
    }
    throw ValidationFailed("unknown integral kind: " + kind);
}

int cmd_simulate(const Json& scene, int steps_flag, const std::string& svg_path, double delta) {
    if (!scene.contains("billiard") || !scene.contains("simulate"))
        throw ValidationFailed("scene has no billiard/simulate section");
    Billiard<double> b = build_billiard(scene);
    const Json& sj = scene["simulate"];
    OrbitState s;
    s.x = json_double(sj.at("start")[0]);
    s.y = json_double(sj.at("start")[1]);
    s.vx = json_double(sj.at("start")[2]);
    s.vy = json_double(sj.at("start")[3]);
    int steps = steps_flag > 0 ? steps_flag : sj.value("steps", 200);
    Orbit orbit = trace_orbit(b, s, steps, delta);
    std::cout.precision(17);

    std::function<double(const OrbitEvent&)> eval;
    if (scene.contains("integral")) {
        try {
            const Json& ij = scene["integral"];
            if (ij.at("kind") == "chi") {
                auto jl = [&](int i) {
                    return Line<double>(Vec3<double>{json_double(ij.at("lines")[i][0]),
                                                    json_double(ij.at("lines")[i][1]),
                                                    json_double(ij.at("lines")[i][2])});
                };
                double mu = json_double(ij.contains("mu") ? ij["mu"] : Json(1));
                ChiFactored<double> cf(jl(0), jl(1), jl(2), jl(3), mu);
                eval = [cf](const OrbitEvent& e) {
                    return cf.at_state(e.x, e.y, e.vx_out, e.vy_out);
                };
            } else if (ij.at("kind") == "group") {
                // factored per group element: product of quadratic-form ratios
                Billiard<Rat> be = build_billiard_exact(scene);
                DualMultibilliard<Rat> mb = dualize(be);
                if (mb.curves.empty()) throw ValidationFailed("no dual curve");
                const Pencil<Rat>& pen = *mb.curves[0].pencil;
                std::vector<Mob<Rat>> gens;
                for (auto& v : mb.vertices) gens.push_back(induced_lambda_involution(pen, v));
                GroupClosure<Rat> g = group_closure(gens);
                if (g.infinite) throw ValidationFailed("infinite parameter group");
                auto md = [](const Mat3<Rat>& m) {
                    Mat3<double> o;
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) o[i][j] = to_double(m[i][j]);
                    return o;
                };
                std::vector<std::array<Mat3<double>, 2>> facs;
                for (auto& e : g.elements)
                    facs.push_back({md(pen.c0.q.scaled(Rat(0) - e.a) + pen.c1.q.scaled(e.b)),
                                    md(pen.c0.q.scaled(Rat(0) - e.c) + pen.c1.q.scaled(e.d))});
                eval = [facs](const OrbitEvent& e) {
                    Vec3<double> M{-e.vy_out, e.vx_out, e.x * e.vy_out - e.y * e.vx_out};
                    double v = 1;
                    for (auto& f : facs) {
                        double n = dot(M, f[0].apply(M)), d = dot(M, f[1].apply(M));
                        if (d == 0) throw EvaluationOnExceptionalLine("singular moment line");
                        v *= n / d;
                    }
                    return v;
                };
            } else {
                RationalIntegral<double> r = build_log_integral(scene, ij);
                eval = [r](const OrbitEvent& e) {
                    Vec3<double> arg{e.vx_out, e.vy_out, e.x * e.vy_out - e.y * e.vx_out};
                    return r.num.at(arg) / r.den.at(arg);
                };
            }
        } catch (const Error& e) {
            std::cout << "no orbit integral: " << e.what() << "\n";
        }
    }
    double ref = 0;
    bool have_ref = false;
    double max_drift = 0;
    for (size_t i = 0; i < orbit.events.size(); ++i) {
        const auto& e = orbit.events[i];
        std::cout << "bounce " << i << " piece " << e.piece << " at (" << e.x << ", " << e.y
                  << ") dir (" << e.vx_out << ", " << e.vy_out << ")";
        if (eval) {
            try {
                double val = eval(e);
                if (!have_ref) {
                    ref = val;
                    have_ref = true;
                }
                double drift = std::fabs(val - ref) / std::max(1.0, std::fabs(ref));
                max_drift = std::max(max_drift, drift);
                std::cout << " integral " << val;
            } catch (const Error&) {
                std::cout << " integral n/a";  // moment line at a singular locus
            }
        }
        std::cout << "\n";
    }
    std::cout << "orbit end: " << orbit_end_name(orbit.end) << " after " << orbit.events.size()
              << " bounces\n";
    if (eval) std::cout << "max relative drift " << max_drift << "\n";
    if (!svg_path.empty()) {
        std::ofstream out(svg_path);
        out << render_svg(b, orbit);
        std::cout << "wrote " << svg_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"projective and dual billiard engine"};
    app.require_subcommand(1);

    std::string scene_arg, mu_flag, svg_path, backend = "rational";
    double eps = 1e-9, delta = 1e-6;
    int steps = 0;
    long seed = 0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("scene", scene_arg, "scene file or preset:<name>")->required();
        c->add_option("--backend", backend, "rational or float");
        c->add_option("--eps", eps, "float comparison tolerance");
        c->add_option("--delta", delta, "base-point exclusion radius");
        c->add_option("--seed", seed, "sampling seed");
    };
    CLI::App* classify = app.add_subcommand("classify", "pencil type and catalogs");
    add_common(classify);
    CLI::App* validate = app.add_subcommand("validate", "structure validation and degree");
    add_common(validate);
    CLI::App* integral = app.add_subcommand("integral", "construct and dump the integral");
    add_common(integral);
    integral->add_option("--mu", mu_flag, "product parameter mu");
    CLI::App* simulate = app.add_subcommand("simulate", "trace an orbit");
    add_common(simulate);
    simulate->add_option("--steps", steps, "bounce count");
    simulate->add_option("--svg", svg_path, "write an SVG rendering");

    CLI11_PARSE(app, argc, argv);
    FloatTolerance::eps() = eps;

    try {
        Json scene = load_scene(scene_arg);
        if (app.got_subcommand(classify)) return cmd_classify(scene);
        if (app.got_subcommand(validate)) return cmd_validate(scene);
        if (app.got_subcommand(integral)) return cmd_integral(scene, mu_flag);
        if (app.got_subcommand(simulate)) return cmd_simulate(scene, steps, svg_path, delta);
    } catch (const ValidationFailed& e) {
        if (std::string(e.what()) == "__exotic_done__") return 0;
        std::cerr << "validation failed: " << e.what() << "\n";
        return 2;
    } catch (const ZeroMu&) {
        std::cerr << "error: mu must be nonzero\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
