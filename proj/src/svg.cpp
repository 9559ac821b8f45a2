#include "pb/svg.hpp"

#include <cmath>
#include <sstream>

namespace pb {

namespace {

struct Bounds {
    double xmin = 1e30, xmax = -1e30, ymin = 1e30, ymax = -1e30;
    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

// sample an arc by marching along the tangent and projecting back onto the
// conic with a couple of Newton steps
std::vector<std::pair<double, double>> sample_arc(const BoundaryPiece<double>& piece) {
    std::vector<std::pair<double, double>> pts;
    if (piece.endpoints.size() < 2) {
        // closed conic: march all the way around from an arbitrary point
        // found by scanning vertical lines
        const Mat3<double>& q = piece.conic.q;
        double x0 = 0, y0 = 0;
        bool found = false;
        for (double x = -10; x <= 10 && !found; x += 0.05) {
            double A = q[1][1];
            double B = 2 * (q[0][1] * x + q[1][2]);
            double C = q[0][0] * x * x + 2 * q[0][2] * x + q[2][2];
            double disc = B * B - 4 * A * C;
            if (std::fabs(A) < 1e-12 || disc < 0) continue;
            x0 = x;
            y0 = (-B + std::sqrt(disc)) / (2 * A);
            found = true;
        }
        if (!found) return pts;
        double x = x0, y = y0;
        for (int i = 0; i < 2000; ++i) {
            pts.push_back({x, y});
            Vec3<double> g = piece.conic.gradient(Point<double>(x, y, 1.0));
            double tx = -g[1], ty = g[0];
            double n = std::hypot(tx, ty);
            if (n < 1e-12) break;
            x += 0.02 * tx / n;
            y += 0.02 * ty / n;
            for (int it = 0; it < 3; ++it) {
                Point<double> p(x, y, 1.0);
                double f = piece.conic.at(p);
                Vec3<double> gg = piece.conic.gradient(p);
                double gn = gg[0] * gg[0] + gg[1] * gg[1];
                if (gn < 1e-14) break;
                x -= f * gg[0] / (2 * gn);
                y -= f * gg[1] / (2 * gn);
            }
            if (i > 10 && std::hypot(x - x0, y - y0) < 0.03) {
                pts.push_back({x0, y0});
                break;
            }
        }
        return pts;
    }
    double ax = piece.endpoints[0].h[0] / piece.endpoints[0].h[2];
    double ay = piece.endpoints[0].h[1] / piece.endpoints[0].h[2];
    double bx = piece.endpoints[1].h[0] / piece.endpoints[1].h[2];
    double by = piece.endpoints[1].h[1] / piece.endpoints[1].h[2];
    double x = ax, y = ay;
    double h = std::max(0.005, std::hypot(bx - ax, by - ay) / 400);
    // choose the tangent direction making progress toward the far endpoint
    // while staying on the arc (respecting the cuts)
    int dir = 1;
    {
        Vec3<double> g = piece.conic.gradient(Point<double>(ax, ay, 1.0));
        double tx = -g[1], ty = g[0];
        double px = ax + 1e-3 * tx, py = ay + 1e-3 * ty;
        for (auto& [l, sign] : piece.cuts)
            if (sign * (l.xi[0] * px + l.xi[1] * py + l.xi[2]) < -1e-9) dir = -1;
    }
    pts.push_back({x, y});
    for (int i = 0; i < 4000; ++i) {
        Vec3<double> g = piece.conic.gradient(Point<double>(x, y, 1.0));
        double tx = -g[1] * dir, ty = g[0] * dir;
        double n = std::hypot(tx, ty);
        if (n < 1e-12) break;
        x += h * tx / n;
        y += h * ty / n;
        for (int it = 0; it < 3; ++it) {
            Point<double> p(x, y, 1.0);
            double f = piece.conic.at(p);
            Vec3<double> gg = piece.conic.gradient(p);
            double gn = gg[0] * gg[0] + gg[1] * gg[1];
            if (gn < 1e-14) break;
            x -= f * gg[0] / (2 * gn);
            y -= f * gg[1] / (2 * gn);
        }
        pts.push_back({x, y});
        if (std::hypot(x - bx, y - by) < 1.5 * h) {
            pts.push_back({bx, by});
            break;
        }
    }
    return pts;
}

} // namespace

std::string render_svg(const Billiard<double>& b, const Orbit& orbit, int width, int height) {
    Bounds bounds;
    std::vector<std::vector<std::pair<double, double>>> arcs;
    for (auto& piece : b.pieces) {
        if (piece.is_segment) {
            bounds.add(piece.seg_a.h[0] / piece.seg_a.h[2], piece.seg_a.h[1] / piece.seg_a.h[2]);
            bounds.add(piece.seg_b.h[0] / piece.seg_b.h[2], piece.seg_b.h[1] / piece.seg_b.h[2]);
            arcs.push_back({});
        } else {
            arcs.push_back(sample_arc(piece));
            for (auto& [x, y] : arcs.back()) bounds.add(x, y);
        }
    }
    for (auto& e : orbit.events) bounds.add(e.x, e.y);
    if (bounds.xmin > bounds.xmax) bounds = Bounds{-1, 1, -1, 1};
    double pad = 0.08 * std::max(bounds.xmax - bounds.xmin, bounds.ymax - bounds.ymin) + 1e-6;
    bounds.xmin -= pad;
    bounds.xmax += pad;
    bounds.ymin -= pad;
    bounds.ymax += pad;
    double sx = width / (bounds.xmax - bounds.xmin);
    double sy = height / (bounds.ymax - bounds.ymin);
    double s = std::min(sx, sy);
    auto X = [&](double x) { return (x - bounds.xmin) * s; };
    auto Y = [&](double y) { return height - (y - bounds.ymin) * s; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (size_t i = 0; i < b.pieces.size(); ++i) {
        const auto& piece = b.pieces[i];
        if (piece.is_segment) {
            out << "<line x1=\"" << X(piece.seg_a.h[0] / piece.seg_a.h[2]) << "\" y1=\""
                << Y(piece.seg_a.h[1] / piece.seg_a.h[2]) << "\" x2=\""
                << X(piece.seg_b.h[0] / piece.seg_b.h[2]) << "\" y2=\""
                << Y(piece.seg_b.h[1] / piece.seg_b.h[2])
                << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        } else if (!arcs[i].empty()) {
            out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
            for (auto& [x, y] : arcs[i]) out << X(x) << "," << Y(y) << " ";
            out << "\"/>\n";
        }
    }
    if (!orbit.events.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1\" points=\"";
        for (auto& e : orbit.events) out << X(e.x) << "," << Y(e.y) << " ";
        out << "\"/>\n";
    }
    for (auto& e : b.excluded) {
        if (std::fabs(e.h[2]) < 1e-12) continue;  // only real affine marks
        out << "<circle cx=\"" << X(e.h[0] / e.h[2]) << "\" cy=\"" << Y(e.h[1] / e.h[2])
            << "\" r=\"3\" fill=\"#2980b9\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace pb
