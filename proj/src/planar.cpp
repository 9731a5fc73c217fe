#include "skein/planar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "skein/errors.hpp"

namespace skein {

namespace {

constexpr double kEps = 1e-9;

struct Segment {
    int line = 0;
    int index = 0;
    Point a, b;
    double height = 0;
};

struct Pass {
    int crossing = 0;
    int segment = 0;
    double t = 0;
    bool over = false;
    Point dir;
};

double cross(Point p, Point q) { return p.x * q.y - p.y * q.x; }
Point sub(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
bool near(Point p, Point q) { return std::abs(p.x - q.x) < 1e-7 && std::abs(p.y - q.y) < 1e-7; }

}  // namespace

Polyline rectangle(double x0, double y0, double x1, double y1, double height) {
    Polyline p;
    p.points = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    p.heights = {height};
    return p;
}

LinkDiagram build_diagram(const std::vector<Polyline>& lines) {
    const int nl = static_cast<int>(lines.size());
    std::vector<std::vector<Segment>> segs(nl);
    for (int l = 0; l < nl; ++l) {
        const auto& pl = lines[l];
        const int m = static_cast<int>(pl.points.size());
        const int ns = pl.closed ? m : m - 1;
        if (m < 2 || (pl.closed && m < 3)) throw ValidationError({"polyline " + std::to_string(l) + " is too short"});
        if (pl.heights.size() != 1 && static_cast<int>(pl.heights.size()) != ns)
            throw ValidationError({"polyline " + std::to_string(l) + " needs one height per segment"});
        for (int i = 0; i < ns; ++i) {
            Segment s;
            s.line = l;
            s.index = i;
            s.a = pl.points[i];
            s.b = pl.points[(i + 1) % m];
            s.height = pl.heights.size() == 1 ? pl.heights[0] : pl.heights[i];
            segs[l].push_back(s);
        }
    }

    // Vertex points: where open ends meet.
    std::vector<Point> vertex_at;
    auto vertex_index = [&](Point p) {
        for (int i = 0; i < static_cast<int>(vertex_at.size()); ++i)
            if (near(vertex_at[i], p)) return i;
        vertex_at.push_back(p);
        return static_cast<int>(vertex_at.size()) - 1;
    };
    for (const auto& pl : lines)
        if (!pl.closed) {
            vertex_index(pl.points.front());
            vertex_index(pl.points.back());
        }
    auto is_vertex_point = [&](Point p) {
        for (const auto& v : vertex_at)
            if (near(v, p)) return true;
        return false;
    };

    std::vector<std::vector<Pass>> passes(nl);
    int ncross = 0;
    std::vector<Segment> all;
    for (const auto& s : segs) all.insert(all.end(), s.begin(), s.end());
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = i + 1; j < all.size(); ++j) {
            const Segment& s1 = all[i];
            const Segment& s2 = all[j];
            Point r = sub(s1.b, s1.a), w = sub(s2.b, s2.a);
            double den = cross(r, w);
            Point qp = sub(s2.a, s1.a);
            if (std::abs(den) < kEps) {
                if (std::abs(cross(qp, r)) < kEps) {
                    // Collinear: allowed only if they do not overlap beyond a shared endpoint.
                    double rr = r.x * r.x + r.y * r.y;
                    double t0 = (qp.x * r.x + qp.y * r.y) / rr;
                    double t1 = t0 + (w.x * r.x + w.y * r.y) / rr;
                    double lo = std::max(0.0, std::min(t0, t1)), hi = std::min(1.0, std::max(t0, t1));
                    if (hi - lo > kEps)
                        throw ValidationError({"overlapping collinear segments in polylines " + std::to_string(s1.line) +
                                               " and " + std::to_string(s2.line)});
                }
                continue;
            }
            double t = cross(qp, w) / den;
            double s = cross(qp, r) / den;
            if (t < -kEps || t > 1 + kEps || s < -kEps || s > 1 + kEps) continue;
            bool t_end = t < 1e-7 || t > 1 - 1e-7;
            bool s_end = s < 1e-7 || s > 1 - 1e-7;
            if (t_end && s_end) {
                Point p{s1.a.x + t * r.x, s1.a.y + t * r.y};
                bool shared = near(t < 0.5 ? s1.a : s1.b, s < 0.5 ? s2.a : s2.b);
                if (shared) {
                    bool consecutive = s1.line == s2.line;
                    if (consecutive || is_vertex_point(p)) continue;
                }
                throw ValidationError({"segments of polylines " + std::to_string(s1.line) + " and " +
                                       std::to_string(s2.line) + " touch at an endpoint"});
            }
            if (t_end || s_end)
                throw ValidationError({"degenerate intersection between polylines " + std::to_string(s1.line) + " and " +
                                       std::to_string(s2.line)});
            if (std::abs(s1.height - s2.height) < kEps)
                throw ValidationError({"equal heights at a crossing of polylines " + std::to_string(s1.line) + " and " +
                                       std::to_string(s2.line)});
            bool first_over = s1.height > s2.height;
            passes[s1.line].push_back({ncross, s1.index, t, first_over, r});
            passes[s2.line].push_back({ncross, s2.index, s, !first_over, w});
            ++ncross;
        }
    }

    LinkDiagram d;
    struct Ends {
        int in = -1, out = -1;
        Point dir;
        bool set = false;
    };
    std::vector<Ends> under(ncross), over(ncross);
    int next_arc = 0;
    std::vector<int> first_arc(nl), last_arc(nl);
    for (int l = 0; l < nl; ++l) {
        auto& ps = passes[l];
        std::sort(ps.begin(), ps.end(), [](const Pass& a, const Pass& b) {
            return std::tie(a.segment, a.t) < std::tie(b.segment, b.t);
        });
        const auto& pl = lines[l];
        Component c;
        c.framing_offset = pl.framing_offset;
        c.decoration = pl.decoration;
        c.orientation = pl.orientation;
        const int k = static_cast<int>(ps.size());
        if (pl.closed) {
            int base = next_arc;
            int n = std::max(k, 1);
            for (int i = 0; i < n; ++i) c.arcs.push_back(base + i);
            next_arc += n;
            for (int j = 0; j < k; ++j) {
                auto& e = ps[j].over ? over[ps[j].crossing] : under[ps[j].crossing];
                e.in = base + (j - 1 + k) % k;
                e.out = base + j;
                e.dir = ps[j].dir;
                e.set = true;
            }
        } else {
            int base = next_arc;
            for (int i = 0; i <= k; ++i) c.arcs.push_back(base + i);
            next_arc += k + 1;
            for (int j = 0; j < k; ++j) {
                auto& e = ps[j].over ? over[ps[j].crossing] : under[ps[j].crossing];
                e.in = base + j;
                e.out = base + j + 1;
                e.dir = ps[j].dir;
                e.set = true;
            }
        }
        first_arc[l] = c.arcs.front();
        last_arc[l] = c.arcs.back();
        d.components.push_back(c);
    }
    for (int x = 0; x < ncross; ++x) {
        const auto& u = under[x];
        const auto& o = over[x];
        if (cross(u.dir, o.dir) < 0)
            d.crossings.push_back({u.in, o.out, u.out, o.in});
        else
            d.crossings.push_back({u.in, o.in, u.out, o.out});
    }

    struct End {
        double angle;
        int arc;
    };
    std::vector<std::vector<End>> at(vertex_at.size());
    for (int l = 0; l < nl; ++l) {
        const auto& pl = lines[l];
        if (pl.closed) continue;
        const auto& p = pl.points;
        Point d0 = sub(p[1], p[0]);
        Point d1 = sub(p[p.size() - 2], p.back());
        at[vertex_index(p.front())].push_back({std::atan2(d0.y, d0.x), first_arc[l]});
        at[vertex_index(p.back())].push_back({std::atan2(d1.y, d1.x), last_arc[l]});
    }
    for (size_t v = 0; v < at.size(); ++v) {
        if (at[v].size() != 3)
            throw ValidationError({"vertex point " + std::to_string(v) + " has " + std::to_string(at[v].size()) +
                                   " incident ends, expected 3"});
        std::sort(at[v].begin(), at[v].end(), [](const End& a, const End& b) { return a.angle < b.angle; });
        d.vertices.push_back({{at[v][0].arc, at[v][1].arc, at[v][2].arc}});
    }
    validate(d);
    return d;
}

}  // namespace skein
