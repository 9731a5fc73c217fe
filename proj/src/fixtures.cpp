#include "skein/fixtures.hpp"

#include "skein/admissible.hpp"
#include "skein/errors.hpp"

namespace skein::fixtures {

namespace {

Polyline with(Polyline p, Decoration dec, int offset = 0) {
    p.decoration = dec;
    p.framing_offset = offset;
    return p;
}

Polyline open_line(std::vector<Point> pts, Decoration dec) {
    Polyline p;
    p.points = std::move(pts);
    p.heights = {0};
    p.closed = false;
    p.decoration = dec;
    return p;
}

// Squares alternate vertically; left and right sides are raised so that
// consecutive squares clasp once.
std::vector<Polyline> chain_lines(const std::vector<Decoration>& decs, const std::vector<int>& framings) {
    std::vector<Polyline> lines;
    for (size_t i = 0; i < decs.size(); ++i) {
        double x0 = 4.0 * i, y0 = (i % 2 == 0) ? 0.0 : 0.5;
        Polyline p = rectangle(x0, y0, x0 + 5, y0 + 2, 0);
        p.heights = {0, 1, 0, 1};
        lines.push_back(with(p, decs[i], framings[i]));
    }
    return lines;
}

// Splits arc x of d and threads a small meridian circle around it.
LinkDiagram add_meridian(const LinkDiagram& d, int x, Decoration dec) {
    auto topo = analyze(d);
    int next = 0;
    for (const auto& c : d.components)
        for (int a : c.arcs) next = std::max(next, a + 1);
    int x1 = next, x2 = next + 1, m1 = next + 2, m2 = next + 3;
    LinkDiagram out = d;
    const auto& head = topo.arcs[x].head;
    if (!head) throw ValidationError({"cannot thread a meridian around a free loop"});
    if (head->kind == Endpoint::Kind::Crossing)
        out.crossings[head->index][head->slot] = x2;
    else
        out.vertices[head->index].edges[head->slot] = x2;
    for (auto& c : out.components) {
        for (size_t i = 0; i < c.arcs.size(); ++i)
            if (c.arcs[i] == x) {
                c.arcs.insert(c.arcs.begin() + i + 1, {x1, x2});
                break;
            }
    }
    out.crossings.push_back({x1, m2, x2, m1});
    out.crossings.push_back({m1, x, m2, x1});
    Component m;
    m.arcs = {m1, m2};
    m.decoration = dec;
    out.components.push_back(m);
    return out;
}

}  // namespace

LinkDiagram unknot(Decoration dec, int framing_offset) {
    LinkDiagram d;
    Component c;
    c.arcs = {0};
    c.decoration = dec;
    c.framing_offset = framing_offset;
    d.components.push_back(c);
    return d;
}

LinkDiagram kink(int sign, Decoration dec) {
    Polyline p;
    p.points = {{0, 0}, {4, 0}, {4, 3}, {2, 3}, {2, -1}, {0, -1}};
    p.heights = {0, 0, 0, sign > 0 ? 1.0 : -1.0, 0, 0};
    p.decoration = dec;
    return build_diagram({p});
}

LinkDiagram chain(const std::vector<int>& framings, Decoration dec) {
    if (framings.empty()) return {};
    if (framings.size() == 1) return unknot(dec, framings[0]);
    return build_diagram(chain_lines(std::vector<Decoration>(framings.size(), dec), framings));
}

LinkDiagram hopf(Decoration a, Decoration b) { return build_diagram(chain_lines({a, b}, {0, 0})); }

LinkDiagram trefoil(bool right_handed, Decoration dec) {
    LinkDiagram d;
    if (right_handed)
        d.crossings = {{3, 1, 4, 0}, {5, 3, 0, 2}, {1, 5, 2, 4}};
    else
        d.crossings = {{0, 3, 1, 4}, {2, 5, 3, 0}, {4, 1, 5, 2}};
    Component c;
    c.arcs = {0, 1, 2, 3, 4, 5};
    c.decoration = dec;
    d.components.push_back(c);
    return d;
}

LinkDiagram theta_graph(int a, int b, int c) {
    return build_diagram({
        open_line({{-2, 0}, {0, 2}, {2, 0}}, Decoration::colored(a)),
        open_line({{-2, 0}, {2, 0}}, Decoration::colored(b)),
        open_line({{-2, 0}, {0, -2}, {2, 0}}, Decoration::colored(c)),
    });
}

LinkDiagram omega_around_strand(int c) { return hopf(Decoration::omega(), Decoration::colored(c)); }

LinkDiagram trefoil_with_omega_meridian(int c) {
    return add_meridian(trefoil(true, Decoration::colored(c)), 0, Decoration::omega());
}

FusionCase fusion_case(int kind, int a, int b, int d, int r) {
    auto ring = [&](int where) {
        // where 1: around the right sides of both circles; 2: around the left side of a only.
        Polyline p = where == 1 ? rectangle(3, -0.5, 7, 0.5, 0) : rectangle(-7, -0.5, -5, 0.5, 0);
        p.heights = {1, 0, -1, 0};
        p.decoration = Decoration::colored(d);
        return p;
    };
    FusionCase out;
    std::vector<Polyline> lhs = {with(rectangle(-6, -4, 6, 4, 0), Decoration::colored(a)),
                                 with(rectangle(-4, -2, 4, 2, 0), Decoration::colored(b))};
    if (kind != 0) lhs.push_back(ring(kind));
    out.parallel = build_diagram(lhs);
    for (int c = 0; c <= r - 2; ++c) {
        if (!admissible(a, b, c, r)) continue;
        Point v1{5, 1.5}, v2{5, -1.5};
        std::vector<Polyline> rhs = {
            open_line({v2, {6, -2.5}, {6, -4}, {-6, -4}, {-6, 4}, {6, 4}, {6, 2.5}, v1}, Decoration::colored(a)),
            open_line({v2, {4, -2}, {-4, -2}, {-4, 2}, {4, 2}, v1}, Decoration::colored(b)),
            open_line({v1, v2}, Decoration::colored(c)),
        };
        if (kind != 0) rhs.push_back(ring(kind));
        out.fused.emplace_back(c, build_diagram(rhs));
    }
    return out;
}

std::pair<LinkDiagram, LinkDiagram> handle_slide_pair(Decoration slid) {
    LinkDiagram before = disjoint_union(unknot(slid, 5), unknot(Decoration::omega(), 1));
    LinkDiagram after = hopf(slid, Decoration::omega());
    after.components[0].framing_offset = 6;
    after.components[1].framing_offset = 1;
    return {before, after};
}

}  // namespace skein::fixtures
