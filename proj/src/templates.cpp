#include "skein/templates.hpp"

#include "skein/planar.hpp"

namespace skein::fixtures {

namespace {

Polyline line(std::vector<Point> pts, std::vector<double> heights, bool closed, Decoration dec, int offset = 0) {
    Polyline p;
    p.points = std::move(pts);
    p.heights = std::move(heights);
    p.closed = closed;
    p.decoration = dec;
    p.framing_offset = offset;
    return p;
}

Polyline box(double x0, double y0, double x1, double y1, std::vector<double> heights, Decoration dec, int offset = 0) {
    Polyline p = rectangle(x0, y0, x1, y1, 0);
    p.heights = std::move(heights);
    p.decoration = dec;
    p.framing_offset = offset;
    return p;
}

}  // namespace

MarkedTemplate solid_torus_template(std::optional<int> core_framing) {
    const auto W = Decoration::omega(), P = Decoration::colored(0);
    std::vector<Polyline> lines = {
        box(-6, -4, 6, 4, {0}, P),                     // probe
        box(-4, -2, 4, 2, {0}, P),                     // inner
        box(3, -0.5, 7, 0.5, {1, 0, -1, 0}, W),        // U
    };
    MarkedTemplate m;
    m.genus = 1;
    m.spine = Spine::loop();
    m.roles = {{0, Role::Probe, 0}, {1, Role::Inner, 0}, {2, Role::Marking, -1}};
    if (core_framing) {
        lines.push_back(box(-5, -3, 5, 3, {0}, W, *core_framing));
        m.roles.push_back({3, Role::Surgery, -1});
    }
    m.diagram = build_diagram(lines);
    return m;
}

// The surface: a disk [-2,2]^2 with an x-band looping over the top and a
// y-band looping to the right, the y-band bridged over the x-band near (0,4).
// A curve running along a band at offset s keeps s to its left. Heights are
// levels in the thickened surface; the bridge adds 10.
MarkedTemplate chain_mail_template() {
    const auto W = Decoration::omega(), P = Decoration::colored(0);
    auto y_loop = [&](double s, double z) {
        return line({{-s, -5 - s}, {5 + s, -5 - s}, {5 + s, 5 + s}, {-s, 5 + s}, {-s, 3}}, {z, z, z + 10, z + 10, z},
                    true, W);
    };
    // Small meridian around a vertical strand at x, with given over and under levels.
    auto meridian = [&](double x, double w, double y, double over, double under, int offset) {
        return line({{x - w, y - 0.1}, {x + w, y - 0.1}, {x + w, y + 0.1}, {x - w, y + 0.1}},
                    {over, (over + under) / 2, under, (over + under) / 2}, true, W, offset);
    };
    // Theta spine pushed to level z: x-edge at offset sx, y-edge at offset sy.
    auto theta = [&](Point v1, Point v2, double sx, double sy, double z) {
        double ex = 4 - sx, ey = 5 + sy;
        return std::vector<Polyline>{
            line({v1, {2, sx}, {ex, sx}, {ex, ex}, {-ex, ex}, {-ex, sx}, {-2, sx}, v2}, {z}, false, P),
            line({v1, {-sy, 2}, {-sy, 3}, {-sy, ey}, {ey, ey}, {ey, -ey}, {-sy, -ey}, {-sy, -2}, v2},
                 {z, z, z + 10, z + 10, z, z, z, z}, false, P),
            line({v1, v2}, {z}, false, P),
        };
    };

    std::vector<Polyline> lines = {
        box(-4, 0, 4, 4, {0}, W),                     // 0: core of the x-band, level 0
        y_loop(0.15, -0.5),                           // 1: core of the y-band below
        y_loop(-0.15, 0.5),                           // 2: and above
        meridian(5.15, 0.1, 1, -0.3, -0.7, -2),       // 3, 4: -2 framed meridians below
        meridian(5.15, 0.1, -1, -0.3, -0.7, -2),
        meridian(4.865, 0.085, 2, 0.7, 0.3, 2),       // 5, 6: +2 framed meridians above
        meridian(4.865, 0.085, 3, 0.7, 0.3, 2),
        box(-2.6, 3.3, -2.4, 4.7, {0, -100, 0, 100}, W),  // 7: U around the x-band
        box(4.3, -2.6, 5.5, -2.4, {100, 0, -100, 0}, W),  // 8: U around the y-band
    };
    for (auto& p : theta({0.6, 0.6}, {-0.6, -0.6}, 0.3, -0.3, 2)) lines.push_back(p);        // 9-11 probe
    for (auto& p : theta({0.8, 0.7}, {-0.7, -0.8}, 0.45, -0.45, -0.9)) lines.push_back(p);  // 12-14 inner

    MarkedTemplate m;
    m.genus = 2;
    m.spine = Spine::theta();
    m.diagram = build_diagram(lines);
    for (int k = 0; k <= 6; ++k) m.roles.push_back({k, Role::Surgery, -1});
    m.roles.push_back({7, Role::Marking, -1});
    m.roles.push_back({8, Role::Marking, -1});
    for (int e = 0; e < 3; ++e) {
        m.roles.push_back({9 + e, Role::Probe, e});
        m.roles.push_back({12 + e, Role::Inner, e});
    }
    return m;
}

}  // namespace skein::fixtures
