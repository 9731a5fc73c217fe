#include "skein/diagram.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "skein/admissible.hpp"
#include "skein/errors.hpp"

namespace skein {

namespace {

using Issues = std::vector<std::string>;

std::string where(const Endpoint& e) {
    return std::string(e.kind == Endpoint::Kind::Crossing ? "crossing " : "vertex ") +
           std::to_string(e.index) + " slot " + std::to_string(e.slot);
}

bool endpoint_less(const Endpoint& a, const Endpoint& b) {
    return std::tie(a.kind, a.index, a.slot) < std::tie(b.kind, b.index, b.slot);
}

struct Occurrences {
    std::map<int, std::vector<Endpoint>> at;
    int arc_at(const LinkDiagram& d, const Endpoint& e) const {
        return e.kind == Endpoint::Kind::Crossing ? d.crossings[e.index][e.slot]
                                                  : d.vertices[e.index].edges[e.slot];
    }
};

Occurrences collect(const LinkDiagram& d) {
    Occurrences occ;
    for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i)
        for (int s = 0; s < 4; ++s) occ.at[d.crossings[i][s]].push_back({Endpoint::Kind::Crossing, i, s});
    for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i)
        for (int s = 0; s < 3; ++s) occ.at[d.vertices[i].edges[s]].push_back({Endpoint::Kind::Vertex, i, s});
    for (auto& [arc, v] : occ.at) std::sort(v.begin(), v.end(), endpoint_less);
    return occ;
}

std::optional<Endpoint> other_end(const std::vector<Endpoint>& ends, const Endpoint& e) {
    if (ends.size() != 2) return std::nullopt;
    if (ends[0] == e) return ends[1];
    if (ends[1] == e) return ends[0];
    return std::nullopt;
}

// Walk a component; returns false if the arc order is inconsistent with the codes.
bool walk_component(const LinkDiagram& d, const Occurrences& occ, int comp, const Endpoint& first_tail,
                    const Endpoint& first_head, bool closed, DiagramTopology& topo) {
    const auto& arcs = d.components[comp].arcs;
    const int n = static_cast<int>(arcs.size());
    std::vector<std::pair<Endpoint, Endpoint>> ends(n);
    ends[0] = {first_tail, first_head};
    Endpoint head = first_head;
    for (int i = 0; i < n; ++i) {
        bool last = (i == n - 1);
        if (last && !closed) {
            if (head.kind != Endpoint::Kind::Vertex) return false;
            break;
        }
        if (head.kind != Endpoint::Kind::Crossing) return false;
        if ((head.slot == 2)) return false;  // under strand must arrive at slot 0
        Endpoint opp{Endpoint::Kind::Crossing, head.index, (head.slot + 2) % 4};
        int next = (i + 1) % n;
        if (occ.arc_at(d, opp) != arcs[next]) return false;
        if (last) {
            if (!(opp == first_tail)) return false;
            break;
        }
        auto it = occ.at.find(arcs[next]);
        if (it == occ.at.end()) return false;
        auto nh = other_end(it->second, opp);
        if (!nh) return false;
        ends[next] = {opp, *nh};
        head = *nh;
    }
    for (int i = 0; i < n; ++i) {
        auto& info = topo.arcs[arcs[i]];
        info.tail = ends[i].first;
        info.head = ends[i].second;
    }
    return true;
}

DiagramTopology analyze_collect(const LinkDiagram& d, Issues& issues) {
    DiagramTopology topo;
    int max_arc = -1;
    for (const auto& c : d.components)
        for (int a : c.arcs) max_arc = std::max(max_arc, a);
    for (const auto& x : d.crossings)
        for (int a : x) max_arc = std::max(max_arc, a);
    for (const auto& v : d.vertices)
        for (int a : v.edges) max_arc = std::max(max_arc, a);
    topo.arcs.assign(max_arc + 1, {});
    topo.component_closed.assign(d.components.size(), true);
    topo.writhe.assign(d.components.size(), 0);

    for (const auto& x : d.crossings)
        for (int a : x)
            if (a < 0) issues.push_back("negative arc id " + std::to_string(a));
    for (const auto& v : d.vertices)
        for (int a : v.edges)
            if (a < 0) issues.push_back("negative arc id " + std::to_string(a));
    if (!issues.empty()) return topo;

    for (int k = 0; k < static_cast<int>(d.components.size()); ++k) {
        const auto& c = d.components[k];
        if (c.arcs.empty()) issues.push_back("component " + std::to_string(k) + " has no arcs");
        for (int a : c.arcs) {
            if (a < 0) {
                issues.push_back("negative arc id " + std::to_string(a) + " in component " + std::to_string(k));
                continue;
            }
            if (topo.arcs[a].component >= 0)
                issues.push_back("arc " + std::to_string(a) + " listed twice (components " +
                                 std::to_string(topo.arcs[a].component) + " and " + std::to_string(k) + ")");
            topo.arcs[a].component = k;
        }
    }
    if (!issues.empty()) return topo;

    Occurrences occ = collect(d);
    for (const auto& [arc, ends] : occ.at) {
        if (topo.arcs[arc].component < 0)
            issues.push_back("arc " + std::to_string(arc) + " at " + where(ends[0]) + " belongs to no component");
    }
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k) {
        const auto& c = d.components[k];
        for (int a : c.arcs) {
            auto it = occ.at.find(a);
            size_t uses = it == occ.at.end() ? 0 : it->second.size();
            bool free_loop = c.arcs.size() == 1 && uses == 0;
            if (free_loop) continue;
            if (uses == 1)
                issues.push_back("dangling arc " + std::to_string(a) + " (used once, at " + where(it->second[0]) + ")");
            else if (uses == 0)
                issues.push_back("dangling arc " + std::to_string(a) + " (never used) in component " + std::to_string(k));
            else if (uses > 2)
                issues.push_back("arc " + std::to_string(a) + " used " + std::to_string(uses) + " times");
        }
    }
    if (!issues.empty()) return topo;

    for (int k = 0; k < static_cast<int>(d.components.size()); ++k) {
        const auto& arcs = d.components[k].arcs;
        bool has_vertex = false;
        for (int a : arcs) {
            auto it = occ.at.find(a);
            if (it == occ.at.end()) continue;
            for (const auto& e : it->second)
                if (e.kind == Endpoint::Kind::Vertex) has_vertex = true;
        }
        topo.component_closed[k] = !has_vertex;
        auto it0 = occ.at.find(arcs[0]);
        if (it0 == occ.at.end()) continue;  // free loop
        const auto& ends0 = it0->second;
        bool ok = false;
        if (!has_vertex) {
            for (const auto& h : ends0) {
                auto t = other_end(ends0, h);
                if (t && walk_component(d, occ, k, *t, h, true, topo)) {
                    ok = true;
                    break;
                }
            }
        } else {
            for (const auto& t : ends0) {
                if (t.kind != Endpoint::Kind::Vertex) continue;
                auto h = other_end(ends0, t);
                if (h && walk_component(d, occ, k, t, *h, false, topo)) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) {
            std::string loc = "component " + std::to_string(k);
            // Point at the first crossing touched by the component.
            for (const auto& e : ends0)
                if (e.kind == Endpoint::Kind::Crossing) {
                    loc += " near crossing " + std::to_string(e.index);
                    break;
                }
            issues.push_back("malformed crossing: arc order of " + loc +
                             " is inconsistent with the crossing codes (under strands must run a -> c)");
        }
    }
    if (!issues.empty()) return topo;

    topo.crossings.resize(d.crossings.size());
    for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
        const auto& x = d.crossings[i];
        auto& ci = topo.crossings[i];
        ci.under_component = topo.arcs[x[0]].component;
        ci.over_component = topo.arcs[x[1]].component;
        if (topo.arcs[x[2]].component != ci.under_component || topo.arcs[x[3]].component != ci.over_component) {
            issues.push_back("malformed crossing " + std::to_string(i) + ": opposite slots belong to different components");
            continue;
        }
        Endpoint d_slot{Endpoint::Kind::Crossing, i, 3};
        Endpoint b_slot{Endpoint::Kind::Crossing, i, 1};
        const auto& ad = topo.arcs[x[3]];
        const auto& ab = topo.arcs[x[1]];
        if (ad.head && *ad.head == d_slot)
            ci.over_east = true;
        else if (ab.head && *ab.head == b_slot)
            ci.over_east = false;
        else
            issues.push_back("malformed crossing " + std::to_string(i) + ": over strand direction undetermined");
        if (ci.under_component == ci.over_component) topo.writhe[ci.under_component] += ci.sign();
    }
    return topo;
}

// Faces of the rotation system; a valid planar diagram has V - E + F = 2 per connected piece.
void check_planarity(const LinkDiagram& d, const DiagramTopology& topo, Issues& issues) {
    const int nx = static_cast<int>(d.crossings.size());
    const int nv = static_cast<int>(d.vertices.size());
    const int nodes = nx + nv;
    if (nodes == 0) return;
    auto node_of = [&](const Endpoint& e) { return e.kind == Endpoint::Kind::Crossing ? e.index : nx + e.index; };
    auto degree = [&](int node) { return node < nx ? 4 : 3; };
    auto dart_id = [&](int node, int slot) { return node < nx ? node * 4 + slot : nx * 4 + (node - nx) * 3 + slot; };
    const int darts = nx * 4 + nv * 3;
    std::vector<Endpoint> dart_end(darts);
    std::vector<int> partner(darts, -1);
    std::vector<int> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int edges = 0;
    for (const auto& info : topo.arcs) {
        if (info.component < 0 || !info.tail || !info.head) continue;
        int t = dart_id(node_of(*info.tail), info.tail->slot);
        int h = dart_id(node_of(*info.head), info.head->slot);
        partner[t] = h;
        partner[h] = t;
        parent[find(node_of(*info.tail))] = find(node_of(*info.head));
        ++edges;
    }
    for (int i = 0; i < darts; ++i)
        if (partner[i] < 0) {
            issues.push_back("crossing code has an unmatched slot");
            return;
        }
    std::vector<int> node_of_dart(darts), slot_of_dart(darts);
    for (int n = 0; n < nodes; ++n)
        for (int s = 0; s < degree(n); ++s) {
            node_of_dart[dart_id(n, s)] = n;
            slot_of_dart[dart_id(n, s)] = s;
        }
    std::vector<bool> seen(darts, false);
    int faces = 0;
    for (int start = 0; start < darts; ++start) {
        if (seen[start]) continue;
        ++faces;
        int cur = start;
        while (!seen[cur]) {
            seen[cur] = true;
            int arrive = partner[cur];
            int n = node_of_dart[arrive];
            cur = dart_id(n, (slot_of_dart[arrive] + 1) % degree(n));
        }
    }
    int pieces = 0;
    for (int n = 0; n < nodes; ++n)
        if (find(n) == n) ++pieces;
    if (nodes - edges + faces != 2 * pieces)
        issues.push_back("crossing code is not planar (Euler characteristic " +
                         std::to_string(nodes - edges + faces) + ", expected " + std::to_string(2 * pieces) + ")");
}

}  // namespace

int component_color(const Component& c) {
    switch (c.decoration.kind) {
        case Decoration::Kind::Plain: return 1;
        case Decoration::Kind::Color: return c.decoration.color;
        case Decoration::Kind::Omega: return -1;
    }
    return 1;
}

int arc_count(const LinkDiagram& d) {
    int n = 0;
    for (const auto& c : d.components) n += static_cast<int>(c.arcs.size());
    return n;
}

std::vector<std::string> validation_issues(const LinkDiagram& d, std::optional<Level> level) {
    Issues issues;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k) {
        const auto& c = d.components[k];
        if (c.orientation != 1 && c.orientation != -1)
            issues.push_back("component " + std::to_string(k) + " has orientation " + std::to_string(c.orientation) +
                             " (must be 1 or -1)");
        if (c.decoration.kind == Decoration::Kind::Color) {
            if (c.decoration.color < 0)
                issues.push_back("component " + std::to_string(k) + " has negative color");
            else if (level && c.decoration.color > level->r() - 2)
                issues.push_back("component " + std::to_string(k) + " color " + std::to_string(c.decoration.color) +
                                 " exceeds r-2 = " + std::to_string(level->r() - 2));
        }
    }
    DiagramTopology topo = analyze_collect(d, issues);
    if (!issues.empty()) return issues;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k)
        if (!topo.component_closed[k] && d.components[k].decoration.is_omega())
            issues.push_back("component " + std::to_string(k) + " is an open edge but carries the omega decoration");
    for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i) {
        std::array<int, 3> col{};
        bool known = true;
        for (int s = 0; s < 3; ++s) {
            int comp = topo.arcs[d.vertices[i].edges[s]].component;
            col[s] = component_color(d.components[comp]);
            if (col[s] < 0) known = false;
        }
        if (known && !admissible(col[0], col[1], col[2], level ? level->r() : 0))
            issues.push_back("inadmissible triple (" + std::to_string(col[0]) + "," + std::to_string(col[1]) + "," +
                             std::to_string(col[2]) + ") at vertex " + std::to_string(i));
    }
    check_planarity(d, topo, issues);
    return issues;
}

void validate(const LinkDiagram& d, std::optional<Level> level) {
    auto issues = validation_issues(d, level);
    if (!issues.empty()) throw ValidationError(issues);
}

DiagramTopology analyze(const LinkDiagram& d) {
    Issues issues;
    auto topo = analyze_collect(d, issues);
    if (!issues.empty()) throw ValidationError(issues);
    return topo;
}

namespace {

LinkDiagram compact_arcs(const LinkDiagram& d) {
    std::map<int, int> id;
    auto get = [&](int a) {
        auto it = id.find(a);
        if (it != id.end()) return it->second;
        int n = static_cast<int>(id.size());
        id.emplace(a, n);
        return n;
    };
    LinkDiagram out = d;
    for (auto& c : out.components)
        for (auto& a : c.arcs) a = get(a);
    for (auto& x : out.crossings)
        for (auto& a : x) a = get(a);
    for (auto& v : out.vertices)
        for (auto& a : v.edges) a = get(a);
    return out;
}

}  // namespace

LinkDiagram remove_components(const LinkDiagram& d, const std::set<int>& drop) {
    if (drop.empty()) return d;
    std::map<int, int> comp_of;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k)
        for (int a : d.components[k].arcs) comp_of[a] = k;
    auto dropped_arc = [&](int a) { return drop.count(comp_of.at(a)) > 0; };

    for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i) {
        int n = 0;
        for (int a : d.vertices[i].edges) n += dropped_arc(a);
        if (n != 0 && n != 3)
            throw ValidationError({"cannot remove part of the graph at vertex " + std::to_string(i)});
    }

    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        return it->second = find(it->second);
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    LinkDiagram out;
    std::vector<std::array<int, 4>> kept;
    for (const auto& x : d.crossings) {
        bool du = dropped_arc(x[0]), dov = dropped_arc(x[1]);
        if (du && dov) continue;
        if (du) {
            unite(x[1], x[3]);
            continue;
        }
        if (dov) {
            unite(x[0], x[2]);
            continue;
        }
        kept.push_back(x);
    }
    for (auto x : kept) {
        for (auto& a : x) a = find(a);
        out.crossings.push_back(x);
    }
    std::map<int, int> new_index;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k) {
        if (drop.count(k)) continue;
        Component c = d.components[k];
        std::vector<int> arcs;
        for (int a : c.arcs) {
            int f = find(a);
            if (arcs.empty() || arcs.back() != f) arcs.push_back(f);
        }
        while (arcs.size() > 1 && arcs.front() == arcs.back()) arcs.pop_back();
        c.arcs = arcs;
        new_index[k] = static_cast<int>(out.components.size());
        out.components.push_back(c);
    }
    for (const auto& v : d.vertices) {
        if (dropped_arc(v.edges[0])) continue;
        Vertex w = v;
        for (auto& a : w.edges) a = find(a);
        out.vertices.push_back(w);
    }
    return compact_arcs(out);
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
    int shift = 0;
    for (const auto& c : a.components)
        for (int x : c.arcs) shift = std::max(shift, x + 1);
    LinkDiagram out = a;
    for (auto x : b.crossings) {
        for (auto& v : x) v += shift;
        out.crossings.push_back(x);
    }
    for (auto c : b.components) {
        for (auto& v : c.arcs) v += shift;
        out.components.push_back(c);
    }
    for (auto v : b.vertices) {
        for (auto& e : v.edges) e += shift;
        out.vertices.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------- JSON

Json to_json(const LinkDiagram& d) {
    Json j;
    j["crossings"] = Json::array();
    for (const auto& x : d.crossings) j["crossings"].push_back(Json::array({x[0], x[1], x[2], x[3]}));
    j["components"] = Json::array();
    for (const auto& c : d.components) {
        Json cj;
        cj["arcs"] = c.arcs;
        cj["framing_offset"] = c.framing_offset;
        switch (c.decoration.kind) {
            case Decoration::Kind::Plain: cj["decoration"] = "plain"; break;
            case Decoration::Kind::Omega: cj["decoration"] = "omega"; break;
            case Decoration::Kind::Color: cj["decoration"] = Json{{"color", c.decoration.color}}; break;
        }
        cj["orientation"] = c.orientation;
        j["components"].push_back(cj);
    }
    j["vertices"] = Json::array();
    for (const auto& v : d.vertices) j["vertices"].push_back(Json{{"edges", {v.edges[0], v.edges[1], v.edges[2]}}});
    return j;
}

namespace {

int get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
    return j.get<int>();
}

const Json& require(const Json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw ParseError(path + ": missing field '" + key + "'");
    return j.at(key);
}

}  // namespace

LinkDiagram diagram_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("$: expected an object");
    for (const auto& [key, v] : j.items()) {
        if (key != "crossings" && key != "components" && key != "vertices")
            throw ParseError("$." + key + ": unknown field");
    }
    LinkDiagram d;
    if (j.contains("crossings")) {
        const auto& xs = j.at("crossings");
        if (!xs.is_array()) throw ParseError("$.crossings: expected an array");
        for (size_t i = 0; i < xs.size(); ++i) {
            std::string p = "$.crossings[" + std::to_string(i) + "]";
            if (!xs[i].is_array() || xs[i].size() != 4) throw ParseError(p + ": expected 4 arc ids");
            std::array<int, 4> x{};
            for (int s = 0; s < 4; ++s) x[s] = get_int(xs[i][s], p + "[" + std::to_string(s) + "]");
            d.crossings.push_back(x);
        }
    }
    const auto& cs = require(j, "components", "$");
    if (!cs.is_array()) throw ParseError("$.components: expected an array");
    for (size_t i = 0; i < cs.size(); ++i) {
        std::string p = "$.components[" + std::to_string(i) + "]";
        const auto& cj = cs[i];
        if (!cj.is_object()) throw ParseError(p + ": expected an object");
        for (const auto& [key, v] : cj.items()) {
            if (key != "arcs" && key != "framing_offset" && key != "decoration" && key != "orientation")
                throw ParseError(p + "." + key + ": unknown field");
        }
        Component c;
        const auto& arcs = require(cj, "arcs", p);
        if (!arcs.is_array()) throw ParseError(p + ".arcs: expected an array");
        for (size_t k = 0; k < arcs.size(); ++k) c.arcs.push_back(get_int(arcs[k], p + ".arcs[" + std::to_string(k) + "]"));
        if (cj.contains("framing_offset")) c.framing_offset = get_int(cj.at("framing_offset"), p + ".framing_offset");
        if (cj.contains("orientation")) c.orientation = get_int(cj.at("orientation"), p + ".orientation");
        if (cj.contains("decoration")) {
            const auto& dj = cj.at("decoration");
            if (dj.is_string() && dj.get<std::string>() == "plain")
                c.decoration = Decoration::plain();
            else if (dj.is_string() && dj.get<std::string>() == "omega")
                c.decoration = Decoration::omega();
            else if (dj.is_object() && dj.contains("color") && dj.size() == 1)
                c.decoration = Decoration::colored(get_int(dj.at("color"), p + ".decoration.color"));
            else
                throw ParseError(p + ".decoration: expected \"plain\", \"omega\" or {\"color\": c}");
        }
        d.components.push_back(c);
    }
    if (j.contains("vertices")) {
        const auto& vs = j.at("vertices");
        if (!vs.is_array()) throw ParseError("$.vertices: expected an array");
        for (size_t i = 0; i < vs.size(); ++i) {
            std::string p = "$.vertices[" + std::to_string(i) + "]";
            if (!vs[i].is_object()) throw ParseError(p + ": expected an object");
            const auto& e = require(vs[i], "edges", p);
            if (!e.is_array() || e.size() != 3) throw ParseError(p + ".edges: expected 3 arc ids");
            Vertex v;
            for (int s = 0; s < 3; ++s) v.edges[s] = get_int(e[s], p + ".edges[" + std::to_string(s) + "]");
            d.vertices.push_back(v);
        }
    }
    return d;
}

LinkDiagram parse_diagram(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return diagram_from_json(j);
}

std::string serialize(const LinkDiagram& d) { return to_json(d).dump(2); }

// ---------------------------------------------------------------- linking

int signature(const std::vector<std::vector<long long>>& m0) {
    using Q = boost::multiprecision::cpp_rational;
    const int n = static_cast<int>(m0.size());
    std::vector<std::vector<Q>> m(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = m0[i][j];
    int pos = 0, neg = 0;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && m[i][i] != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // All remaining diagonal entries vanish; create one by a congruence i <- i + j.
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && m[i][j] != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a < 0) break;
            for (int k = 0; k < n; ++k) m[a][k] += m[b][k];
            for (int k = 0; k < n; ++k) m[k][a] += m[k][b];
            p = a;
        }
        done[p] = true;
        if (m[p][p] > 0) ++pos; else ++neg;
        for (int i = 0; i < n; ++i) {
            if (done[i] || m[i][p] == 0) continue;
            Q f = m[i][p] / m[p][p];
            for (int k = 0; k < n; ++k) m[i][k] -= f * m[p][k];
            for (int k = 0; k < n; ++k) m[k][i] -= f * m[k][p];
        }
    }
    return pos - neg;
}

LinkingData linking_matrix(const LinkDiagram& d, const std::vector<int>& comps) {
    auto topo = analyze(d);
    LinkingData out;
    out.components = comps;
    const int n = static_cast<int>(comps.size());
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) {
        int k = comps[i];
        if (k < 0 || k >= static_cast<int>(d.components.size()))
            throw ValidationError({"no component " + std::to_string(k)});
        if (!topo.component_closed[k]) throw ValidationError({"component " + std::to_string(k) + " is not closed"});
        int o = d.components[k].orientation;
        if (o != 1 && o != -1) throw ValidationError({"unoriented component " + std::to_string(k)});
        pos[k] = i;
    }
    std::vector<std::vector<long long>> twice(n, std::vector<long long>(n, 0));
    for (const auto& ci : topo.crossings) {
        auto a = pos.find(ci.under_component), b = pos.find(ci.over_component);
        if (a == pos.end() || b == pos.end() || a->second == b->second) continue;
        long long s = ci.sign() * d.components[ci.under_component].orientation * d.components[ci.over_component].orientation;
        twice[a->second][b->second] += s;
        twice[b->second][a->second] += s;
    }
    out.matrix.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                out.matrix[i][i] = topo.writhe[comps[i]] + d.components[comps[i]].framing_offset;
            } else {
                if (twice[i][j] % 2 != 0) throw ConsistencyError("odd signed crossing count between two components");
                out.matrix[i][j] = twice[i][j] / 2;
            }
        }
    out.signature = signature(out.matrix);
    return out;
}

LinkingData linking_matrix(const LinkDiagram& d) {
    std::vector<int> comps;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k)
        if (d.components[k].decoration.is_omega()) comps.push_back(k);
    return linking_matrix(d, comps);
}

}  // namespace skein
