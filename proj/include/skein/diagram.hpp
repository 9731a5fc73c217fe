#pragma once

// Planar diagrams of framed, colored links and trivalent graphs.
//
// Crossing [a,b,c,d]: a is the incoming under-arc, then b, c, d counterclockwise.
// The under strand runs a -> c. The over strand runs d -> b (positive crossing)
// or b -> d (negative crossing); which one is read off the component traversal.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skein/cyclotomic.hpp"

namespace skein {

struct Decoration {
    enum class Kind { Plain, Color, Omega };
    Kind kind = Kind::Plain;
    int color = 1;

    static Decoration plain() { return {}; }
    static Decoration colored(int c) { return {Kind::Color, c}; }
    static Decoration omega() { return {Kind::Omega, 0}; }
    bool is_omega() const { return kind == Kind::Omega; }
    bool operator==(const Decoration& o) const {
        return kind == o.kind && (kind != Kind::Color || color == o.color);
    }
};

struct Component {
    std::vector<int> arcs;
    int framing_offset = 0;
    Decoration decoration;
    int orientation = 1;
    bool operator==(const Component&) const = default;
};

struct Vertex {
    std::array<int, 3> edges{};  // counterclockwise
    bool operator==(const Vertex&) const = default;
};

struct LinkDiagram {
    std::vector<std::array<int, 4>> crossings;
    std::vector<Component> components;
    std::vector<Vertex> vertices;
    bool operator==(const LinkDiagram&) const = default;
};

// Where an arc ends: a crossing slot (0..3) or a vertex slot (0..2).
struct Endpoint {
    enum class Kind { Crossing, Vertex };
    Kind kind = Kind::Crossing;
    int index = -1;
    int slot = -1;
    bool operator==(const Endpoint&) const = default;
};

struct ArcInfo {
    int component = -1;
    std::optional<Endpoint> tail;  // empty for a free loop
    std::optional<Endpoint> head;
};

struct CrossingInfo {
    int under_component = -1;
    int over_component = -1;
    bool over_east = true;  // over strand travels d -> b
    int sign() const { return over_east ? 1 : -1; }
};

struct DiagramTopology {
    std::vector<ArcInfo> arcs;  // indexed by arc id
    std::vector<CrossingInfo> crossings;
    std::vector<bool> component_closed;
    std::vector<int> writhe;  // self-crossing signs per component
};

std::vector<std::string> validation_issues(const LinkDiagram& d, std::optional<Level> level = std::nullopt);
// Throws ValidationError listing every issue.
void validate(const LinkDiagram& d, std::optional<Level> level = std::nullopt);
// Orients every arc from the component traversal. Throws ValidationError on malformed input.
DiagramTopology analyze(const LinkDiagram& d);

int component_color(const Component& c);  // plain -> 1, omega -> -1
int arc_count(const LinkDiagram& d);

// Remove components (closed ones or whole trivalent graphs), merging the arcs they crossed.
LinkDiagram remove_components(const LinkDiagram& d, const std::set<int>& drop);
// Disjoint union; arcs of b are renumbered after those of a.
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);

Json to_json(const LinkDiagram& d);
LinkDiagram diagram_from_json(const Json& j);
LinkDiagram parse_diagram(const std::string& text);
std::string serialize(const LinkDiagram& d);

struct LinkingData {
    std::vector<int> components;  // which components, in order
    std::vector<std::vector<long long>> matrix;
    int signature = 0;
};

// Linking matrix of the Omega-decorated components.
LinkingData linking_matrix(const LinkDiagram& d);
LinkingData linking_matrix(const LinkDiagram& d, const std::vector<int>& components);
int signature(const std::vector<std::vector<long long>>& symmetric);

// A diagram whose Omega components are surgery curves; others are passive.
struct SurgeryPresentation {
    LinkDiagram diagram;
};

}  // namespace skein
