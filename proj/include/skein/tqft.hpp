#pragma once

// Pairings, partition vectors of marked manifolds, closed invariants from
// surgery presentations, lens spaces and gluing.

#include <optional>
#include <vector>

#include "skein/bracket.hpp"
#include "skein/cyclotomic.hpp"
#include "skein/diagram.hpp"

namespace skein {

// Trivalent spine of a handlebody. An edge in no vertex is a loop.
struct Spine {
    int edges = 1;
    std::vector<std::array<int, 3>> vertices;
    bool operator==(const Spine&) const = default;

    static Spine loop() { return {}; }
    static Spine theta() { return {3, {{0, 1, 2}, {0, 1, 2}}}; }
};

void validate_spine(const Spine& s);

using Coloring = std::vector<int>;

// Lexicographic over [0, r-2]^edges, keeping admissible colorings.
std::vector<Coloring> enumerate_basis(const Spine& s, int r);

enum class Role { Surgery, Marking, Probe, Inner, Passive };

struct ComponentRole {
    int component = 0;
    Role role = Role::Passive;
    int edge = -1;  // spine edge, for probe and inner components
    bool operator==(const ComponentRole&) const = default;
};

// A closed S^3 diagram: the skein or surgery curves inside the marking
// handlebody C, the Omega circles U around C, the probe slot x_a outside C
// and a copy x_b of the spine inside C used only for pairings.
// genus is the genus of C: pairings are X^genus times a unit.
struct MarkedTemplate {
    int genus = 1;
    Spine spine;
    LinkDiagram diagram;
    std::vector<ComponentRole> roles;  // unlisted components are passive
    bool operator==(const MarkedTemplate&) const = default;
};

void validate_template(const MarkedTemplate& m);
Role role_of(const MarkedTemplate& m, int component);

// Template with the probe colored by a, inner copy and zero-colored probe loops removed.
LinkDiagram instantiate(const MarkedTemplate& m, const Coloring& a, int r);

// Bracket of probe colored a, inner copy colored b and Omega(U); surgery curves removed.
CycNum pairing(const MarkedTemplate& m, const Coloring& a, const Coloring& b, const Level& level,
               const EvalOptions& options = {});
// pairing(a, a) / X^genus; must be a unit.
CycNum basis_unit(const MarkedTemplate& m, const Coloring& a, const Level& level, const EvalOptions& options = {});

// Z(M, C) = (1/X^genus) sum_a I_a x_a.
struct PartitionVector {
    int r = 3;
    int genus = 0;
    std::vector<std::pair<Coloring, CycNum>> entries;
    std::vector<CycNum> units;  // u(a) per entry, when known
    int sigma = 0;              // signature used for the kappa normalization
};

// I_a = kappa^{-sigma} <instantiate(a)> / u(a), sigma from the surgery components.
// Throws ConsistencyError when some I_a is not integral.
PartitionVector expand_in_basis(const MarkedTemplate& m, const Level& level, const EvalOptions& options = {});

// kappa^{-sigma} <d>, sigma the signature of the Omega components' linking matrix.
CycNum wrt(const SurgeryPresentation& s, const Level& level, const EvalOptions& options = {});
// wrt times its conjugate.
CycNum turaev_viro(const SurgeryPresentation& s, const Level& level, const EvalOptions& options = {});

// Framings of the chain p/q = a1 - 1/(a2 - ...).
std::vector<int> lens_framings(long long p, long long q);
SurgeryPresentation lens_presentation(long long p, long long q);

// (1/X^g) sum_a I_a J_a u(a): the two pieces glued along the marking surface.
// Returns a genus-0 vector with a single entry.
PartitionVector glue_contract(const PartitionVector& a, const PartitionVector& b);

// Smallest k in [0, 8r) with x = kappa^k y.
std::optional<int> kappa_exponent(const CycNum& x, const CycNum& y);

Json to_json(const PartitionVector& pv);
Json to_json(const MarkedTemplate& m);
MarkedTemplate template_from_json(const Json& j);
MarkedTemplate parse_template(const std::string& text);

const char* role_name(Role r);

}  // namespace skein
