#include "skein/tqft.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "skein/admissible.hpp"
#include "skein/errors.hpp"
#include "skein/fixtures.hpp"
#include "skein/recoupling.hpp"

namespace skein {

namespace {

bool edge_in_vertex(const Spine& s, int e) {
    for (const auto& v : s.vertices)
        for (int x : v)
            if (x == e) return true;
    return false;
}

void check_coloring(const Spine& s, const Coloring& a, int r) {
    if (static_cast<int>(a.size()) != s.edges)
        throw ValidationError({"coloring has " + std::to_string(a.size()) + " colors for " + std::to_string(s.edges) +
                               " spine edges"});
    for (int c : a)
        if (c < 0 || c > r - 2) throw ValidationError({"color " + std::to_string(c) + " out of range at r=" + std::to_string(r)});
    for (size_t i = 0; i < s.vertices.size(); ++i) {
        const auto& v = s.vertices[i];
        if (!admissible(a[v[0]], a[v[1]], a[v[2]], r))
            throw ValidationError({"inadmissible triple at spine vertex " + std::to_string(i)});
    }
}

// Copy of the template keeping the listed roles, probe colored a and inner colored b.
LinkDiagram colored_copy(const MarkedTemplate& m, const Coloring& a, const Coloring* b, std::set<Role> keep) {
    LinkDiagram d = m.diagram;
    std::set<int> drop;
    std::vector<int> probe_parts, inner_parts;  // graph edges
    bool probe_all_zero = true, inner_all_zero = true;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k) {
        Role role = role_of(m, k);
        if (!keep.count(role)) {
            drop.insert(k);
            continue;
        }
        if (role != Role::Probe && role != Role::Inner) continue;
        int e = -1;
        for (const auto& cr : m.roles)
            if (cr.component == k) e = cr.edge;
        int c = role == Role::Probe ? a[e] : (*b)[e];
        d.components[k].decoration = Decoration::colored(c);
        bool loop = !edge_in_vertex(m.spine, e);
        if (loop && c == 0) drop.insert(k);
        if (!loop) {
            (role == Role::Probe ? probe_parts : inner_parts).push_back(k);
            if (c != 0) (role == Role::Probe ? probe_all_zero : inner_all_zero) = false;
        }
    }
    // A graph whose edges are all colored 0 is the empty skein.
    if (probe_all_zero)
        for (int k : probe_parts) drop.insert(k);
    if (inner_all_zero)
        for (int k : inner_parts) drop.insert(k);
    return remove_components(d, drop);
}

int surgery_signature(const MarkedTemplate& m) {
    std::vector<int> comps;
    for (const auto& cr : m.roles)
        if (cr.role == Role::Surgery) comps.push_back(cr.component);
    std::sort(comps.begin(), comps.end());
    return linking_matrix(m.diagram, comps).signature;
}

const Json& require(const Json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw ParseError(path + "." + key + ": missing");
    return j.at(key);
}

int get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
    return j.get<int>();
}

}  // namespace

void validate_spine(const Spine& s) {
    std::vector<std::string> issues;
    if (s.edges < 0) issues.push_back("negative edge count");
    std::vector<int> uses(std::max(s.edges, 0), 0);
    for (size_t i = 0; i < s.vertices.size(); ++i)
        for (int e : s.vertices[i]) {
            if (e < 0 || e >= s.edges)
                issues.push_back("spine vertex " + std::to_string(i) + " names edge " + std::to_string(e));
            else
                ++uses[e];
        }
    for (int e = 0; e < s.edges; ++e)
        if (uses[e] != 0 && uses[e] != 2)
            issues.push_back("spine edge " + std::to_string(e) + " has " + std::to_string(uses[e]) + " ends");
    if (!issues.empty()) throw ValidationError(issues);
}

std::vector<Coloring> enumerate_basis(const Spine& s, int r) {
    validate_spine(s);
    std::vector<Coloring> out;
    Coloring a(s.edges, 0);
    const int top = r - 2;
    while (true) {
        bool ok = true;
        for (const auto& v : s.vertices)
            if (!admissible(a[v[0]], a[v[1]], a[v[2]], r)) ok = false;
        if (ok) out.push_back(a);
        int i = s.edges - 1;
        while (i >= 0 && a[i] == top) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
    }
    return out;
}

Role role_of(const MarkedTemplate& m, int component) {
    for (const auto& cr : m.roles)
        if (cr.component == component) return cr.role;
    return Role::Passive;
}

const char* role_name(Role r) {
    switch (r) {
        case Role::Surgery: return "surgery";
        case Role::Marking: return "marking";
        case Role::Probe: return "probe";
        case Role::Inner: return "inner";
        case Role::Passive: return "passive";
    }
    return "passive";
}

void validate_template(const MarkedTemplate& m) {
    validate_spine(m.spine);
    std::vector<std::string> issues;
    if (m.genus < 0) issues.push_back("negative genus");
    auto topo = analyze(m.diagram);
    const int n = static_cast<int>(m.diagram.components.size());
    std::set<int> seen;
    std::vector<int> probes(m.spine.edges, 0), inners(m.spine.edges, 0);
    for (const auto& cr : m.roles) {
        std::string where = "role of component " + std::to_string(cr.component);
        if (cr.component < 0 || cr.component >= n) {
            issues.push_back(where + ": no such component");
            continue;
        }
        if (!seen.insert(cr.component).second) issues.push_back(where + ": listed twice");
        const auto& c = m.diagram.components[cr.component];
        bool omega = c.decoration.is_omega();
        if ((cr.role == Role::Surgery || cr.role == Role::Marking) && !omega)
            issues.push_back(where + ": surgery and marking curves carry Omega");
        if (cr.role == Role::Probe || cr.role == Role::Inner) {
            if (omega) issues.push_back(where + ": probe and inner edges cannot carry Omega");
            if (cr.edge < 0 || cr.edge >= m.spine.edges) {
                issues.push_back(where + ": bad spine edge " + std::to_string(cr.edge));
                continue;
            }
            bool loop = !edge_in_vertex(m.spine, cr.edge);
            if (loop != static_cast<bool>(topo.component_closed[cr.component]))
                issues.push_back(where + ": loop edges are closed components, graph edges open ones");
            ++(cr.role == Role::Probe ? probes : inners)[cr.edge];
        }
    }
    int with_inner = 0;
    for (int e = 0; e < m.spine.edges; ++e) {
        if (probes[e] != 1) issues.push_back("spine edge " + std::to_string(e) + " needs exactly one probe component");
        if (inners[e] > 1) issues.push_back("spine edge " + std::to_string(e) + " has several inner components");
        with_inner += inners[e];
    }
    if (with_inner != 0 && with_inner != m.spine.edges) issues.push_back("inner copy covers only part of the spine");
    if (!issues.empty()) throw ValidationError(issues);
}

LinkDiagram instantiate(const MarkedTemplate& m, const Coloring& a, int r) {
    check_coloring(m.spine, a, r);
    return colored_copy(m, a, nullptr, {Role::Surgery, Role::Marking, Role::Probe, Role::Passive});
}

CycNum pairing(const MarkedTemplate& m, const Coloring& a, const Coloring& b, const Level& level,
               const EvalOptions& options) {
    check_coloring(m.spine, a, level.r());
    check_coloring(m.spine, b, level.r());
    if (std::none_of(m.roles.begin(), m.roles.end(), [](const ComponentRole& cr) { return cr.role == Role::Inner; }))
        throw ValidationError({"template has no inner copy of the spine"});
    return evaluate_bracket(colored_copy(m, a, &b, {Role::Marking, Role::Probe, Role::Inner}), level, options);
}

CycNum basis_unit(const MarkedTemplate& m, const Coloring& a, const Level& level, const EvalOptions& options) {
    CycNum p = pairing(m, a, a, level, options);
    CycNum u = p / omega_x(level).pow(m.genus);
    if (!u.is_integral() || !is_unit(u))
        throw ConsistencyError("self-pairing is not X^" + std::to_string(m.genus) + " times a unit");
    return u;
}

PartitionVector expand_in_basis(const MarkedTemplate& m, const Level& level, const EvalOptions& options) {
    validate_template(m);
    PartitionVector pv;
    pv.r = level.r();
    pv.genus = m.genus;
    pv.sigma = surgery_signature(m);
    CycNum norm_factor = kappa(level).pow(-pv.sigma);
    for (const auto& a : enumerate_basis(m.spine, level.r())) {
        CycNum u = basis_unit(m, a, level, options);
        CycNum v = norm_factor * evaluate_bracket(instantiate(m, a, level.r()), level, options) / u;
        if (!v.is_integral()) {
            std::string s;
            for (int c : a) s += (s.empty() ? "" : ",") + std::to_string(c);
            throw ConsistencyError("coefficient for coloring (" + s + ") is not integral");
        }
        pv.entries.emplace_back(a, v);
        pv.units.push_back(u);
    }
    return pv;
}

CycNum wrt(const SurgeryPresentation& s, const Level& level, const EvalOptions& options) {
    int sigma = linking_matrix(s.diagram).signature;
    return kappa(level).pow(-sigma) * evaluate_bracket(s.diagram, level, options);
}

CycNum turaev_viro(const SurgeryPresentation& s, const Level& level, const EvalOptions& options) {
    CycNum z = wrt(s, level, options);
    return z * z.conjugate();
}

std::vector<int> lens_framings(long long p, long long q) {
    if (p <= 0) throw ValidationError({"p must be positive"});
    if (std::gcd(p, q) != 1) throw ValidationError({"p,q must be coprime"});
    if (q < 0 || q >= p) {
        if (!(p == 1 && q == 0)) throw ValidationError({"need 0 < q < p"});
    }
    std::vector<int> out;
    while (q != 0) {
        long long a = (p + q - 1) / q;
        out.push_back(static_cast<int>(a));
        long long next = a * q - p;
        p = q;
        q = next;
    }
    return out;
}

SurgeryPresentation lens_presentation(long long p, long long q) {
    return {fixtures::chain(lens_framings(p, q), Decoration::omega())};
}

PartitionVector glue_contract(const PartitionVector& a, const PartitionVector& b) {
    if (a.r != b.r) throw LevelMismatch(a.r, b.r);
    if (a.genus != b.genus || a.entries.size() != b.entries.size())
        throw ValidationError({"partition vectors are over different markings"});
    if (a.units.size() != a.entries.size()) throw ValidationError({"pairing units missing"});
    Level level = make_level(a.r);
    CycNum sum(level);
    for (size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].first != b.entries[i].first)
            throw ValidationError({"partition vectors list different colorings"});
        sum += a.entries[i].second * b.entries[i].second * a.units[i];
    }
    PartitionVector out;
    out.r = a.r;
    out.genus = 0;
    out.sigma = a.sigma + b.sigma;
    out.entries.emplace_back(Coloring{}, sum * omega_x(level).pow(-a.genus));
    out.units.push_back(CycNum::from_int(level, 1));
    return out;
}

std::optional<int> kappa_exponent(const CycNum& x, const CycNum& y) {
    const Level& level = x.level();
    CycNum k = kappa(level), p = y;
    for (int e = 0; e < level.order(); ++e) {
        if (p == x) return e;
        p *= k;
    }
    return std::nullopt;
}

Json to_json(const PartitionVector& pv) {
    Json j;
    j["level"] = pv.r;
    j["genus"] = pv.genus;
    j["scale"] = "X^-" + std::to_string(pv.genus);
    j["sigma"] = pv.sigma;
    Json es = Json::array();
    for (const auto& [a, v] : pv.entries) es.push_back({{"coloring", a}, {"value", to_json(v)}});
    j["entries"] = es;
    return j;
}

Json to_json(const MarkedTemplate& m) {
    Json j;
    j["genus"] = m.genus;
    Json vs = Json::array();
    for (const auto& v : m.spine.vertices) vs.push_back(v);
    j["spine"] = {{"edges", m.spine.edges}, {"vertices", vs}};
    j["diagram"] = to_json(m.diagram);
    Json rs = Json::array();
    for (const auto& cr : m.roles) {
        Json r = {{"component", cr.component}, {"role", role_name(cr.role)}};
        if (cr.role == Role::Probe || cr.role == Role::Inner) r["edge"] = cr.edge;
        rs.push_back(r);
    }
    j["roles"] = rs;
    return j;
}

MarkedTemplate template_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("$: expected an object");
    MarkedTemplate m;
    m.genus = get_int(require(j, "genus", "$"), "$.genus");
    const auto& sj = require(j, "spine", "$");
    if (!sj.is_object()) throw ParseError("$.spine: expected an object");
    m.spine.edges = get_int(require(sj, "edges", "$.spine"), "$.spine.edges");
    m.spine.vertices.clear();
    if (sj.contains("vertices")) {
        const auto& vs = sj.at("vertices");
        if (!vs.is_array()) throw ParseError("$.spine.vertices: expected an array");
        for (size_t i = 0; i < vs.size(); ++i) {
            std::string p = "$.spine.vertices[" + std::to_string(i) + "]";
            if (!vs[i].is_array() || vs[i].size() != 3) throw ParseError(p + ": expected 3 edge ids");
            std::array<int, 3> v{};
            for (int s = 0; s < 3; ++s) v[s] = get_int(vs[i][s], p + "[" + std::to_string(s) + "]");
            m.spine.vertices.push_back(v);
        }
    }
    m.diagram = diagram_from_json(require(j, "diagram", "$"));
    if (j.contains("roles")) {
        const auto& rs = j.at("roles");
        if (!rs.is_array()) throw ParseError("$.roles: expected an array");
        for (size_t i = 0; i < rs.size(); ++i) {
            std::string p = "$.roles[" + std::to_string(i) + "]";
            if (!rs[i].is_object()) throw ParseError(p + ": expected an object");
            ComponentRole cr;
            cr.component = get_int(require(rs[i], "component", p), p + ".component");
            const auto& rj = require(rs[i], "role", p);
            std::string name = rj.is_string() ? rj.get<std::string>() : "";
            static const std::map<std::string, Role> names = {{"surgery", Role::Surgery},
                                                              {"marking", Role::Marking},
                                                              {"probe", Role::Probe},
                                                              {"inner", Role::Inner},
                                                              {"passive", Role::Passive}};
            auto it = names.find(name);
            if (it == names.end()) throw ParseError(p + ".role: expected surgery, marking, probe, inner or passive");
            cr.role = it->second;
            if (rs[i].contains("edge")) cr.edge = get_int(rs[i].at("edge"), p + ".edge");
            m.roles.push_back(cr);
        }
    }
    return m;
}

MarkedTemplate parse_template(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return template_from_json(j);
}

}  // namespace skein
