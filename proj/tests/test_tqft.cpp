#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "skein/errors.hpp"
#include "skein/fixtures.hpp"
#include "skein/recoupling.hpp"
#include "skein/templates.hpp"
#include "skein/tqft.hpp"

using namespace skein;

namespace {

CycNum one(const Level& l) { return CycNum::from_int(l, 1); }

SurgeryPresentation empty_presentation() { return {}; }

}  // namespace

TEST_CASE("basis enumeration") {
    CHECK(enumerate_basis(Spine::loop(), 3) == std::vector<Coloring>{{0}, {1}});
    CHECK(enumerate_basis(Spine::loop(), 5).size() == 4);
    CHECK(enumerate_basis(Spine::theta(), 3) == std::vector<Coloring>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    // Brute-force count of admissible triples as an oracle.
    for (int r : {5, 7}) {
        size_t n = 0;
        for (int a = 0; a <= r - 2; ++a)
            for (int b = 0; b <= r - 2; ++b)
                for (int c = 0; c <= r - 2; ++c)
                    if ((a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * r - 4) ++n;
        auto all = enumerate_basis(Spine::theta(), r);
        CHECK(all.size() == n);
        CHECK(std::is_sorted(all.begin(), all.end()));
    }
    CHECK_THROWS_AS(enumerate_basis(Spine{2, {{0, 1, 1}}}, 3), ValidationError);
    CHECK_THROWS_AS(enumerate_basis(Spine{1, {{0, 1, 2}}}, 3), ValidationError);
}

TEST_CASE("instantiate") {
    auto m = fixtures::solid_torus_template();
    validate_template(m);
    auto d0 = instantiate(m, {0}, 3);
    CHECK(d0.components.size() == 1);
    CHECK(d0.components[0].decoration.is_omega());
    auto d1 = instantiate(m, {1}, 3);
    CHECK(d1.components.size() == 2);
    CHECK(d1.components[0].decoration == Decoration::colored(1));
    CHECK_THROWS_AS(instantiate(m, {2}, 3), ValidationError);
    CHECK_THROWS_AS(instantiate(m, {0, 0}, 3), ValidationError);

    auto cm = fixtures::chain_mail_template();
    validate_template(cm);
    for (int r : {3, 5})
        for (const auto& a : enumerate_basis(cm.spine, r)) CHECK(validation_issues(instantiate(cm, a, r), make_level(r)).empty());
    auto d = instantiate(cm, {1, 1, 0}, 3);
    CHECK(d.vertices.size() == 2);
    CHECK_THROWS_AS(instantiate(cm, {1, 0, 0}, 3), ValidationError);
    // The all-zero graph is the empty skein.
    CHECK(instantiate(cm, {0, 0, 0}, 3).vertices.empty());
}

TEST_CASE("template validation") {
    auto m = fixtures::solid_torus_template(0);
    auto bad = m;
    bad.roles[0].edge = 3;
    CHECK_THROWS_AS(validate_template(bad), ValidationError);
    bad = m;
    bad.roles.pop_back();
    bad.roles.push_back({3, Role::Probe, 0});
    CHECK_THROWS_AS(validate_template(bad), ValidationError);
    bad = m;
    bad.roles[2].role = Role::Probe;
    bad.roles[2].edge = 0;
    CHECK_THROWS_AS(validate_template(bad), ValidationError);
}

TEST_CASE("pairing is diagonal with X^g units on the diagonal") {
    struct Case {
        MarkedTemplate m;
        int r;
    };
    std::vector<Case> cases = {{fixtures::solid_torus_template(), 3}, {fixtures::solid_torus_template(), 5},
                               {fixtures::chain_mail_template(), 3}};
    for (const auto& [m, r] : cases) {
        auto l = make_level(r);
        auto basis = enumerate_basis(m.spine, r);
        CycNum Xg = omega_x(l).pow(m.genus);
        for (const auto& a : basis)
            for (const auto& b : basis) {
                CycNum p = pairing(m, a, b, l);
                if (a != b) {
                    CHECK(p.is_zero());
                    continue;
                }
                CycNum u = p / Xg;
                CHECK(u.is_integral());
                CHECK(abs(norm(u)) == 1);
                if (a == Coloring(a.size(), 0)) CHECK(p == Xg);
            }
    }
    auto wrong = fixtures::solid_torus_template();
    wrong.genus = 2;
    CHECK_THROWS_AS(basis_unit(wrong, {0}, make_level(3)), ConsistencyError);
}

TEST_CASE("solid torus partition vectors") {
    for (int r : {3, 5, 7}) {
        auto l = make_level(r);
        auto self = expand_in_basis(fixtures::solid_torus_template(), l);
        REQUIRE(self.entries.size() == static_cast<size_t>(r - 1));
        CHECK(self.entries[0].second == omega_x(l));
        for (size_t i = 1; i < self.entries.size(); ++i) CHECK(self.entries[i].second.is_zero());

        auto swapped = expand_in_basis(fixtures::solid_torus_template(0), l);
        for (const auto& [a, v] : swapped.entries) CHECK(v.is_integral());
        CHECK(is_unit(swapped.entries[0].second));
    }
}

TEST_CASE("chain-mail partition vector at r=3") {
    auto l = make_level(3);
    auto pv = expand_in_basis(fixtures::chain_mail_template(), l);
    REQUIRE(pv.entries.size() == 4);
    // Every entry is 2X times a unit, or zero; at least one is nonzero.
    CycNum two_x = omega_x(l).scaled(2);
    int nonzero = 0;
    for (const auto& [a, v] : pv.entries) {
        CHECK(v.is_integral());
        if (v.is_zero()) continue;
        ++nonzero;
        CycNum q = v / two_x;
        CHECK(q.is_integral());
        CHECK(is_unit(q));
    }
    CHECK(nonzero > 0);
}

TEST_CASE("wrt anchors") {
    for (int r : {3, 5, 7}) {
        auto l = make_level(r);
        CHECK(wrt(empty_presentation(), l).is_one());
        CHECK(wrt({fixtures::unknot(Decoration::omega())}, l) == omega_x(l));
        CHECK(wrt({fixtures::unknot(Decoration::omega(), 1)}, l).is_one());
        CHECK(wrt({fixtures::unknot(Decoration::omega(), -1)}, l).is_one());
        CHECK(wrt(lens_presentation(2, 1), l).is_zero());
        CHECK(wrt(lens_presentation(1, 0), l).is_one());
    }
}

TEST_CASE("turaev-viro values") {
    for (int r : {3, 5}) {
        auto l = make_level(r);
        CHECK(turaev_viro(empty_presentation(), l).is_one());
        CycNum x = omega_x(l);
        CHECK(turaev_viro({fixtures::unknot(Decoration::omega())}, l) == x * x);
        CHECK(turaev_viro(lens_presentation(2, 1), l).is_zero());
        for (auto [p, q] : {std::pair{3, 1}, {5, 1}, {5, 2}, {4, 1}, {7, 3}}) {
            CycNum t = turaev_viro(lens_presentation(p, q), l);
            CHECK(t == t.conjugate());
            for (int k : l.galois_exponents()) CHECK(numeric_embed(t.galois(k)).real() > -1e-9);
        }
    }
    CHECK(turaev_viro({fixtures::unknot(Decoration::omega())}, make_level(3)) == CycNum::from_int(make_level(3), 2));
}

TEST_CASE("lens presentations") {
    CHECK(lens_framings(2, 1) == std::vector<int>{2});
    CHECK(lens_framings(3, 1) == std::vector<int>{3});
    CHECK(lens_framings(5, 2) == std::vector<int>{3, 2});
    CHECK(lens_framings(1, 0).empty());
    CHECK_THROWS_WITH_AS(lens_framings(4, 2), "p,q must be coprime", ValidationError);
    CHECK_THROWS_AS(lens_framings(0, 1), ValidationError);
    CHECK_THROWS_AS(lens_framings(5, 7), ValidationError);
    // Folding the continued fraction back gives p/q, and the linking matrix has determinant p.
    using Q = boost::multiprecision::cpp_rational;
    for (int p = 2; p <= 23; ++p)
        for (int q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto a = lens_framings(p, q);
            Q v = a.back();
            for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i) v = Q(a[i]) - 1 / v;
            CHECK(v == Q(p, q));
            auto lm = linking_matrix(lens_presentation(p, q).diagram);
            // Tridiagonal determinant recursion.
            long long d0 = 1, d1 = lm.matrix[0][0];
            for (size_t i = 1; i < a.size(); ++i) {
                long long d2 = lm.matrix[i][i] * d1 - lm.matrix[i][i - 1] * lm.matrix[i - 1][i] * d0;
                d0 = d1;
                d1 = d2;
            }
            CHECK(d1 == p);
        }
}

TEST_CASE("lens ideals: zero for p = 2, nonunit when r divides p") {
    for (int r : {3, 5, 7}) CHECK(wrt(lens_presentation(2, 1), make_level(r)).is_zero());
    auto l5 = make_level(5);
    for (int q = 1; q < 5; ++q) {
        CycNum z = wrt(lens_presentation(5, q), l5);
        CHECK((z.is_zero() || abs(norm(z)) > 1));
    }
}

TEST_CASE("surgery moves preserve wrt up to a kappa power") {
    for (int r : {3, 5, 7}) {
        auto l = make_level(r);
        LinkDiagram unlink =
            disjoint_union(fixtures::unknot(Decoration::omega(), 1), fixtures::unknot(Decoration::omega(), -1));
        auto k1 = kappa_exponent(wrt({unlink}, l), wrt(empty_presentation(), l));
        REQUIRE(k1);
        CHECK(*k1 == 0);
        auto [before, after] = fixtures::handle_slide_pair();
        auto k2 = kappa_exponent(wrt({after}, l), wrt({before}, l));
        REQUIRE(k2);
        CHECK(*k2 == 0);
    }
    auto l = make_level(5);
    CycNum x = omega_x(l);
    CHECK(kappa_exponent(kappa(l).pow(3) * x, x) == 3);
    CHECK(!kappa_exponent(x.scaled(2), x));
}

TEST_CASE("gluing contraction reproduces closed invariants") {
    for (int r : {3, 5}) {
        auto l = make_level(r);
        auto self = expand_in_basis(fixtures::solid_torus_template(), l);
        auto swapped = expand_in_basis(fixtures::solid_torus_template(0), l);
        auto twisted = expand_in_basis(fixtures::solid_torus_template(2), l);
        auto value = [](const PartitionVector& pv) {
            REQUIRE(pv.entries.size() == 1);
            CHECK(pv.genus == 0);
            return pv.entries[0].second;
        };
        // Two solid tori with the same meridian: S^1 x S^2.
        CHECK(kappa_exponent(value(glue_contract(self, self)), wrt({fixtures::unknot(Decoration::omega())}, l)));
        // Meridian to longitude: S^3.
        CHECK(kappa_exponent(value(glue_contract(self, swapped)), one(l)));
        // Twisted by 2: L(2,1).
        CHECK(value(glue_contract(swapped, twisted)).is_zero());
        CHECK(wrt(lens_presentation(2, 1), l).is_zero());
    }
    auto a = expand_in_basis(fixtures::solid_torus_template(), make_level(3));
    auto b = expand_in_basis(fixtures::solid_torus_template(), make_level(5));
    CHECK_THROWS_AS(glue_contract(a, b), LevelMismatch);
}

TEST_CASE("template and partition vector JSON") {
    for (const auto& m : {fixtures::solid_torus_template(), fixtures::solid_torus_template(3), fixtures::chain_mail_template()}) {
        auto back = template_from_json(to_json(m));
        CHECK(back == m);
        CHECK(parse_template(to_json(m).dump()) == m);
    }
    auto pv = expand_in_basis(fixtures::solid_torus_template(), make_level(3));
    Json j = to_json(pv);
    CHECK(j["level"] == 3);
    CHECK(j["genus"] == 1);
    CHECK(j["scale"] == "X^-1");
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0]["coloring"] == Json::array({0}));
    CHECK(cycnum_from_json(j["entries"][0]["value"]) == omega_x(make_level(3)));
    CHECK_THROWS_AS(parse_template("{\"genus\": 1}"), ParseError);
    CHECK_THROWS_AS(parse_template("{\"genus\": 1, \"spine\": {\"edges\": 1}, \"diagram\": {\"components\": []}, "
                                   "\"roles\": [{\"component\": 0, \"role\": \"probe!\"}]}"),
                    ParseError);
    CHECK_THROWS_AS(parse_template("{"), ParseError);
}
