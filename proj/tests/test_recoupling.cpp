#include <cmath>

#include "doctest.h"
#include "skein/bracket.hpp"
#include "skein/errors.hpp"
#include "skein/fixtures.hpp"
#include "skein/recoupling.hpp"

using namespace skein;

TEST_CASE("quantized integers") {
    auto l3 = make_level(3);
    CHECK(quantized_integer(l3, 0).is_zero());
    CHECK(quantized_integer(l3, 1).is_one());
    CHECK(quantized_integer(l3, 2).is_one());
    for (int r : {3, 5, 7, 11}) {
        auto l = make_level(r);
        CHECK(quantized_integer(l, r).is_zero());
        for (int n = 1; n < r; ++n) {
            CHECK(quantized_integer(l, -n) == -quantized_integer(l, n));
            CHECK(is_unit(quantized_integer(l, n)));
        }
        // [n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})
        for (int n = 0; n < 2 * r; ++n) {
            auto num = CycNum::a_power(l, 2 * n) - CycNum::a_power(l, -2 * n);
            auto den = CycNum::a_power(l, 2) - CycNum::a_power(l, -2);
            CHECK(quantized_integer(l, n) == num / den);
        }
    }
}

TEST_CASE("delta and mu") {
    for (int r : {3, 5, 7}) {
        auto l = make_level(r);
        CHECK(delta(l, 0).is_one());
        CHECK(mu(l, 0).is_one());
        CHECK(delta(l, 1) == loop_value(l));
        CHECK_THROWS(delta(l, r - 1));
        CHECK_THROWS(mu(l, -1));
    }
}

TEST_CASE("X: square, integrality, numeric value") {
    for (int r : {3, 5, 7, 11}) {
        auto l = make_level(r);
        const auto& X = omega_x(l);
        CycNum s(l);
        for (int c = 0; c <= r - 2; ++c) s += quantized_integer(l, c + 1) * quantized_integer(l, c + 1);
        CHECK(X * X == s);
        CHECK(X.is_integral());
        const double pi = std::acos(-1.0);
        auto z = numeric_embed(X);
        CHECK(std::abs(z.real() - std::sqrt(r / 2.0) / std::sin(pi / r)) < 1e-9);
        CHECK(std::abs(z.imag()) < 1e-9);
    }
    auto l3 = make_level(3);
    CHECK(omega_x(l3) * omega_x(l3) == CycNum::from_int(l3, 2));
}

TEST_CASE("kappa") {
    auto l3 = make_level(3);
    CHECK(kappa(l3) == -CycNum::u_power(l3, 9));
    // -u^9 (u^3 - u^9) = 1 - u^6
    CHECK(-CycNum::u_power(l3, 9) * (CycNum::u_power(l3, 3) - CycNum::u_power(l3, 9)) ==
          CycNum::from_int(l3, 1) - CycNum::u_power(l3, 6));
    for (int r : {3, 5, 7}) {
        auto l = make_level(r);
        const auto& k = kappa(l);
        CHECK(k.is_integral());
        CHECK(abs(norm(k)) == 1);
        CHECK(std::abs(std::abs(numeric_embed(k)) - 1.0) < 1e-9);
        CHECK(is_unit(k * k.conjugate()));
        // Omega on a +1 framed unknot, as a kink and as a framing offset.
        CHECK(evaluate_bracket(fixtures::kink(1, Decoration::omega()), l) == k);
        CHECK(evaluate_bracket(fixtures::unknot(Decoration::omega(), 1), l) == k);
        CHECK(evaluate_bracket(fixtures::unknot(Decoration::omega(), -1), l) == k.conjugate());
    }
}

TEST_CASE("theta closed form against the diagram") {
    for (int r : {3, 5, 7}) {
        auto l = make_level(r);
        for (int a = 0; a <= r - 2; ++a)
            for (int b = 0; b <= r - 2; ++b)
                for (int c = 0; c <= r - 2; ++c) {
                    if (!admissible(a, b, c, r)) {
                        CHECK_THROWS(theta(l, a, b, c));
                        continue;
                    }
                    CycNum t = theta(l, a, b, c);
                    CHECK(abs(norm(t)) == 1);
                    if (r <= 7) CHECK(evaluate_bracket(fixtures::theta_graph(a, b, c), l) == t);
                }
        for (int a = 0; a <= r - 2; ++a) CHECK(theta(l, a, 0, a) == delta(l, a));
        CHECK(theta(l, 1, 1, 0) == loop_value(l));
    }
}

TEST_CASE("fusion expansion") {
    auto l5 = make_level(5);
    auto e00 = fusion_expand(l5, 0, 0);
    REQUIRE(e00.size() == 1);
    CHECK(e00[0].first == 0);
    CHECK(e00[0].second.is_one());
    auto e10 = fusion_expand(l5, 1, 0);
    REQUIRE(e10.size() == 1);
    CHECK(e10[0].first == 1);
    CHECK(e10[0].second.is_one());
    auto l3 = make_level(3);
    auto e11 = fusion_expand(l3, 1, 1);
    REQUIRE(e11.size() == 1);
    CHECK(e11[0].first == 0);
    CHECK_THROWS(fusion_expand(l5, 4, 0));
}

TEST_CASE("fusion identity on closed diagrams at r=5") {
    auto l = make_level(5);
    for (int kind = 0; kind < 3; ++kind)
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                for (int d = 1; d <= 3; ++d) {
                    if (kind == 0 && d > 1) continue;
                    auto fc = fixtures::fusion_case(kind, a, b, d, 5);
                    CycNum lhs = evaluate_bracket(fc.parallel, l);
                    CycNum rhs(l);
                    auto coeffs = fusion_expand(l, a, b);
                    REQUIRE(coeffs.size() == fc.fused.size());
                    for (size_t i = 0; i < coeffs.size(); ++i) {
                        REQUIRE(coeffs[i].first == fc.fused[i].first);
                        rhs += coeffs[i].second * evaluate_bracket(fc.fused[i].second, l);
                    }
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("a strand through an Omega-bounded sphere vanishes") {
    for (int r : {3, 5}) {
        auto l = make_level(r);
        for (int a = 1; a <= r - 2; ++a)
            for (int b = 0; b <= r - 2; ++b) {
                // The ring encircles only the a-circle; the b-circle stays outside.
                auto d = fixtures::fusion_case(2, a, b, 1, r).parallel;
                d.components.back().decoration = Decoration::omega();
                CHECK(evaluate_bracket(d, l).is_zero());
            }
    }
}

TEST_CASE("level data is shared") {
    auto l = make_level(5);
    CHECK(&level_data(l) == &level_data(make_level(5)));
    CHECK(level_data(l).delta.size() == 4);
}
