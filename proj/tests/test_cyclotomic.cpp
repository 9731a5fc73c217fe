#include <cmath>
#include <random>

#include "doctest.h"
#include "skein/cyclotomic.hpp"
#include "skein/errors.hpp"

using namespace skein;

namespace {

CycNum random_element(const Level& L, std::mt19937& rng, int bound, bool integral = true) {
    std::uniform_int_distribution<int> coef(-bound, bound);
    std::vector<Integer> v(L.degree());
    for (auto& c : v) c = coef(rng);
    Integer den = integral ? 1 : std::uniform_int_distribution<int>(1, 7)(rng);
    return CycNum::from_coefficients(L, v, den);
}

// Reference: evaluate sum of c_i x^i at complex x.
std::complex<double> eval_poly(const std::vector<Integer>& p, std::complex<double> x) {
    std::complex<double> acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i].convert_to<double>();
    return acc;
}

}  // namespace

TEST_CASE("Phi_24 matches hand expansion") {
    Level L = make_level(3);
    CHECK(L.degree() == 8);
    std::vector<Integer> expect{1, 0, 0, 0, -1, 0, 0, 0, 1};
    CHECK(L.modulus() == expect);
    CHECK(make_level(5).degree() == 16);
}

TEST_CASE("Phi_8r has the sparse alternating form") {
    for (int r : {3, 5, 7, 11, 13}) {
        Level L = make_level(r);
        std::vector<Integer> expect(4 * (r - 1) + 1);
        for (int j = 0; j < r; ++j) expect[4 * j] = (j % 2 == 0) ? 1 : -1;
        CHECK(L.modulus() == expect);
    }
}

TEST_CASE("Phi_8r divides x^8r - 1 and no proper x^d - 1") {
    for (int r : {3, 5, 7}) {
        Level L = make_level(r);
        int n = 8 * r;
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            std::vector<Integer> f(d + 1);
            f[0] = -1;
            f[d] = 1;
            bool divides = true;
            try {
                poly::divide_exact(f, L.modulus());
            } catch (const ConsistencyError&) {
                divides = false;
            }
            CHECK(divides == (d == n));
        }
    }
}

TEST_CASE("invalid levels have distinct diagnostics") {
    std::vector<std::string> msgs;
    for (int r : {4, 1, 9}) {
        try {
            make_level(r);
            FAIL("accepted r=" << r);
        } catch (const InvalidLevel& e) {
            std::string m = e.what();
            CHECK(m.find("r must be an odd prime") != std::string::npos);
            msgs.push_back(m);
        }
    }
    CHECK(msgs[0] != msgs[1]);
    CHECK(msgs[1] != msgs[2]);
    CHECK(msgs[0].find("even") != std::string::npos);
    CHECK(msgs[2].find("composite") != std::string::npos);
    CHECK_THROWS_AS(make_level(2), InvalidLevel);
}

TEST_CASE("powers of u at r=3") {
    Level L = make_level(3);
    CHECK(CycNum::u_power(L, 12) == CycNum::from_int(L, -1));
    CHECK(CycNum::u_power(L, 8) == CycNum::u_power(L, 4) - CycNum::from_int(L, 1));
    CycNum u = CycNum::u_power(L, 1);
    CHECK(u * CycNum::u_power(L, 23) == CycNum::from_int(L, 1));
    CHECK(u.pow(-1) == CycNum::u_power(L, 23));
}

TEST_CASE("u is primitive") {
    for (int r : {3, 5, 7}) {
        Level L = make_level(r);
        CycNum u = CycNum::u_power(L, 1);
        CycNum p = CycNum::from_int(L, 1);
        for (int k = 1; k <= 8 * r; ++k) {
            p *= u;
            if (k < 8 * r)
                CHECK_FALSE(p.is_one());
            else
                CHECK(p.is_one());
        }
    }
}

TEST_CASE("ring axioms on random elements") {
    std::mt19937 rng(7);
    for (int r : {3, 5, 7}) {
        Level L = make_level(r);
        for (int t = 0; t < 10; ++t) {
            auto a = random_element(L, rng, 9, false);
            auto b = random_element(L, rng, 9, false);
            auto c = random_element(L, rng, 9, false);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == CycNum(L));
            if (!a.is_zero()) CHECK(a * a.inverse() == CycNum::from_int(L, 1));
        }
    }
}

TEST_CASE("canonical form reduces content") {
    Level L = make_level(3);
    auto x = CycNum::from_coefficients(L, {2, 4, 6}, 4);
    CHECK(x.denom() == 2);
    CHECK(x.numer()[0] == 1);
    CHECK(x.numer()[2] == 3);
    auto z = CycNum::from_coefficients(L, {0}, 5);
    CHECK(z.denom() == 1);
    CHECK(z.is_zero());
    auto n = CycNum::from_rational(L, 3, -6);
    CHECK(n == CycNum::from_rational(L, -1, 2));
}

TEST_CASE("mixed levels and division by zero rejected") {
    Level a = make_level(3), b = make_level(5);
    CHECK_THROWS_AS(CycNum::from_int(a, 1) + CycNum::from_int(b, 1), LevelMismatch);
    CHECK_THROWS_AS(CycNum::from_int(a, 1) / CycNum(a), DivisionByZero);
}

TEST_CASE("conjugation") {
    Level L = make_level(3);
    CycNum u = CycNum::u_power(L, 1);
    CHECK(u.conjugate() == CycNum::u_power(L, 23));
    CycNum s = CycNum::u_power(L, 3) - CycNum::u_power(L, 9);
    CHECK(s.conjugate() == CycNum::u_power(L, 21) - CycNum::u_power(L, 15));
    CHECK(s.conjugate() == s);
    CHECK(std::abs(numeric_embed(s) - std::sqrt(2.0)) < 1e-12);
    std::mt19937 rng(11);
    for (int r : {3, 5, 7}) {
        Level M = make_level(r);
        for (int t = 0; t < 5; ++t) {
            auto a = random_element(M, rng, 5, false);
            CHECK(a.conjugate().conjugate() == a);
            CHECK(std::abs(numeric_embed(a.conjugate()) - std::conj(numeric_embed(a))) < 1e-10);
        }
        CHECK(CycNum::from_rational(M, 3, 7).conjugate() == CycNum::from_rational(M, 3, 7));
    }
}

TEST_CASE("norm against the product of complex embeddings") {
    std::mt19937 rng(3);
    for (int r : {3, 5}) {
        Level L = make_level(r);
        for (int t = 0; t < 6; ++t) {
            auto a = random_element(L, rng, 2);
            Integer n = norm(a);
            std::complex<double> prod = 1;
            for (int k : L.galois_exponents()) {
                auto z = std::polar(1.0, 2 * M_PI * k / L.order());
                prod *= eval_poly(a.numer(), z);
            }
            CHECK(std::abs(prod.imag()) < 1e-6 * (1 + std::abs(prod.real())));
            CHECK(std::abs(prod.real() - n.convert_to<double>()) < 1e-6 * (1 + std::abs(prod.real())));
        }
    }
}

TEST_CASE("norm values and multiplicativity") {
    Level L = make_level(3);
    CHECK(norm(CycNum::from_int(L, 1)) == 1);
    CHECK(norm(CycNum::from_int(L, 2)) == 256);
    for (int k = 0; k < 24; ++k) CHECK(is_unit(CycNum::u_power(L, k)));
    CHECK_THROWS_AS(norm(CycNum::from_rational(L, 1, 2)), NotIntegral);
    std::mt19937 rng(5);
    for (int r : {3, 5, 7}) {
        Level M = make_level(r);
        for (int t = 0; t < 4; ++t) {
            auto a = random_element(M, rng, 3);
            auto b = random_element(M, rng, 3);
            CHECK(norm(a * b) == norm(a) * norm(b));
        }
    }
}

TEST_CASE("numeric embedding is a homomorphism") {
    std::mt19937 rng(13);
    for (int r : {3, 5, 7}) {
        Level L = make_level(r);
        CHECK(std::abs(numeric_embed(CycNum::from_int(L, 1)) - 1.0) < 1e-15);
        for (int t = 0; t < 10; ++t) {
            auto a = random_element(L, rng, 4, false);
            auto b = random_element(L, rng, 4, false);
            CHECK(std::abs(numeric_embed(a * b) - numeric_embed(a) * numeric_embed(b)) < 1e-10 * (1 + std::abs(numeric_embed(a * b))));
            CHECK(std::abs(numeric_embed(a + b) - numeric_embed(a) - numeric_embed(b)) < 1e-10);
        }
    }
}

TEST_CASE("json round trip, big coefficients as strings") {
    Level L = make_level(5);
    std::vector<Integer> v(16);
    v[3] = Integer("123456789012345678901234567890");
    v[5] = -4;
    auto a = CycNum::from_coefficients(L, v, 7);
    Json j = to_json(a);
    CHECK(j["numer"][3].is_string());
    CHECK(j["numer"][5] == -4);
    CHECK(std::string(j.begin().key()) == "level");
    CHECK(cycnum_from_json(j) == a);
    CHECK(cycnum_from_json(Json::parse(j.dump())) == a);
}
