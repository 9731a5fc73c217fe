#pragma once

// Exact arithmetic in Z[u] and Q(u), u a primitive 8r-th root of unity.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace skein {

using Integer = boost::multiprecision::cpp_int;
using Json = nlohmann::ordered_json;

class Level {
public:
    static Level make(int r);

    int r() const { return data_->r; }
    int order() const { return 8 * data_->r; }
    int degree() const { return data_->degree; }
    // Monic Phi_{8r}, lowest coefficient first.
    const std::vector<Integer>& modulus() const { return data_->modulus; }
    // u^k reduced mod Phi_{8r}, as a dense coefficient vector of length degree().
    const std::vector<long long>& power(long long k) const;
    // k in [1, 8r) with gcd(k, 8r) = 1.
    const std::vector<int>& galois_exponents() const { return data_->galois; }

    bool operator==(const Level& o) const { return data_->r == o.data_->r; }
    bool operator!=(const Level& o) const { return !(*this == o); }

private:
    struct Data {
        int r = 0;
        int degree = 0;
        std::vector<Integer> modulus;
        std::vector<std::vector<long long>> powers;
        std::vector<int> galois;
    };
    explicit Level(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

inline Level make_level(int r) { return Level::make(r); }

// Exact polynomial arithmetic over Z, lowest coefficient first. Exposed for tests.
namespace poly {
std::vector<Integer> trim(std::vector<Integer> p);
std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b);
// Exact division; throws if b does not divide a.
std::vector<Integer> divide_exact(const std::vector<Integer>& a, const std::vector<Integer>& b);
std::vector<Integer> cyclotomic(int n);
}  // namespace poly

class CycNum {
public:
    explicit CycNum(const Level& level);

    static CycNum from_int(const Level& level, const Integer& n);
    static CycNum from_rational(const Level& level, const Integer& num, const Integer& den);
    static CycNum u_power(const Level& level, long long k);
    // A = u^2, so A^k = u^{2k}.
    static CycNum a_power(const Level& level, long long k) { return u_power(level, 2 * k); }
    // Coefficients may be longer than degree(); they are reduced.
    static CycNum from_coefficients(const Level& level, std::vector<Integer> numer,
                                    const Integer& denom = 1);

    const Level& level() const { return level_; }
    const std::vector<Integer>& numer() const { return numer_; }
    const Integer& denom() const { return denom_; }

    bool is_zero() const;
    bool is_integral() const { return denom_ == 1; }
    bool is_one() const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o);

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

    CycNum times_u_power(long long k) const;
    CycNum scaled(const Integer& n) const;
    CycNum divided(const Integer& n) const;
    CycNum pow(long long e) const;
    CycNum inverse() const;
    // u -> u^k for gcd(k, 8r) = 1.
    CycNum galois(long long k) const;
    CycNum conjugate() const { return galois(-1); }

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void canonicalize();
    void check_level(const CycNum& o) const;

    Level level_;
    std::vector<Integer> numer_;
    Integer denom_;
};

// Determinant of multiplication by a on the power basis. Requires a integral.
Integer norm(const CycNum& a);
bool is_unit(const CycNum& a);

// Evaluation at u = exp(2 pi i / 8r).
std::complex<double> numeric_embed(const CycNum& a);

Json integer_to_json(const Integer& n);
Integer integer_from_json(const Json& j);
Json to_json(const CycNum& a);
CycNum cycnum_from_json(const Json& j);

}  // namespace skein
