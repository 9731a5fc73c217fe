#include "skein/recoupling.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "skein/errors.hpp"

namespace skein {

CycNum quantized_integer(const Level& level, long long n) {
    if (n == 0) return CycNum(level);
    if (n < 0) return -quantized_integer(level, -n);
    CycNum s(level);
    for (long long k = 0; k < n; ++k) s += CycNum::a_power(level, 2 * (n - 1 - 2 * k));
    return s;
}

CycNum loop_value(const Level& level) { return -(CycNum::a_power(level, 2) + CycNum::a_power(level, -2)); }

namespace {

void check_color(const Level& level, int c) {
    if (c < 0 || c > level.r() - 2)
        throw Error("color " + std::to_string(c) + " out of range 0.." + std::to_string(level.r() - 2));
}

CycNum qfactorial(const Level& level, int n) {
    CycNum f = CycNum::from_int(level, 1);
    for (int k = 2; k <= n; ++k) f *= quantized_integer(level, k);
    return f;
}

// Euler's criterion.
int legendre(int k, int p) {
    long long b = k % p, e = (p - 1) / 2, m = 1;
    while (e > 0) {
        if (e & 1) m = m * b % p;
        b = b * b % p;
        e >>= 1;
    }
    if (m == 0) return 0;
    return m == 1 ? 1 : -1;
}

std::unique_ptr<LevelData> compute(const Level& level) {
    const int r = level.r();
    auto d = std::make_unique<LevelData>(LevelData{level, CycNum(level), CycNum(level), CycNum(level), {}, {}, {}});
    for (int c = 0; c <= r - 2; ++c) {
        d->delta.push_back(delta(level, c));
        d->mu.push_back(mu(level, c));
        d->mu_inverse.push_back(mu(level, c).inverse());
    }
    CycNum sum_sq(level);
    for (int c = 0; c <= r - 2; ++c) {
        CycNum q = quantized_integer(level, c + 1);
        sum_sq += q * q;
    }
    // sqrt(-2r) / (q - q^{-1}) with q = A^2: sqrt(2) = u^r + u^{-r}, sqrt(+-r) from the Gauss sum over u^8.
    CycNum gauss(level);
    for (int k = 1; k < r; ++k) gauss += CycNum::u_power(level, 8 * k).scaled(legendre(k, r));
    CycNum root2 = CycNum::u_power(level, r) + CycNum::u_power(level, -r);
    CycNum base = root2 * gauss / (CycNum::u_power(level, 4) - CycNum::u_power(level, -4));
    bool found = false;
    for (int j = 0; j < 4 && !found; ++j) {
        CycNum cand = base.times_u_power(2 * r * j);
        if (cand * cand != sum_sq) continue;
        auto z = numeric_embed(cand);
        if (z.real() > 0 && std::abs(z.imag()) < 1e-9) {
            d->X = cand;
            found = true;
        }
    }
    if (!found) throw ConsistencyError("no positive square root of sum [c+1]^2 found");
    if (!d->X.is_integral()) throw ConsistencyError("X is not integral");
    d->X_inverse = d->X.inverse();
    CycNum k(level);
    for (int c = 0; c <= r - 2; ++c) {
        CycNum q = quantized_integer(level, c + 1);
        k += (c % 2 ? -(q * q) : q * q) * CycNum::a_power(level, c * c + 2 * c);
    }
    d->kappa = k * d->X_inverse;
    if (!d->kappa.is_integral()) throw ConsistencyError("kappa is not integral");
    return d;
}

}  // namespace

CycNum delta(const Level& level, int c) {
    check_color(level, c);
    CycNum q = quantized_integer(level, c + 1);
    return c % 2 ? -q : q;
}

CycNum mu(const Level& level, int c) {
    check_color(level, c);
    CycNum a = CycNum::a_power(level, static_cast<long long>(c) * c + 2 * c);
    return c % 2 ? -a : a;
}

CycNum theta(const Level& level, int a, int b, int c) {
    if (!admissible(a, b, c, level.r()))
        throw Error("inadmissible triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    int i = (a + b - c) / 2, j = (b + c - a) / 2, k = (a + c - b) / 2;
    CycNum num = qfactorial(level, i + j + k + 1) * qfactorial(level, i) * qfactorial(level, j) * qfactorial(level, k);
    CycNum den = qfactorial(level, i + j) * qfactorial(level, j + k) * qfactorial(level, i + k);
    CycNum t = num / den;
    return (i + j + k) % 2 ? -t : t;
}

std::vector<std::pair<int, CycNum>> fusion_expand(const Level& level, int a, int b) {
    check_color(level, a);
    check_color(level, b);
    std::vector<std::pair<int, CycNum>> out;
    for (int c = 0; c <= level.r() - 2; ++c) {
        if (!admissible(a, b, c, level.r())) continue;
        out.emplace_back(c, delta(level, c) / theta(level, a, b, c));
    }
    return out;
}

const LevelData& level_data(const Level& level) {
    static std::mutex mu_;
    static std::map<int, std::unique_ptr<LevelData>> cache;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache.find(level.r());
        if (it != cache.end()) return *it->second;
    }
    auto d = compute(level);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache.emplace(level.r(), std::move(d));
    return *it->second;
}

}  // namespace skein
