#include "skein/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "skein/errors.hpp"

namespace skein {

namespace poly {

std::vector<Integer> trim(std::vector<Integer> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Integer> out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return trim(std::move(out));
}

std::vector<Integer> divide_exact(const std::vector<Integer>& a0, const std::vector<Integer>& b0) {
    auto a = trim(a0);
    auto b = trim(b0);
    if (b.empty()) throw DivisionByZero();
    if (a.empty()) return {};
    if (a.size() < b.size()) throw ConsistencyError("polynomial division is not exact");
    std::vector<Integer> q(a.size() - b.size() + 1);
    const Integer& lead = b.back();
    for (size_t shift = q.size(); shift-- > 0;) {
        size_t i = shift + b.size() - 1;
        if (a[i] == 0) continue;
        if (a[i] % lead != 0) throw ConsistencyError("polynomial division is not exact");
        Integer c = a[i] / lead;
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    if (!trim(a).empty()) throw ConsistencyError("polynomial division is not exact");
    return trim(std::move(q));
}

namespace {
int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}
}  // namespace

std::vector<Integer> cyclotomic(int n) {
    std::vector<Integer> num{1}, den{1};
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        int m = mobius(n / d);
        if (m == 0) continue;
        std::vector<Integer> f(d + 1);
        f[0] = -1;
        f[d] = 1;
        if (m > 0)
            num = mul(num, f);
        else
            den = mul(den, f);
    }
    return divide_exact(num, den);
}

}  // namespace poly

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

long long mod(long long a, long long m) {
    long long x = a % m;
    return x < 0 ? x + m : x;
}

// Reduce p in place modulo a monic polynomial of degree d; result has length d.
template <class T>
void reduce_in_place(std::vector<T>& p, const std::vector<Integer>& modulus, int d) {
    for (size_t i = p.size(); i-- > static_cast<size_t>(d);) {
        if (p[i] == 0) continue;
        T c = p[i];
        size_t base = i - d;
        for (int j = 0; j < d; ++j) {
            if (modulus[j] != 0) p[base + j] -= c * static_cast<T>(modulus[j]);
        }
        p[i] = 0;
    }
    p.resize(d);
}

}  // namespace

Level Level::make(int r) {
    if (r <= 1) throw InvalidLevel("r must be an odd prime: r = " + std::to_string(r) + " is not prime");
    if (r % 2 == 0) throw InvalidLevel("r must be an odd prime: r = " + std::to_string(r) + " is even");
    if (!is_prime(r))
        throw InvalidLevel("r must be an odd prime: r = " + std::to_string(r) + " is composite");

    static std::mutex mu;
    static std::map<int, std::shared_ptr<const Data>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(r);
    if (it != cache.end()) return Level(it->second);

    auto d = std::make_shared<Data>();
    d->r = r;
    d->modulus = poly::cyclotomic(8 * r);
    d->degree = static_cast<int>(d->modulus.size()) - 1;
    const int n = 8 * r;
    d->powers.resize(n);
    for (int k = 0; k < n; ++k) {
        std::vector<long long> p(std::max(k + 1, d->degree), 0);
        p[k] = 1;
        reduce_in_place(p, d->modulus, d->degree);
        d->powers[k] = std::move(p);
    }
    for (int k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) d->galois.push_back(k);
    cache.emplace(r, d);
    return Level(d);
}

const std::vector<long long>& Level::power(long long k) const {
    return data_->powers[mod(k, order())];
}

CycNum::CycNum(const Level& level) : level_(level), numer_(level.degree()), denom_(1) {}

CycNum CycNum::from_int(const Level& level, const Integer& n) {
    CycNum x(level);
    x.numer_[0] = n;
    return x;
}

CycNum CycNum::from_rational(const Level& level, const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero();
    CycNum x(level);
    x.numer_[0] = num;
    x.denom_ = den;
    x.canonicalize();
    return x;
}

CycNum CycNum::u_power(const Level& level, long long k) {
    CycNum x(level);
    const auto& p = level.power(k);
    for (int i = 0; i < level.degree(); ++i) x.numer_[i] = p[i];
    return x;
}

CycNum CycNum::from_coefficients(const Level& level, std::vector<Integer> numer,
                                 const Integer& denom) {
    if (denom == 0) throw DivisionByZero();
    CycNum x(level);
    if (static_cast<int>(numer.size()) < level.degree()) numer.resize(level.degree());
    reduce_in_place(numer, level.modulus(), level.degree());
    x.numer_ = std::move(numer);
    x.denom_ = denom;
    x.canonicalize();
    return x;
}

void CycNum::canonicalize() {
    if (denom_ < 0) {
        denom_ = -denom_;
        for (auto& c : numer_) c = -c;
    }
    if (denom_ == 1) return;
    Integer g = denom_;
    for (const auto& c : numer_) {
        if (g == 1) break;
        if (c != 0) g = boost::multiprecision::gcd(g, c);
    }
    if (is_zero()) {
        denom_ = 1;
        return;
    }
    if (g != 1) {
        denom_ /= g;
        for (auto& c : numer_) c /= g;
    }
}

void CycNum::check_level(const CycNum& o) const {
    if (level_ != o.level_) throw LevelMismatch(level_.r(), o.level_.r());
}

bool CycNum::is_zero() const {
    for (const auto& c : numer_)
        if (c != 0) return false;
    return true;
}

bool CycNum::is_one() const {
    if (denom_ != 1 || numer_[0] != 1) return false;
    for (size_t i = 1; i < numer_.size(); ++i)
        if (numer_[i] != 0) return false;
    return true;
}

CycNum CycNum::operator-() const {
    CycNum x = *this;
    for (auto& c : x.numer_) c = -c;
    return x;
}

CycNum& CycNum::operator+=(const CycNum& o) {
    check_level(o);
    if (denom_ == o.denom_) {
        for (size_t i = 0; i < numer_.size(); ++i) numer_[i] += o.numer_[i];
    } else {
        for (size_t i = 0; i < numer_.size(); ++i) numer_[i] = numer_[i] * o.denom_ + o.numer_[i] * denom_;
        denom_ *= o.denom_;
    }
    canonicalize();
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum& CycNum::operator*=(const CycNum& o) {
    check_level(o);
    const int d = level_.degree();
    std::vector<Integer> prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
        if (numer_[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (o.numer_[j] != 0) prod[i + j] += numer_[i] * o.numer_[j];
        }
    }
    reduce_in_place(prod, level_.modulus(), d);
    numer_ = std::move(prod);
    denom_ *= o.denom_;
    canonicalize();
    return *this;
}

CycNum& CycNum::operator/=(const CycNum& o) {
    check_level(o);
    return *this *= o.inverse();
}

CycNum CycNum::times_u_power(long long k) const {
    const int d = level_.degree();
    std::vector<Integer> out(d);
    for (int i = 0; i < d; ++i) {
        if (numer_[i] == 0) continue;
        const auto& p = level_.power(i + k);
        for (int j = 0; j < d; ++j)
            if (p[j] != 0) out[j] += numer_[i] * p[j];
    }
    CycNum x(level_);
    x.numer_ = std::move(out);
    x.denom_ = denom_;
    return x;
}

CycNum CycNum::scaled(const Integer& n) const {
    CycNum x = *this;
    for (auto& c : x.numer_) c *= n;
    x.canonicalize();
    return x;
}

CycNum CycNum::divided(const Integer& n) const {
    if (n == 0) throw DivisionByZero();
    CycNum x = *this;
    x.denom_ *= n;
    x.canonicalize();
    return x;
}

CycNum CycNum::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum result = from_int(level_, 1);
    CycNum base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

CycNum CycNum::galois(long long k) const {
    const int n = level_.order();
    long long kk = mod(k, n);
    if (std::gcd(kk, static_cast<long long>(n)) != 1)
        throw Error("galois exponent must be coprime to 8r");
    const int d = level_.degree();
    std::vector<Integer> out(d);
    for (int i = 0; i < d; ++i) {
        if (numer_[i] == 0) continue;
        const auto& p = level_.power(static_cast<long long>(i) * kk);
        for (int j = 0; j < d; ++j)
            if (p[j] != 0) out[j] += numer_[i] * p[j];
    }
    CycNum x(level_);
    x.numer_ = std::move(out);
    x.denom_ = denom_;
    return x;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero();
    // a^{-1} = prod_{k != 1} sigma_k(a) / N(a), with N(a) rational.
    CycNum integral = *this;
    integral.denom_ = 1;
    CycNum prod = from_int(level_, 1);
    for (int k : level_.galois_exponents()) {
        if (k == 1) continue;
        prod *= integral.galois(k);
    }
    CycNum full = prod * integral;
    for (int i = 1; i < level_.degree(); ++i)
        if (full.numer_[i] != 0) throw ConsistencyError("galois norm is not rational");
    Integer n = full.numer_[0];
    return prod.scaled(denom_).divided(n);
}

bool CycNum::operator==(const CycNum& o) const {
    return level_ == o.level_ && denom_ == o.denom_ && numer_ == o.numer_;
}

std::string CycNum::to_string() const {
    std::ostringstream os;
    bool first = true;
    os << "(";
    for (size_t i = 0; i < numer_.size(); ++i) {
        const Integer& c = numer_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Integer a = c < 0 ? Integer(-c) : c;
        if (i == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "u";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    os << ")";
    if (denom_ != 1) os << "/" << denom_;
    return os.str();
}

Integer norm(const CycNum& a) {
    if (!a.is_integral()) throw NotIntegral("norm requires an integral element");
    const int d = a.level().degree();
    // Column i holds the coefficients of a * u^i.
    std::vector<std::vector<Integer>> m(d, std::vector<Integer>(d));
    for (int i = 0; i < d; ++i) {
        CycNum col = a.times_u_power(i);
        for (int j = 0; j < d; ++j) m[j][i] = col.numer()[j];
    }
    // Bareiss fraction-free elimination.
    Integer sign = 1, prev = 1;
    for (int k = 0; k < d; ++k) {
        if (m[k][k] == 0) {
            int p = k + 1;
            while (p < d && m[p][k] == 0) ++p;
            if (p == d) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i) {
            for (int j = k + 1; j < d; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[d - 1][d - 1];
}

bool is_unit(const CycNum& a) {
    if (!a.is_integral()) return false;
    Integer n = norm(a);
    return n == 1 || n == -1;
}

std::complex<double> numeric_embed(const CycNum& a) {
    const long double pi = 3.141592653589793238462643383279502884L;
    const int n = a.level().order();
    long double re = 0, im = 0;
    for (size_t i = 0; i < a.numer().size(); ++i) {
        if (a.numer()[i] == 0) continue;
        long double c = a.numer()[i].convert_to<long double>();
        long double t = 2 * pi * static_cast<long double>(i) / n;
        re += c * std::cos(t);
        im += c * std::sin(t);
    }
    long double den = a.denom().convert_to<long double>();
    return {static_cast<double>(re / den), static_cast<double>(im / den)};
}

Json integer_to_json(const Integer& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
        return Json(n.convert_to<std::int64_t>());
    return Json(n.str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.empty()) throw ParseError("empty integer string");
        for (size_t i = 0; i < s.size(); ++i) {
            if (!(std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-')))
                throw ParseError("invalid integer string '" + s + "'");
        }
        return Integer(s);
    }
    throw ParseError("expected an integer");
}

Json to_json(const CycNum& a) {
    Json j;
    j["level"] = a.level().r();
    Json numer = Json::array();
    for (const auto& c : a.numer()) numer.push_back(integer_to_json(c));
    j["numer"] = numer;
    j["denom"] = integer_to_json(a.denom());
    return j;
}

CycNum cycnum_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("level") || !j.contains("numer"))
        throw ParseError("cyclotomic number needs fields level and numer");
    Level level = make_level(j.at("level").get<int>());
    std::vector<Integer> numer;
    for (const auto& c : j.at("numer")) numer.push_back(integer_from_json(c));
    Integer denom = j.contains("denom") ? integer_from_json(j.at("denom")) : Integer(1);
    if (denom <= 0) throw ParseError("denom must be positive");
    return CycNum::from_coefficients(level, std::move(numer), denom);
}

}  // namespace skein
