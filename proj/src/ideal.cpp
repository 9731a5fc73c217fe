#include "skein/ideal.hpp"

#include <boost/integer/common_factor.hpp>

#include "skein/errors.hpp"
#include "skein/recoupling.hpp"

namespace skein {

namespace {

using Row = std::vector<Integer>;

Row coefficients(const CycNum& x) {
    Row v(x.level().degree(), 0);
    const auto& n = x.numer();
    for (size_t i = 0; i < n.size() && i < v.size(); ++i) v[i] = n[i];
    return v;
}

Integer mod_pos(const Integer& a, const Integer& m) {
    Integer r = a % m;
    return r < 0 ? r + m : r;
}

// Extended gcd: s*a + t*b = g >= 0.
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    s = s0;
    t = t0;
}

// Hermite normal form of the span of rows, given that d * Z^n lies in it.
std::vector<Row> hnf_mod(std::vector<Row> rows, const Integer& d, int n) {
    for (auto& r : rows)
        for (auto& x : r) x = mod_pos(x, d);
    std::vector<Row> out;
    for (int j = 0; j < n; ++j) {
        Row p(n, 0);
        p[j] = d;
        for (auto& v : rows) {
            if (v[j] == 0) continue;
            Integer g, s, t;
            ext_gcd(p[j], v[j], g, s, t);
            Integer a = p[j] / g, b = v[j] / g;
            for (int k = j; k < n; ++k) {
                Integer pk = s * p[k] + t * v[k];
                Integer vk = a * v[k] - b * p[k];
                p[k] = pk;
                v[k] = vk;
            }
            for (int k = j + 1; k < n; ++k) {
                p[k] = mod_pos(p[k], d);
                v[k] = mod_pos(v[k], d);
            }
        }
        for (int k = j + 1; k < n; ++k) p[k] = mod_pos(p[k], d);
        out.push_back(p);
        std::vector<Row> rest;
        for (auto& v : rows) {
            bool zero = true;
            for (int k = j + 1; k < n && zero; ++k) zero = v[k] == 0;
            if (!zero) rest.push_back(std::move(v));
        }
        rows = std::move(rest);
    }
    // Reduce above the pivots, left to right.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            Integer q = (out[i][j] - mod_pos(out[i][j], out[j][j])) / out[j][j];
            if (q != 0)
                for (int k = j; k < n; ++k) out[i][k] -= q * out[j][k];
        }
    return out;
}

bool in_lattice(const std::vector<Row>& h, Row x) {
    if (h.empty()) {
        for (const auto& c : x)
            if (c != 0) return false;
        return true;
    }
    for (size_t j = 0; j < h.size(); ++j) {
        if (x[j] % h[j][j] != 0) return false;
        Integer q = x[j] / h[j][j];
        if (q != 0)
            for (size_t k = j; k < x.size(); ++k) x[k] -= q * h[j][k];
    }
    return true;
}

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::integer::gcd(a, b) * b; }

}  // namespace

IdealLattice::IdealLattice(const Level& level) : level_(level) {}

bool IdealLattice::is_trivial() const {
    if (hnf_.empty()) return false;
    for (size_t i = 0; i < hnf_.size(); ++i)
        for (size_t j = 0; j < hnf_.size(); ++j)
            if (hnf_[i][j] != (i == j ? denominator_ : Integer(0))) return false;
    return true;
}

Integer IdealLattice::index() const {
    if (hnf_.empty()) return 0;
    Integer p = 1;
    for (size_t i = 0; i < hnf_.size(); ++i) p *= hnf_[i][i];
    return p;
}

bool IdealLattice::operator==(const IdealLattice& o) const {
    return level_ == o.level_ && denom_scale_ == o.denom_scale_ && denominator_ == o.denominator_ && hnf_ == o.hnf_;
}

IdealLattice ideal_from_generators(const Level& level, const std::vector<CycNum>& gs) {
    IdealLattice I(level);
    const int n = level.degree();
    std::vector<Row> rows;
    Integer d = 0;
    for (const auto& g : gs) {
        if (g.level() != level) throw LevelMismatch(g.level().r(), level.r());
        if (!g.is_integral()) throw NotIntegral("ideal generator " + g.to_string() + " is not integral");
        if (g.is_zero()) continue;
        Integer nm = abs(norm(g));
        d = d == 0 ? nm : Integer(boost::integer::gcd(d, nm));
        for (int j = 0; j < n; ++j) rows.push_back(coefficients(g.times_u_power(j)));
    }
    if (d == 0) return I;
    I.hnf_ = hnf_mod(std::move(rows), d, n);
    return I;
}

IdealLattice ideal_from_partition_vector(const PartitionVector& pv) {
    Level level = make_level(pv.r);
    std::vector<CycNum> gs;
    for (const auto& [a, v] : pv.entries) {
        if (!v.is_integral()) throw NotIntegral("partition vector entry " + v.to_string() + " is not integral");
        gs.push_back(v);
    }
    return ideal_from_generators(level, gs);
}

std::vector<CycNum> basis_elements(const IdealLattice& I) {
    std::vector<CycNum> out;
    for (const auto& row : I.hnf()) out.push_back(CycNum::from_coefficients(I.level(), row, I.denominator()));
    return out;
}

bool contains(const IdealLattice& I, const CycNum& x) {
    if (x.level() != I.level()) throw LevelMismatch(x.level().r(), I.level().r());
    CycNum y = x.scaled(I.denominator());
    if (!y.is_integral()) return false;
    return in_lattice(I.hnf(), coefficients(y));
}

bool subset(const IdealLattice& I, const IdealLattice& J) {
    if (I.level() != J.level()) throw LevelMismatch(I.level().r(), J.level().r());
    if (I.denom_scale() != J.denom_scale())
        throw ScaleMismatch("ideals carry X^-" + std::to_string(I.denom_scale()) + " and X^-" +
                            std::to_string(J.denom_scale()));
    for (const auto& b : basis_elements(I))
        if (!contains(J, b)) return false;
    return true;
}

bool equal(const IdealLattice& I, const IdealLattice& J) {
    if (I.denom_scale() != J.denom_scale())
        throw ScaleMismatch("ideals carry X^-" + std::to_string(I.denom_scale()) + " and X^-" +
                            std::to_string(J.denom_scale()));
    return I == J;
}

bool closed_under_u(const IdealLattice& I) {
    for (const auto& b : basis_elements(I))
        if (!contains(I, b.times_u_power(1))) return false;
    return true;
}

IdealLattice scale_by_inverse_X(const IdealLattice& I, int g) {
    if (g < 0) throw ValidationError({"scale must be non-negative"});
    if (g == 0 || I.is_zero()) {
        IdealLattice out = I;
        if (I.is_zero()) {
            out.denom_scale_ = 0;
            out.denominator_ = 1;
        }
        return out;
    }
    CycNum xg = level_data(I.level()).X_inverse.pow(g);
    std::vector<CycNum> ys;
    Integer N = 1;
    for (const auto& b : basis_elements(I)) {
        ys.push_back(b * xg);
        N = lcm_int(N, ys.back().denom());
    }
    for (auto& y : ys) y = y.scaled(N);
    IdealLattice out = ideal_from_generators(I.level(), ys);
    out.denominator_ = N;
    out.denom_scale_ = N == 1 ? 0 : I.denom_scale() + g;
    return out;
}

Json to_json(const IdealLattice& I) {
    Json j;
    j["level"] = I.level().r();
    j["denom_scale"] = I.denom_scale();
    j["denominator"] = integer_to_json(I.denominator());
    Json h = Json::array();
    for (const auto& row : I.hnf()) {
        Json rj = Json::array();
        for (const auto& x : row) rj.push_back(integer_to_json(x));
        h.push_back(rj);
    }
    j["hnf"] = h;
    j["index"] = integer_to_json(I.index());
    j["trivial"] = I.is_trivial();
    j["zero"] = I.is_zero();
    return j;
}

}  // namespace skein
