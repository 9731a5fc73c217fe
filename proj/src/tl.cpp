#include "skein/temperley_lieb.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "skein/errors.hpp"
#include "skein/recoupling.hpp"

namespace skein {

bool is_planar_matching(const Matching& m) {
    const int n2 = static_cast<int>(m.size());
    if (n2 % 2) return false;
    const int n = n2 / 2;
    // Walk the boundary circle: bottom left to right, then top right to left.
    std::vector<int> pos(n2);
    for (int i = 0; i < n; ++i) pos[i] = i;
    for (int i = 0; i < n; ++i) pos[n + i] = n2 - 1 - i;
    std::vector<int> stack;
    std::vector<int> at(n2);
    for (int p = 0; p < n2; ++p) at[pos[p]] = p;
    for (int k = 0; k < n2; ++k) {
        int p = at[k];
        if (m[p] >= n2 || m[m[p]] != p || m[p] == p) return false;
        if (!stack.empty() && stack.back() == m[p])
            stack.pop_back();
        else
            stack.push_back(p);
    }
    return stack.empty();
}

TLElement TLElement::identity(const Level& level, int n) {
    Matching m(2 * n);
    for (int i = 0; i < n; ++i) {
        m[i] = static_cast<std::uint8_t>(n + i);
        m[n + i] = static_cast<std::uint8_t>(i);
    }
    return basis(level, m, CycNum::from_int(level, 1));
}

TLElement TLElement::cup_cap(const Level& level, int n, int i) {
    if (i < 0 || i + 1 >= n) throw Error("cup_cap position out of range");
    TLElement id = identity(level, n);
    Matching m = id.terms_.begin()->first;
    m[i] = static_cast<std::uint8_t>(i + 1);
    m[i + 1] = static_cast<std::uint8_t>(i);
    m[n + i] = static_cast<std::uint8_t>(n + i + 1);
    m[n + i + 1] = static_cast<std::uint8_t>(n + i);
    return basis(level, m, CycNum::from_int(level, 1));
}

TLElement TLElement::basis(const Level& level, const Matching& m, const CycNum& coefficient) {
    if (!is_planar_matching(m)) throw Error("not a planar matching");
    TLElement e(level, static_cast<int>(m.size() / 2));
    e.add(m, coefficient);
    return e;
}

CycNum TLElement::coefficient(const Matching& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CycNum(level_) : it->second;
}

void TLElement::add(const Matching& m, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TLElement& TLElement::operator+=(const TLElement& o) {
    if (o.n_ != n_) throw Error("TL arity mismatch");
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

TLElement& TLElement::operator-=(const TLElement& o) {
    if (o.n_ != n_) throw Error("TL arity mismatch");
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

TLElement TLElement::scaled(const CycNum& c) const {
    TLElement out(level_, n_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

namespace {

// Stack x over y; returns the matching and the number of closed loops.
std::pair<Matching, int> compose_basis(const Matching& x, const Matching& y, int n) {
    // Nodes: y point p -> p; x point p -> 2n + p. x bottom i is glued to y top i.
    auto partner = [&](int node) -> int {
        if (node < 2 * n) return y[node];
        return 2 * n + x[node - 2 * n];
    };
    auto glue = [&](int node) -> int {
        if (node < 2 * n) return node >= n ? 2 * n + (node - n) : -1;
        int p = node - 2 * n;
        return p < n ? n + p : -1;
    };
    Matching out(2 * n);
    std::vector<char> seen(4 * n, 0);
    auto outer = [&](int node) -> int {  // result index of an exterior node, or -1
        if (node < n) return node;
        if (node >= 3 * n) return node - 2 * n;
        return -1;
    };
    for (int start : {0, 3 * n}) {
        for (int s = start; s < start + n; ++s) {
            if (seen[s]) continue;
            int cur = s;
            seen[cur] = 1;
            while (true) {
                int nxt = partner(cur);
                seen[nxt] = 1;
                int o = outer(nxt);
                if (o >= 0) {
                    out[outer(s)] = static_cast<std::uint8_t>(o);
                    out[o] = static_cast<std::uint8_t>(outer(s));
                    break;
                }
                cur = glue(nxt);
                seen[cur] = 1;
            }
        }
    }
    int loops = 0;
    for (int node = n; node < 2 * n; ++node) {
        if (seen[node]) continue;
        ++loops;
        int cur = node;
        while (!seen[cur]) {
            seen[cur] = 1;
            int nxt = partner(cur);
            seen[nxt] = 1;
            cur = glue(nxt);
        }
    }
    return {out, loops};
}

}  // namespace

TLElement tl_compose(const TLElement& x, const TLElement& y) {
    if (x.n() != y.n()) throw Error("TL arity mismatch in compose");
    if (x.level() != y.level()) throw LevelMismatch(x.level().r(), y.level().r());
    const int n = x.n();
    const Level& level = x.level();
    std::vector<CycNum> dpow{CycNum::from_int(level, 1)};
    TLElement out(level, n);
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            auto [m, loops] = compose_basis(mx, my, n);
            while (static_cast<int>(dpow.size()) <= loops) dpow.push_back(dpow.back() * loop_value(level));
            out.add(m, cx * cy * dpow[loops]);
        }
    }
    return out;
}

TLElement tl_tensor(const TLElement& x, const TLElement& y) {
    if (x.level() != y.level()) throw LevelMismatch(x.level().r(), y.level().r());
    const int n1 = x.n(), n2 = y.n(), n = n1 + n2;
    auto mapx = [&](int p) { return p < n1 ? p : n + (p - n1); };
    auto mapy = [&](int p) { return p < n2 ? n1 + p : n + n1 + (p - n2); };
    TLElement out(x.level(), n);
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            Matching m(2 * n);
            for (int p = 0; p < 2 * n1; ++p) m[mapx(p)] = static_cast<std::uint8_t>(mapx(mx[p]));
            for (int p = 0; p < 2 * n2; ++p) m[mapy(p)] = static_cast<std::uint8_t>(mapy(my[p]));
            out.add(m, cx * cy);
        }
    }
    return out;
}

CycNum trace_closure(const TLElement& x) {
    const int n = x.n();
    const Level& level = x.level();
    CycNum total(level);
    for (const auto& [m, c] : x.terms()) {
        std::vector<char> seen(2 * n, 0);
        int loops = 0;
        for (int p = 0; p < 2 * n; ++p) {
            if (seen[p]) continue;
            ++loops;
            int cur = p;
            while (!seen[cur]) {
                seen[cur] = 1;
                int q = m[cur];
                seen[q] = 1;
                cur = q < n ? q + n : q - n;  // closing arc
            }
        }
        total += c * loop_value(level).pow(loops);
    }
    return total;
}

const TLElement& jones_wenzl(const Level& level, int c) {
    if (c < 0 || c > level.r() - 2)
        throw Error("color " + std::to_string(c) + " out of range 0.." + std::to_string(level.r() - 2));
    static std::mutex mu;
    static std::map<int, std::vector<std::unique_ptr<TLElement>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& table = cache[level.r()];
    if (table.empty()) {
        table.push_back(std::make_unique<TLElement>(TLElement::identity(level, 0)));
        table.push_back(std::make_unique<TLElement>(TLElement::identity(level, 1)));
    }
    while (static_cast<int>(table.size()) <= c) {
        const int k = static_cast<int>(table.size());
        TLElement g = tl_tensor(*table.back(), TLElement::identity(level, 1));
        TLElement ge = tl_compose(g, TLElement::cup_cap(level, k, k - 2));
        TLElement corr = tl_compose(ge, g).scaled(quantized_integer(level, k - 1) / quantized_integer(level, k));
        g += corr;
        table.push_back(std::make_unique<TLElement>(std::move(g)));
    }
    return *table[c];
}

}  // namespace skein
