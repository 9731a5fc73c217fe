#include "skein/bracket.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "skein/errors.hpp"
#include "skein/recoupling.hpp"
#include "skein/temperley_lieb.hpp"

namespace skein {

namespace {

// Element of Z[x]/(x^N + 1), N = 4r, as (exponent in [0,N), coefficient).
using Sparse = std::vector<std::pair<int, Integer>>;

struct Term {
    Matching m;  // pairing of the tensor's slots
    int coef;    // index into Network::coefs
};

struct Tensor {
    std::vector<int> wires;  // one per slot
    std::vector<Term> terms;
};

struct Network {
    std::vector<Tensor> tensors;
    std::vector<Sparse> coefs;
    int wires = 0;
    int free_loops = 0;
    Integer denominator = 1;
};

Sparse monomial(long long e, int n) {
    long long m = ((e % (2 * n)) + 2 * n) % (2 * n);
    if (m >= n) return {{static_cast<int>(m - n), Integer(-1)}};
    return {{static_cast<int>(m), Integer(1)}};
}

Sparse sparse_mul(const Sparse& a, const Sparse& b, int n) {
    std::vector<Integer> acc(n);
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            int e = ea + eb;
            if (e >= n)
                acc[e - n] -= ca * cb;
            else
                acc[e] += ca * cb;
        }
    Sparse out;
    for (int i = 0; i < n; ++i)
        if (acc[i] != 0) out.emplace_back(i, acc[i]);
    return out;
}

struct UnionFind {
    std::vector<int> p;
    int add() {
        p.push_back(static_cast<int>(p.size()));
        return p.back();
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

class NetworkBuilder {
public:
    NetworkBuilder(const LinkDiagram& d, const DiagramTopology& topo, const std::vector<int>& colors,
                   const Level& level)
        : d_(d), topo_(topo), colors_(colors), level_(level), n_(4 * level.r()) {}

    Network build() {
        const int narcs = static_cast<int>(topo_.arcs.size());
        tail_.assign(narcs, {});
        head_.assign(narcs, {});
        std::vector<char> jw(narcs, 0);
        for (size_t i = 0; i < d_.components.size(); ++i)
            if (colors_[i] >= 2) jw[d_.components[i].arcs.front()] = 1;
        for (int a = 0; a < narcs; ++a) {
            if (topo_.arcs[a].component < 0) continue;
            int c = arc_color(a);
            bool free_loop = !topo_.arcs[a].tail.has_value();
            for (int k = 0; k < c; ++k) tail_[a].push_back(uf_.add());
            if (jw[a] && !free_loop)
                for (int k = 0; k < c; ++k) head_[a].push_back(uf_.add());
            else
                head_[a] = tail_[a];
        }
        crossing_ = monomial_coef(2);
        crossing_inv_ = monomial_coef(-2);
        for (size_t i = 0; i < d_.crossings.size(); ++i) add_crossing(static_cast<int>(i));
        for (size_t v = 0; v < d_.vertices.size(); ++v) add_vertex(static_cast<int>(v));
        for (int a = 0; a < narcs; ++a)
            if (jw[a]) add_projector(a);
        finish();
        return std::move(net_);
    }

private:
    int arc_color(int a) const { return colors_[topo_.arcs[a].component]; }

    int monomial_coef(long long e) {
        net_.coefs.push_back(monomial(e, n_));
        return static_cast<int>(net_.coefs.size()) - 1;
    }

    void add_tensor(std::vector<int> raw, std::vector<Term> terms) {
        Tensor t;
        t.wires = std::move(raw);
        t.terms = std::move(terms);
        net_.tensors.push_back(std::move(t));
    }

    void add_crossing(int i) {
        const auto& x = d_.crossings[i];
        const auto& info = topo_.crossings[i];
        const int a = x[0], b = x[1], c = x[2], dd = x[3];
        const int cu = arc_color(a), co = arc_color(b);
        const bool east = info.over_east;
        // useg[k][j]: under strand k between over rows j-1 and j.
        std::vector<std::vector<int>> useg(cu, std::vector<int>(co + 1));
        for (int k = 0; k < cu; ++k) {
            useg[k][0] = head_[a][k];
            useg[k][co] = tail_[c][k];
            for (int j = 1; j < co; ++j) useg[k][j] = uf_.add();
            if (co == 0) uf_.unite(head_[a][k], tail_[c][k]);
        }
        // oseg[m][x]: over strand m between under columns x-1 and x.
        std::vector<std::vector<int>> oseg(co, std::vector<int>(cu + 1));
        for (int m = 0; m < co; ++m) {
            oseg[m][0] = east ? head_[dd][m] : tail_[dd][m];
            oseg[m][cu] = east ? tail_[b][m] : head_[b][m];
            for (int k = 1; k < cu; ++k) oseg[m][k] = uf_.add();
            if (cu == 0) uf_.unite(east ? head_[dd][m] : tail_[dd][m], east ? tail_[b][m] : head_[b][m]);
        }
        for (int y = 0; y < co; ++y) {
            int m = east ? co - 1 - y : y;
            for (int k = 0; k < cu; ++k) {
                std::vector<int> w = {useg[k][y], oseg[m][k + 1], useg[k][y + 1], oseg[m][k]};
                add_tensor(w, {{Matching{1, 0, 3, 2}, crossing_}, {Matching{3, 2, 1, 0}, crossing_inv_}});
            }
        }
    }

    void add_vertex(int v) {
        const auto& vx = d_.vertices[v];
        std::array<std::vector<int>, 3> legs;
        std::array<int, 3> col{};
        for (int s = 0; s < 3; ++s) {
            int e = vx.edges[s];
            int c = arc_color(e);
            col[s] = c;
            Endpoint here{Endpoint::Kind::Vertex, v, s};
            const auto& info = topo_.arcs[e];
            if (info.tail && *info.tail == here) {
                for (int k = c - 1; k >= 0; --k) legs[s].push_back(tail_[e][k]);
            } else {
                for (int k = 0; k < c; ++k) legs[s].push_back(head_[e][k]);
            }
        }
        int i01 = (col[0] + col[1] - col[2]) / 2;
        int i12 = (col[1] + col[2] - col[0]) / 2;
        int i20 = (col[2] + col[0] - col[1]) / 2;
        for (int t = 0; t < i01; ++t) uf_.unite(legs[0][col[0] - 1 - t], legs[1][t]);
        for (int t = 0; t < i12; ++t) uf_.unite(legs[1][col[1] - 1 - t], legs[2][t]);
        for (int t = 0; t < i20; ++t) uf_.unite(legs[2][col[2] - 1 - t], legs[0][t]);
    }

    void add_projector(int a) {
        const int c = arc_color(a);
        const TLElement& f = jones_wenzl(level_, c);
        Integer den = 1;
        for (const auto& [m, v] : f.terms()) den = boost::multiprecision::lcm(den, v.denom());
        std::vector<Term> terms;
        for (const auto& [m, v] : f.terms()) {
            Sparse s;
            Integer scale = den / v.denom();
            for (size_t i = 0; i < v.numer().size(); ++i)
                if (v.numer()[i] != 0) s.emplace_back(static_cast<int>(i), v.numer()[i] * scale);
            net_.coefs.push_back(std::move(s));
            terms.push_back({m, static_cast<int>(net_.coefs.size()) - 1});
        }
        net_.denominator *= den;
        std::vector<int> w = tail_[a];
        w.insert(w.end(), head_[a].begin(), head_[a].end());
        add_tensor(w, std::move(terms));
    }

    void finish() {
        const int raw = static_cast<int>(uf_.p.size());
        std::vector<int> cls(raw, -1), refs;
        int next = 0;
        for (int w = 0; w < raw; ++w) {
            int root = uf_.find(w);
            if (cls[root] < 0) {
                cls[root] = next++;
                refs.push_back(0);
            }
        }
        for (auto& t : net_.tensors)
            for (auto& w : t.wires) {
                w = cls[uf_.find(w)];
                ++refs[w];
            }
        // Renumber so that only referenced wires get ids.
        std::vector<int> id(next, -1);
        int used = 0;
        for (int w = 0; w < next; ++w) {
            if (refs[w] == 0)
                ++net_.free_loops;
            else if (refs[w] == 2)
                id[w] = used++;
            else
                throw ConsistencyError("cabled wire has " + std::to_string(refs[w]) + " ends");
        }
        for (auto& t : net_.tensors)
            for (auto& w : t.wires) w = id[w];
        net_.wires = used;
    }

    const LinkDiagram& d_;
    const DiagramTopology& topo_;
    const std::vector<int>& colors_;
    Level level_;
    int n_;
    UnionFind uf_;
    std::vector<std::vector<int>> tail_, head_;
    int crossing_ = -1, crossing_inv_ = -1;
    Network net_;
};

// ---- contraction order ----

double catalan(int k) {
    double c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

struct OrderPlan {
    std::vector<int> order;
    int max_frontier = 0;
    double cost = 0;
};

OrderPlan greedy_order(const Network& net, int start, bool reverse_ties) {
    const int nt = static_cast<int>(net.tensors.size());
    std::vector<std::array<int, 2>> owners(net.wires, {-1, -1});
    for (int t = 0; t < nt; ++t)
        for (int w : net.tensors[t].wires) {
            auto& o = owners[w];
            (o[0] < 0 ? o[0] : o[1]) = t;
        }
    std::vector<int> open_slots(nt, 0);
    for (int t = 0; t < nt; ++t)
        for (int w : net.tensors[t].wires)
            if (owners[w][0] != owners[w][1]) ++open_slots[t];
    std::vector<int> shared(nt, 0);
    std::vector<char> done(nt, 0);
    OrderPlan plan;
    int frontier = 0;
    double states = 1;
    int cur = start;
    for (int step = 0; step < nt; ++step) {
        if (cur < 0) {
            for (int i = 0; i < nt; ++i) {
                int t = reverse_ties ? nt - 1 - i : i;
                if (!done[t]) {
                    cur = t;
                    break;
                }
            }
        }
        const Tensor& t = net.tensors[cur];
        done[cur] = 1;
        plan.order.push_back(cur);
        frontier += open_slots[cur] - 2 * shared[cur];
        for (int w : t.wires) {
            int other = owners[w][0] == cur ? owners[w][1] : owners[w][0];
            if (other != cur && !done[other]) ++shared[other];
        }
        double terms = static_cast<double>(t.terms.size());
        states = std::min(states * terms, catalan(frontier / 2));
        plan.cost += states * terms;
        plan.max_frontier = std::max(plan.max_frontier, frontier);
        // Next: smallest growth among tensors touching the frontier.
        int best = -1, best_delta = 0, best_shared = 0;
        for (int i = 0; i < nt; ++i) {
            int c = reverse_ties ? nt - 1 - i : i;
            if (done[c] || shared[c] == 0) continue;
            int delta = open_slots[c] - 2 * shared[c];
            if (best < 0 || delta < best_delta || (delta == best_delta && shared[c] > best_shared)) {
                best = c;
                best_delta = delta;
                best_shared = shared[c];
            }
        }
        cur = best;
    }
    return plan;
}

OrderPlan choose_order(const Network& net, SweepOrder how) {
    const int nt = static_cast<int>(net.tensors.size());
    if (nt == 0) return {};
    if (how == SweepOrder::Alternate) return greedy_order(net, nt - 1, true);
    std::vector<int> starts;
    for (int t = 0; t < nt; ++t)
        if (net.tensors[t].terms.size() > 2) starts.push_back(t);
    const int stride = std::max(1, nt / 48);
    for (int t = 0; t < nt; t += stride) starts.push_back(t);
    OrderPlan best;
    bool have = false;
    for (int s : starts) {
        OrderPlan p = greedy_order(net, s, false);
        if (!have || p.cost < best.cost || (p.cost == best.cost && p.max_frontier < best.max_frontier)) {
            best = std::move(p);
            have = true;
        }
    }
    return best;
}

// ---- sweep contraction ----

struct Overflow {};

using Key = unsigned __int128;

struct KeyHash {
    size_t operator()(Key k) const {
        std::uint64_t x = static_cast<std::uint64_t>(k) ^ (static_cast<std::uint64_t>(k >> 64) * 0x9E3779B97F4A7C15ull);
        x ^= x >> 31;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 29;
        return static_cast<size_t>(x);
    }
};

inline void madd(long long& d, long long a, long long b) {
    long long p;
    if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(d, p, &d)) throw Overflow{};
}
inline void madd(Integer& d, const Integer& a, const Integer& b) { d += a * b; }

template <class T>
T convert(const Integer& v);
template <>
long long convert<long long>(const Integer& v) {
    if (v > Integer(std::numeric_limits<long long>::max()) || v < Integer(std::numeric_limits<long long>::min()))
        throw Overflow{};
    return static_cast<long long>(v);
}
template <>
Integer convert<Integer>(const Integer& v) {
    return v;
}

template <class T>
struct Factor {
    std::vector<std::pair<int, T>> pos;  // (e, a): x^e * a, wraps with a sign flip
    std::vector<T> neg;
};

template <class T>
class Sweep {
public:
    Sweep(const Network& net, const Level& level) : net_(net), level_(level), n_(4 * level.r()) {
        const auto& mod = level.modulus();
        deg_ = static_cast<int>(mod.size()) - 1;
        for (int j = 0; j < deg_; ++j)
            if (mod[j] != 0) phi_.emplace_back(j, convert<T>(mod[j]));
        Sparse dl = monomial(4, n_);
        Sparse dinv = monomial(n_ - 4, n_);  // -A^{-2} = x^{N-4}
        delta_ = {{dl[0].first, -dl[0].second}, dinv[0]};
        std::sort(delta_.begin(), delta_.end());
    }

    std::vector<Integer> run(const std::vector<int>& order, EvalStats* stats) {
        std::vector<int> frontier;
        std::unordered_map<Key, std::uint32_t, KeyHash> index;
        std::vector<Key> keys{0};
        std::vector<T> pool(n_, T(0));
        pool[0] = T(1);
        std::uint64_t max_states = 1;
        for (int ti : order) {
            const Tensor& t = net_.tensors[ti];
            const int nf = static_cast<int>(frontier.size());
            const int ns = static_cast<int>(t.wires.size());
            std::vector<int> pos_of(net_.wires, -1);
            for (int i = 0; i < nf; ++i) pos_of[frontier[i]] = i;
            // outer links and the new frontier.
            std::vector<int> outer(nf + ns, -1), endpos(nf + ns, -1);
            std::vector<char> shared_f(nf, 0);
            std::vector<int> first_slot(net_.wires, -1);
            for (int s = 0; s < ns; ++s) {
                int w = t.wires[s];
                if (pos_of[w] >= 0) {
                    outer[nf + s] = pos_of[w];
                    outer[pos_of[w]] = nf + s;
                    shared_f[pos_of[w]] = 1;
                } else if (first_slot[w] >= 0) {
                    outer[nf + s] = nf + first_slot[w];
                    outer[nf + first_slot[w]] = nf + s;
                } else {
                    first_slot[w] = s;
                }
            }
            std::vector<int> next_frontier;
            for (int i = 0; i < nf; ++i)
                if (!shared_f[i]) next_frontier.push_back(frontier[i]);
            for (int s = 0; s < ns; ++s)
                if (outer[nf + s] < 0) next_frontier.push_back(t.wires[s]);
            std::sort(next_frontier.begin(), next_frontier.end());
            if (next_frontier.size() > 25) throw ResourceLimit("frontier too wide for state keys");
            {
                std::vector<int> npos(net_.wires, -1);
                for (size_t i = 0; i < next_frontier.size(); ++i) npos[next_frontier[i]] = static_cast<int>(i);
                for (int i = 0; i < nf; ++i)
                    if (!shared_f[i]) endpos[i] = npos[frontier[i]];
                for (int s = 0; s < ns; ++s)
                    if (outer[nf + s] < 0) endpos[nf + s] = npos[t.wires[s]];
            }
            const int nn = static_cast<int>(next_frontier.size());
            std::unordered_map<Key, std::uint32_t, KeyHash> next_index;
            std::vector<Key> next_keys;
            std::vector<T> next_pool;
            next_index.reserve(keys.size() * 2);
            std::vector<int> inner(nf + ns), mate(nn);
            std::vector<char> seen(nf + ns);
            for (size_t si = 0; si < keys.size(); ++si) {
                Key k = keys[si];
                for (int i = 0; i < nf; ++i) inner[i] = static_cast<int>((k >> (5 * i)) & 31);
                const T* src = &pool[si * n_];
                for (const Term& term : t.terms) {
                    for (int s = 0; s < ns; ++s) inner[nf + s] = nf + term.m[s];
                    std::fill(seen.begin(), seen.end(), 0);
                    for (int x = 0; x < nf + ns; ++x) {
                        if (seen[x] || outer[x] >= 0) continue;
                        int cur = x;
                        while (true) {
                            seen[cur] = 1;
                            int y = inner[cur];
                            seen[y] = 1;
                            if (outer[y] < 0) {
                                mate[endpos[x]] = endpos[y];
                                mate[endpos[y]] = endpos[x];
                                break;
                            }
                            cur = outer[y];
                        }
                    }
                    int loops = 0;
                    for (int x = 0; x < nf + ns; ++x) {
                        if (seen[x]) continue;
                        ++loops;
                        int cur = x;
                        while (!seen[cur]) {
                            seen[cur] = 1;
                            int y = inner[cur];
                            seen[y] = 1;
                            cur = outer[y];
                        }
                    }
                    Key nk = 0;
                    for (int i = 0; i < nn; ++i) nk |= static_cast<Key>(mate[i]) << (5 * i);
                    auto [it, inserted] = next_index.emplace(nk, static_cast<std::uint32_t>(next_keys.size()));
                    if (inserted) {
                        next_keys.push_back(nk);
                        next_pool.resize(next_pool.size() + n_, T(0));
                    }
                    T* dst = &next_pool[static_cast<size_t>(it->second) * n_];
                    const Factor<T>& f = factor(term.coef, loops);
                    for (size_t j = 0; j < f.pos.size(); ++j) {
                        const int e = f.pos[j].first;
                        const T& a = f.pos[j].second;
                        const T& na = f.neg[j];
                        for (int i = 0; i < n_ - e; ++i)
                            if (src[i] != 0) madd(dst[i + e], a, src[i]);
                        for (int i = n_ - e; i < n_; ++i)
                            if (src[i] != 0) madd(dst[i + e - n_], na, src[i]);
                    }
                }
            }
            // Reduce mod Phi and drop zero states.
            keys.clear();
            pool.clear();
            for (size_t si = 0; si < next_keys.size(); ++si) {
                T* p = &next_pool[si * n_];
                reduce(p);
                bool zero = true;
                for (int i = 0; i < deg_; ++i)
                    if (p[i] != 0) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                keys.push_back(next_keys[si]);
                pool.insert(pool.end(), p, p + n_);
            }
            frontier = std::move(next_frontier);
            max_states = std::max<std::uint64_t>(max_states, keys.size());
            if (keys.empty()) break;
        }
        if (stats) stats->max_states = std::max(stats->max_states, max_states);
        std::vector<Integer> out(n_);
        if (keys.empty()) return out;
        for (int i = 0; i < n_; ++i) out[i] = Integer(pool[i]);
        return out;
    }

private:
    const Factor<T>& factor(int coef, int loops) {
        auto key = std::make_pair(coef, loops);
        auto it = factors_.find(key);
        if (it != factors_.end()) return it->second;
        Sparse s = net_.coefs[coef];
        for (int l = 0; l < loops; ++l) s = sparse_mul(s, delta_, n_);
        Factor<T> f;
        for (const auto& [e, c] : s) {
            f.pos.emplace_back(e, convert<T>(c));
            f.neg.push_back(convert<T>(-c));
        }
        return factors_.emplace(key, std::move(f)).first->second;
    }

    void reduce(T* p) {
        for (int k = n_ - 1; k >= deg_; --k) {
            if (p[k] == 0) continue;
            T c = p[k];
            p[k] = 0;
            for (const auto& [j, phi] : phi_) {
                T neg = -phi;
                madd(p[k - deg_ + j], neg, c);
            }
        }
    }

    const Network& net_;
    Level level_;
    int n_;
    int deg_ = 0;
    std::vector<std::pair<int, T>> phi_;
    Sparse delta_;
    std::map<std::pair<int, int>, Factor<T>> factors_;
};

CycNum finish_value(const Network& net, const std::vector<Integer>& poly, const Level& level) {
    CycNum v = CycNum::from_coefficients(level, poly, net.denominator);
    if (net.free_loops) v *= loop_value(level).pow(net.free_loops);
    return v;
}

CycNum contract(const Network& net, const Level& level, const EvalOptions& options, EvalStats* stats) {
    OrderPlan plan = choose_order(net, options.order);
    if (stats) stats->max_frontier = std::max(stats->max_frontier, plan.max_frontier);
    if (plan.max_frontier > 2 * options.width_limit)
        throw ResourceLimit("cut width " + std::to_string((plan.max_frontier + 1) / 2) + " exceeds the width limit " +
                            std::to_string(options.width_limit));
    try {
        Sweep<long long> sweep(net, level);
        return finish_value(net, sweep.run(plan.order, stats), level);
    } catch (const Overflow&) {
        if (stats) stats->big_integer_fallback = true;
        Sweep<Integer> sweep(net, level);
        return finish_value(net, sweep.run(plan.order, stats), level);
    }
}

// ---- naive state sum ----

CycNum naive_sum(const Network& net, const Level& level) {
    const int nt = static_cast<int>(net.tensors.size());
    const int n = 4 * level.r();
    double combos = 1;
    for (const auto& t : net.tensors) combos *= static_cast<double>(t.terms.size());
    if (combos > 4.2e6) throw ResourceLimit("naive state sum too large");
    // Slots numbered globally; wires pair them.
    std::vector<int> offset(nt + 1, 0);
    for (int t = 0; t < nt; ++t) offset[t + 1] = offset[t] + static_cast<int>(net.tensors[t].wires.size());
    const int nslots = offset[nt];
    std::vector<int> wire_mate(nslots, -1), first(net.wires, -1);
    for (int t = 0; t < nt; ++t)
        for (size_t s = 0; s < net.tensors[t].wires.size(); ++s) {
            int w = net.tensors[t].wires[s], g = offset[t] + static_cast<int>(s);
            if (first[w] < 0) {
                first[w] = g;
            } else {
                wire_mate[g] = first[w];
                wire_mate[first[w]] = g;
            }
        }
    // Monomial coefficients fold into an exponent; the rest are kept by term index.
    std::vector<char> mono(net.coefs.size());
    for (size_t c = 0; c < net.coefs.size(); ++c)
        mono[c] = net.coefs[c].size() == 1 && abs(net.coefs[c][0].second) == 1;
    std::map<std::tuple<std::vector<int>, int, int>, long long> counts;
    std::vector<int> choice(nt, 0);
    std::vector<int> term_mate(nslots);
    std::vector<char> seen(nslots);
    while (true) {
        int exp = 0, sign = 1;
        std::vector<int> rest;
        for (int t = 0; t < nt; ++t) {
            const Term& term = net.tensors[t].terms[choice[t]];
            for (size_t s = 0; s < term.m.size(); ++s) term_mate[offset[t] + s] = offset[t] + term.m[s];
            if (mono[term.coef]) {
                exp += net.coefs[term.coef][0].first;
                if (net.coefs[term.coef][0].second < 0) sign = -sign;
            } else {
                rest.push_back(t * 1000000 + choice[t]);
            }
        }
        std::fill(seen.begin(), seen.end(), 0);
        int loops = 0;
        for (int g = 0; g < nslots; ++g) {
            if (seen[g]) continue;
            ++loops;
            int cur = g;
            while (!seen[cur]) {
                seen[cur] = 1;
                int y = term_mate[cur];
                seen[y] = 1;
                cur = wire_mate[y];
            }
        }
        counts[{rest, exp % (2 * n), loops}] += sign;
        int t = 0;
        while (t < nt && ++choice[t] == static_cast<int>(net.tensors[t].terms.size())) choice[t++] = 0;
        if (t == nt) break;
    }
    CycNum total(level);
    for (const auto& [key, cnt] : counts) {
        if (cnt == 0) continue;
        const auto& [rest, exp, loops] = key;
        CycNum term = CycNum::u_power(level, exp).scaled(cnt) * loop_value(level).pow(loops);
        for (int code : rest) {
            const Term& tm = net.tensors[code / 1000000].terms[code % 1000000];
            std::vector<Integer> coeffs(n);
            for (const auto& [e, c] : net.coefs[tm.coef]) coeffs[e] = c;
            term *= CycNum::from_coefficients(level, coeffs);
        }
        total += term;
    }
    total = total.divided(net.denominator);
    if (net.free_loops) total *= loop_value(level).pow(net.free_loops);
    return total;
}

// ---- Omega expansion ----

using ColoredEval = std::function<CycNum(const DiagramTopology&, const std::vector<int>&, EvalStats*)>;

CycNum expand_omega(const LinkDiagram& d, const Level& level, unsigned threads, EvalStats* stats,
                    const ColoredEval& eval) {
    validate(d, level);
    DiagramTopology topo = analyze(d);
    const LevelData& ld = level_data(level);
    const int ncomp = static_cast<int>(d.components.size());
    std::vector<int> omegas, base(ncomp);
    CycNum fixed = CycNum::from_int(level, 1);
    for (int i = 0; i < ncomp; ++i) {
        const auto& c = d.components[i];
        if (c.decoration.is_omega()) {
            omegas.push_back(i);
        } else {
            base[i] = component_color(c);
            if (c.framing_offset) fixed *= ld.mu[base[i]].pow(c.framing_offset);
        }
    }
    const int ncol = level.r() - 1;
    std::uint64_t total_colorings = 1;
    for (size_t i = 0; i < omegas.size(); ++i) {
        total_colorings *= ncol;
        if (total_colorings > (1ull << 32)) throw ResourceLimit("too many Omega colorings");
    }
    auto coloring = [&](std::uint64_t idx) {
        std::vector<int> col = base;
        for (int i : omegas) {
            col[i] = static_cast<int>(idx % ncol);
            idx /= ncol;
        }
        return col;
    };
    auto weight = [&](const std::vector<int>& col) {
        CycNum w = CycNum::from_int(level, 1);
        for (int i : omegas) {
            w *= ld.delta[col[i]];
            if (d.components[i].framing_offset) w *= ld.mu[col[i]].pow(d.components[i].framing_offset);
        }
        return w;
    };
    std::vector<CycNum> values(total_colorings, CycNum(level));
    std::mutex stats_mu;
    auto work = [&](std::uint64_t idx) {
        EvalStats local;
        auto col = coloring(idx);
        values[idx] = weight(col) * eval(topo, col, &local);
        if (stats) {
            std::lock_guard<std::mutex> lock(stats_mu);
            stats->max_frontier = std::max(stats->max_frontier, local.max_frontier);
            stats->max_states = std::max(stats->max_states, local.max_states);
            stats->big_integer_fallback |= local.big_integer_fallback;
        }
    };
    unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total_colorings)));
    if (nthreads == 1) {
        for (std::uint64_t i = 0; i < total_colorings; ++i) work(i);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    std::uint64_t i = next++;
                    if (i >= total_colorings) return;
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mu);
                        if (!error) error = std::current_exception();
                        next = total_colorings;
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }
    if (stats) stats->colorings += total_colorings;
    CycNum total(level);
    for (const auto& v : values) total += v;
    if (!omegas.empty()) total *= ld.X_inverse.pow(static_cast<long long>(omegas.size()));
    return total * fixed;
}

}  // namespace

CycNum evaluate_colored(const LinkDiagram& d, const DiagramTopology& topo, const std::vector<int>& colors,
                        const Level& level, const EvalOptions& options, EvalStats* stats) {
    if (options.width_limit < 1 || options.width_limit > 12) throw Error("width limit must be between 1 and 12");
    Network net = NetworkBuilder(d, topo, colors, level).build();
    return contract(net, level, options, stats);
}

CycNum evaluate_bracket(const LinkDiagram& d, const Level& level, const EvalOptions& options, EvalStats* stats) {
    if (options.width_limit < 1 || options.width_limit > 12) throw Error("width limit must be between 1 and 12");
    return expand_omega(d, level, options.threads, stats,
                        [&](const DiagramTopology& topo, const std::vector<int>& col, EvalStats* st) {
                            return evaluate_colored(d, topo, col, level, options, st);
                        });
}

CycNum evaluate_bracket_naive(const LinkDiagram& d, const Level& level) {
    return expand_omega(d, level, 1, nullptr, [&](const DiagramTopology& topo, const std::vector<int>& col, EvalStats*) {
        Network net = NetworkBuilder(d, topo, col, level).build();
        return naive_sum(net, level);
    });
}

}  // namespace skein
