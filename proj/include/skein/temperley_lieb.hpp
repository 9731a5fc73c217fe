#pragma once

// Temperley-Lieb diagrams on n strands with coefficients in Q(u).
// Points 0..n-1 are the bottom (left to right), n..2n-1 the top.

#include <cstdint>
#include <map>
#include <vector>

#include "skein/cyclotomic.hpp"

namespace skein {

using Matching = std::vector<std::uint8_t>;  // partner of each point

bool is_planar_matching(const Matching& m);

class TLElement {
public:
    TLElement(const Level& level, int n) : level_(level), n_(n) {}

    static TLElement identity(const Level& level, int n);
    // Cup-cap joining positions i and i+1 (0-based) on both sides.
    static TLElement cup_cap(const Level& level, int n, int i);
    static TLElement basis(const Level& level, const Matching& m, const CycNum& coefficient);

    const Level& level() const { return level_; }
    int n() const { return n_; }
    const std::map<Matching, CycNum>& terms() const { return terms_; }
    CycNum coefficient(const Matching& m) const;
    bool is_zero() const { return terms_.empty(); }

    void add(const Matching& m, const CycNum& c);
    TLElement& operator+=(const TLElement& o);
    TLElement& operator-=(const TLElement& o);
    TLElement scaled(const CycNum& c) const;
    bool operator==(const TLElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    Level level_;
    int n_;
    std::map<Matching, CycNum> terms_;
};

// x stacked on top of y (y is applied first).
TLElement tl_compose(const TLElement& x, const TLElement& y);
// x to the left of y.
TLElement tl_tensor(const TLElement& x, const TLElement& y);
// Join top i to bottom i and evaluate the closed loops.
CycNum trace_closure(const TLElement& x);

// f_c by the Wenzl recursion; memoized per level.
const TLElement& jones_wenzl(const Level& level, int c);

}  // namespace skein
