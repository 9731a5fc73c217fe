#pragma once

// Kauffman bracket of closed colored diagrams at level r.
// Colored components are cabled with one Jones-Wenzl projector each, trivalent
// vertices become wyes of parallel strands, Omega components are summed over colors.

#include <cstdint>
#include <vector>

#include "skein/cyclotomic.hpp"
#include "skein/diagram.hpp"

namespace skein {

enum class SweepOrder { Auto, Alternate };

struct EvalOptions {
    int width_limit = 12;  // max strands across a cut, as half the frontier size; at most 12
    SweepOrder order = SweepOrder::Auto;
    unsigned threads = 1;  // Omega colorings evaluated in parallel
};

struct EvalStats {
    int max_frontier = 0;          // largest frontier seen, in wire ends
    std::uint64_t max_states = 0;  // largest state table
    std::uint64_t colorings = 0;   // Omega colorings evaluated
    bool big_integer_fallback = false;
};

CycNum evaluate_bracket(const LinkDiagram& d, const Level& level, const EvalOptions& options = {},
                        EvalStats* stats = nullptr);

// Full state sum over every term of every crossing and projector. Throws
// ResourceLimit beyond about four million states.
CycNum evaluate_bracket_naive(const LinkDiagram& d, const Level& level);

// Bracket of d with explicit colors per component (Omega components included,
// color 0 meaning absent). No framing factors are applied.
CycNum evaluate_colored(const LinkDiagram& d, const DiagramTopology& topo, const std::vector<int>& colors,
                        const Level& level, const EvalOptions& options = {}, EvalStats* stats = nullptr);

}  // namespace skein
