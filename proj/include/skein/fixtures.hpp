#pragma once

// Standard diagrams used by tests, the acceptance suite and the CLI.

#include <vector>

#include "skein/diagram.hpp"
#include "skein/planar.hpp"

namespace skein::fixtures {

LinkDiagram unknot(Decoration dec = Decoration::plain(), int framing_offset = 0);
// One-crossing curl with writhe sign (+1 or -1).
LinkDiagram kink(int sign, Decoration dec = Decoration::plain());
// Chain of unknots, consecutive ones clasped once; framing offsets as given.
LinkDiagram chain(const std::vector<int>& framings, Decoration dec = Decoration::omega());
LinkDiagram hopf(Decoration a = Decoration::plain(), Decoration b = Decoration::plain());
// Right-handed (writhe +3) or left-handed trefoil, written as a crossing code.
LinkDiagram trefoil(bool right_handed, Decoration dec = Decoration::plain());
LinkDiagram theta_graph(int a, int b, int c);
// Omega circle encircling a single color-c strand: the Turaev-Wenzl configuration.
LinkDiagram omega_around_strand(int c);
// Color-c trefoil pierced once by an Omega meridian.
LinkDiagram trefoil_with_omega_meridian(int c);

// Pairs of diagrams related by a local fusion of two parallel strands colored a,b.
struct FusionCase {
    LinkDiagram parallel;
    // Fused diagrams indexed by the middle color; entries only for admissible c.
    std::vector<std::pair<int, LinkDiagram>> fused;
};
// kind 0: two concentric circles; 1: both pass through a circle colored d;
// 2: only the a-strand is encircled by a circle colored d.
FusionCase fusion_case(int kind, int a, int b, int d, int r);

// The surgery pair {unlinked Omega unknots framed 5 and 1} vs {Hopf link framed 6 and 1}.
// The first component may instead be colored (passive), giving a colored slide.
std::pair<LinkDiagram, LinkDiagram> handle_slide_pair(Decoration slid = Decoration::omega());

}  // namespace skein::fixtures
