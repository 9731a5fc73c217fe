#pragma once

// Skein constants at level r.

#include <utility>
#include <vector>

#include "skein/admissible.hpp"
#include "skein/cyclotomic.hpp"

namespace skein {

// [n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2}), summed as A^{2(n-1)} + A^{2(n-3)} + ... + A^{-2(n-1)}.
CycNum quantized_integer(const Level& level, long long n);
// Loop value delta = -A^2 - A^{-2}.
CycNum loop_value(const Level& level);
// Delta_c = (-1)^c [c+1], the 0-framed color-c unknot.
CycNum delta(const Level& level, int c);
// mu_c = (-1)^c A^{c^2+2c}, the factor per +1 framing change on color c.
CycNum mu(const Level& level, int c);
// Bracket of the theta graph, closed form.
CycNum theta(const Level& level, int a, int b, int c);
// (c, (-1)^c [c+1] / theta(a,b,c)) for every admissible c.
std::vector<std::pair<int, CycNum>> fusion_expand(const Level& level, int a, int b);

struct LevelData {
    Level level;
    CycNum X;          // positive square root of sum_c [c+1]^2, integral
    CycNum X_inverse;
    CycNum kappa;      // Omega on a +1-framed unknot
    std::vector<CycNum> delta;
    std::vector<CycNum> mu;
    std::vector<CycNum> mu_inverse;
};

// Computed once per level; safe for concurrent callers.
const LevelData& level_data(const Level& level);
inline const CycNum& omega_x(const Level& level) { return level_data(level).X; }
inline const CycNum& kappa(const Level& level) { return level_data(level).kappa; }

}  // namespace skein
