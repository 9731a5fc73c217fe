#pragma once

// Marked templates for solid tori and for the cylinder over a punctured torus.

#include <optional>

#include "skein/tqft.hpp"

namespace skein::fixtures {

// Solid torus marked by a solid torus. Without a core the marking is the identity;
// with a core of framing k the surgery curve is the Omega-colored core of the
// marking torus (k = 0 swaps meridian and longitude).
MarkedTemplate solid_torus_template(std::optional<int> core_framing = std::nullopt);

// The punctured torus times an interval, genus-2 marking, carrying surgery
// curves for the disk sum of M and -M, M two solid tori glued along annuli
// whose cores are (2,1) curves.
MarkedTemplate chain_mail_template();

}  // namespace skein::fixtures
