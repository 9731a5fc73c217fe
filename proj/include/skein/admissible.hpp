#pragma once

namespace skein {

// Colors meeting at a trivalent vertex. r <= 0 skips the level bound.
inline bool admissible(int a, int b, int c, int r = 0) {
    if (a < 0 || b < 0 || c < 0) return false;
    if ((a + b + c) % 2 != 0) return false;
    if (a > b + c || b > a + c || c > a + b) return false;
    if (r > 0 && a + b + c > 2 * r - 4) return false;
    return true;
}

}  // namespace skein
