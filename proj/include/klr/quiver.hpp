/* quiver.hpp: the cyclic quiver on n residues.
 *
 * Vertices are the residues 0..n-1 with an arrow r -> r+1 (mod n).  For
 * n = 2 the two formulas r+1 and r-1 coincide, so 0 and 1 are doubly
 * connected; the symmetrized Cartan entry drops to -2 there.
 */

#pragma once

#include "klr/error.hpp"

namespace klr {

struct Quiver {
  explicit Quiver(int n_) : n(n_) {
    if (n < 2) throw invalid_parameter("quiver needs at least 2 residues");
  }

  int n;

  bool valid_residue(int r) const { return 0 <= r && r < n; }

  /* s ≡ r±1 (mod n), r != s */
  bool adjacent(int r, int s) const {
    if (r == s) return false;
    int d = (s - r) % n;
    if (d < 0) d += n;
    return d == 1 || d == n - 1;
  }

  /* arrow r -> s, i.e. s ≡ r+1 (mod n); for n = 2 both directions hold */
  bool arrow(int r, int s) const { return r != s && (r + 1) % n == s; }

  bool doubly_connected(int r, int s) const {
    return adjacent(r, s) && n == 2;
  }

  int cartan(int r, int s) const {
    if (r == s) return 2;
    if (!adjacent(r, s)) return 0;
    return n == 2 ? -2 : -1;
  }
};

}  // namespace klr
