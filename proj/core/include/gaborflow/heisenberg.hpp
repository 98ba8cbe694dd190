#pragma once

#include <array>

#include "gaborflow/params.hpp"

namespace gaborflow {

// Element of the finite Heisenberg quotient: spatial index l mod K, frequency
// index m mod M, phase index k mod Q. Canonical representatives after every
// operation, so equality is field-wise.
struct GroupElement {
  int l = 0;
  int m = 0;
  int k = 0;
  bool operator==(const GroupElement&) const = default;
};

// Floor modulus into [0, n).
inline int mod_floor(long long v, int n) {
  long long r = v % n;
  return int(r < 0 ? r + n : r);
}

GroupElement normalize(const GroupElement& g, const GaborParams& p);

// [l,m,k][l',m',k'] = [l+l', m+m', k+k' + (Q/2P)(m l' - m' l)], reduced.
GroupElement group_mul(const GroupElement& g, const GroupElement& h, const GaborParams& p);

// Same product without reducing l and m; only k is taken mod Q. This is the
// pre-quotient group on Z x Z x Z_Q.
GroupElement group_mul_raw(const GroupElement& g, const GroupElement& h, const GaborParams& p);

GroupElement group_inv(const GroupElement& g, const GaborParams& p);

GroupElement group_identity();

// (l/K, mK/P, k/Q): the uniform grid the discrete group sits on inside the
// continuous reduced Heisenberg group.
std::array<double, 3> embed_phi(const GroupElement& g, const GaborParams& p);

// Continuous product (p,q,s)(p',q',s') = (p+p', q+q', s+s' + (q p' - p q')/2),
// with s reduced mod 1.
std::array<double, 3> continuous_mul(const std::array<double, 3>& x,
                                     const std::array<double, 3>& y);

}  // namespace gaborflow
