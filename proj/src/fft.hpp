#pragma once

#include "hofa/group.hpp"

namespace hofa::detail {

// Unnormalized multi-dimensional DFT over the factor shape of g.
// sign = -1: out[xi] = sum_x in[x] e(-xi.x), sign = +1: e(+xi.x).
// in and out may alias.
void dft(const Group& g, const cplx* in, cplx* out, int sign);

}  // namespace hofa::detail
