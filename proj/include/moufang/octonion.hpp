#pragma once

#include <array>

namespace moufang {

struct SignedBasis {
    int sign;
    int index;
};

using OctonionTable = std::array<std::array<SignedBasis, 8>, 8>;

// e_j * e_k = sign * e_index with e_0 = 1. Fano-plane convention from the
// Cayley-Dickson doubling of the quaternions {1, e1, e2, e3} by e4:
// e1e2 = e3, e1e4 = e5, e2e4 = e6, e3e4 = e7, imaginary units anticommute.
// The leading 4x4 block is the quaternion table.
inline constexpr OctonionTable kOctonionTable{{
    {{{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}, {+1, 4}, {+1, 5}, {+1, 6}, {+1, 7}}},
    {{{+1, 1}, {-1, 0}, {+1, 3}, {-1, 2}, {+1, 5}, {-1, 4}, {-1, 7}, {+1, 6}}},
    {{{+1, 2}, {-1, 3}, {-1, 0}, {+1, 1}, {+1, 6}, {+1, 7}, {-1, 4}, {-1, 5}}},
    {{{+1, 3}, {+1, 2}, {-1, 1}, {-1, 0}, {+1, 7}, {-1, 6}, {+1, 5}, {-1, 4}}},
    {{{+1, 4}, {-1, 5}, {-1, 6}, {-1, 7}, {-1, 0}, {+1, 1}, {+1, 2}, {+1, 3}}},
    {{{+1, 5}, {+1, 4}, {-1, 7}, {+1, 6}, {-1, 1}, {-1, 0}, {-1, 3}, {+1, 2}}},
    {{{+1, 6}, {+1, 7}, {+1, 4}, {-1, 5}, {-1, 2}, {+1, 3}, {-1, 0}, {-1, 1}}},
    {{{+1, 7}, {-1, 6}, {+1, 5}, {+1, 4}, {-1, 3}, {-1, 2}, {+1, 1}, {-1, 0}}},
}};

using Octonion = std::array<double, 8>;

inline Octonion octonion_multiply(const Octonion& x, const Octonion& y)
{
    Octonion out{};
    for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
            const SignedBasis p = kOctonionTable[j][k];
            out[p.index] += p.sign * x[j] * y[k];
        }
    }
    return out;
}

} // namespace moufang
