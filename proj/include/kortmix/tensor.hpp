#pragma once

#include <array>
#include <cstddef>

namespace kortmix {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;   // row-major, full 3x3
using Sym2 = std::array<double, 6>;   // packed symmetric 3x3
using Sym3 = std::array<double, 10>;  // packed fully symmetric 3x3x3

/// Packed index of the symmetric pair (i,j), upper-triangular row-major:
/// (0,0)(0,1)(0,2)(1,1)(1,2)(2,2) -> 0..5.
constexpr int sym2_index(int i, int j) {
    if (i > j) { const int t = i; i = j; j = t; }
    return i * (5 - i) / 2 + j;
}

/// Packed index of the fully symmetric triple (i,j,k) -> 0..9.
constexpr int sym3_index(int i, int j, int k) {
    if (i > j) { const int t = i; i = j; j = t; }
    if (j > k) { const int t = j; j = k; k = t; }
    if (i > j) { const int t = i; i = j; j = t; }
    switch (9 * i + 3 * j + k) {
        case 0:  return 0;  // 000
        case 1:  return 1;  // 001
        case 2:  return 2;  // 002
        case 4:  return 3;  // 011
        case 5:  return 4;  // 012
        case 8:  return 5;  // 022
        case 13: return 6;  // 111
        case 14: return 7;  // 112
        case 17: return 8;  // 122
        default: return 9;  // 222
    }
}

constexpr int mat3_index(int i, int j) { return 3 * i + j; }

}  // namespace kortmix
