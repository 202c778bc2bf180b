#pragma once

// Shared sparse-monomial plumbing for the polynomial and enveloping-algebra
// layers: an 8-slot exponent vector with a canonical (degree, lex) ordering
// used for deterministic iteration and text rendering.

#include <array>
#include <cstdint>
#include <string>

namespace su3 {

using Mono8 = std::array<uint8_t, 8>;

inline int mono_degree(const Mono8& m) {
    int d = 0;
    for (uint8_t v : m) d += v;
    return d;
}

// Higher degree first; within a degree, lexicographically larger exponent
// vector first. Gives the rendering order "(1)*e1*e2 + (-1)*e3".
struct MonoOrder {
    bool operator()(const Mono8& a, const Mono8& b) const {
        int da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

inline std::string mono_str(const Mono8& m, char var) {
    std::string out;
    for (int j = 0; j < 8; ++j) {
        if (m[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += var;
        out += static_cast<char>('1' + j);
        if (m[j] > 1) {
            out += "^";
            out += std::to_string(static_cast<int>(m[j]));
        }
    }
    return out.empty() ? "1" : out;
}

}  // namespace su3
