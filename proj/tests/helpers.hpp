#pragma once

#include <cstdint>
#include <random>

#include "permatrellis/matrix.hpp"

namespace test_helpers {

using permatrellis::Rational;
using permatrellis::RationalMatrix;

// Random exact matrix with small numerators/denominators.
inline RationalMatrix random_matrix(int n, std::mt19937_64& rng, bool allow_zero = true,
                                    bool fractions = true) {
    std::uniform_int_distribution<int> num(allow_zero ? -6 : 1, 9);
    std::uniform_int_distribution<int> den(1, fractions ? 4 : 1);
    RationalMatrix a(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Rational r(num(rng), den(rng));
            r.canonicalize();
            a.at(i, j) = r;
        }
    return a;
}

}  // namespace test_helpers
