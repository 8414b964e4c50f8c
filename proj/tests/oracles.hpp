#pragma once

#include "cdsw/rational.hpp"

#include <utility>

namespace oracle {

// Rank by plain dense Gaussian elimination over Q.
inline int dense_rank(cdsw::RatMat m)
{
    int rank = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            if (m[i][c] == 0)
                continue;
            const cdsw::Rational f = m[i][c] / m[rank][c];
            for (int j = c; j < cols; ++j)
                m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace oracle
