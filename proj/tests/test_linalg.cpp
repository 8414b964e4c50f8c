#include "doctest.h"

#include "cdsw/linalg.hpp"
#include "oracles.hpp"

#include <random>

using namespace cdsw;

namespace {

RatRow to_row(const RatVec& v)
{
    RatRow r;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0)
            r.emplace_back(i, v[i]);
    return r;
}

} // namespace

TEST_CASE("primitive rows")
{
    const IntRow r = primitive_row({{1, Rational(-1, 2)}, {3, Rational(3, 4)}});
    REQUIRE(r.size() == 2);
    CHECK(r[0].second == 2);
    CHECK(r[1].second == -3);
}

TEST_CASE("echelon rank agrees with dense elimination on random matrices")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> val(-3, 3), sparse(0, 2);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + trial % 9, cols = 1 + (trial * 7) % 11;
        RatMat m(rows, RatVec(cols, 0));
        for (auto& row : m)
            for (auto& x : row)
                if (sparse(rng) == 0)
                    x = make_rational(val(rng), 1 + sparse(rng));
        // duplicate a combination to force dependence
        if (rows > 2)
            for (int j = 0; j < cols; ++j)
                m[rows - 1][j] = m[0][j] * 2 - m[1][j] / 3;
        std::vector<RatRow> sp;
        for (const auto& row : m)
            sp.push_back(to_row(row));
        CHECK(rank_of(sp, cols) == oracle::dense_rank(m));
    }
}

TEST_CASE("reduce gives canonical representatives")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> val(-4, 4);
    const int cols = 8;
    EchelonBasis e(cols);
    std::vector<RatVec> span;
    for (int k = 0; k < 4; ++k) {
        RatVec v(cols);
        for (auto& x : v)
            x = val(rng);
        span.push_back(v);
        e.insert(to_row(v));
    }
    for (int trial = 0; trial < 20; ++trial) {
        RatVec v(cols), w(cols);
        for (auto& x : v)
            x = make_rational(val(rng), 1 + trial % 3);
        w = v;
        for (const auto& s : span) {
            const int c = val(rng);
            for (int j = 0; j < cols; ++j)
                w[j] += c * s[j];
        }
        const RatRow rv = e.reduce(to_row(v));
        CHECK(rv == e.reduce(to_row(w)));
        CHECK(rv == e.reduce(rv));
        for (const auto& [c, x] : rv)
            CHECK_FALSE(e.is_pivot(c));
        CHECK(e.reduce(to_row(span[trial % 4])).empty());
    }
    CHECK(static_cast<int>(e.complement().size()) == cols - e.rank());
}

TEST_CASE("assign rejects non-echelon rows")
{
    EchelonBasis e(3);
    CHECK_THROWS(e.assign({IntRow{{0, Integer(1)}}, IntRow{{0, Integer(2)}}}));
}

TEST_CASE("dense inverse")
{
    RatMat m = {{2, 1}, {1, 1}};
    CHECK(multiply(m, inverse(m)) == identity_matrix(2));
    CHECK_THROWS_AS(inverse(RatMat{{1, 2}, {2, 4}}), std::domain_error);
}
