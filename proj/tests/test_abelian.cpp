#include "doctest.h"

#include "cdsw/abelian.hpp"

#include <algorithm>

using namespace cdsw;

namespace {

const std::vector<std::pair<char, int>> kTypes = {
    {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'B', 2}, {'B', 3}, {'B', 4}, {'C', 2}, {'C', 3},
    {'C', 4}, {'D', 4}, {'D', 5}, {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4}, {'G', 2}};

// Every subset of the positive roots, filtered by the two defining properties.
std::vector<AbelianIdeal> brute_force(const RootSystem& rs)
{
    const int n = rs.num_positive();
    std::vector<AbelianIdeal> out;
    for (long mask = 0; mask < (1L << n); ++mask) {
        AbelianIdeal I;
        for (int k = 0; k < n; ++k)
            if (mask >> k & 1)
                I.push_back(k);
        if (is_upper_closed(rs, I) && is_abelian(rs, I))
            out.push_back(I);
    }
    std::sort(out.begin(), out.end(), [](const AbelianIdeal& x, const AbelianIdeal& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return out;
}

std::vector<int> length_histogram(const std::vector<AffWeylElt>& elts)
{
    std::vector<int> h;
    for (const auto& w : elts) {
        if (static_cast<int>(h.size()) <= w.length)
            h.resize(w.length + 1, 0);
        ++h[w.length];
    }
    return h;
}

} // namespace

TEST_CASE("small cases")
{
    const RootSystem a1 = build_root_system('A', 1);
    CHECK(enumerate_abelian_ideals(a1) == std::vector<AbelianIdeal>{{}, {0}});

    const RootSystem a2 = build_root_system('A', 2);
    REQUIRE(a2.positive[2] == Root{1, 1});
    CHECK(enumerate_abelian_ideals(a2) == std::vector<AbelianIdeal>{{}, {2}, {0, 2}, {1, 2}});
}

TEST_CASE("enumeration agrees with exhaustive subset search")
{
    for (auto [t, r] : {std::pair{'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}}) {
        const RootSystem rs = build_root_system(t, r);
        CHECK(enumerate_abelian_ideals(rs) == brute_force(rs));
    }
}

TEST_CASE("Peterson count and length series")
{
    for (auto [t, r] : kTypes) {
        const RootSystem rs = build_root_system(t, r);
        const auto ideals = enumerate_abelian_ideals(rs);
        CHECK(ideals.size() == (std::size_t{1} << r));
        for (const auto& I : ideals) {
            CHECK(is_upper_closed(rs, I));
            CHECK(is_abelian(rs, I));
        }
        CHECK(dim_histogram(ideals) == length_histogram(enumerate_aff2(rs)));
    }
}

TEST_CASE("zeta correspondence")
{
    const RootSystem a1 = build_root_system('A', 1);
    const auto aff1 = enumerate_aff2(a1);
    const auto z1 = zeta_map(a1, enumerate_abelian_ideals(a1), aff1);
    CHECK(aff1[z1.image[0]].word.empty());
    CHECK(aff1[z1.image[1]].word == Word{0});

    for (auto [t, r] : kTypes) {
        const RootSystem rs = build_root_system(t, r);
        const auto ideals = enumerate_abelian_ideals(rs);
        const auto aff = enumerate_aff2(rs);
        const ZetaResult z = zeta_map(rs, ideals, aff);
        CHECK(z.bijective);
        CHECK(z.lengths_match);
        CHECK(z.failures.empty());
        if (r > 6)
            continue;
        // rho - u^{-1}rho = |I| delta - sum(I)
        for (std::size_t k = 0; k < ideals.size(); ++k) {
            const RhoDefect d = rho_defect(rs, aff[z.image[k]].word);
            RatVec sum(r, 0);
            for (int a : ideals[k])
                for (int i = 0; i < r; ++i)
                    sum[i] -= rs.positive[a][i];
            CHECK(d.finite == sum);
            CHECK(d.delta == static_cast<long>(ideals[k].size()));
        }
    }
}

TEST_CASE("Suter bound")
{
    const RootSystem a2 = build_root_system('A', 2);
    const XiBounds b2 = xi_o_and_bounds(a2, enumerate_abelian_ideals(a2));
    CHECK(b2.filtered.size() == 4);
    CHECK(b2.max_dim == 2);
    CHECK(b2.bound == 2);

    for (auto [t, r] : kTypes) {
        const RootSystem rs = build_root_system(t, r);
        const auto ideals = enumerate_abelian_ideals(rs);
        const auto aff = enumerate_aff2(rs);
        const XiBounds b = xi_o_and_bounds(rs, ideals, zeta_map(rs, ideals, aff), aff);
        CHECK(b.bound_holds);
        CHECK(b.max_dim <= rs.dual_coxeter - 1);
        CHECK(b.dim_z == b.max_dim);
        CHECK(std::count(b.filtered.begin(), b.filtered.end(), 0) == 1);
        CHECK(ideals[0].empty());
    }

    const RootSystem f4 = build_root_system('F', 4);
    const auto j = abelian_summary(f4, enumerate_abelian_ideals(f4));
    CHECK(j["count"] == 16);
    CHECK(j["h"] == 9);
    CHECK(j["max_dim_xi_o"].get<int>() <= 8);
}
