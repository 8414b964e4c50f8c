#include "cdsw/abelian.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cdsw {

namespace {

// sum_index[a][b] = index of positive[a] + positive[b], or -1.
std::vector<std::vector<int>> sum_table(const RootSystem& rs)
{
    const int n = rs.num_positive();
    std::vector<std::vector<int>> t(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Root s = rs.positive[a];
            for (int i = 0; i < rs.rank; ++i)
                s[i] += rs.positive[b][i];
            if (auto k = rs.positive_index(s))
                t[a][b] = *k;
        }
    return t;
}

} // namespace

bool is_upper_closed(const RootSystem& rs, const AbelianIdeal& ideal)
{
    const std::set<int> in(ideal.begin(), ideal.end());
    for (int a : ideal)
        for (int i = 0; i < rs.rank; ++i) {
            Root up = rs.positive[a];
            up[i] += 1;
            if (auto k = rs.positive_index(up); k && !in.count(*k))
                return false;
        }
    return true;
}

bool is_abelian(const RootSystem& rs, const AbelianIdeal& ideal)
{
    for (int a : ideal)
        for (int b : ideal) {
            Root s = rs.positive[a];
            for (int i = 0; i < rs.rank; ++i)
                s[i] += rs.positive[b][i];
            if (rs.is_root(s))
                return false;
        }
    return true;
}

std::vector<AbelianIdeal> enumerate_abelian_ideals(const RootSystem& rs)
{
    const int n = rs.num_positive();
    const auto sums = sum_table(rs);
    // covers[a]: roots a + alpha_i
    std::vector<std::vector<int>> covers(n);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < rs.rank; ++i)
            if (sums[a][i] >= 0)
                covers[a].push_back(sums[a][i]);
    // decide roots from the top of the poset down; covers are always decided first
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k)
        order[k] = n - 1 - k;

    std::vector<AbelianIdeal> out;
    std::vector<char> in(n, 0);
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            AbelianIdeal I = chosen;
            std::sort(I.begin(), I.end());
            out.push_back(std::move(I));
            return;
        }
        const int a = order[pos];
        self(self, pos + 1);
        bool ok = std::all_of(covers[a].begin(), covers[a].end(), [&](int c) { return in[c]; });
        for (int b : chosen)
            if (!ok || sums[a][b] >= 0)
                ok = false;
        if (sums[a][a] >= 0)
            ok = false;
        if (!ok)
            return;
        in[a] = 1;
        chosen.push_back(a);
        self(self, pos + 1);
        chosen.pop_back();
        in[a] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const AbelianIdeal& x, const AbelianIdeal& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return out;
}

AbelianIdeal ideal_of(const RootSystem& rs, const Word& w)
{
    AbelianIdeal I;
    for (const AffineRoot& r : inversion_set(rs, w)) {
        if (r.k != 1)
            continue;
        Root alpha = r.finite;
        for (int& x : alpha)
            x = -x;
        if (auto k = rs.positive_index(alpha))
            I.push_back(*k);
    }
    std::sort(I.begin(), I.end());
    return I;
}

ZetaResult zeta_map(const RootSystem& rs, const std::vector<AbelianIdeal>& ideals, const std::vector<AffWeylElt>& aff2)
{
    ZetaResult res;
    std::map<AbelianIdeal, std::vector<int>> by_set;
    for (int k = 0; k < static_cast<int>(aff2.size()); ++k)
        by_set[ideal_of(rs, aff2[k].word)].push_back(k);

    std::set<int> hit;
    res.lengths_match = true;
    for (const auto& I : ideals) {
        auto it = by_set.find(I);
        if (it == by_set.end()) {
            res.image.push_back(-1);
            res.failures.push_back("no element of Aff2 has ideal " + nlohmann::json(I).dump());
            continue;
        }
        if (it->second.size() > 1)
            res.failures.push_back("ideal " + nlohmann::json(I).dump() + " matches " +
                                   std::to_string(it->second.size()) + " elements");
        const int w = it->second.front();
        res.image.push_back(w);
        hit.insert(w);
        if (aff2[w].length != static_cast<int>(I.size())) {
            res.lengths_match = false;
            res.failures.push_back("ideal " + nlohmann::json(I).dump() + " has size " + std::to_string(I.size()) +
                                   " but zeta image " + word_str(aff2[w].word) + " has length " +
                                   std::to_string(aff2[w].length));
        }
    }
    res.bijective = res.failures.empty() && hit.size() == aff2.size() && ideals.size() == aff2.size();
    return res;
}

XiBounds xi_o_and_bounds(const RootSystem& rs, const std::vector<AbelianIdeal>& ideals,
                         const std::optional<ZetaResult>& zeta, const std::vector<AffWeylElt>& aff2)
{
    XiBounds b;
    b.bound = rs.dual_coxeter - 1;
    for (int k = 0; k < static_cast<int>(ideals.size()); ++k) {
        const auto& I = ideals[k];
        const bool keep =
            std::all_of(I.begin(), I.end(), [&](int a) { return rs.inner(rs.positive[a], rs.theta) != 0; });
        if (!keep)
            continue;
        b.filtered.push_back(k);
        b.max_dim = std::max(b.max_dim, static_cast<int>(I.size()));
        if (zeta && zeta->image[k] >= 0)
            b.dim_z = std::max(b.dim_z, aff2[zeta->image[k]].length);
        else
            b.dim_z = std::max(b.dim_z, static_cast<int>(I.size()));
    }
    b.bound_holds = b.max_dim <= b.bound;
    return b;
}

std::vector<int> dim_histogram(const std::vector<AbelianIdeal>& ideals)
{
    std::vector<int> h;
    for (const auto& I : ideals) {
        if (h.size() <= I.size())
            h.resize(I.size() + 1, 0);
        ++h[I.size()];
    }
    return h;
}

nlohmann::json abelian_summary(const RootSystem& rs, const std::vector<AbelianIdeal>& ideals)
{
    const XiBounds b = xi_o_and_bounds(rs, ideals);
    return {{"count", ideals.size()},
            {"dim_histogram", dim_histogram(ideals)},
            {"xi_o_count", b.filtered.size()},
            {"max_dim_xi_o", b.max_dim},
            {"h", rs.dual_coxeter}};
}

} // namespace cdsw
