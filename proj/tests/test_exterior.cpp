#include "doctest.h"

#include "cdsw/exterior.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace cdsw;

namespace {

// Sign of the permutation sorting the slot list of a ^ b, by counting inversions directly.
int sort_sign_oracle(const ExtMonomial& a, const ExtMonomial& b)
{
    std::vector<int> slots;
    for (const ExtMonomial* m : {&a, &b})
        for (int copy = 0; copy < 2; ++copy)
            for (int i = 0; i < 64; ++i)
                if (((copy ? m->hi : m->lo) >> i) & 1)
                    slots.push_back(copy * 64 + i);
    int inv = 0;
    for (std::size_t i = 0; i < slots.size(); ++i)
        for (std::size_t j = i + 1; j < slots.size(); ++j) {
            if (slots[i] == slots[j])
                return 0;
            inv += slots[i] > slots[j];
        }
    return inv % 2 ? -1 : 1;
}

ExtElement random_element(std::mt19937_64& rng, int dim, int p, int q, int terms)
{
    std::uniform_int_distribution<int> coef(1, 3), sign(0, 1);
    const auto ps = subsets(dim, p), qs = subsets(dim, q);
    std::uniform_int_distribution<std::size_t> pi(0, ps.size() - 1), qi(0, qs.size() - 1);
    ExtElement e;
    for (int t = 0; t < terms; ++t)
        e.add_term(ExtMonomial{ps[pi(rng)], qs[qi(rng)]}, sign(rng) ? coef(rng) : -coef(rng));
    return e;
}

LieVec random_lie(std::mt19937_64& rng, int dim)
{
    std::uniform_int_distribution<int> coef(-2, 2);
    LieVec x(dim);
    for (auto& c : x)
        c = coef(rng);
    return x;
}

long binomial(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("wedge sign matches inversion count")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> bits(0, (1u << 10) - 1);
    for (int t = 0; t < 2000; ++t) {
        const ExtMonomial a{bits(rng) & bits(rng), bits(rng) & bits(rng)};
        const ExtMonomial b{bits(rng) & bits(rng), bits(rng) & bits(rng)};
        CHECK(wedge_sign(a, b) == sort_sign_oracle(a, b));
    }
}

TEST_CASE("wedge basics")
{
    const ExtElement a = ExtElement::monomial(slot(1, 0));
    const ExtElement b = ExtElement::monomial(slot(2, 3));
    const ExtElement c = ExtElement::monomial(slot(1, 2));
    CHECK(wedge(a, a).is_zero());
    CHECK(wedge(a, c) == Rational(-1) * wedge(c, a));
    CHECK(wedge(b, c) == Rational(-1) * wedge(c, b));
    CHECK(wedge(ExtElement::one(), b) == b);

    const LieAlgebra L = chevalley_lie_algebra(build_root_system('A', 1));
    const ExtElement efh = wedge(wedge(ExtElement::monomial(slot(1, 0)), ExtElement::monomial(slot(1, 2))),
                                 ExtElement::monomial(slot(2, 1)));
    REQUIRE(efh.bidegree());
    CHECK(*efh.bidegree() == std::pair{2, 1});
    CHECK(to_text(L, efh) == "+1·e1(1)^f1(1)^h1(2)");
    CHECK(to_text(L, ExtElement{}) == "0");
}

TEST_CASE("wedge is associative and graded commutative")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        const int p1 = t % 3, q1 = (t / 3) % 2;
        const ExtElement a = random_element(rng, 8, p1, q1, 4);
        const ExtElement b = random_element(rng, 8, 1, 1, 4);
        const ExtElement c = random_element(rng, 8, 2, 0, 4);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        const Rational sign = ((p1 + q1) * 2) % 2 ? -1 : 1;
        CHECK(wedge(a, b) == sign * wedge(b, a));
        const ExtElement d = random_element(rng, 8, 1, 0, 3);
        const Rational sign_d = (p1 + q1) % 2 ? -1 : 1;
        CHECK(wedge(a, d) == sign_d * wedge(d, a));
    }
}

TEST_CASE("dim R^{p,q} from mask enumeration")
{
    for (int n : {3, 8, 10}) {
        for (int p = 0; p <= n; ++p) {
            const auto s = subsets(n, p);
            CHECK(static_cast<long>(s.size()) == binomial(n, p));
            CHECK(std::is_sorted(s.begin(), s.end()));
            for (auto m : s)
                CHECK(__builtin_popcountll(m) == p);
            for (int q = 0; q <= n; ++q)
                CHECK(static_cast<long>(s.size() * subsets(n, q).size()) == binomial(n, p) * binomial(n, q));
        }
    }
}

TEST_CASE("A1 adjoint copies and S")
{
    const LieAlgebra L = chevalley_lie_algebra(build_root_system('A', 1));
    const int e = 0, h = 1, f = 2;
    // [h,e]^f + [h,h]^(h/2) + [h,f]^e = 2 e^f - 2 f^e
    const ExtElement c1h = c_embed_basis(L, 1, h);
    CHECK(c1h == ExtElement::monomial(ExtMonomial{(1u << e) | (1u << f), 0}, 4));
    CHECK(*c_embed_basis(L, 2, h).bidegree() == std::pair{0, 2});
    CHECK(*c_embed_basis(L, 3, e).bidegree() == std::pair{1, 1});
    CHECK(c_embed(L, 3, LieVec(3, 0)).is_zero());
    CHECK_THROWS_AS(c_embed_basis(L, 4, h), std::invalid_argument);

    const ExtElement S = build_S(L);
    CHECK(S.size() == 3);
    CHECK(S.coeff(ExtMonomial{1u << e, 1u << f}) == 1);
    CHECK(S.coeff(ExtMonomial{1u << h, 1u << h}) == make_rational(1, 2));
    CHECK(S.coeff(ExtMonomial{1u << f, 1u << e}) == 1);
    CHECK(to_text(L, S) == "+1·f1(1)^e1(2) +1/2·h1(1)^h1(2) +1·e1(1)^f1(2)");
}

TEST_CASE("S is invariant")
{
    for (auto [t, r] : {std::pair{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}, {'C', 3}}) {
        const LieAlgebra L = chevalley_lie_algebra(build_root_system(t, r));
        const ExtElement S = build_S(L);
        // root part pairs e_b with a multiple of e_{-b}; the Cartan part is the dense inverse Gram matrix
        CHECK(static_cast<int>(S.size()) == 2 * L.roots().num_positive() + L.rank() * L.rank());
        CHECK(*S.bidegree() == std::pair{1, 1});
        for (int b = 0; b < L.dim(); ++b)
            CHECK(diag_act(L, L.basis_vector(b), S).is_zero());
    }
}

TEST_CASE("c_i and S do not depend on the basis")
{
    std::mt19937_64 rng(17);
    for (auto [t, r] : {std::pair{'A', 1}, {'A', 2}, {'B', 2}}) {
        const LieAlgebra L = chevalley_lie_algebra(build_root_system(t, r));
        const int n = L.dim();
        // unitriangular times a random permutation: invertible over Q
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::uniform_int_distribution<int> coef(-2, 2);
        std::vector<LieVec> basis(n, LieVec(n, 0));
        for (int i = 0; i < n; ++i) {
            basis[i][perm[i]] = 1;
            for (int j = 0; j < i; ++j)
                basis[i][perm[j]] = coef(rng);
        }
        const BasisPair pair = dual_pair(L, basis);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(L.form(pair.basis[i], pair.dual[j]) == (i == j ? 1 : 0));
        CHECK(build_S(L, pair) == build_S(L));
        for (int which = 1; which <= 3; ++which)
            for (int k = 0; k < 4; ++k) {
                const LieVec x = random_lie(rng, n);
                CHECK(c_embed(L, which, x, pair) == c_embed(L, which, x));
            }
    }
}

TEST_CASE("diagonal action")
{
    const LieAlgebra L = chevalley_lie_algebra(build_root_system('A', 2));
    const int n = L.dim();
    std::mt19937_64 rng(23);

    for (int b = 0; b < n; ++b)
        CHECK(diag_act_basis(L, b, ExtMonomial{}).is_zero());

    SUBCASE("Cartan elements act by weight")
    {
        const auto& C = L.roots().cartan;
        for (int t = 0; t < 30; ++t) {
            const ExtElement a = random_element(rng, n, 2, 1, 1);
            const ExtMonomial m = a.terms().begin()->first;
            const Root w = weight(L, m);
            for (int i = 0; i < L.rank(); ++i) {
                int ev = 0;
                for (int j = 0; j < L.rank(); ++j)
                    ev += w[j] * C[i][j];
                CHECK(diag_act_basis(L, L.cartan_index(i), m) == ExtElement::monomial(m, ev));
            }
        }
    }

    SUBCASE("Leibniz rule")
    {
        for (int t = 0; t < 20; ++t) {
            const LieVec x = random_lie(rng, n);
            const ExtElement a = random_element(rng, n, 1 + t % 2, t % 2, 3);
            const ExtElement b = random_element(rng, n, 1, 1, 3);
            CHECK(diag_act(L, x, wedge(a, b)) == wedge(diag_act(L, x, a), b) + wedge(a, diag_act(L, x, b)));
        }
    }

    SUBCASE("bracket relation")
    {
        for (int t = 0; t < 20; ++t) {
            const LieVec x = random_lie(rng, n), y = random_lie(rng, n);
            const ExtElement a = random_element(rng, n, 2, 1, 4);
            const ExtElement lhs = diag_act(L, x, diag_act(L, y, a)) - diag_act(L, y, diag_act(L, x, a));
            CHECK(lhs == diag_act(L, L.bracket(x, y), a));
        }
    }

    SUBCASE("weights shift by the acting root")
    {
        for (int b = 0; b < n; ++b) {
            const ExtElement a = random_element(rng, n, 1, 2, 1);
            const Root w0 = weight(L, a.terms().begin()->first);
            const ExtElement moved = diag_act_basis(L, b, a.terms().begin()->first);
            for (const auto& [m, c] : moved.terms()) {
                Root expect = w0;
                for (int i = 0; i < L.rank(); ++i)
                    expect[i] += L.weight(b)[i];
                CHECK(weight(L, m) == expect);
                CHECK(m.p() == 1);
                CHECK(m.q() == 2);
            }
        }
    }
}

TEST_CASE("c_i are module maps")
{
    for (auto [t, r] : {std::pair{'A', 2}, {'B', 2}}) {
        const LieAlgebra L = chevalley_lie_algebra(build_root_system(t, r));
        for (int which = 1; which <= 3; ++which)
            for (int x = 0; x < L.dim(); ++x)
                for (int y = 0; y < L.dim(); ++y)
                    CHECK(diag_act(L, L.basis_vector(x), c_embed_basis(L, which, y)) ==
                          c_embed(L, which, L.bracket(L.basis_vector(x), L.basis_vector(y))));
    }
}

TEST_CASE("exterior capacity")
{
    CHECK_NOTHROW(require_exterior_capacity(chevalley_lie_algebra(build_root_system('B', 5))));
    CHECK_THROWS_AS(require_exterior_capacity(chevalley_lie_algebra(build_root_system('D', 6))), ResourceError);
    CHECK_THROWS_AS(build_S(chevalley_lie_algebra(build_root_system('E', 6))), ResourceError);
}
