#include "doctest.h"

#include "cdsw/quotient.hpp"
#include "oracles.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>

using namespace cdsw;

namespace {

struct Fixture {
    LieAlgebra L;
    explicit Fixture(char t, int r) : L(chevalley_lie_algebra(build_root_system(t, r))) {}
};

std::vector<ExtMonomial> all_monomials(int n, int p, int q)
{
    std::vector<ExtMonomial> out;
    for (auto hi : subsets(n, q))
        for (auto lo : subsets(n, p))
            out.push_back({lo, hi});
    return out;
}

std::vector<int> copies(Algebra a)
{
    return a == Algebra::A ? std::vector{1, 2, 3} : a == Algebra::B ? std::vector{1, 2} : std::vector{1};
}

// Spanning set of the ideal component, as dense rows over all monomials of R^{p,q}.
RatMat ideal_rows(const LieAlgebra& L, Algebra a, int p, int q, const std::map<ExtMonomial, int>& col)
{
    const int n = L.dim();
    RatMat rows;
    for (int c : copies(a)) {
        const int da = c == 1 ? 2 : c == 2 ? 0 : 1, db = c == 1 ? 0 : c == 2 ? 2 : 1;
        if (p < da || q < db)
            continue;
        for (int b = 0; b < n; ++b) {
            const ExtElement g = c_embed(L, c, L.basis_vector(b));
            for (const auto& m : all_monomials(n, p - da, q - db)) {
                RatVec row(col.size(), 0);
                const ExtElement w = wedge(g, ExtElement::monomial(m));
                for (const auto& [mm, v] : w.terms())
                    row[col.at(mm)] += v;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

int full_rank(const LieAlgebra& L, Algebra a, int p, int q)
{
    std::map<ExtMonomial, int> col;
    for (const auto& m : all_monomials(L.dim(), p, q))
        col.emplace(m, static_cast<int>(col.size()));
    return oracle::dense_rank(ideal_rows(L, a, p, q, col));
}

// dim {v : x.v in J for every basis x} - dim J, by one dense nullity computation
// over the unknowns (v, c_x) of the system x.v = sum_r c_{x,r} J_r.
int dense_invariant_dim(const LieAlgebra& L, Algebra a, int p, int q)
{
    const int n = L.dim();
    std::map<ExtMonomial, int> col;
    for (const auto& m : all_monomials(n, p, q))
        col.emplace(m, static_cast<int>(col.size()));
    const int dim = static_cast<int>(col.size());
    const RatMat J = ideal_rows(L, a, p, q, col);
    const int s = static_cast<int>(J.size());
    const int r = oracle::dense_rank(J);
    const int vars = dim + n * s;
    RatMat M;
    for (int x = 0; x < n; ++x) {
        RatMat block(dim, RatVec(vars, 0));
        for (const auto& [m, c] : col) {
            const ExtElement img = diag_act_basis(L, x, m);
            for (const auto& [mm, v] : img.terms())
                block[col.at(mm)][c] += v;
        }
        for (int k = 0; k < s; ++k)
            for (int i = 0; i < dim; ++i)
                block[i][dim + x * s + k] = -J[k][i];
        for (auto& row : block)
            M.push_back(std::move(row));
    }
    const int nullity = vars - oracle::dense_rank(M);
    return nullity - n * (s - r) - r;
}

ExtElement representative(const Reduction& red)
{
    ExtElement e;
    for (const auto& [m, c] : red.coords)
        e.add_term(m, c);
    return e;
}

std::filesystem::path temp_dir(const std::string& tag)
{
    auto dir = std::filesystem::temp_directory_path() / ("cdsw_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("ideal component ranks")
{
    Fixture a1('A', 1);
    QuotientEngine eng(a1.L);
    CHECK(eng.component_rank(Algebra::A, 1, 1) == 3);
    for (Algebra alg : {Algebra::A, Algebra::B, Algebra::KostantSingle})
        CHECK(eng.component_rank(alg, 0, 0) == 0);
    CHECK(eng.block(Algebra::A, 1, 1, Root{0})->dim() == 3);

    SUBCASE("blocked ranks sum to the full-matrix rank")
    {
        for (auto [p, q] : {std::pair{1, 1}, {2, 0}, {2, 1}, {2, 2}, {3, 1}, {1, 3}})
            for (Algebra alg : {Algebra::A, Algebra::B}) {
                CHECK(eng.component_rank(alg, p, q) == full_rank(a1.L, alg, p, q));
            }
        for (int p = 0; p <= 3; ++p)
            CHECK(eng.component_rank(Algebra::KostantSingle, p, 0) == full_rank(a1.L, Algebra::KostantSingle, p, 0));
        Fixture a2('A', 2);
        QuotientEngine e2(a2.L);
        for (auto [p, q] : {std::pair{1, 1}, {2, 0}, {2, 1}, {3, 0}})
            CHECK(e2.component_rank(Algebra::A, p, q) == full_rank(a2.L, Algebra::A, p, q));
    }

    SUBCASE("block dims partition R^{p,q}")
    {
        Fixture b2('B', 2);
        QuotientEngine e(b2.L);
        long total = 0;
        for (const Root& w : e.weights(2, 1))
            total += e.block_dim(2, 1, w);
        CHECK(total == 45 * 10);
    }
}

TEST_CASE("single-copy quotient")
{
    Fixture a1('A', 1);
    QuotientEngine eng(a1.L);
    long q3 = 0;
    for (const auto& b : eng.component(Algebra::KostantSingle, 3, 0))
        q3 += b.dim - b.rank;
    CHECK(q3 == 0);

    const KostantResult k1 = kostant_quotient_check(eng, {{}, {0}});
    CHECK(k1.pass);
    CHECK(k1.quotient_dims == std::vector<long>{1, 3, 0, 0});

    Fixture a2('A', 2);
    QuotientEngine e2(a2.L);
    // positive roots: a1, a2, theta
    const KostantResult k2 = kostant_quotient_check(e2, {{}, {2}, {2, 0}, {2, 1}});
    CHECK(k2.pass);
    CHECK(k2.quotient_dims[1] == 8);
    CHECK(k2.quotient_dims == std::vector<long>{1, 8, 20, 0, 0, 0, 0, 0, 0});

    // a wrong ideal list must be caught
    CHECK_FALSE(kostant_quotient_check(e2, {{}, {2}, {2, 0}}).pass);
    CHECK_THROWS_AS(eng.component(Algebra::KostantSingle, 1, 1), std::invalid_argument);
}

TEST_CASE("reduction")
{
    Fixture a1('A', 1);
    QuotientEngine eng(a1.L);
    const ExtElement S = build_S(a1.L);
    CHECK(eng.reduce(ExtElement{}, Algebra::A, 1, 1).is_zero);
    CHECK_FALSE(eng.reduce(S, Algebra::A, 1, 1).is_zero);
    CHECK(eng.reduce(wedge(S, S), Algebra::A, 2, 2).is_zero);
    CHECK_THROWS_AS(eng.reduce(S, Algebra::A, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(eng.reduce(S + ExtElement::one(), Algebra::A, 1, 1), std::invalid_argument);

    SUBCASE("canonical and idempotent on random elements")
    {
        Fixture a2('A', 2);
        QuotientEngine e2(a2.L);
        std::mt19937_64 rng(29);
        std::uniform_int_distribution<int> coef(-3, 3);
        const auto mons = all_monomials(a2.L.dim(), 2, 1);
        std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
        std::uniform_int_distribution<int> gen(0, a2.L.dim() - 1), cp(1, 3);
        for (int t = 0; t < 25; ++t) {
            ExtElement x;
            for (int k = 0; k < 6; ++k)
                x.add_term(mons[pick(rng)], coef(rng));
            const Reduction r = e2.reduce(x, Algebra::A, 2, 1);
            if (x.is_zero())
                continue;
            const Reduction again = e2.reduce(representative(r), Algebra::A, 2, 1);
            CHECK(again.coords == r.coords);
            // adding an ideal element leaves the reduction unchanged
            ExtElement j;
            for (int k = 0; k < 3; ++k) {
                const int c = cp(rng);
                const int da = c == 1 ? 2 : c == 2 ? 0 : 1, db = c == 1 ? 0 : c == 2 ? 2 : 1;
                const auto rest = all_monomials(a2.L.dim(), 2 - da, 1 - db);
                if (rest.empty())
                    continue;
                std::uniform_int_distribution<std::size_t> rp(0, rest.size() - 1);
                j += wedge(e2.generator(c, gen(rng)), ExtElement::monomial(rest[rp(rng)], coef(rng)));
            }
            if (!(x + j).is_zero())
                CHECK(e2.reduce(x + j, Algebra::A, 2, 1).coords == r.coords);
        }
    }
}

TEST_CASE("invariant dimensions match the dense oracle")
{
    Fixture a1('A', 1);
    QuotientEngine eng(a1.L);
    CHECK(eng.invariant_dim(Algebra::A, 1, 1) == 1);
    CHECK(eng.invariant_dim(Algebra::A, 1, 0) == 0);
    for (auto [p, q] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 3}})
        for (Algebra alg : {Algebra::A, Algebra::B})
            CHECK(eng.invariant_dim(alg, p, q) == dense_invariant_dim(a1.L, alg, p, q));

    Fixture a2('A', 2);
    QuotientEngine e2(a2.L);
    for (Algebra alg : {Algebra::A, Algebra::B}) {
        CHECK(e2.invariant_dim(alg, 1, 1) == dense_invariant_dim(a2.L, alg, 1, 1));
        CHECK(e2.invariant_dim(alg, 2, 0) == dense_invariant_dim(a2.L, alg, 2, 0));
    }
    CHECK(e2.invariant_dim(Algebra::A, 2, 2) == 1);
}

TEST_CASE("S powers")
{
    Fixture a1('A', 1);
    QuotientEngine e1(a1.L);
    const SPowerResult r1 = s_power_order(e1, 4);
    REQUIRE(r1.order);
    CHECK(*r1.order == 2);
    CHECK(r1.nonzero == std::vector<bool>{true, false});

    Fixture a2('A', 2);
    QuotientEngine e2(a2.L);
    const SPowerResult r2 = s_power_order(e2, 4);
    REQUIRE(r2.order);
    CHECK(*r2.order == a2.L.roots().dual_coxeter);

    SUBCASE("power coherence")
    {
        const ExtElement S = build_S(a2.L);
        const ExtElement S2 = wedge(S, S);
        const ExtElement rep1 = representative(e2.reduce(S, Algebra::A, 1, 1));
        const ExtElement rep2 = representative(e2.reduce(S2, Algebra::A, 2, 2));
        CHECK(e2.reduce(wedge(rep1, rep1), Algebra::A, 2, 2).coords == e2.reduce(S2, Algebra::A, 2, 2).coords);
        CHECK(e2.reduce(wedge(rep1, rep2), Algebra::A, 3, 3).is_zero);
    }
}

TEST_CASE("generation by S")
{
    Fixture a1('A', 1);
    QuotientEngine e1(a1.L);
    const PartIResult p1 = verify_part_i(e1, 4);
    CHECK(p1.pass);
    CHECK(p1.dims.at({0, 0}) == 1);
    CHECK(p1.dims.at({1, 1}) == 1);
    CHECK(p1.dims.at({2, 2}) == 0);
    CHECK(p1.dims.at({1, 0}) == 0);

    Fixture a2('A', 2);
    QuotientEngine e2(a2.L);
    const PartIResult p2 = verify_part_i(e2, 6);
    CHECK(p2.pass);
    for (int k = 0; k <= 2; ++k)
        CHECK(p2.dims.at({k, k}) == 1);
    CHECK(p2.dims.at({3, 3}) == 0);
}

TEST_CASE("invariant series of B")
{
    for (auto [rank, expected] : {std::pair{1, std::vector<long>{1, 1}}, {2, std::vector<long>{1, 1, 2}}}) {
        Fixture f('A', rank);
        QuotientEngine eng(f.L);
        const SeriesResult s = graded_invariant_series(eng, 2 * rank + 2);
        CHECK(s.failures.empty());
        CHECK(s.coefficients == expected);
        long total = 0;
        for (long c : s.coefficients)
            total += c;
        CHECK(total == (1L << rank));
        for (const auto& [pq, d] : s.dims)
            CHECK(eng.invariant_dim(Algebra::A, pq.first, pq.second) <= d);
    }
}

TEST_CASE("disk cache")
{
    Fixture a2('A', 2);
    const auto dir = temp_dir("cache");
    QuotientConfig cfg;
    cfg.cache_dir = dir;
    int fresh = 0;
    long rank = 0;
    {
        QuotientEngine eng(a2.L, cfg);
        fresh = eng.invariant_dim(Algebra::A, 2, 2);
        rank = eng.component_rank(Algebra::A, 2, 1);
        CHECK(eng.stats().files_written > 0);
    }
    const auto file = dir / "A2" / "A_2_2.json";
    REQUIRE(std::filesystem::exists(file));
    {
        QuotientEngine eng(a2.L, cfg);
        CHECK(eng.invariant_dim(Algebra::A, 2, 2) == fresh);
        CHECK(eng.component_rank(Algebra::A, 2, 1) == rank);
        CHECK(eng.stats().blocks_computed == 0);
        CHECK(eng.stats().blocks_loaded > 0);
    }
    SUBCASE("stale hash is ignored")
    {
        std::ifstream in(file);
        auto j = nlohmann::json::parse(in);
        in.close();
        j["hash"] = "0000000000000000";
        std::ofstream(file) << j.dump();
        QuotientEngine eng(a2.L, cfg);
        CHECK(eng.invariant_dim(Algebra::A, 2, 2) == fresh);
        CHECK(eng.stats().blocks_computed > 0);
    }
    SUBCASE("corrupt file is ignored")
    {
        std::ofstream(file) << "{not json";
        QuotientEngine eng(a2.L, cfg);
        CHECK(eng.invariant_dim(Algebra::A, 2, 2) == fresh);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("budgets and threads")
{
    Fixture b2('B', 2);
    QuotientConfig small;
    small.max_block_dim = 50;
    QuotientEngine eng(b2.L, small);
    CHECK_THROWS_AS(eng.invariant_dim(Algebra::A, 2, 2), ResourceError);

    Fixture a2('A', 2);
    QuotientConfig serial, parallel;
    serial.threads = 1;
    parallel.threads = 4;
    QuotientEngine es(a2.L, serial), ep(a2.L, parallel);
    CHECK(es.component(Algebra::B, 2, 2).size() == ep.component(Algebra::B, 2, 2).size());
    for (const auto& w : es.weights(2, 2))
        CHECK(es.block(Algebra::B, 2, 2, w)->span.rows() == ep.block(Algebra::B, 2, 2, w)->span.rows());

    CHECK_THROWS_AS(QuotientEngine(chevalley_lie_algebra(build_root_system('E', 6))), ResourceError);
}
