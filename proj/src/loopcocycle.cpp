#include "cdsw/loopcocycle.hpp"
#include "cdsw/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cdsw {

namespace {

RatMat zero_matrix(int n)
{
    return RatMat(n, RatVec(n, 0));
}

RatMat unit(int n, int i, int j)
{
    RatMat m = zero_matrix(n);
    m[i][j] = 1;
    return m;
}

RatMat add(RatMat a, const RatMat& b, const Rational& c = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            a[i][j] += c * b[i][j];
    return a;
}

RatMat commutator(const RatMat& a, const RatMat& b)
{
    return add(multiply(a, b), multiply(b, a), -1);
}

RatMat scaled(RatMat m, const Rational& c)
{
    for (auto& row : m)
        for (auto& x : row)
            x *= c;
    return m;
}

// Simple root vectors e_i and f_i of the defining representation (Bourbaki labelling).
std::pair<std::vector<RatMat>, std::vector<RatMat>> simple_generators(const RootSystem& rs)
{
    const int l = rs.rank;
    std::vector<RatMat> e, f;
    switch (rs.type) {
    case 'A': {
        const int n = l + 1;
        for (int i = 0; i < l; ++i)
            e.push_back(unit(n, i, i + 1));
        break;
    }
    case 'B': {
        // basis eps_1..eps_l, 0, -eps_l..-eps_1 with antidiagonal form
        const int n = 2 * l + 1;
        for (int i = 0; i + 1 < l; ++i)
            e.push_back(add(unit(n, i, i + 1), unit(n, n - 2 - i, n - 1 - i), -1));
        e.push_back(add(unit(n, l - 1, l), unit(n, l, l + 1), -1));
        break;
    }
    case 'C': {
        // basis eps_1..eps_l, -eps_1..-eps_l with symplectic form
        const int n = 2 * l;
        for (int i = 0; i + 1 < l; ++i)
            e.push_back(add(unit(n, i, i + 1), unit(n, l + i + 1, l + i), -1));
        e.push_back(unit(n, l - 1, 2 * l - 1));
        break;
    }
    case 'D': {
        const int n = 2 * l;
        for (int i = 0; i + 1 < l; ++i)
            e.push_back(add(unit(n, i, i + 1), unit(n, n - 2 - i, n - 1 - i), -1));
        e.push_back(add(unit(n, l - 2, l), unit(n, l - 1, l + 1), -1));
        break;
    }
    default:
        throw std::invalid_argument("no defining representation for type " + rs.name());
    }
    for (int i = 0; i < l; ++i)
        f.push_back(transpose(e[i]));
    if (rs.type == 'B') {
        // the short simple coroot needs [e, f] to act by 2 on eps_l
        f[l - 1] = scaled(transpose(e[l - 1]), 2);
    }
    return {e, f};
}

int permutation_sign(const std::vector<int>& p)
{
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            inv += p[i] > p[j];
    return inv % 2 ? -1 : 1;
}

LoopElement derivative(const LoopElement& v)
{
    LoopElement d;
    for (const auto& [key, c] : v.terms())
        d.add_term(key.first, key.second - 1, c * key.second);
    return d;
}

} // namespace

// --- LoopElement ---------------------------------------------------------

LoopElement LoopElement::term(int basis, int power, const Rational& c)
{
    LoopElement v;
    v.add_term(basis, power, c);
    return v;
}

LoopElement LoopElement::of(const LieVec& x, int power)
{
    LoopElement v;
    for (int b = 0; b < static_cast<int>(x.size()); ++b)
        v.add_term(b, power, x[b]);
    return v;
}

void LoopElement::add_term(int basis, int power, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace({basis, power}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

LoopElement& LoopElement::operator+=(const LoopElement& o)
{
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, c);
    return *this;
}

LoopElement& LoopElement::operator*=(const Rational& c)
{
    if (c == 0)
        terms_.clear();
    for (auto& [key, v] : terms_)
        v *= c;
    return *this;
}

std::map<int, LieVec> LoopElement::by_power(int dim) const
{
    std::map<int, LieVec> out;
    for (const auto& [key, c] : terms_) {
        auto [it, inserted] = out.try_emplace(key.second, LieVec(dim, 0));
        it->second[key.first] += c;
    }
    return out;
}

LoopElement bracket(const LieAlgebra& L, const LoopElement& a, const LoopElement& b)
{
    LoopElement out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            for (const auto& t : L.bracket(ka.first, kb.first))
                out.add_term(t.index, ka.second + kb.second, ca * cb * t.coeff);
    return out;
}

Rational residue(const OneForm& w)
{
    auto it = w.find(-1);
    return it == w.end() ? Rational(0) : it->second;
}

std::string to_string(const LieAlgebra& L, const LoopElement& v)
{
    if (v.is_zero())
        return "0";
    std::string s;
    for (const auto& [key, c] : v.terms()) {
        if (!s.empty())
            s += ' ';
        s += (c < 0 ? "-" : "+") + to_string(Rational(abs(c))) + "·" + L.name(key.first) + "⊗t^" +
             std::to_string(key.second);
    }
    return s;
}

// --- invariant polynomials -----------------------------------------------

std::vector<RatMat> defining_representation(const LieAlgebra& L)
{
    const RootSystem& rs = L.roots();
    const auto [e, f] = simple_generators(rs);
    const int n = static_cast<int>(e[0].size());
    std::vector<RatMat> rep(L.dim(), zero_matrix(n));
    std::vector<char> done(L.dim(), 0);
    for (int i = 0; i < rs.rank; ++i) {
        Root a(rs.rank, 0);
        a[i] = 1;
        rep[L.root_vector_index(a)] = e[i];
        done[L.root_vector_index(a)] = 1;
        Root na(rs.rank, 0);
        na[i] = -1;
        rep[L.root_vector_index(na)] = f[i];
        done[L.root_vector_index(na)] = 1;
        const auto& br = L.bracket(L.root_vector_index(a), L.root_vector_index(na));
        if (br.size() != 1 || br[0].index != L.cartan_index(i))
            throw std::logic_error("unexpected [e_i, f_i] in the Chevalley basis");
        rep[L.cartan_index(i)] = scaled(commutator(e[i], f[i]), make_rational(1, br[0].coeff));
        done[L.cartan_index(i)] = 1;
    }
    // positive roots are ordered by height, so gamma - alpha_i is always already built
    for (const Root& gamma : rs.positive) {
        if (RootSystem::height(gamma) == 1)
            continue;
        for (int i = 0; i < rs.rank; ++i) {
            Root rest = gamma;
            rest[i] -= 1;
            if (!rs.is_root(rest))
                continue;
            Root ai(rs.rank, 0), nai(rs.rank, 0), nrest = rest, ngamma = gamma;
            ai[i] = 1;
            nai[i] = -1;
            for (int& x : nrest)
                x = -x;
            for (int& x : ngamma)
                x = -x;
            const int np = L.structure_constant(ai, rest);
            const int nn = L.structure_constant(nai, nrest);
            rep[L.root_vector_index(gamma)] =
                scaled(commutator(rep[L.root_vector_index(ai)], rep[L.root_vector_index(rest)]), make_rational(1, np));
            rep[L.root_vector_index(ngamma)] =
                scaled(commutator(rep[L.root_vector_index(nai)], rep[L.root_vector_index(nrest)]), make_rational(1, nn));
            done[L.root_vector_index(gamma)] = done[L.root_vector_index(ngamma)] = 1;
            break;
        }
    }
    for (int a = 0; a < L.dim(); ++a)
        for (int b = 0; b < L.dim(); ++b) {
            RatMat expect = zero_matrix(n);
            for (const auto& t : L.bracket(a, b))
                expect = add(expect, rep[t.index], t.coeff);
            if (commutator(rep[a], rep[b]) != expect)
                throw std::logic_error("defining representation of " + rs.name() + " is not a homomorphism at (" +
                                       L.name(a) + "," + L.name(b) + ")");
        }
    return rep;
}

InvariantPolynomial InvariantPolynomial::normalized_form(const LieAlgebra& L)
{
    InvariantPolynomial P;
    P.L_ = &L;
    P.arguments_ = 2;
    return P;
}

InvariantPolynomial InvariantPolynomial::symmetrized_trace(const LieAlgebra& L, int arguments)
{
    if (arguments < 2)
        throw std::invalid_argument("symmetrized trace needs at least two arguments");
    InvariantPolynomial P;
    P.L_ = &L;
    P.arguments_ = arguments;
    P.trace_ = true;
    P.rep_ = defining_representation(L);
    return P;
}

std::string InvariantPolynomial::name() const
{
    return trace_ ? "symmetrized trace, degree " + std::to_string(arguments_) : "normalized form";
}

Rational InvariantPolynomial::eval(const std::vector<LieVec>& xs) const
{
    if (static_cast<int>(xs.size()) != arguments_)
        throw std::invalid_argument("invariant polynomial expects " + std::to_string(arguments_) + " arguments");
    if (!trace_)
        return L_->form(xs[0], xs[1]);
    const int n = static_cast<int>(rep_[0].size());
    std::vector<RatMat> mats;
    for (const LieVec& x : xs) {
        RatMat m = zero_matrix(n);
        for (int b = 0; b < static_cast<int>(x.size()); ++b)
            if (x[b] != 0)
                m = add(m, rep_[b], x[b]);
        mats.push_back(std::move(m));
    }
    std::vector<int> perm(arguments_);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    long count = 0;
    do {
        RatMat prod = mats[perm[0]];
        for (int k = 1; k < arguments_; ++k)
            prod = multiply(prod, mats[perm[k]]);
        for (int i = 0; i < n; ++i)
            total += prod[i][i];
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / count;
}

// --- cocycles ------------------------------------------------------------

Rational phi(const LieAlgebra& L, const InvariantPolynomial& P, const std::vector<LoopElement>& v)
{
    const int m = P.cochain_degree();
    if (static_cast<int>(v.size()) != m)
        throw std::invalid_argument("phi expects " + std::to_string(m) + " arguments for " + P.name());
    const int dim = L.dim();
    const int d = m / 2;

    std::vector<std::map<int, LieVec>> plain, diff;
    for (const auto& x : v) {
        plain.push_back(x.by_power(dim));
        diff.push_back(derivative(x).by_power(dim));
    }
    std::vector<std::vector<std::map<int, LieVec>>> brackets(m, std::vector<std::map<int, LieVec>>(m));
    if (d > 1)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j)
                    brackets[i][j] = bracket(L, v[i], v[j]).by_power(dim);

    std::vector<int> sigma(m);
    std::iota(sigma.begin(), sigma.end(), 0);
    Rational total = 0;
    std::vector<const std::map<int, LieVec>*> args(d + 1);
    std::vector<LieVec> xs(d + 1);
    do {
        args[0] = &plain[sigma[0]];
        for (int j = 1; j < d; ++j)
            args[j] = &brackets[sigma[2 * j - 1]][sigma[2 * j]];
        args[d] = &diff[sigma[m - 1]];
        if (std::any_of(args.begin(), args.end(), [](const auto* a) { return a->empty(); }))
            continue;
        // residue: total power of the t-factors must be -1
        Rational term = 0;
        auto rec = [&](auto&& self, int k, int power) -> void {
            if (k == d + 1) {
                if (power == -1)
                    term += P.eval(xs);
                return;
            }
            for (const auto& [p, x] : *args[k]) {
                xs[k] = x;
                self(self, k + 1, power + p);
            }
        };
        rec(rec, 0, 0);
        if (term != 0)
            total += permutation_sign(sigma) * term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

namespace {

LoopElement random_loop(std::mt19937_64& rng, int dim, int max_terms)
{
    std::uniform_int_distribution<int> nterms(1, max_terms), basis(0, dim - 1), power(-2, 2), coef(1, 3), sign(0, 1);
    LoopElement v;
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t)
        v.add_term(basis(rng), power(rng), sign(rng) ? coef(rng) : -coef(rng));
    if (v.is_zero())
        v.add_term(basis(rng), power(rng), 1);
    return v;
}

std::string witness(const LieAlgebra& L, const std::vector<LoopElement>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " | " : "") + to_string(L, v[i]);
    return s;
}

} // namespace

CocycleReport cocycle_check(const LieAlgebra& L, const InvariantPolynomial& P, int samples, std::uint64_t seed)
{
    CocycleReport rep;
    const int m = P.cochain_degree();
    const int dim = L.dim();
    std::mt19937_64 rng(seed);
    auto fail = [&](const std::string& what, const std::vector<LoopElement>& v, const Rational& val) {
        rep.pass = false;
        if (rep.failures.size() < 5)
            rep.failures.push_back(what + " = " + to_string(val) + " at " + witness(L, v));
    };

    for (int s = 0; s < samples; ++s) {
        ++rep.samples;
        std::vector<LoopElement> v;
        for (int k = 0; k < m; ++k)
            v.push_back(random_loop(rng, dim, 2));
        const Rational base = phi(L, P, v);
        ++rep.evaluations;
        rep.nonzero_values += base != 0;

        // relative condition: an argument in g (x) 1
        {
            std::vector<LoopElement> w = v;
            LoopElement c = random_loop(rng, dim, 2);
            LoopElement constant;
            for (const auto& [key, val] : c.terms())
                constant.add_term(key.first, 0, val);
            w[s % m] = constant;
            const Rational val = phi(L, P, w);
            ++rep.evaluations;
            if (val != 0) {
                ++rep.constant_loop_failures;
                fail("phi with a constant loop", w, val);
            }
        }

        // g-invariance
        {
            LoopElement x;
            const LoopElement r = random_loop(rng, dim, 2);
            for (const auto& [key, val] : r.terms())
                x.add_term(key.first, 0, val);
            Rational sum = 0;
            for (int i = 0; i < m; ++i) {
                std::vector<LoopElement> w = v;
                w[i] = bracket(L, x, v[i]);
                sum += phi(L, P, w);
                ++rep.evaluations;
            }
            if (sum != 0) {
                ++rep.invariance_failures;
                std::vector<LoopElement> w = v;
                w.insert(w.begin(), x);
                fail("invariance defect", w, sum);
            }
        }

        // Chevalley-Eilenberg differential with trivial coefficients
        {
            std::vector<LoopElement> u;
            for (int k = 0; k <= m; ++k)
                u.push_back(random_loop(rng, dim, 2));
            Rational sum = 0;
            for (int i = 0; i <= m; ++i)
                for (int j = i + 1; j <= m; ++j) {
                    std::vector<LoopElement> w{bracket(L, u[i], u[j])};
                    for (int k = 0; k <= m; ++k)
                        if (k != i && k != j)
                            w.push_back(u[k]);
                    const Rational val = phi(L, P, w);
                    ++rep.evaluations;
                    sum += ((i + j) % 2 ? -1 : 1) * val;
                }
            if (sum != 0) {
                ++rep.closedness_failures;
                fail("d(phi)", u, sum);
            }
        }
    }
    return rep;
}

CocycleReport closed_form_check(const LieAlgebra& L, int max_n)
{
    CocycleReport rep;
    const InvariantPolynomial P = InvariantPolynomial::normalized_form(L);
    for (int x = 0; x < L.dim(); ++x)
        for (int y = 0; y < L.dim(); ++y)
            for (int n = -max_n; n <= max_n; ++n) {
                const std::vector<LoopElement> v{LoopElement::term(x, n), LoopElement::term(y, -n)};
                const Rational got = phi(L, P, v);
                const Rational want = -2 * n * L.form(x, y);
                ++rep.evaluations;
                ++rep.samples;
                rep.nonzero_values += got != 0;
                if (got != want) {
                    rep.pass = false;
                    if (rep.failures.size() < 5)
                        rep.failures.push_back("phi = " + to_string(got) + ", expected " + to_string(want) + " at " +
                                               witness(L, v));
                }
            }
    return rep;
}

} // namespace cdsw
