#include "cdsw/exterior.hpp"
#include "cdsw/linalg.hpp"

#include <bit>
#include <stdexcept>

namespace cdsw {

namespace {

// Number of pairs (x in a, y in b) with y < x.
int crossings(std::uint64_t a, std::uint64_t b)
{
    int n = 0;
    while (a) {
        const int x = std::countr_zero(a);
        a &= a - 1;
        n += std::popcount(b & ((std::uint64_t{1} << x) - 1));
    }
    return n;
}

} // namespace

ExtMonomial slot(int copy, int index)
{
    if (index < 0 || index >= kMaxExteriorDim)
        throw std::out_of_range("slot index out of range");
    ExtMonomial m;
    if (copy == 1)
        m.lo = std::uint64_t{1} << index;
    else if (copy == 2)
        m.hi = std::uint64_t{1} << index;
    else
        throw std::invalid_argument("copy must be 1 or 2");
    return m;
}

int wedge_sign(const ExtMonomial& a, const ExtMonomial& b)
{
    if ((a.lo & b.lo) || (a.hi & b.hi))
        return 0;
    // g1 slots precede g2 slots: every (a.hi, b.lo) pair is a crossing.
    const int n = crossings(a.lo, b.lo) + crossings(a.hi, b.hi) + std::popcount(a.hi) * std::popcount(b.lo);
    return (n & 1) ? -1 : 1;
}

Root weight(const LieAlgebra& L, const ExtMonomial& m)
{
    Root w(L.rank(), 0);
    for (std::uint64_t bits : {m.lo, m.hi}) {
        while (bits) {
            const int x = std::countr_zero(bits);
            bits &= bits - 1;
            const Root& wx = L.weight(x);
            for (int i = 0; i < L.rank(); ++i)
                w[i] += wx[i];
        }
    }
    return w;
}

// --- ExtElement ----------------------------------------------------------

ExtElement::ExtElement(Terms terms) : terms_(std::move(terms))
{
    std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
}

ExtElement ExtElement::one()
{
    return monomial(ExtMonomial{});
}

ExtElement ExtElement::monomial(const ExtMonomial& m, const Rational& c)
{
    ExtElement e;
    e.add_term(m, c);
    return e;
}

Rational ExtElement::coeff(const ExtMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::pair<int, int>> ExtElement::bidegree() const
{
    if (terms_.empty())
        return std::nullopt;
    const auto& m0 = terms_.begin()->first;
    const std::pair<int, int> d{m0.p(), m0.q()};
    for (const auto& [m, c] : terms_)
        if (m.p() != d.first || m.q() != d.second)
            return std::nullopt;
    return d;
}

void ExtElement::add_term(const ExtMonomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

ExtElement& ExtElement::operator+=(const ExtElement& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

ExtElement& ExtElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

ExtElement wedge(const ExtElement& a, const ExtElement& b)
{
    ExtElement out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const int s = wedge_sign(ma, mb);
            if (s == 0)
                continue;
            out.add_term(ExtMonomial{ma.lo | mb.lo, ma.hi | mb.hi}, s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
        }
    return out;
}

ExtElement wedge(const ExtElement& a, const ExtMonomial& m)
{
    ExtElement out;
    for (const auto& [ma, ca] : a.terms()) {
        const int s = wedge_sign(ma, m);
        if (s == 0)
            continue;
        out.add_term(ExtMonomial{ma.lo | m.lo, ma.hi | m.hi}, s > 0 ? ca : Rational(-ca));
    }
    return out;
}

ExtElement power(const ExtElement& a, int k)
{
    ExtElement r = ExtElement::one();
    for (int i = 0; i < k; ++i)
        r = wedge(r, a);
    return r;
}

void require_exterior_capacity(const LieAlgebra& L)
{
    if (L.dim() > kMaxExteriorDim)
        throw ResourceError("dim g = " + std::to_string(L.dim()) + " for " + L.roots().name() +
                            " exceeds the exterior-algebra limit of " + std::to_string(kMaxExteriorDim));
}

ExtElement embed(const LieVec& x, int copy)
{
    ExtElement e;
    for (int b = 0; b < static_cast<int>(x.size()); ++b)
        if (x[b] != 0)
            e.add_term(slot(copy, b), x[b]);
    return e;
}

BasisPair chevalley_pair(const LieAlgebra& L)
{
    BasisPair p;
    for (int b = 0; b < L.dim(); ++b) {
        p.basis.push_back(L.basis_vector(b));
        p.dual.push_back(L.dual_vector(b));
    }
    return p;
}

BasisPair dual_pair(const LieAlgebra& L, std::vector<LieVec> basis)
{
    const int n = static_cast<int>(basis.size());
    if (n != L.dim())
        throw std::invalid_argument("dual_pair: basis has wrong size");
    RatMat gram(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram[i][j] = L.form(basis[i], basis[j]);
    const RatMat ginv = inverse(gram);
    BasisPair p;
    p.dual.assign(n, LieVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (ginv[k][i] == 0)
                continue;
            for (int c = 0; c < n; ++c)
                p.dual[i][c] += ginv[k][i] * basis[k][c];
        }
    p.basis = std::move(basis);
    return p;
}

ExtElement c_embed(const LieAlgebra& L, int which, const LieVec& x, const BasisPair& pair)
{
    require_exterior_capacity(L);
    if (which < 1 || which > 3)
        throw std::invalid_argument("c_embed: copy index must be 1, 2 or 3");
    const int left = which == 2 ? 2 : 1;
    const int right = which == 1 ? 1 : 2;
    ExtElement out;
    for (std::size_t i = 0; i < pair.basis.size(); ++i) {
        const LieVec br = L.bracket(x, pair.basis[i]);
        out += wedge(embed(br, left), embed(pair.dual[i], right));
    }
    return out;
}

ExtElement c_embed(const LieAlgebra& L, int which, const LieVec& x)
{
    return c_embed(L, which, x, chevalley_pair(L));
}

ExtElement c_embed_basis(const LieAlgebra& L, int which, int b)
{
    return c_embed(L, which, L.basis_vector(b));
}

ExtElement build_S(const LieAlgebra& L, const BasisPair& pair)
{
    require_exterior_capacity(L);
    ExtElement out;
    for (std::size_t i = 0; i < pair.basis.size(); ++i)
        out += wedge(embed(pair.basis[i], 1), embed(pair.dual[i], 2));
    return out;
}

ExtElement build_S(const LieAlgebra& L)
{
    return build_S(L, chevalley_pair(L));
}

ExtElement diag_act_basis(const LieAlgebra& L, int b, const ExtMonomial& m)
{
    ExtElement out;
    int before = 0;
    for (int copy = 1; copy <= 2; ++copy) {
        std::uint64_t bits = copy == 1 ? m.lo : m.hi;
        while (bits) {
            const int s = std::countr_zero(bits);
            bits &= bits - 1;
            ExtMonomial rest = m;
            (copy == 1 ? rest.lo : rest.hi) &= ~(std::uint64_t{1} << s);
            const int sign = (before & 1) ? -1 : 1;
            for (const auto& t : L.bracket(b, s)) {
                const ExtMonomial k = slot(copy, t.index);
                const int ws = wedge_sign(k, rest);
                if (ws == 0)
                    continue;
                out.add_term(ExtMonomial{k.lo | rest.lo, k.hi | rest.hi}, Rational(sign * ws * t.coeff));
            }
            ++before;
        }
    }
    return out;
}

ExtElement diag_act(const LieAlgebra& L, const LieVec& x, const ExtElement& a)
{
    ExtElement out;
    for (int b = 0; b < L.dim(); ++b) {
        if (x[b] == 0)
            continue;
        for (const auto& [m, c] : a.terms()) {
            ExtElement t = diag_act_basis(L, b, m);
            t *= x[b] * c;
            out += t;
        }
    }
    return out;
}

std::string to_text(const LieAlgebra& L, const ExtElement& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : a.terms()) {
        if (!out.empty())
            out += ' ';
        out += c < 0 ? "-" : "+";
        out += to_string(abs(c));
        out += "·";
        if (m == ExtMonomial{}) {
            out += "1";
            continue;
        }
        bool first = true;
        for (int copy = 1; copy <= 2; ++copy) {
            std::uint64_t bits = copy == 1 ? m.lo : m.hi;
            while (bits) {
                const int s = std::countr_zero(bits);
                bits &= bits - 1;
                if (!first)
                    out += '^';
                first = false;
                out += L.name(s) + "(" + std::to_string(copy) + ")";
            }
        }
    }
    return out;
}

std::vector<std::uint64_t> subsets(int n, int k)
{
    std::vector<std::uint64_t> out;
    if (k < 0 || k > n)
        return out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t v = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (v < limit) {
        out.push_back(v);
        // Gosper's hack: next subset of the same size
        const std::uint64_t c = v & -v;
        const std::uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    return out;
}

} // namespace cdsw
