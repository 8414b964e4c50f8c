#pragma once

#include "cdsw/cartan.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cdsw {

/// Largest dim g for which a copy of g fits in one 64-bit mask.
inline constexpr int kMaxExteriorDim = 63;

/// Basis monomial of R = wedge(g1 + g2): `lo` holds the g1 slots, `hi` the g2 slots.
/// Slots are ordered g1 before g2, each in Lie-basis order; comparison treats hi:lo
/// as one 2N-bit mask.
struct ExtMonomial {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    int p() const { return __builtin_popcountll(lo); }
    int q() const { return __builtin_popcountll(hi); }
    int degree() const { return p() + q(); }

    friend bool operator==(const ExtMonomial&, const ExtMonomial&) = default;
    friend std::strong_ordering operator<=>(const ExtMonomial& a, const ExtMonomial& b)
    {
        if (auto c = a.hi <=> b.hi; c != 0)
            return c;
        return a.lo <=> b.lo;
    }
};

struct ExtMonomialHash {
    std::size_t operator()(const ExtMonomial& m) const noexcept
    {
        return std::hash<std::uint64_t>{}(m.lo * 0x9E3779B97F4A7C15ULL ^ (m.hi + 0x632BE59BD9B4E019ULL));
    }
};

/// Monomial with a single slot; copy is 1 or 2.
ExtMonomial slot(int copy, int index);

/// Sign of a ^ b when rewritten in canonical slot order; 0 if they share a slot.
int wedge_sign(const ExtMonomial& a, const ExtMonomial& b);

/// h-weight of a monomial: sum of the weights of its slots.
Root weight(const LieAlgebra& L, const ExtMonomial& m);

/// Sparse element of R with exact coefficients; no zero coefficients are stored.
class ExtElement {
public:
    using Terms = std::map<ExtMonomial, Rational>;

    ExtElement() = default;
    explicit ExtElement(Terms terms);
    static ExtElement one();
    static ExtElement monomial(const ExtMonomial& m, const Rational& c = 1);

    const Terms& terms() const& { return terms_; }
    const Terms& terms() const&& = delete;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coeff(const ExtMonomial& m) const;

    /// Common bidegree of all terms, or nullopt when inhomogeneous or zero.
    std::optional<std::pair<int, int>> bidegree() const;

    void add_term(const ExtMonomial& m, const Rational& c);
    ExtElement& operator+=(const ExtElement& o);
    ExtElement& operator-=(const ExtElement& o);
    ExtElement& operator*=(const Rational& c);

    friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
    friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
    friend ExtElement operator*(const Rational& c, ExtElement a) { return a *= c; }
    friend bool operator==(const ExtElement&, const ExtElement&) = default;

private:
    Terms terms_;
};

ExtElement wedge(const ExtElement& a, const ExtElement& b);
/// a ^ m for a single monomial m.
ExtElement wedge(const ExtElement& a, const ExtMonomial& m);
/// a^k, with a^0 = 1.
ExtElement power(const ExtElement& a, int k);

/// Throws ResourceError when dim g exceeds kMaxExteriorDim.
void require_exterior_capacity(const LieAlgebra& L);

/// Degree-one element x placed in copy 1 or 2.
ExtElement embed(const LieVec& x, int copy);

/// A basis of g given by coordinate vectors, together with its dual basis.
struct BasisPair {
    std::vector<LieVec> basis;
    std::vector<LieVec> dual;
};

/// The Chevalley basis and its stored dual.
BasisPair chevalley_pair(const LieAlgebra& L);
/// Dual basis of an arbitrary basis with respect to the normalized form.
BasisPair dual_pair(const LieAlgebra& L, std::vector<LieVec> basis);

/// c_1(x) = sum [x,e_i]^f_i in wedge^2 g1, c_2 the same in g2,
/// c_3(x) = sum [x,e_i](1) ^ f_i(2).
ExtElement c_embed(const LieAlgebra& L, int which, const LieVec& x);
ExtElement c_embed(const LieAlgebra& L, int which, const LieVec& x, const BasisPair& pair);
/// c_i applied to a basis element.
ExtElement c_embed_basis(const LieAlgebra& L, int which, int b);

/// S = sum e_i(1) ^ f_i(2).
ExtElement build_S(const LieAlgebra& L);
ExtElement build_S(const LieAlgebra& L, const BasisPair& pair);

/// Diagonal adjoint action of x as a derivation of R.
ExtElement diag_act(const LieAlgebra& L, const LieVec& x, const ExtElement& a);
/// Action of the basis element b on a single monomial.
ExtElement diag_act_basis(const LieAlgebra& L, int b, const ExtMonomial& m);

/// Stable text form, e.g. `+1/2·h1(1)^h1(2)`; terms in monomial order, "0" for zero.
std::string to_text(const LieAlgebra& L, const ExtElement& a);

/// Masks of all k-subsets of {0..n-1}, ascending.
std::vector<std::uint64_t> subsets(int n, int k);

} // namespace cdsw
