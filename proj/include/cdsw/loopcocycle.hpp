#pragma once

#include "cdsw/cartan.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cdsw {

/// Sum of x (x) t^n: (basis index, power) -> coefficient.
class LoopElement {
public:
    using Terms = std::map<std::pair<int, int>, Rational>;

    LoopElement() = default;
    static LoopElement term(int basis, int power, const Rational& c = 1);
    /// x (x) t^power for a Lie element x.
    static LoopElement of(const LieVec& x, int power);

    const Terms& terms() const& { return terms_; }
    const Terms& terms() const&& = delete;
    bool is_zero() const { return terms_.empty(); }
    void add_term(int basis, int power, const Rational& c);

    LoopElement& operator+=(const LoopElement& o);
    LoopElement& operator*=(const Rational& c);
    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator*(const Rational& c, LoopElement a) { return a *= c; }
    friend bool operator==(const LoopElement&, const LoopElement&) = default;

    /// Lie-algebra part of each power.
    std::map<int, LieVec> by_power(int dim) const;

private:
    Terms terms_;
};

LoopElement bracket(const LieAlgebra& L, const LoopElement& a, const LoopElement& b);

/// Q(t) dt as power -> coefficient of t^power.
using OneForm = std::map<int, Rational>;
/// Coefficient of 1/t.
Rational residue(const OneForm& w);

/// Symmetric invariant multilinear form on g, extended F-linearly.
class InvariantPolynomial {
public:
    /// The normalized invariant form (two arguments).
    static InvariantPolynomial normalized_form(const LieAlgebra& L);
    /// (1/k!) sum over permutations of tr(x_1 ... x_k) in the defining representation;
    /// classical types only.
    static InvariantPolynomial symmetrized_trace(const LieAlgebra& L, int arguments);

    int arguments() const { return arguments_; }
    /// The cochain degree 2d, where arguments = d + 1.
    int cochain_degree() const { return 2 * (arguments_ - 1); }
    Rational eval(const std::vector<LieVec>& xs) const;
    std::string name() const;

private:
    const LieAlgebra* L_ = nullptr;
    int arguments_ = 2;
    bool trace_ = false;
    std::vector<RatMat> rep_;
};

/// Matrices of the defining representation of a classical algebra, one per basis element,
/// checked to be a homomorphism.
std::vector<RatMat> defining_representation(const LieAlgebra& L);

/// sum over S_{2d} of sign * Res P(v0, [v1,v2], ..., [v_{2d-3}, v_{2d-2}], d v_{2d-1}).
Rational phi(const LieAlgebra& L, const InvariantPolynomial& P, const std::vector<LoopElement>& v);

struct CocycleReport {
    bool pass = true;
    int samples = 0;
    long evaluations = 0;
    long nonzero_values = 0;
    /// Failed samples per identity.
    long constant_loop_failures = 0;
    long invariance_failures = 0;
    long closedness_failures = 0;
    std::vector<std::string> failures;
};

/// Relative-cocycle identities on seeded random samples: vanishing on g (x) 1,
/// g-invariance, and closedness under the Chevalley-Eilenberg differential.
CocycleReport cocycle_check(const LieAlgebra& L, const InvariantPolynomial& P, int samples, std::uint64_t seed);

/// phi(x t^n, y t^-n) = -2n <x,y> for all basis pairs and |n| <= max_n (normalized form).
CocycleReport closed_form_check(const LieAlgebra& L, int max_n);

std::string to_string(const LieAlgebra& L, const LoopElement& v);

} // namespace cdsw
