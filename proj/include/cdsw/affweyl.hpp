#pragma once

#include "cdsw/cartan.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace cdsw {

/// Word s_{i1} s_{i2} ... s_{ik} over {0..l}; 0 is the affine reflection.
using Word = std::vector<int>;

std::string word_str(const Word& w);
/// Parses "0,2,1", "[0,2,1]" or "" (identity).
Word parse_word(const std::string& s);

/// Element of the affine Weyl group acting on h by x -> linear*x + translation,
/// coordinates in the simple-coroot basis.
struct AffWeylElt {
    RatMat linear;
    RatVec translation;
    Word word;
    int length = 0;

    RatVec apply(const RatVec& x) const;
};

AffWeylElt identity_element(const RootSystem& rs);
AffWeylElt simple_reflection(const RootSystem& rs, int i);
/// Composition a∘b.
AffWeylElt compose(const AffWeylElt& a, const AffWeylElt& b);
AffWeylElt inverse(const AffWeylElt& w);
/// The element s_{i1}∘...∘s_{ik}; length is set to the word length (not checked).
AffWeylElt from_word(const RootSystem& rs, const Word& word);

/// Vertices 0 and fundamental coweight_i / mark_i of the fundamental alcove C.
std::vector<RatVec> alcove_vertices(const RootSystem& rs);
/// alpha_i(x) for each simple root, x in coroot coordinates.
RatVec simple_root_values(const RootSystem& rs, const RatVec& x);
Rational theta_value(const RootSystem& rs, const RatVec& x);

struct AlcovePosition {
    bool in_dominant_chamber = false;
    bool in_2C = false;
};
/// Position of w^{-1}C (closed alcoves).
AlcovePosition alcove_position(const RootSystem& rs, const AffWeylElt& w);

/// The elements w with w^{-1}C in 2C, by breadth-first search on w^{-1}; sorted by (length, word).
std::vector<AffWeylElt> enumerate_aff2(const RootSystem& rs);

/// Number of affine hyperplanes separating C from w^{-1}C; equals the length of w.
int separating_hyperplanes(const RootSystem& rs, const AffWeylElt& w);

/// Real affine root alpha + k delta; alpha in simple-root coordinates.
struct AffineRoot {
    Root finite;
    int k = 0;
    bool positive() const;
    friend auto operator<=>(const AffineRoot&, const AffineRoot&) = default;
};
AffineRoot affine_simple_root(const RootSystem& rs, int i);
AffineRoot reflect(const RootSystem& rs, int i, const AffineRoot& r);
/// w(r) for w given by a word.
AffineRoot apply_word(const RootSystem& rs, const Word& w, const AffineRoot& r);
/// {r > 0 : w r < 0}; throws std::logic_error if the word is not reduced.
std::vector<AffineRoot> inversion_set(const RootSystem& rs, const Word& w);
std::string to_string(const AffineRoot& r);

/// lambda-bar in fundamental-weight coordinates + level * Lambda_0 + delta_coeff * delta.
struct AffineWeight {
    RatVec finite;
    Rational level;
    Rational delta;
    friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
    AffineWeight operator+(const AffineWeight& o) const;
    AffineWeight operator-(const AffineWeight& o) const;
    /// Value at d.
    Rational at_x0() const { return delta; }
};

AffineWeight rho_hat(const RootSystem& rs);
AffineWeight reflect(const RootSystem& rs, int i, const AffineWeight& w);
AffineWeight weight_action(const RootSystem& rs, const Word& w, const AffineWeight& lambda);
/// lambda(alpha_i^vee) for i = 0..l.
Rational coroot_value(const RootSystem& rs, int i, const AffineWeight& lambda);

/// (u^{-1}rho + v^{-1}rho - w^{-1}rho - rho)(x0), rho = rho-hat.
Rational d_degree(const RootSystem& rs, const Word& u, const Word& v, const Word& w);

/// rho - u^{-1}rho split as delta coefficient and finite part (simple-root coordinates).
struct RhoDefect {
    Rational delta;
    RatVec finite;
    bool finite_in_root_lattice = false;
};
RhoDefect rho_defect(const RootSystem& rs, const Word& u);

nlohmann::json aff2_to_json(const RootSystem& rs, const std::vector<AffWeylElt>& elts);

} // namespace cdsw
