#pragma once

#include "cdsw/rational.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cdsw {

/// A root or weight in simple-root coordinates.
using Root = std::vector<int>;

/// Root datum of a simple Lie algebra, with the invariant form normalized so
/// that long roots (and hence the highest root) have squared length 2.
struct RootSystem {
    char type = 'A';
    int rank = 0;
    /// cartan[i][j] = <alpha_i^vee, alpha_j>
    std::vector<std::vector<int>> cartan;
    /// gram[i][j] = (alpha_i, alpha_j)
    RatMat gram;
    /// Positive roots ordered by (height, descending lexicographic); the first `rank` are simple.
    std::vector<Root> positive;
    /// Coroot of each positive root in simple-coroot coordinates.
    std::vector<std::vector<int>> coroots;
    Root theta;
    std::vector<int> marks;
    RatVec rho;
    std::vector<int> exponents;
    int dual_coxeter = 0;

    std::string name() const { return std::string(1, type) + std::to_string(rank); }
    int num_positive() const { return static_cast<int>(positive.size()); }

    std::optional<int> positive_index(const Root& r) const;
    bool is_root(const Root& r) const;

    Rational inner(const RatVec& a, const RatVec& b) const;
    Rational inner(const Root& a, const Root& b) const;
    /// <x, alpha_i^vee> for x in simple-root coordinates.
    Rational coroot_pairing(const RatVec& x, int i) const;
    int coroot_pairing(const Root& x, int i) const;
    /// <x, beta^vee> for an arbitrary root beta.
    Rational pairing_with_coroot(const RatVec& x, const Root& beta) const;

    /// Fundamental-weight coordinates <x, alpha_i^vee> of x.
    RatVec to_fundamental(const RatVec& x) const;
    /// Inverse of to_fundamental.
    RatVec from_fundamental(const RatVec& f) const;

    static int height(const Root& r);

private:
    friend RootSystem build_root_system(char, int);
    std::map<Root, int> index_;
    RatMat cartan_inverse_;
};

/// Throws std::invalid_argument for a pair that is not a simple type.
RootSystem build_root_system(char type, int rank);
bool valid_type(char type, int rank);

/// <rho, theta^vee> + 1
int dual_coxeter_number(const RootSystem& rs);
/// Conjugate of the root-height partition.
std::vector<int> exponents(const RootSystem& rs);
/// Weyl dimension formula; lambda in simple-root coordinates, must be dominant integral.
Integer weyl_dim(const RootSystem& rs, const RatVec& lambda);
/// Simple reflection s_i applied to x (simple-root coordinates).
RatVec reflect(const RootSystem& rs, int i, const RatVec& x);
/// Reflection s_beta applied to a root.
Root reflect_root(const RootSystem& rs, const Root& beta, const Root& x);

struct BasisTerm {
    int index;
    int coeff;
};

/// A Lie-algebra element as a dense coordinate vector in the Chevalley basis.
using LieVec = RatVec;
using SparseLie = std::vector<std::pair<int, Rational>>;

/// Chevalley-basis realization of g with exact structure constants.
///
/// Basis order: positive root vectors (root order), then h_1..h_l, then
/// negative root vectors mirrored, so that basis index N-1-k is e_{-beta_k}.
class LieAlgebra {
public:
    explicit LieAlgebra(RootSystem rs);

    const RootSystem& roots() const { return rs_; }
    int dim() const { return dim_; }
    int rank() const { return rs_.rank; }

    int positive_index(int k) const { return k; }
    int negative_index(int k) const { return dim_ - 1 - k; }
    int cartan_index(int i) const { return rs_.num_positive() + i; }
    bool is_cartan(int b) const { return b >= rs_.num_positive() && b < rs_.num_positive() + rs_.rank; }
    /// Basis index of the root vector e_r, r a positive or negative root.
    int root_vector_index(const Root& r) const;

    /// h-weight of basis element b (zero for Cartan elements).
    const Root& weight(int b) const { return weights_[b]; }
    const std::string& name(int b) const { return names_[b]; }

    /// [b_i, b_j] as integer combination of basis elements.
    const std::vector<BasisTerm>& bracket(int i, int j) const { return table_[i * dim_ + j]; }
    LieVec bracket(const LieVec& x, const LieVec& y) const;
    /// Root-pair structure constant N_{x,y}; 0 when x+y is not a root.
    int structure_constant(const Root& x, const Root& y) const;

    /// Normalized invariant form on basis elements.
    Rational form(int i, int j) const;
    Rational form(const LieVec& x, const LieVec& y) const;
    /// Dual basis element f_b with <b_a, f_b> = delta_ab.
    const SparseLie& dual(int b) const { return dual_[b]; }
    LieVec dual_vector(int b) const;

    LieVec basis_vector(int b) const;
    /// ad(x) as a dense matrix acting on coordinate columns.
    RatMat ad(const LieVec& x) const;

private:
    RootSystem rs_;
    int dim_ = 0;
    std::vector<Root> weights_;
    std::vector<std::string> names_;
    std::vector<std::vector<BasisTerm>> table_;
    std::vector<SparseLie> form_rows_;
    std::vector<SparseLie> dual_;
    std::map<std::pair<Root, Root>, int> npos_;
};

LieAlgebra chevalley_lie_algebra(const RootSystem& rs);

nlohmann::json to_json(const RootSystem& rs);
nlohmann::json to_json(const LieAlgebra& L);
/// Stable content hash of the structure-constant table and form.
std::string structure_hash(const LieAlgebra& L);

} // namespace cdsw
