#pragma once

#include "cdsw/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace cdsw {

/// Sparse integer row: (column, value) pairs, strictly increasing columns, no zeros.
using IntRow = std::vector<std::pair<int, Integer>>;
/// Sparse rational row with the same conventions.
using RatRow = std::vector<std::pair<int, Rational>>;

/// Clears denominators and divides out the content; the leading entry is made positive.
IntRow primitive_row(const RatRow& row);
void make_primitive(IntRow& row);

/// Incrementally built row-echelon basis over the integers.
///
/// Rows are kept primitive and each row's leading column is its pivot.
/// Elimination is fraction-free: a candidate v is replaced by
/// (a/g) v - (b/g) r where a, b are the two leading coefficients.
class EchelonBasis {
public:
    explicit EchelonBasis(int columns = 0);

    int columns() const { return columns_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    bool full() const { return rank() == columns_; }

    /// Adds a row to the span; returns true if it increased the rank.
    bool insert(IntRow row);
    bool insert(const RatRow& row) { return insert(primitive_row(row)); }

    /// Canonical representative of row modulo the span: zero on all pivot columns.
    RatRow reduce(const RatRow& row) const;

    bool is_pivot(int column) const { return pivot_row_[column] >= 0; }
    std::vector<int> pivots() const;
    /// Columns that are not pivots, ascending.
    std::vector<int> complement() const;

    const std::vector<IntRow>& rows() const { return rows_; }
    /// Restores a previously exported basis; rows must already be primitive echelon rows.
    void assign(std::vector<IntRow> rows);

private:
    int columns_;
    std::vector<IntRow> rows_;
    std::vector<int> pivot_row_;
};

/// Rank of a list of rational rows with the given column count.
int rank_of(const std::vector<RatRow>& rows, int columns);

/// Dense Gauss-Jordan inverse; throws std::domain_error when singular.
RatMat inverse(const RatMat& m);

RatMat multiply(const RatMat& a, const RatMat& b);
RatVec multiply(const RatMat& a, const RatVec& v);
RatMat transpose(const RatMat& m);
RatMat identity_matrix(std::size_t n);

} // namespace cdsw
