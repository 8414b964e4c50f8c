#include "cdsw/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdsw {

void make_primitive(IntRow& row)
{
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    if (row.front().second < 0)
        g = -g;
    if (g != 1) {
        for (auto& [c, v] : row)
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

IntRow primitive_row(const RatRow& row)
{
    Integer l = 1;
    for (const auto& [c, v] : row)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
        if (v == 0)
            continue;
        Integer x = l / v.get_den();
        x *= v.get_num();
        out.emplace_back(c, std::move(x));
    }
    make_primitive(out);
    return out;
}

EchelonBasis::EchelonBasis(int columns) : columns_(columns), pivot_row_(columns, -1) {}

namespace {

// v <- a*v - b*r, both sorted sparse; the leading columns cancel.
IntRow combine(const IntRow& v, const Integer& a, const IntRow& r, const Integer& b)
{
    IntRow out;
    out.reserve(v.size() + r.size());
    std::size_t i = 0, j = 0;
    Integer tmp;
    while (i < v.size() || j < r.size()) {
        if (j == r.size() || (i < v.size() && v[i].first < r[j].first)) {
            out.emplace_back(v[i].first, a * v[i].second);
            ++i;
        } else if (i == v.size() || r[j].first < v[i].first) {
            out.emplace_back(r[j].first, -b * r[j].second);
            ++j;
        } else {
            tmp = a * v[i].second;
            tmp -= b * r[j].second;
            if (tmp != 0)
                out.emplace_back(v[i].first, tmp);
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

bool EchelonBasis::insert(IntRow row)
{
    if (full())
        return false;
    make_primitive(row);
    Integer g, a, b;
    while (!row.empty()) {
        const int lead = row.front().first;
        const int k = pivot_row_[lead];
        if (k < 0) {
            pivot_row_[lead] = static_cast<int>(rows_.size());
            rows_.push_back(std::move(row));
            return true;
        }
        const IntRow& r = rows_[k];
        mpz_gcd(g.get_mpz_t(), r.front().second.get_mpz_t(), row.front().second.get_mpz_t());
        a = r.front().second / g;
        b = row.front().second / g;
        row = combine(row, a, r, b);
        make_primitive(row);
    }
    return false;
}

RatRow EchelonBasis::reduce(const RatRow& row) const
{
    // Rows are processed in increasing pivot column; each step only touches later columns.
    std::vector<std::pair<int, Rational>> v(row.begin(), row.end());
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    RatRow done;
    Rational f;
    std::size_t pos = 0;
    while (pos < v.size()) {
        const int lead = v[pos].first;
        const int k = pivot_row_[lead];
        if (k < 0) {
            done.push_back(std::move(v[pos]));
            ++pos;
            continue;
        }
        const IntRow& r = rows_[k];
        f = v[pos].second / Rational(r.front().second);
        RatRow next;
        next.reserve(v.size() - pos + r.size());
        std::size_t i = pos + 1, j = 1;
        while (i < v.size() || j < r.size()) {
            if (j == r.size() || (i < v.size() && v[i].first < r[j].first)) {
                next.push_back(std::move(v[i]));
                ++i;
            } else if (i == v.size() || r[j].first < v[i].first) {
                next.emplace_back(r[j].first, -f * r[j].second);
                ++j;
            } else {
                Rational t = v[i].second - f * r[j].second;
                if (t != 0)
                    next.emplace_back(v[i].first, std::move(t));
                ++i;
                ++j;
            }
        }
        v = std::move(next);
        pos = 0;
    }
    return done;
}

std::vector<int> EchelonBasis::pivots() const
{
    std::vector<int> out;
    for (int c = 0; c < columns_; ++c)
        if (pivot_row_[c] >= 0)
            out.push_back(c);
    return out;
}

std::vector<int> EchelonBasis::complement() const
{
    std::vector<int> out;
    for (int c = 0; c < columns_; ++c)
        if (pivot_row_[c] < 0)
            out.push_back(c);
    return out;
}

void EchelonBasis::assign(std::vector<IntRow> rows)
{
    std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
    rows_ = std::move(rows);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const auto& r = rows_[k];
        if (r.empty() || r.front().first >= columns_ || pivot_row_[r.front().first] >= 0)
            throw std::invalid_argument("EchelonBasis::assign: not an echelon basis");
        pivot_row_[r.front().first] = static_cast<int>(k);
    }
}

int rank_of(const std::vector<RatRow>& rows, int columns)
{
    EchelonBasis e(columns);
    for (const auto& r : rows) {
        e.insert(r);
        if (e.full())
            break;
    }
    return e.rank();
}

RatMat inverse(const RatMat& m)
{
    const std::size_t n = m.size();
    RatMat a = m;
    RatMat inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col] == 0)
            ++p;
        if (p == n)
            throw std::domain_error("inverse: singular matrix");
        std::swap(a[p], a[col]);
        std::swap(inv[p], inv[col]);
        const Rational d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0)
                continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RatMat multiply(const RatMat& a, const RatMat& b)
{
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat out(n, RatVec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

RatVec multiply(const RatMat& a, const RatVec& v)
{
    RatVec out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out[i] += a[i][j] * v[j];
    return out;
}

RatMat transpose(const RatMat& m)
{
    if (m.empty())
        return {};
    RatMat t(m[0].size(), RatVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

RatMat identity_matrix(std::size_t n)
{
    RatMat m(n, RatVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

} // namespace cdsw
