#include "cdsw/affweyl.hpp"
#include "cdsw/linalg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cdsw {

namespace {

const std::vector<int>& theta_coroot(const RootSystem& rs)
{
    return rs.coroots[*rs.positive_index(rs.theta)];
}

void check_letter(const RootSystem& rs, int i)
{
    if (i < 0 || i > rs.rank)
        throw std::invalid_argument("reflection index " + std::to_string(i) + " out of range 0.." +
                                    std::to_string(rs.rank));
}

std::vector<Rational> key_of(const AffWeylElt& w)
{
    std::vector<Rational> k;
    for (const auto& row : w.linear)
        k.insert(k.end(), row.begin(), row.end());
    k.insert(k.end(), w.translation.begin(), w.translation.end());
    return k;
}

Integer floor_of(const Rational& x)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Word reversed(Word w)
{
    std::reverse(w.begin(), w.end());
    return w;
}

} // namespace

std::string word_str(const Word& w)
{
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i]);
    return s + "]";
}

Word parse_word(const std::string& s)
{
    Word w;
    std::string cleaned;
    for (char c : s)
        if (c != '[' && c != ']' && c != ' ' && c != '\'' && c != '"')
            cleaned += c;
    if (cleaned.empty())
        return w;
    std::stringstream in(cleaned);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed word: " + s);
        w.push_back(std::stoi(tok));
    }
    return w;
}

RatVec AffWeylElt::apply(const RatVec& x) const
{
    RatVec y = multiply(linear, x);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += translation[i];
    return y;
}

AffWeylElt identity_element(const RootSystem& rs)
{
    return {identity_matrix(rs.rank), RatVec(rs.rank, 0), {}, 0};
}

AffWeylElt simple_reflection(const RootSystem& rs, int i)
{
    check_letter(rs, i);
    AffWeylElt s = identity_element(rs);
    s.word = {i};
    s.length = 1;
    if (i > 0) {
        // x - alpha_i(x) alpha_i^vee
        for (int k = 0; k < rs.rank; ++k)
            s.linear[i - 1][k] -= rs.cartan[k][i - 1];
        return s;
    }
    // x - (theta(x) - 1) theta^vee
    const auto& tc = theta_coroot(rs);
    for (int k = 0; k < rs.rank; ++k) {
        Rational th = 0;
        for (int j = 0; j < rs.rank; ++j)
            th += rs.theta[j] * rs.cartan[k][j];
        for (int r = 0; r < rs.rank; ++r)
            s.linear[r][k] -= tc[r] * th;
    }
    for (int r = 0; r < rs.rank; ++r)
        s.translation[r] = tc[r];
    return s;
}

AffWeylElt compose(const AffWeylElt& a, const AffWeylElt& b)
{
    AffWeylElt c;
    c.linear = multiply(a.linear, b.linear);
    c.translation = a.apply(b.translation);
    c.word = a.word;
    c.word.insert(c.word.end(), b.word.begin(), b.word.end());
    c.length = a.length + b.length;
    return c;
}

AffWeylElt inverse(const AffWeylElt& w)
{
    AffWeylElt v;
    v.linear = inverse(w.linear);
    v.translation = multiply(v.linear, w.translation);
    for (auto& x : v.translation)
        x = -x;
    v.word = reversed(w.word);
    v.length = w.length;
    return v;
}

AffWeylElt from_word(const RootSystem& rs, const Word& word)
{
    AffWeylElt w = identity_element(rs);
    for (int i : word)
        w = compose(w, simple_reflection(rs, i));
    return w;
}

RatVec simple_root_values(const RootSystem& rs, const RatVec& x)
{
    RatVec v(rs.rank, 0);
    for (int j = 0; j < rs.rank; ++j)
        for (int k = 0; k < rs.rank; ++k)
            v[j] += x[k] * rs.cartan[k][j];
    return v;
}

Rational theta_value(const RootSystem& rs, const RatVec& x)
{
    const RatVec v = simple_root_values(rs, x);
    Rational t = 0;
    for (int j = 0; j < rs.rank; ++j)
        t += rs.theta[j] * v[j];
    return t;
}

std::vector<RatVec> alcove_vertices(const RootSystem& rs)
{
    RatMat c(rs.rank, RatVec(rs.rank));
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j < rs.rank; ++j)
            c[i][j] = rs.cartan[i][j];
    const RatMat cinv = inverse(c);
    std::vector<RatVec> out{RatVec(rs.rank, 0)};
    for (int i = 0; i < rs.rank; ++i) {
        // fundamental coweight: alpha_j(x) = delta_ij
        RatVec x(rs.rank);
        for (int k = 0; k < rs.rank; ++k)
            x[k] = cinv[i][k] / rs.marks[i];
        out.push_back(std::move(x));
    }
    return out;
}

AlcovePosition alcove_position(const RootSystem& rs, const AffWeylElt& w)
{
    const AffWeylElt v = inverse(w);
    AlcovePosition pos{true, true};
    for (const RatVec& vert : alcove_vertices(rs)) {
        const RatVec y = v.apply(vert);
        for (const Rational& a : simple_root_values(rs, y))
            if (a < 0)
                pos.in_dominant_chamber = pos.in_2C = false;
        if (theta_value(rs, y) > 2)
            pos.in_2C = false;
    }
    return pos;
}

std::vector<AffWeylElt> enumerate_aff2(const RootSystem& rs)
{
    const auto verts = alcove_vertices(rs);
    auto inside = [&](const AffWeylElt& v) {
        for (const RatVec& vert : verts) {
            const RatVec y = v.apply(vert);
            for (const Rational& a : simple_root_values(rs, y))
                if (a < 0)
                    return false;
            if (theta_value(rs, y) > 2)
                return false;
        }
        return true;
    };
    std::vector<AffWeylElt> gens;
    for (int i = 0; i <= rs.rank; ++i)
        gens.push_back(simple_reflection(rs, i));

    std::map<std::vector<Rational>, int> seen;
    std::vector<AffWeylElt> found{identity_element(rs)};
    seen[key_of(found[0])] = 0;
    for (std::size_t head = 0; head < found.size(); ++head)
        for (const auto& s : gens) {
            AffWeylElt next = compose(found[head], s);
            if (seen.count(key_of(next)) || !inside(next))
                continue;
            seen[key_of(next)] = static_cast<int>(found.size());
            found.push_back(std::move(next));
        }

    std::vector<AffWeylElt> out;
    for (const auto& v : found)
        out.push_back(inverse(v));
    std::sort(out.begin(), out.end(), [](const AffWeylElt& a, const AffWeylElt& b) {
        return std::tie(a.length, a.word) < std::tie(b.length, b.word);
    });
    return out;
}

int separating_hyperplanes(const RootSystem& rs, const AffWeylElt& w)
{
    const auto verts = alcove_vertices(rs);
    RatVec bary(rs.rank, 0);
    for (const auto& v : verts)
        for (int i = 0; i < rs.rank; ++i)
            bary[i] += v[i];
    for (auto& x : bary)
        x /= static_cast<long>(verts.size());
    const RatVec vals = simple_root_values(rs, inverse(w).apply(bary));
    Integer count = 0;
    for (const Root& alpha : rs.positive) {
        Rational a = 0;
        for (int j = 0; j < rs.rank; ++j)
            a += alpha[j] * vals[j];
        count += abs(floor_of(a));
    }
    return static_cast<int>(count.get_si());
}

// --- affine roots --------------------------------------------------------

bool AffineRoot::positive() const
{
    if (k != 0)
        return k > 0;
    bool any = false;
    for (int x : finite) {
        if (x < 0)
            return false;
        any |= x > 0;
    }
    return any;
}

AffineRoot affine_simple_root(const RootSystem& rs, int i)
{
    check_letter(rs, i);
    AffineRoot r{Root(rs.rank, 0), 0};
    if (i > 0) {
        r.finite[i - 1] = 1;
        return r;
    }
    for (int j = 0; j < rs.rank; ++j)
        r.finite[j] = -rs.theta[j];
    r.k = 1;
    return r;
}

AffineRoot reflect(const RootSystem& rs, int i, const AffineRoot& r)
{
    check_letter(rs, i);
    AffineRoot out = r;
    if (i > 0) {
        out.finite[i - 1] -= rs.coroot_pairing(r.finite, i - 1);
        return out;
    }
    // <alpha, theta^vee> = (alpha, theta) since theta is long
    const int c = static_cast<int>(rs.inner(r.finite, rs.theta).get_num().get_si());
    for (int j = 0; j < rs.rank; ++j)
        out.finite[j] -= c * rs.theta[j];
    out.k += c;
    return out;
}

AffineRoot apply_word(const RootSystem& rs, const Word& w, const AffineRoot& r)
{
    AffineRoot out = r;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = reflect(rs, *it, out);
    return out;
}

std::vector<AffineRoot> inversion_set(const RootSystem& rs, const Word& w)
{
    std::vector<AffineRoot> inv;
    std::set<AffineRoot> seen;
    Word prefix;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const AffineRoot r = apply_word(rs, prefix, affine_simple_root(rs, *it));
        if (!r.positive() || !seen.insert(r).second)
            throw std::logic_error("word " + word_str(w) + " is not reduced");
        inv.push_back(r);
        prefix.push_back(*it);
    }
    return inv;
}

std::string to_string(const AffineRoot& r)
{
    std::string s = "(";
    for (std::size_t i = 0; i < r.finite.size(); ++i)
        s += (i ? "," : "") + std::to_string(r.finite[i]);
    return s + ")+" + std::to_string(r.k) + "d";
}

// --- affine weights ------------------------------------------------------

AffineWeight AffineWeight::operator+(const AffineWeight& o) const
{
    AffineWeight r = *this;
    for (std::size_t i = 0; i < finite.size(); ++i)
        r.finite[i] += o.finite[i];
    r.level += o.level;
    r.delta += o.delta;
    return r;
}

AffineWeight AffineWeight::operator-(const AffineWeight& o) const
{
    AffineWeight r = *this;
    for (std::size_t i = 0; i < finite.size(); ++i)
        r.finite[i] -= o.finite[i];
    r.level -= o.level;
    r.delta -= o.delta;
    return r;
}

AffineWeight rho_hat(const RootSystem& rs)
{
    return {RatVec(rs.rank, 1), Rational(rs.dual_coxeter), Rational(0)};
}

Rational coroot_value(const RootSystem& rs, int i, const AffineWeight& lambda)
{
    check_letter(rs, i);
    if (i > 0)
        return lambda.finite[i - 1];
    const auto& tc = theta_coroot(rs);
    Rational v = lambda.level;
    for (int j = 0; j < rs.rank; ++j)
        v -= lambda.finite[j] * tc[j];
    return v;
}

AffineWeight reflect(const RootSystem& rs, int i, const AffineWeight& w)
{
    const Rational n = coroot_value(rs, i, w);
    AffineWeight out = w;
    if (i > 0) {
        for (int j = 0; j < rs.rank; ++j)
            out.finite[j] -= n * rs.cartan[j][i - 1];
        return out;
    }
    // subtract n (delta - theta)
    RatVec theta(rs.theta.begin(), rs.theta.end());
    const RatVec tf = rs.to_fundamental(theta);
    for (int j = 0; j < rs.rank; ++j)
        out.finite[j] += n * tf[j];
    out.delta -= n;
    return out;
}

AffineWeight weight_action(const RootSystem& rs, const Word& w, const AffineWeight& lambda)
{
    AffineWeight out = lambda;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = reflect(rs, *it, out);
    return out;
}

Rational d_degree(const RootSystem& rs, const Word& u, const Word& v, const Word& w)
{
    const AffineWeight rho = rho_hat(rs);
    const AffineWeight sum = weight_action(rs, reversed(u), rho) + weight_action(rs, reversed(v), rho) -
                             weight_action(rs, reversed(w), rho) - rho;
    return sum.at_x0();
}

RhoDefect rho_defect(const RootSystem& rs, const Word& u)
{
    const AffineWeight rho = rho_hat(rs);
    const AffineWeight diff = rho - weight_action(rs, reversed(u), rho);
    RhoDefect d;
    d.delta = diff.delta;
    d.finite = rs.from_fundamental(diff.finite);
    d.finite_in_root_lattice = std::all_of(d.finite.begin(), d.finite.end(), is_integer);
    return d;
}

nlohmann::json aff2_to_json(const RootSystem& rs, const std::vector<AffWeylElt>& elts)
{
    nlohmann::json out = nlohmann::json::array();
    const auto verts = alcove_vertices(rs);
    for (const auto& w : elts) {
        nlohmann::json inv = nlohmann::json::array();
        for (const auto& r : inversion_set(rs, w.word))
            inv.push_back({{"finite", r.finite}, {"delta", r.k}});
        nlohmann::json vs = nlohmann::json::array();
        const AffWeylElt v = inverse(w);
        for (const auto& vert : verts) {
            nlohmann::json pt = nlohmann::json::array();
            for (const auto& x : v.apply(vert))
                pt.push_back(to_string(x));
            vs.push_back(pt);
        }
        out.push_back({{"word", w.word}, {"length", w.length}, {"inversion_set", inv}, {"alcove_vertices", vs}});
    }
    return out;
}

} // namespace cdsw
