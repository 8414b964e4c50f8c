#include "cdsw/cartan.hpp"
#include "cdsw/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cdsw {

namespace {

Root operator+(const Root& a, const Root& b)
{
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Root operator-(const Root& a, const Root& b)
{
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Root operator-(const Root& a)
{
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

bool is_positive(const Root& r)
{
    return std::any_of(r.begin(), r.end(), [](int c) { return c > 0; });
}

Root unit(int rank, int i)
{
    Root r(rank, 0);
    r[i] = 1;
    return r;
}

RatVec to_rat(const Root& r)
{
    return RatVec(r.begin(), r.end());
}

int to_int(const Rational& q)
{
    if (!is_integer(q))
        throw std::logic_error("expected an integer, got " + to_string(q));
    return static_cast<int>(q.get_num().get_si());
}

// Squared lengths of simple roots and Dynkin edges, Bourbaki labelling, long roots of length 2.
void dynkin_data(char type, int l, std::vector<Rational>& len, std::vector<std::pair<int, int>>& edges)
{
    len.assign(l, Rational(2));
    edges.clear();
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i)
            edges.emplace_back(i, i + 1);
    };
    switch (type) {
    case 'A':
        chain(l);
        break;
    case 'B':
        chain(l);
        len[l - 1] = 1;
        break;
    case 'C':
        chain(l);
        for (int i = 0; i + 1 < l; ++i)
            len[i] = 1;
        break;
    case 'D':
        chain(l - 1);
        edges.emplace_back(l - 3, l - 1);
        break;
    case 'E':
        edges.emplace_back(0, 2);
        edges.emplace_back(1, 3);
        for (int i = 2; i + 1 < l; ++i)
            edges.emplace_back(i, i + 1);
        break;
    case 'F':
        chain(4);
        len[2] = len[3] = 1;
        break;
    case 'G':
        chain(2);
        len[0] = Rational(2, 3);
        break;
    default:
        throw std::invalid_argument("unknown type");
    }
}

} // namespace

bool valid_type(char type, int rank)
{
    switch (type) {
    case 'A':
        return rank >= 1 && rank <= 32;
    case 'B':
    case 'C':
        return rank >= 2 && rank <= 32;
    case 'D':
        return rank >= 4 && rank <= 32;
    case 'E':
        return rank >= 6 && rank <= 8;
    case 'F':
        return rank == 4;
    case 'G':
        return rank == 2;
    default:
        return false;
    }
}

int RootSystem::height(const Root& r)
{
    return std::accumulate(r.begin(), r.end(), 0);
}

std::optional<int> RootSystem::positive_index(const Root& r) const
{
    auto it = index_.find(r);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool RootSystem::is_root(const Root& r) const
{
    return index_.count(r) > 0 || index_.count(-r) > 0;
}

Rational RootSystem::inner(const RatVec& a, const RatVec& b) const
{
    Rational s = 0;
    for (int i = 0; i < rank; ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; j < rank; ++j)
            if (b[j] != 0 && gram[i][j] != 0)
                s += a[i] * gram[i][j] * b[j];
    }
    return s;
}

Rational RootSystem::inner(const Root& a, const Root& b) const
{
    return inner(to_rat(a), to_rat(b));
}

Rational RootSystem::coroot_pairing(const RatVec& x, int i) const
{
    Rational s = 0;
    for (int j = 0; j < rank; ++j)
        s += x[j] * cartan[i][j];
    return s;
}

int RootSystem::coroot_pairing(const Root& x, int i) const
{
    int s = 0;
    for (int j = 0; j < rank; ++j)
        s += x[j] * cartan[i][j];
    return s;
}

Rational RootSystem::pairing_with_coroot(const RatVec& x, const Root& beta) const
{
    return 2 * inner(x, to_rat(beta)) / inner(beta, beta);
}

RatVec RootSystem::to_fundamental(const RatVec& x) const
{
    RatVec f(rank);
    for (int i = 0; i < rank; ++i)
        f[i] = coroot_pairing(x, i);
    return f;
}

RatVec RootSystem::from_fundamental(const RatVec& f) const
{
    return multiply(cartan_inverse_, f);
}

RootSystem build_root_system(char type, int rank)
{
    if (!valid_type(type, rank))
        throw std::invalid_argument("invalid simple type " + std::string(1, type) + std::to_string(rank));

    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    const int l = rank;

    std::vector<Rational> len;
    std::vector<std::pair<int, int>> edges;
    dynkin_data(type, l, len, edges);
    rs.gram.assign(l, RatVec(l, 0));
    for (int i = 0; i < l; ++i)
        rs.gram[i][i] = len[i];
    for (auto [i, j] : edges) {
        const Rational v = -std::max(len[i], len[j]) / 2;
        rs.gram[i][j] = rs.gram[j][i] = v;
    }
    rs.cartan.assign(l, std::vector<int>(l, 0));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            rs.cartan[i][j] = to_int(2 * rs.gram[i][j] / rs.gram[i][i]);

    // Closure under simple-root strings, one height at a time.
    std::vector<Root> all;
    std::map<Root, int> seen;
    std::vector<Root> layer;
    for (int i = 0; i < l; ++i)
        layer.push_back(unit(l, i));
    for (auto& r : layer)
        seen[r] = 0;
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end(), std::greater<>());
        all.insert(all.end(), layer.begin(), layer.end());
        std::vector<Root> next;
        for (const Root& beta : layer) {
            for (int i = 0; i < l; ++i) {
                if (beta == unit(l, i))
                    continue;
                int p = 0;
                Root down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!seen.count(down))
                        break;
                    ++p;
                }
                const int q = p - rs.coroot_pairing(beta, i);
                if (q > 0) {
                    Root up = beta;
                    up[i] += 1;
                    if (!seen.count(up)) {
                        seen[up] = 0;
                        next.push_back(up);
                    }
                }
            }
        }
        layer = std::move(next);
    }
    rs.positive = std::move(all);
    for (int k = 0; k < rs.num_positive(); ++k)
        rs.index_[rs.positive[k]] = k;

    for (const Root& beta : rs.positive) {
        std::vector<int> c(l);
        const Rational bb = rs.inner(beta, beta);
        for (int j = 0; j < l; ++j)
            c[j] = to_int(beta[j] * rs.gram[j][j] / bb);
        rs.coroots.push_back(std::move(c));
    }

    rs.theta = rs.positive.back();
    rs.marks = rs.theta;
    rs.rho.assign(l, 0);
    for (const Root& beta : rs.positive)
        for (int j = 0; j < l; ++j)
            rs.rho[j] += beta[j];
    for (auto& x : rs.rho)
        x /= 2;

    RatMat cm(l, RatVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            cm[i][j] = rs.cartan[i][j];
    rs.cartan_inverse_ = inverse(cm);

    if (rs.inner(rs.theta, rs.theta) != 2)
        throw std::logic_error("highest root not normalized");
    rs.dual_coxeter = dual_coxeter_number(rs);
    rs.exponents = exponents(rs);
    return rs;
}

int dual_coxeter_number(const RootSystem& rs)
{
    return to_int(rs.pairing_with_coroot(rs.rho, rs.theta)) + 1;
}

std::vector<int> exponents(const RootSystem& rs)
{
    std::map<int, int> per_height;
    for (const Root& r : rs.positive)
        ++per_height[RootSystem::height(r)];
    std::vector<int> out;
    for (int j = 1; j <= rs.rank; ++j) {
        int m = 0;
        for (auto [h, n] : per_height)
            if (n >= rs.rank + 1 - j)
                ++m;
        out.push_back(m);
    }
    return out;
}

Integer weyl_dim(const RootSystem& rs, const RatVec& lambda)
{
    if (static_cast<int>(lambda.size()) != rs.rank)
        throw std::invalid_argument("weyl_dim: weight has wrong length");
    for (int i = 0; i < rs.rank; ++i) {
        const Rational c = rs.coroot_pairing(lambda, i);
        if (!is_integer(c) || c < 0)
            throw std::invalid_argument("weyl_dim: weight is not dominant integral");
    }
    RatVec shifted(rs.rank);
    for (int i = 0; i < rs.rank; ++i)
        shifted[i] = lambda[i] + rs.rho[i];
    Rational num = 1, den = 1;
    for (const Root& a : rs.positive) {
        num *= rs.pairing_with_coroot(shifted, a);
        den *= rs.pairing_with_coroot(rs.rho, a);
    }
    const Rational d = num / den;
    if (!is_integer(d))
        throw std::logic_error("weyl_dim: non-integral dimension");
    return d.get_num();
}

RatVec reflect(const RootSystem& rs, int i, const RatVec& x)
{
    RatVec y = x;
    y[i] -= rs.coroot_pairing(x, i);
    return y;
}

Root reflect_root(const RootSystem& rs, const Root& beta, const Root& x)
{
    const Rational c = rs.pairing_with_coroot(to_rat(x), beta);
    const int k = to_int(c);
    Root y = x;
    for (int j = 0; j < rs.rank; ++j)
        y[j] -= k * beta[j];
    return y;
}

// --- Chevalley basis -------------------------------------------------------

namespace {

// Structure constants N_{x,y} fixed by extraspecial pairs with positive sign,
// then propagated through the standard relations among N's.
class StructureConstants {
public:
    explicit StructureConstants(const RootSystem& rs) : rs_(rs)
    {
        std::vector<int> order(rs.num_positive());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return RootSystem::height(rs.positive[a]) < RootSystem::height(rs.positive[b]);
        });
        for (int k : order) {
            const Root& xi = rs.positive[k];
            if (RootSystem::height(xi) < 2)
                continue;
            int i = 0;
            while (!rs.positive_index(xi - unit(rs.rank, i)))
                ++i;
            const Root alpha = unit(rs.rank, i);
            const Root beta = xi - alpha;
            int p = 0;
            Root down = beta - alpha;
            while (rs.is_root(down)) {
                ++p;
                down = down - alpha;
            }
            set_positive(alpha, beta, p + 1);
            for (const Root& gamma : rs.positive) {
                const Root delta = xi - gamma;
                if (!rs.positive_index(delta) || gamma == alpha || gamma == beta)
                    continue;
                if (pos_.count({gamma, delta}))
                    continue;
                // Four-root relation applied to (gamma, delta, -alpha, -beta).
                Rational s = 0;
                const Root da = delta - alpha;
                if (rs.is_root(da))
                    s += Rational(get(delta, -alpha) * get(gamma, -beta)) / rs.inner(da, da);
                const Root ga = gamma - alpha;
                if (rs.is_root(ga))
                    s += Rational(get(-alpha, gamma) * get(delta, -beta)) / rs.inner(ga, ga);
                const Rational n = rs.inner(xi, xi) / get(alpha, beta) * s;
                set_positive(gamma, delta, to_int(n));
            }
        }
    }

    int get(const Root& x, const Root& y) const
    {
        const Root s = x + y;
        if (!rs_.is_root(s))
            return 0;
        const bool xp = is_positive(x), yp = is_positive(y);
        if (xp && yp)
            return pos_.at({x, y});
        if (!xp && !yp)
            return -get(-x, -y);
        const Root z = -s;
        const bool zp = is_positive(z);
        // N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y)
        Rational v;
        if (xp)
            v = zp ? rs_.inner(z, z) / rs_.inner(y, y) * get(z, x) : rs_.inner(z, z) / rs_.inner(x, x) * get(y, z);
        else
            v = zp ? rs_.inner(z, z) / rs_.inner(x, x) * get(y, z) : rs_.inner(z, z) / rs_.inner(y, y) * get(z, x);
        return to_int(v);
    }

private:
    void set_positive(const Root& a, const Root& b, int n)
    {
        pos_[{a, b}] = n;
        pos_[{b, a}] = -n;
    }

    const RootSystem& rs_;
    std::map<std::pair<Root, Root>, int> pos_;
};

std::string root_name(const Root& r)
{
    std::string s;
    for (int c : r)
        s += std::to_string(std::abs(c));
    return s;
}

} // namespace

LieAlgebra::LieAlgebra(RootSystem rs) : rs_(std::move(rs))
{
    const int P = rs_.num_positive();
    const int l = rs_.rank;
    dim_ = 2 * P + l;
    weights_.assign(dim_, Root(l, 0));
    names_.resize(dim_);
    for (int k = 0; k < P; ++k) {
        weights_[k] = rs_.positive[k];
        weights_[negative_index(k)] = -rs_.positive[k];
        names_[k] = "e" + root_name(rs_.positive[k]);
        names_[negative_index(k)] = "f" + root_name(rs_.positive[k]);
    }
    for (int i = 0; i < l; ++i)
        names_[cartan_index(i)] = "h" + std::to_string(i + 1);

    StructureConstants sc(rs_);
    auto is_root_vec = [&](int b) { return !is_cartan(b); };
    // coroot of weights_[b] for root vectors, in h-coordinates
    auto coroot_terms = [&](int b) {
        std::vector<BasisTerm> t;
        const bool pos = b < P;
        const int k = pos ? b : dim_ - 1 - b;
        for (int j = 0; j < l; ++j)
            if (rs_.coroots[k][j] != 0)
                t.push_back({cartan_index(j), pos ? rs_.coroots[k][j] : -rs_.coroots[k][j]});
        return t;
    };

    table_.assign(static_cast<std::size_t>(dim_) * dim_, {});
    for (int a = 0; a < dim_; ++a) {
        for (int b = 0; b < dim_; ++b) {
            auto& out = table_[a * dim_ + b];
            if (is_root_vec(a) && is_root_vec(b)) {
                const Root s = weights_[a] + weights_[b];
                if (std::all_of(s.begin(), s.end(), [](int c) { return c == 0; })) {
                    out = coroot_terms(a);
                } else if (rs_.is_root(s)) {
                    const int n = sc.get(weights_[a], weights_[b]);
                    npos_[{weights_[a], weights_[b]}] = n;
                    out.push_back({root_vector_index(s), n});
                }
            } else if (is_cartan(a) && is_root_vec(b)) {
                const int c = rs_.coroot_pairing(weights_[b], a - P);
                if (c != 0)
                    out.push_back({b, c});
            } else if (is_root_vec(a) && is_cartan(b)) {
                const int c = rs_.coroot_pairing(weights_[a], b - P);
                if (c != 0)
                    out.push_back({a, -c});
            }
        }
    }

    // <e_x, e_-x> = 2/(x,x); <h_i,h_j> = (alpha_i^vee, alpha_j^vee)
    form_rows_.assign(dim_, {});
    RatMat hgram(l, RatVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            hgram[i][j] = 4 * rs_.gram[i][j] / (rs_.gram[i][i] * rs_.gram[j][j]);
    for (int k = 0; k < P; ++k) {
        const Rational v = Rational(2) / rs_.inner(rs_.positive[k], rs_.positive[k]);
        form_rows_[k].emplace_back(negative_index(k), v);
        form_rows_[negative_index(k)].emplace_back(k, v);
    }
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (hgram[i][j] != 0)
                form_rows_[cartan_index(i)].emplace_back(cartan_index(j), hgram[i][j]);

    dual_.assign(dim_, {});
    const RatMat hinv = inverse(hgram);
    for (int k = 0; k < P; ++k) {
        const Rational v = rs_.inner(rs_.positive[k], rs_.positive[k]) / 2;
        dual_[k].emplace_back(negative_index(k), v);
        dual_[negative_index(k)].emplace_back(k, v);
    }
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (hinv[i][j] != 0)
                dual_[cartan_index(i)].emplace_back(cartan_index(j), hinv[i][j]);
}

int LieAlgebra::root_vector_index(const Root& r) const
{
    if (auto k = rs_.positive_index(r))
        return *k;
    Root n(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        n[i] = -r[i];
    if (auto k = rs_.positive_index(n))
        return negative_index(*k);
    throw std::invalid_argument("root_vector_index: not a root");
}

int LieAlgebra::structure_constant(const Root& x, const Root& y) const
{
    auto it = npos_.find({x, y});
    return it == npos_.end() ? 0 : it->second;
}

LieVec LieAlgebra::bracket(const LieVec& x, const LieVec& y) const
{
    LieVec out(dim_, 0);
    for (int a = 0; a < dim_; ++a) {
        if (x[a] == 0)
            continue;
        for (int b = 0; b < dim_; ++b) {
            if (y[b] == 0)
                continue;
            const Rational c = x[a] * y[b];
            for (const auto& t : bracket(a, b))
                out[t.index] += c * t.coeff;
        }
    }
    return out;
}

Rational LieAlgebra::form(int i, int j) const
{
    for (const auto& [k, v] : form_rows_[i])
        if (k == j)
            return v;
    return 0;
}

Rational LieAlgebra::form(const LieVec& x, const LieVec& y) const
{
    Rational s = 0;
    for (int a = 0; a < dim_; ++a) {
        if (x[a] == 0)
            continue;
        for (const auto& [b, v] : form_rows_[a])
            if (y[b] != 0)
                s += x[a] * v * y[b];
    }
    return s;
}

LieVec LieAlgebra::dual_vector(int b) const
{
    LieVec v(dim_, 0);
    for (const auto& [k, c] : dual_[b])
        v[k] = c;
    return v;
}

LieVec LieAlgebra::basis_vector(int b) const
{
    LieVec v(dim_, 0);
    v[b] = 1;
    return v;
}

RatMat LieAlgebra::ad(const LieVec& x) const
{
    RatMat m(dim_, RatVec(dim_, 0));
    for (int a = 0; a < dim_; ++a) {
        if (x[a] == 0)
            continue;
        for (int b = 0; b < dim_; ++b)
            for (const auto& t : bracket(a, b))
                m[t.index][b] += x[a] * t.coeff;
    }
    return m;
}

LieAlgebra chevalley_lie_algebra(const RootSystem& rs)
{
    return LieAlgebra(rs);
}

nlohmann::json to_json(const RootSystem& rs)
{
    using nlohmann::json;
    json j;
    j["type"] = std::string(1, rs.type);
    j["rank"] = rs.rank;
    j["cartan"] = rs.cartan;
    json g = json::array();
    for (const auto& row : rs.gram) {
        json r = json::array();
        for (const auto& v : row)
            r.push_back(to_string(v));
        g.push_back(r);
    }
    j["gram"] = g;
    j["positive_roots"] = rs.positive;
    j["theta"] = rs.theta;
    j["marks"] = rs.marks;
    json rho = json::array();
    for (const auto& v : rs.rho)
        rho.push_back(to_string(v));
    j["rho"] = rho;
    j["exponents"] = rs.exponents;
    j["dual_coxeter"] = rs.dual_coxeter;
    return j;
}

nlohmann::json to_json(const LieAlgebra& L)
{
    using nlohmann::json;
    json j;
    j["root_system"] = to_json(L.roots());
    j["dim"] = L.dim();
    json names = json::array();
    for (int b = 0; b < L.dim(); ++b)
        names.push_back(L.name(b));
    j["basis"] = names;
    json sc = json::array();
    for (int a = 0; a < L.dim(); ++a)
        for (int b = 0; b < L.dim(); ++b)
            for (const auto& t : L.bracket(a, b))
                sc.push_back({a, b, t.index, t.coeff});
    j["structure_constants"] = sc;
    json form = json::array();
    json dual = json::array();
    for (int a = 0; a < L.dim(); ++a) {
        for (int b = 0; b < L.dim(); ++b) {
            const Rational v = L.form(a, b);
            if (v != 0)
                form.push_back({a, b, to_string(v)});
        }
        json d = json::array();
        for (const auto& [k, c] : L.dual(a))
            d.push_back({k, to_string(c)});
        dual.push_back(d);
    }
    j["form"] = form;
    j["dual_basis"] = dual;
    return j;
}

std::string structure_hash(const LieAlgebra& L)
{
    const nlohmann::json j = to_json(L);
    const std::string text = j["structure_constants"].dump() + j["form"].dump();
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

} // namespace cdsw
