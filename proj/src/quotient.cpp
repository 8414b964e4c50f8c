#include "cdsw/quotient.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <fcntl.h>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>
#include <sys/file.h>
#include <thread>
#include <unistd.h>

namespace cdsw {

namespace {

constexpr int kCacheFormat = 1;

std::string weight_str(const Root& w)
{
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i]);
    return s + "]";
}

Root add(Root a, const Root& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

Root sub(Root a, const Root& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

std::vector<int> copies_of(Algebra a)
{
    switch (a) {
    case Algebra::A:
        return {1, 2, 3};
    case Algebra::B:
        return {1, 2};
    case Algebra::KostantSingle:
        return {1};
    }
    return {};
}

std::pair<int, int> copy_bidegree(int copy)
{
    return copy == 1 ? std::pair{2, 0} : copy == 2 ? std::pair{0, 2} : std::pair{1, 1};
}

// Advisory lock held for the lifetime of the object.
class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path)
    {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0)
            ::flock(fd_, LOCK_EX);
    }
    ~FileLock()
    {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

nlohmann::json block_to_json(const WeightBlock& b)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const IntRow& r : b.span.rows()) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& [c, v] : r) {
            jr.push_back(c);
            jr.push_back(v.get_str());
        }
        rows.push_back(std::move(jr));
    }
    return {{"weight", b.weight}, {"dim", b.dim()}, {"rank", b.rank()}, {"pivots", b.span.pivots()}, {"rows", rows}};
}

} // namespace

std::string algebra_name(Algebra a)
{
    switch (a) {
    case Algebra::A:
        return "A";
    case Algebra::B:
        return "B";
    case Algebra::KostantSingle:
        return "K";
    }
    return "?";
}

Algebra parse_algebra(const std::string& s)
{
    if (s == "A")
        return Algebra::A;
    if (s == "B")
        return Algebra::B;
    if (s == "K" || s == "kostant")
        return Algebra::KostantSingle;
    throw std::invalid_argument("unknown algebra: " + s);
}

RatRow WeightBlock::to_row(const ExtElement& a) const
{
    RatRow row;
    row.reserve(a.size());
    for (const auto& [m, c] : a.terms()) {
        auto it = column.find(m);
        if (it == column.end())
            throw std::logic_error("monomial outside weight block " + weight_str(weight));
        row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return row;
}

// --- QuotientEngine ------------------------------------------------------

QuotientEngine::QuotientEngine(const LieAlgebra& L, QuotientConfig cfg) : L_(L), cfg_(std::move(cfg))
{
    require_exterior_capacity(L_);
    hash_ = structure_hash(L_);
    const BasisPair pair = chevalley_pair(L_);
    generators_.resize(3);
    for (int copy = 1; copy <= 3; ++copy)
        for (int b = 0; b < L_.dim(); ++b)
            generators_[copy - 1].push_back(c_embed(L_, copy, pair.basis[b], pair));
}

QuotientEngine::~QuotientEngine() = default;

const std::map<Root, std::vector<std::uint64_t>>& QuotientEngine::subsets_by_weight(int k) const
{
    std::lock_guard lock(subsets_mutex_);
    auto it = subsets_.find(k);
    if (it != subsets_.end())
        return it->second;
    std::map<Root, std::vector<std::uint64_t>> groups;
    for (std::uint64_t mask : subsets(L_.dim(), k))
        groups[weight(L_, ExtMonomial{mask, 0})].push_back(mask);
    return subsets_.emplace(k, std::move(groups)).first->second;
}

std::vector<Root> QuotientEngine::weights(int p, int q) const
{
    std::set<Root> out;
    const auto& ps = subsets_by_weight(p);
    const auto& qs = subsets_by_weight(q);
    for (const auto& [w1, l1] : ps)
        for (const auto& [w2, l2] : qs)
            out.insert(add(w1, w2));
    return {out.begin(), out.end()};
}

long QuotientEngine::block_dim(int p, int q, const Root& w) const
{
    const auto& ps = subsets_by_weight(p);
    const auto& qs = subsets_by_weight(q);
    long n = 0;
    for (const auto& [w1, l1] : ps) {
        auto it = qs.find(sub(w, w1));
        if (it != qs.end())
            n += static_cast<long>(l1.size() * it->second.size());
    }
    return n;
}

std::vector<ExtMonomial> QuotientEngine::block_monomials(int p, int q, const Root& w) const
{
    std::vector<ExtMonomial> out;
    if (p < 0 || q < 0 || p > L_.dim() || q > L_.dim())
        return out;
    const auto& ps = subsets_by_weight(p);
    const auto& qs = subsets_by_weight(q);
    for (const auto& [w1, l1] : ps) {
        auto it = qs.find(sub(w, w1));
        if (it == qs.end())
            continue;
        for (std::uint64_t hi : it->second)
            for (std::uint64_t lo : l1)
                out.push_back(ExtMonomial{lo, hi});
    }
    std::sort(out.begin(), out.end());
    return out;
}

void QuotientEngine::require_budget(Algebra a, int p, int q, const Root& w, long dim) const
{
    if (dim > cfg_.max_block_dim)
        throw ResourceError("block of weight " + weight_str(w) + " in " + algebra_name(a) + " bidegree (" +
                            std::to_string(p) + "," + std::to_string(q) + ") has dim " + std::to_string(dim) +
                            " > max-block-dim " + std::to_string(cfg_.max_block_dim));
}

void QuotientEngine::require_budget(Algebra a, const std::vector<std::pair<int, int>>& bidegrees) const
{
    const Root zero(L_.rank(), 0);
    for (auto [p, q] : bidegrees)
        require_budget(a, p, q, zero, block_dim(p, q, zero));
}

std::shared_ptr<WeightBlock> QuotientEngine::build_block(Algebra a, int p, int q, const Root& w) const
{
    auto blk = std::make_shared<WeightBlock>();
    blk->weight = w;
    blk->monomials = block_monomials(p, q, w);
    const long dim = blk->dim();
    require_budget(a, p, q, w, dim);
    for (int c = 0; c < blk->dim(); ++c)
        blk->column.emplace(blk->monomials[c], c);
    blk->span = EchelonBasis(blk->dim());
    if (dim == 0)
        return blk;

    for (int copy : copies_of(a)) {
        const auto [da, db] = copy_bidegree(copy);
        if (p < da || q < db)
            continue;
        for (int b = 0; b < L_.dim(); ++b) {
            const ExtElement& g = generators_[copy - 1][b];
            if (g.is_zero())
                continue;
            for (const ExtMonomial& m : block_monomials(p - da, q - db, sub(w, L_.weight(b)))) {
                const ExtElement row = wedge(g, m);
                if (row.is_zero())
                    continue;
                blk->span.insert(blk->to_row(row));
                if (blk->span.full())
                    return blk;
            }
        }
    }
    return blk;
}

std::filesystem::path QuotientEngine::cache_file(Algebra a, int p, int q) const
{
    return *cfg_.cache_dir / L_.roots().name() /
           (algebra_name(a) + "_" + std::to_string(p) + "_" + std::to_string(q) + ".json");
}

void QuotientEngine::load_cached(Algebra a, int p, int q)
{
    const Key key{a, p, q};
    {
        std::lock_guard lock(mutex_);
        if (loaded_[key])
            return;
        loaded_[key] = true;
    }
    if (!cfg_.cache_dir)
        return;
    const auto path = cache_file(a, p, q);
    if (!std::filesystem::exists(path))
        return;

    std::map<Root, std::shared_ptr<const WeightBlock>> found;
    try {
        FileLock lock(path.string() + ".lock");
        std::ifstream in(path);
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("format").get<int>() != kCacheFormat || j.at("hash").get<std::string>() != hash_)
            return;
        for (const auto& jb : j.at("blocks")) {
            const Root w = jb.at("weight").get<Root>();
            auto blk = std::make_shared<WeightBlock>();
            blk->weight = w;
            blk->monomials = block_monomials(p, q, w);
            if (blk->dim() != jb.at("dim").get<int>())
                return;
            for (int c = 0; c < blk->dim(); ++c)
                blk->column.emplace(blk->monomials[c], c);
            std::vector<IntRow> rows;
            for (const auto& jr : jb.at("rows")) {
                IntRow r;
                for (std::size_t k = 0; k + 1 < jr.size(); k += 2)
                    r.emplace_back(jr[k].get<int>(), Integer(jr[k + 1].get<std::string>()));
                rows.push_back(std::move(r));
            }
            blk->span = EchelonBasis(blk->dim());
            blk->span.assign(std::move(rows));
            if (blk->rank() != jb.at("rank").get<int>())
                return;
            found.emplace(w, std::move(blk));
        }
    } catch (const std::exception&) {
        // unreadable or stale cache: recompute
        return;
    }
    std::lock_guard lock(mutex_);
    auto& dest = blocks_[key];
    for (auto& [w, blk] : found)
        if (dest.emplace(w, blk).second)
            ++stats_.blocks_loaded;
}

void QuotientEngine::persist(Algebra a, int p, int q)
{
    const auto path = cache_file(a, p, q);
    std::map<Root, std::shared_ptr<const WeightBlock>> snapshot;
    {
        std::lock_guard lock(mutex_);
        snapshot = blocks_[Key{a, p, q}];
    }
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
        return;

    FileLock lock(path.string() + ".lock");
    // keep blocks another process stored under the same hash
    std::map<Root, nlohmann::json> merged;
    if (std::filesystem::exists(path)) {
        try {
            std::ifstream in(path);
            const nlohmann::json old = nlohmann::json::parse(in);
            if (old.at("format").get<int>() == kCacheFormat && old.at("hash").get<std::string>() == hash_)
                for (const auto& jb : old.at("blocks"))
                    merged[jb.at("weight").get<Root>()] = jb;
        } catch (const std::exception&) {
        }
    }
    for (const auto& [w, blk] : snapshot)
        merged[w] = block_to_json(*blk);

    nlohmann::json j = {{"format", kCacheFormat},
                        {"type", std::string(1, L_.roots().type)},
                        {"rank", L_.rank()},
                        {"algebra", algebra_name(a)},
                        {"p", p},
                        {"q", q},
                        {"hash", hash_},
                        {"blocks", nlohmann::json::array()}};
    for (auto& [w, jb] : merged)
        j["blocks"].push_back(std::move(jb));

    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << j.dump();
        if (!out)
            return;
    }
    std::filesystem::rename(tmp, path, ec);
    if (!ec) {
        std::lock_guard g(mutex_);
        ++stats_.files_written;
    }
}

void QuotientEngine::ensure_blocks(Algebra a, int p, int q, const std::vector<Root>& ws)
{
    if (a == Algebra::KostantSingle && q != 0)
        throw std::invalid_argument("single-copy quotient has q = 0");
    load_cached(a, p, q);
    const Key key{a, p, q};
    std::vector<Root> missing;
    {
        std::lock_guard lock(mutex_);
        const auto& have = blocks_[key];
        for (const Root& w : ws)
            if (!have.count(w) && std::find(missing.begin(), missing.end(), w) == missing.end())
                missing.push_back(w);
    }
    if (missing.empty())
        return;

    std::vector<std::shared_ptr<WeightBlock>> built(missing.size());
    unsigned threads = cfg_.threads ? cfg_.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(missing.size()));
    if (threads <= 1) {
        for (std::size_t k = 0; k < missing.size(); ++k)
            built[k] = build_block(a, p, q, missing[k]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k; (k = next.fetch_add(1)) < missing.size();)
                built[k] = build_block(a, p, q, missing[k]);
        };
        std::vector<std::future<void>> jobs;
        for (unsigned t = 0; t < threads; ++t)
            jobs.push_back(std::async(std::launch::async, worker));
        for (auto& j : jobs)
            j.get();
    }

    long nonempty = 0;
    {
        std::lock_guard lock(mutex_);
        auto& have = blocks_[key];
        for (auto& blk : built) {
            nonempty += blk->dim() > 0;
            have.emplace(blk->weight, std::move(blk));
        }
        stats_.blocks_computed += static_cast<long>(missing.size());
    }
    if (cfg_.cache_dir && nonempty > 0)
        persist(a, p, q);
}

std::shared_ptr<const WeightBlock> QuotientEngine::block(Algebra a, int p, int q, const Root& w)
{
    ensure_blocks(a, p, q, {w});
    std::lock_guard lock(mutex_);
    return blocks_[Key{a, p, q}].at(w);
}

std::vector<BlockSummary> QuotientEngine::component(Algebra a, int p, int q)
{
    const auto ws = weights(p, q);
    ensure_blocks(a, p, q, ws);
    std::vector<BlockSummary> out;
    for (const Root& w : ws) {
        auto b = block(a, p, q, w);
        out.push_back({w, b->dim(), b->rank()});
    }
    return out;
}

long QuotientEngine::component_rank(Algebra a, int p, int q)
{
    long r = 0;
    for (const auto& b : component(a, p, q))
        r += b.rank;
    return r;
}

Reduction QuotientEngine::reduce(const ExtElement& e, Algebra a, int p, int q)
{
    Reduction out;
    if (e.is_zero())
        return out;
    const auto bd = e.bidegree();
    if (!bd || *bd != std::pair{p, q})
        throw std::invalid_argument("reduce: element is not homogeneous of bidegree (" + std::to_string(p) + "," +
                                    std::to_string(q) + ")");
    std::map<Root, ExtElement> parts;
    for (const auto& [m, c] : e.terms())
        parts[weight(L_, m)].add_term(m, c);
    std::vector<Root> ws;
    for (const auto& [w, part] : parts)
        ws.push_back(w);
    ensure_blocks(a, p, q, ws);
    for (const auto& [w, part] : parts) {
        auto blk = block(a, p, q, w);
        for (const auto& [c, v] : blk->span.reduce(blk->to_row(part)))
            out.coords.emplace_back(blk->monomials[c], v);
    }
    std::sort(out.coords.begin(), out.coords.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.is_zero = out.coords.empty();
    return out;
}

int QuotientEngine::invariant_dim(Algebra a, int p, int q)
{
    const int rank = L_.rank();
    const Root zero(rank, 0);
    std::vector<Root> ws{zero};
    std::vector<int> ops;
    for (int i = 0; i < rank; ++i) {
        Root ai(rank, 0);
        ai[i] = 1;
        ops.push_back(L_.root_vector_index(ai));
        ws.push_back(ai);
        Root neg(rank, 0);
        neg[i] = -1;
        ops.push_back(L_.root_vector_index(neg));
        ws.push_back(neg);
    }
    ensure_blocks(a, p, q, ws);
    auto b0 = block(a, p, q, zero);
    const std::vector<int> cpl = b0->span.complement();
    if (cpl.empty())
        return 0;

    std::vector<std::shared_ptr<const WeightBlock>> targets;
    std::vector<int> offsets;
    int total = 0;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        targets.push_back(block(a, p, q, ws[k + 1]));
        offsets.push_back(total);
        total += targets.back()->dim();
    }
    // one row per complement monomial: its images under all simple root vectors, reduced
    std::vector<RatRow> rows;
    for (int c : cpl) {
        RatRow row;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            if (targets[k]->dim() == 0)
                continue;
            const ExtElement img = diag_act_basis(L_, ops[k], b0->monomials[c]);
            for (auto& [col, v] : targets[k]->span.reduce(targets[k]->to_row(img)))
                row.emplace_back(offsets[k] + col, std::move(v));
        }
        rows.push_back(std::move(row));
    }
    return static_cast<int>(cpl.size()) - rank_of(rows, total);
}

CacheStats QuotientEngine::stats() const
{
    std::lock_guard lock(mutex_);
    return stats_;
}

// --- workflows -----------------------------------------------------------

SPowerResult s_power_order(QuotientEngine& eng, int max_k)
{
    SPowerResult res;
    const ExtElement S = build_S(eng.lie());
    ExtElement power = ExtElement::one();
    for (int k = 1; k <= max_k; ++k) {
        power = wedge(power, S);
        const bool nonzero = !eng.reduce(power, Algebra::A, k, k).is_zero;
        res.nonzero.push_back(nonzero);
        if (!nonzero) {
            res.order = k;
            break;
        }
    }
    return res;
}

PartIResult verify_part_i(QuotientEngine& eng, int max_total_degree)
{
    PartIResult res;
    const SPowerResult sp = s_power_order(eng, max_total_degree / 2);
    for (int n = 0; n <= max_total_degree; ++n)
        for (int p = 0; p <= n; ++p) {
            const int q = n - p;
            const int d = eng.invariant_dim(Algebra::A, p, q);
            res.dims[{p, q}] = d;
            int expected = 0;
            if (p == q)
                expected = (p == 0 || (p <= static_cast<int>(sp.nonzero.size()) && sp.nonzero[p - 1])) ? 1 : 0;
            if (d != expected) {
                res.pass = false;
                res.failures.push_back("invariant dim at (" + std::to_string(p) + "," + std::to_string(q) +
                                       ") is " + std::to_string(d) + ", expected " + std::to_string(expected));
            }
        }
    return res;
}

SeriesResult graded_invariant_series(QuotientEngine& eng, int max_total_degree)
{
    SeriesResult res;
    for (int n = 0; n <= max_total_degree; ++n)
        for (int p = 0; p <= n; ++p) {
            const int q = n - p;
            const int d = eng.invariant_dim(Algebra::B, p, q);
            res.dims[{p, q}] = d;
            if (d == 0)
                continue;
            if (p != q) {
                res.failures.push_back("off-diagonal invariants at (" + std::to_string(p) + "," + std::to_string(q) +
                                       "): " + std::to_string(d));
                continue;
            }
            if (res.coefficients.size() <= static_cast<std::size_t>(p))
                res.coefficients.resize(p + 1, 0);
            res.coefficients[p] += d;
        }
    return res;
}

KostantResult kostant_quotient_check(QuotientEngine& eng, const std::vector<std::vector<int>>& ideals)
{
    const LieAlgebra& L = eng.lie();
    const RootSystem& rs = L.roots();
    const int n = L.dim();
    KostantResult res;
    res.quotient_dims.assign(n + 1, 0);
    res.expected_dims.assign(n + 1, 0);
    for (const auto& ideal : ideals) {
        RatVec lambda(rs.rank, 0);
        for (int idx : ideal)
            for (int i = 0; i < rs.rank; ++i)
                lambda[i] += rs.positive[idx][i];
        res.expected_dims[ideal.size()] += weyl_dim(rs, lambda).get_si();
    }
    for (int p = 0; p <= n; ++p) {
        std::map<Root, long> mult;
        for (const auto& b : eng.component(Algebra::KostantSingle, p, 0)) {
            res.quotient_dims[p] += b.dim - b.rank;
            if (b.dim - b.rank)
                mult[b.weight] = b.dim - b.rank;
        }
        if (res.quotient_dims[p] != res.expected_dims[p])
            res.failures.push_back("degree " + std::to_string(p) + ": quotient dim " +
                                   std::to_string(res.quotient_dims[p]) + ", expected " +
                                   std::to_string(res.expected_dims[p]));
        for (const auto& [w, m] : mult) {
            Root neg = w;
            for (int& x : neg)
                x = -x;
            auto it = mult.find(neg);
            if (it == mult.end() || it->second != m) {
                res.failures.push_back("degree " + std::to_string(p) + ": weight " + weight_str(w) +
                                       " has multiplicity " + std::to_string(m) + " but its negative has " +
                                       std::to_string(it == mult.end() ? 0 : it->second));
                break;
            }
        }
    }
    res.pass = res.failures.empty();
    return res;
}

} // namespace cdsw
