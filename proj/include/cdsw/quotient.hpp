#pragma once

#include "cdsw/exterior.hpp"
#include "cdsw/linalg.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace cdsw {

/// A = R/<C1+C2+C3>, B = R/<C1+C2>, KostantSingle = wedge(g)/<dg> (second copy unused, q = 0).
enum class Algebra { A, B, KostantSingle };

std::string algebra_name(Algebra a);
Algebra parse_algebra(const std::string& s);

/// One weight block of an ideal component: its monomials (mask order) and the
/// echelon span of the ideal inside them.
struct WeightBlock {
    Root weight;
    std::vector<ExtMonomial> monomials;
    std::unordered_map<ExtMonomial, int, ExtMonomialHash> column;
    EchelonBasis span;

    int dim() const { return static_cast<int>(monomials.size()); }
    int rank() const { return span.rank(); }
    int quotient_dim() const { return dim() - rank(); }
    /// Coordinates of a weight-homogeneous element of this block.
    RatRow to_row(const ExtElement& a) const;
};

struct BlockSummary {
    Root weight;
    int dim = 0;
    int rank = 0;
};

/// Result of reducing an element modulo an ideal component.
struct Reduction {
    bool is_zero = true;
    /// Coordinates on complement (non-pivot) monomials, in mask order.
    std::vector<std::pair<ExtMonomial, Rational>> coords;
};

struct QuotientConfig {
    /// Disk cache root; disabled when empty.
    std::optional<std::filesystem::path> cache_dir;
    /// Largest weight block (in monomials) that may be eliminated.
    long max_block_dim = 20000;
    /// Worker threads for independent blocks; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct CacheStats {
    long blocks_loaded = 0;
    long blocks_computed = 0;
    long files_written = 0;
};

/// Weight-blocked ideal components of R for one Lie algebra, computed lazily.
/// Thread-safe; blocks are immutable once built.
class QuotientEngine {
public:
    explicit QuotientEngine(const LieAlgebra& L, QuotientConfig cfg = {});
    ~QuotientEngine();
    QuotientEngine(const QuotientEngine&) = delete;
    QuotientEngine& operator=(const QuotientEngine&) = delete;

    const LieAlgebra& lie() const { return L_; }
    const QuotientConfig& config() const { return cfg_; }

    /// Weights occurring in R^{p,q}, sorted.
    std::vector<Root> weights(int p, int q) const;
    /// Number of monomials of R^{p,q} with the given weight.
    long block_dim(int p, int q, const Root& w) const;

    /// The block of the given weight; a block with no monomials is returned empty.
    std::shared_ptr<const WeightBlock> block(Algebra a, int p, int q, const Root& w);
    /// Builds the listed blocks, in parallel where possible.
    void ensure_blocks(Algebra a, int p, int q, const std::vector<Root>& ws);
    /// All blocks of the component with their dims and ranks.
    std::vector<BlockSummary> component(Algebra a, int p, int q);
    long component_rank(Algebra a, int p, int q);

    Reduction reduce(const ExtElement& e, Algebra a, int p, int q);
    /// Dimension of the g-invariants of the quotient in bidegree (p,q).
    int invariant_dim(Algebra a, int p, int q);

    /// Ideal generators c_i(b) for basis element b; copies 1..3.
    const ExtElement& generator(int copy, int b) const { return generators_[copy - 1][b]; }

    CacheStats stats() const;

    /// Throws ResourceError when a weight-0 block of one of the bidegrees exceeds the budget,
    /// before any elimination is done.
    void require_budget(Algebra a, const std::vector<std::pair<int, int>>& bidegrees) const;

private:
    using Key = std::tuple<Algebra, int, int>;

    const std::map<Root, std::vector<std::uint64_t>>& subsets_by_weight(int k) const;
    std::vector<ExtMonomial> block_monomials(int p, int q, const Root& w) const;
    void require_budget(Algebra a, int p, int q, const Root& w, long dim) const;
    std::shared_ptr<WeightBlock> build_block(Algebra a, int p, int q, const Root& w) const;
    void load_cached(Algebra a, int p, int q);
    void persist(Algebra a, int p, int q);
    std::filesystem::path cache_file(Algebra a, int p, int q) const;

    const LieAlgebra& L_;
    QuotientConfig cfg_;
    std::string hash_;
    std::vector<std::vector<ExtElement>> generators_;

    mutable std::mutex subsets_mutex_;
    mutable std::map<int, std::map<Root, std::vector<std::uint64_t>>> subsets_;

    mutable std::mutex mutex_;
    std::map<Key, std::map<Root, std::shared_ptr<const WeightBlock>>> blocks_;
    std::map<Key, bool> loaded_;
    CacheStats stats_;
};

/// Least k <= max_k with S^k = 0 in A; nonzero flags for each k in 1..max_k tried.
struct SPowerResult {
    std::optional<int> order;
    std::vector<bool> nonzero;
};
SPowerResult s_power_order(QuotientEngine& eng, int max_k);

/// Invariant dimensions of A for p+q <= max_total_degree.
struct PartIResult {
    bool pass = true;
    std::map<std::pair<int, int>, int> dims;
    std::vector<std::string> failures;
};
PartIResult verify_part_i(QuotientEngine& eng, int max_total_degree);

/// Coefficients of sum_n dim(B^n)^g q^{n/2}, trailing zeros removed.
/// Off-diagonal invariants are added to the failures list.
struct SeriesResult {
    std::vector<long> coefficients;
    std::map<std::pair<int, int>, int> dims;
    std::vector<std::string> failures;
};
SeriesResult graded_invariant_series(QuotientEngine& eng, int max_total_degree);

/// Per-degree dims of wedge(g)/<dg> against sums of Weyl dimensions over abelian ideals.
struct KostantResult {
    bool pass = true;
    std::vector<long> quotient_dims;
    std::vector<long> expected_dims;
    std::vector<std::string> failures;
};
KostantResult kostant_quotient_check(QuotientEngine& eng, const std::vector<std::vector<int>>& ideals);

} // namespace cdsw
