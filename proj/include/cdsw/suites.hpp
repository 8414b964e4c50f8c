#pragma once

#include "cdsw/abelian.hpp"
#include "cdsw/affweyl.hpp"
#include "cdsw/cartan.hpp"
#include "cdsw/quotient.hpp"
#include "cdsw/report.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cdsw {

struct SuiteOptions {
    /// Largest p+q examined by the quotient checks; 0 means twice the dual Coxeter number.
    int max_total_degree = 0;
    long max_block_dim = 20000;
    std::optional<std::filesystem::path> cache_dir;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    int samples = 100;
    /// Cocycle degree d to check; both 1 and 2 when unset.
    std::optional<int> cocycle_degree;
};

/// Dual Coxeter number from the closed-form table by type.
int tabulated_dual_coxeter(char type, int rank);

/// One simple type with its derived data built on first use.
class Session {
public:
    Session(char type, int rank, SuiteOptions opts = {});
    ~Session();

    const RootSystem& roots() const { return rs_; }
    const SuiteOptions& options() const { return opts_; }
    int max_total_degree() const;

    const LieAlgebra& lie();
    /// Throws ResourceError when the exterior algebra is out of reach.
    QuotientEngine& engine();
    const std::vector<AffWeylElt>& aff2();
    const std::vector<AbelianIdeal>& ideals();

    /// Diagonal B^g series, filled by the series_B check.
    std::optional<std::vector<long>> b_series;

private:
    RootSystem rs_;
    SuiteOptions opts_;
    std::unique_ptr<LieAlgebra> lie_;
    std::unique_ptr<QuotientEngine> engine_;
    std::optional<std::vector<AffWeylElt>> aff2_;
    std::optional<std::vector<AbelianIdeal>> ideals_;
};

/// Check names of a suite: combinatorial, algebraic, cocycle or full.
std::vector<std::string> suite_checks(const std::string& suite);
/// Every check name known to run_check.
const std::vector<std::string>& all_checks();

/// Runs one named check; resource exhaustion is reported as skipped-resource.
Report run_check(Session& s, const std::string& name);
std::vector<Report> run_suite(Session& s, const std::string& suite);

/// Degeneration degree report for three words.
Report ddegree_report(Session& s, const Word& u, const Word& v, const Word& w);

} // namespace cdsw
