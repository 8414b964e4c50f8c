#include "cdsw/suites.hpp"

#include "cdsw/loopcocycle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace cdsw {

using ojson = nlohmann::ordered_json;

int tabulated_dual_coxeter(char type, int rank)
{
    switch (type) {
    case 'A':
        return rank + 1;
    case 'B':
        return 2 * rank - 1;
    case 'C':
        return rank + 1;
    case 'D':
        return 2 * rank - 2;
    case 'E':
        return rank == 6 ? 12 : rank == 7 ? 18 : 30;
    case 'F':
        return 9;
    case 'G':
        return 4;
    }
    throw std::invalid_argument(std::string("unknown type ") + type);
}

Session::Session(char type, int rank, SuiteOptions opts) : rs_(build_root_system(type, rank)), opts_(std::move(opts))
{
}

Session::~Session() = default;

int Session::max_total_degree() const
{
    return opts_.max_total_degree > 0 ? opts_.max_total_degree : 2 * rs_.dual_coxeter;
}

const LieAlgebra& Session::lie()
{
    if (!lie_)
        lie_ = std::make_unique<LieAlgebra>(rs_);
    return *lie_;
}

QuotientEngine& Session::engine()
{
    if (!engine_) {
        QuotientConfig cfg;
        cfg.cache_dir = opts_.cache_dir;
        cfg.max_block_dim = opts_.max_block_dim;
        cfg.threads = opts_.threads;
        engine_ = std::make_unique<QuotientEngine>(lie(), cfg);
    }
    return *engine_;
}

const std::vector<AffWeylElt>& Session::aff2()
{
    if (!aff2_)
        aff2_ = enumerate_aff2(rs_);
    return *aff2_;
}

const std::vector<AbelianIdeal>& Session::ideals()
{
    if (!ideals_)
        ideals_ = enumerate_abelian_ideals(rs_);
    return *ideals_;
}

namespace {

ojson ordered(const nlohmann::json& j)
{
    return ojson::parse(j.dump());
}

std::vector<long> trimmed(std::vector<long> v)
{
    while (!v.empty() && v.back() == 0)
        v.pop_back();
    return v;
}

std::vector<long> length_series(const std::vector<AffWeylElt>& elts)
{
    std::vector<long> h;
    for (const auto& w : elts) {
        if (h.size() <= static_cast<std::size_t>(w.length))
            h.resize(w.length + 1, 0);
        ++h[w.length];
    }
    return h;
}

std::vector<long> size_series(const std::vector<AbelianIdeal>& ideals)
{
    std::vector<long> h;
    for (int c : dim_histogram(ideals))
        h.push_back(c);
    return trimmed(h);
}

void add_failure(Report& r, const std::string& witness)
{
    r.status = Status::Fail;
    auto& f = r.details["failures"];
    if (!f.is_array())
        f = ojson::array();
    if (f.size() < 10)
        f.push_back(witness);
}

using CheckFn = std::function<void(Session&, Report&)>;

void check_cartan(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    r.details["root_system"] = ordered(to_json(rs));
    r.details["dual_coxeter"] = rs.dual_coxeter;
    r.details["tabulated_dual_coxeter"] = tabulated_dual_coxeter(rs.type, rs.rank);
    if (rs.dual_coxeter != tabulated_dual_coxeter(rs.type, rs.rank))
        add_failure(r, "dual Coxeter number differs from the table");
}

void check_dual_coxeter(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const int expected = tabulated_dual_coxeter(rs.type, rs.rank);
    r.details["h"] = rs.dual_coxeter;
    r.details["expected"] = expected;
    r.details["exponents"] = rs.exponents;
    if (rs.dual_coxeter != expected || dual_coxeter_number(rs) != expected)
        add_failure(r, "h = " + std::to_string(rs.dual_coxeter) + ", expected " + std::to_string(expected));
}

void check_aff2(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const auto& elts = s.aff2();
    const long expected = 1L << rs.rank;
    r.details["count"] = elts.size();
    r.details["expected"] = expected;
    r.details["length_series"] = length_series(elts);
    if (static_cast<long>(elts.size()) != expected)
        add_failure(r, "count " + std::to_string(elts.size()) + " != 2^rank");
    for (const auto& w : elts) {
        const AlcovePosition pos = alcove_position(rs, w);
        if (!pos.in_dominant_chamber || !pos.in_2C)
            add_failure(r, word_str(w.word) + ": alcove not in 2C");
        const int sep = separating_hyperplanes(rs, w);
        const auto inv = inversion_set(rs, w.word);
        if (sep != w.length || static_cast<int>(inv.size()) != w.length)
            add_failure(r, word_str(w.word) + ": length " + std::to_string(w.length) + ", separating hyperplanes " +
                               std::to_string(sep) + ", inversions " + std::to_string(inv.size()));
    }
}

void check_abelian(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const auto& ideals = s.ideals();
    const long expected = 1L << rs.rank;
    r.details["count"] = ideals.size();
    r.details["expected"] = expected;
    r.details["dim_series"] = size_series(ideals);
    if (static_cast<long>(ideals.size()) != expected)
        add_failure(r, "count " + std::to_string(ideals.size()) + " != 2^rank");
    for (const auto& I : ideals)
        if (!is_upper_closed(rs, I) || !is_abelian(rs, I))
            add_failure(r, "not an abelian ideal: " + ojson(I).dump());
}

void check_peterson(Session& s, Report& r)
{
    const auto lengths = length_series(s.aff2());
    const auto sizes = size_series(s.ideals());
    r.details["length_series"] = lengths;
    r.details["dim_series"] = sizes;
    if (lengths != sizes)
        add_failure(r, "ideal sizes and Aff2 lengths differ as multisets");
}

void check_zeta(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const auto& ideals = s.ideals();
    const auto& elts = s.aff2();
    const ZetaResult z = zeta_map(rs, ideals, elts);
    r.details["bijective"] = z.bijective;
    r.details["lengths_match"] = z.lengths_match;
    ojson map = ojson::array();
    for (std::size_t k = 0; k < ideals.size(); ++k)
        map.push_back({{"ideal", ideals[k]}, {"word", z.image[k] >= 0 ? elts[z.image[k]].word : Word{}},
                       {"length", z.image[k] >= 0 ? elts[z.image[k]].length : -1}});
    r.details["map"] = map;
    for (const auto& f : z.failures)
        add_failure(r, f);
    if (!z.bijective || !z.lengths_match)
        add_failure(r, "zeta is not a length-preserving bijection");
}

void check_suter(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const auto& ideals = s.ideals();
    const XiBounds b = xi_o_and_bounds(rs, ideals, zeta_map(rs, ideals, s.aff2()), s.aff2());
    r.details["h"] = rs.dual_coxeter;
    r.details["bound"] = b.bound;
    r.details["xi_o_count"] = b.filtered.size();
    r.details["max_dim_xi_o"] = b.max_dim;
    r.details["dim_z"] = b.dim_z;
    if (!b.bound_holds)
        add_failure(r, "max dim " + std::to_string(b.max_dim) + " exceeds h-1 = " + std::to_string(b.bound));
}

void check_rho(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const auto& elts = s.aff2();
    r.details["elements"] = elts.size();
    for (const auto& u : elts) {
        const RhoDefect d = rho_defect(rs, u.word);
        if (d.delta != u.length || !d.finite_in_root_lattice) {
            ojson fin = ojson::array();
            for (const auto& x : d.finite)
                fin.push_back(to_string(x));
            add_failure(r, word_str(u.word) + ": delta coefficient " + to_string(d.delta) + ", length " +
                               std::to_string(u.length) + ", finite part " + fin.dump());
        }
    }
}

void check_ddegree(Session& s, Report& r)
{
    const RootSystem& rs = s.roots();
    const auto& elts = s.aff2();
    const AffineWeight rho = rho_hat(rs);
    std::vector<Rational> at_x0;
    for (const auto& u : elts) {
        Word inv(u.word.rbegin(), u.word.rend());
        at_x0.push_back(weight_action(rs, inv, rho).at_x0());
    }
    long triples = 0, direct = 0;
    for (std::size_t a = 0; a < elts.size(); ++a)
        for (std::size_t b = 0; b < elts.size(); ++b)
            for (std::size_t c = 0; c < elts.size(); ++c) {
                if (elts[c].length != elts[a].length + elts[b].length)
                    continue;
                ++triples;
                const Rational d = at_x0[a] + at_x0[b] - at_x0[c] - rho.at_x0();
                if (direct < 200) {
                    ++direct;
                    if (d_degree(rs, elts[a].word, elts[b].word, elts[c].word) != d)
                        add_failure(r, "direct and tabulated degrees differ");
                }
                if (d != 0)
                    add_failure(r, "d = " + to_string(d) + " at u = " + word_str(elts[a].word) +
                                       ", v = " + word_str(elts[b].word) + ", w = " + word_str(elts[c].word));
            }
    r.details["triples"] = triples;
}

void check_spower(Session& s, Report& r)
{
    const int h = s.roots().dual_coxeter;
    r.params["max_k"] = h;
    std::vector<std::pair<int, int>> need;
    for (int k = 1; k <= h; ++k)
        need.emplace_back(k, k);
    s.engine().require_budget(Algebra::A, need);
    const SPowerResult sp = s_power_order(s.engine(), h);
    ojson nz = ojson::array();
    for (bool b : sp.nonzero)
        nz.push_back(b);
    r.details["nonzero"] = nz;
    r.details["s_power_order"] = sp.order ? ojson(*sp.order) : ojson(nullptr);
    r.details["h"] = h;
    if (sp.order != h)
        add_failure(r, "order of S is not h");
}

std::vector<std::pair<int, int>> bidegrees_up_to(int max_total_degree)
{
    std::vector<std::pair<int, int>> out;
    for (int n = 0; n <= max_total_degree; ++n)
        for (int p = 0; p <= n; ++p)
            out.emplace_back(p, n - p);
    return out;
}

ojson dims_json(const std::map<std::pair<int, int>, int>& dims)
{
    ojson out = ojson::array();
    for (const auto& [pq, d] : dims)
        out.push_back({pq.first, pq.second, d});
    return out;
}

void check_invariants_a(Session& s, Report& r)
{
    const int mtd = s.max_total_degree();
    r.params["max_total_degree"] = mtd;
    s.engine().require_budget(Algebra::A, bidegrees_up_to(mtd));
    const PartIResult res = verify_part_i(s.engine(), mtd);
    std::vector<int> diag;
    for (int k = 0; 2 * k <= mtd; ++k)
        diag.push_back(res.dims.at({k, k}));
    r.details["diagonal"] = diag;
    r.details["dims"] = dims_json(res.dims);
    for (const auto& f : res.failures)
        add_failure(r, f);
}

void check_series_b(Session& s, Report& r)
{
    const int mtd = s.max_total_degree();
    r.params["max_total_degree"] = mtd;
    s.engine().require_budget(Algebra::B, bidegrees_up_to(mtd));
    const SeriesResult res = graded_invariant_series(s.engine(), mtd);
    long total = 0;
    for (long c : res.coefficients)
        total += c;
    const auto sizes = size_series(s.ideals());
    const bool complete = 2 * (static_cast<int>(sizes.size()) - 1) <= mtd;
    r.details["series"] = res.coefficients;
    r.details["total"] = total;
    r.details["complete"] = complete;
    r.details["dims"] = dims_json(res.dims);
    for (const auto& f : res.failures)
        add_failure(r, f);
    if (complete && total != (1L << s.roots().rank))
        add_failure(r, "total dim of B^g is " + std::to_string(total) + ", expected 2^rank");
    s.b_series = res.coefficients;
}

void check_kostant(Session& s, Report& r)
{
    std::vector<std::pair<int, int>> need;
    for (int p = 0; p <= s.lie().dim(); ++p)
        need.emplace_back(p, 0);
    s.engine().require_budget(Algebra::KostantSingle, need);
    std::vector<std::vector<int>> ideals(s.ideals().begin(), s.ideals().end());
    const KostantResult res = kostant_quotient_check(s.engine(), ideals);
    r.details["quotient_dims"] = res.quotient_dims;
    r.details["expected_dims"] = res.expected_dims;
    for (const auto& f : res.failures)
        add_failure(r, f);
    if (!res.pass)
        add_failure(r, "quotient dims differ from the abelian-ideal prediction");
}

void fill_cocycle(Report& r, const CocycleReport& c)
{
    r.details["samples"] = c.samples;
    r.details["evaluations"] = c.evaluations;
    r.details["nonzero_values"] = c.nonzero_values;
    r.details["constant_loop_failures"] = c.constant_loop_failures;
    r.details["invariance_failures"] = c.invariance_failures;
    r.details["closedness_failures"] = c.closedness_failures;
    for (const auto& f : c.failures)
        add_failure(r, f);
    if (!c.pass)
        r.status = Status::Fail;
}

void check_closed_form(Session& s, Report& r)
{
    r.params["max_n"] = 5;
    fill_cocycle(r, closed_form_check(s.lie(), 5));
}

void check_cocycle(Session& s, Report& r, int d)
{
    r.params["d"] = d;
    r.params["samples"] = s.options().samples;
    r.params["seed"] = s.options().seed;
    const LieAlgebra& L = s.lie();
    if (d >= 2 && std::string("ABCD").find(s.roots().type) == std::string::npos) {
        r.status = Status::SkippedResource;
        r.details["reason"] = "no built-in invariant polynomial of degree > 2 for exceptional types";
        return;
    }
    const InvariantPolynomial P =
        d == 1 ? InvariantPolynomial::normalized_form(L) : InvariantPolynomial::symmetrized_trace(L, d + 1);
    r.details["polynomial"] = P.name();
    fill_cocycle(r, cocycle_check(L, P, s.options().samples, s.options().seed));
}

void check_poincare(Session& s, Report& r)
{
    if (!s.b_series) {
        Report inner;
        check_series_b(s, inner);
    }
    const int top = s.max_total_degree() / 2;
    auto cut = [top](std::vector<long> v) {
        if (v.size() > static_cast<std::size_t>(top + 1))
            v.resize(top + 1);
        return trimmed(v);
    };
    const auto quotient = cut(*s.b_series);
    const auto lengths = cut(length_series(s.aff2()));
    const auto sizes = cut(size_series(s.ideals()));
    r.params["max_total_degree"] = s.max_total_degree();
    r.details["quotient_series"] = quotient;
    r.details["length_series"] = lengths;
    r.details["dim_series"] = sizes;
    if (quotient != lengths || lengths != sizes)
        add_failure(r, "Poincare series differ");
}

const std::map<std::string, CheckFn>& registry()
{
    static const std::map<std::string, CheckFn> checks{
        {"cartan", check_cartan},
        {"dual_coxeter", check_dual_coxeter},
        {"aff2", check_aff2},
        {"abelian_ideals", check_abelian},
        {"peterson_multiset", check_peterson},
        {"zeta", check_zeta},
        {"suter_bound", check_suter},
        {"rho_defect", check_rho},
        {"d_degree_additivity", check_ddegree},
        {"s_power_order", check_spower},
        {"invariants_A", check_invariants_a},
        {"series_B", check_series_b},
        {"kostant_quotient", check_kostant},
        {"phi_closed_form", check_closed_form},
        {"cocycle_d1", [](Session& s, Report& r) { check_cocycle(s, r, 1); }},
        {"cocycle_d2", [](Session& s, Report& r) { check_cocycle(s, r, 2); }},
        {"poincare_series", check_poincare},
    };
    return checks;
}

} // namespace

std::vector<std::string> suite_checks(const std::string& suite)
{
    const std::vector<std::string> combinatorial{"dual_coxeter", "aff2",        "abelian_ideals", "peterson_multiset",
                                                 "zeta",         "suter_bound", "rho_defect",     "d_degree_additivity"};
    const std::vector<std::string> algebraic{"s_power_order", "invariants_A", "series_B", "kostant_quotient"};
    const std::vector<std::string> cocycle{"phi_closed_form", "cocycle_d1", "cocycle_d2"};
    if (suite == "combinatorial")
        return combinatorial;
    if (suite == "algebraic")
        return algebraic;
    if (suite == "cocycle")
        return cocycle;
    if (suite == "full") {
        std::vector<std::string> all = combinatorial;
        all.insert(all.end(), algebraic.begin(), algebraic.end());
        all.insert(all.end(), cocycle.begin(), cocycle.end());
        all.push_back("poincare_series");
        return all;
    }
    throw std::invalid_argument("unknown suite " + suite);
}

const std::vector<std::string>& all_checks()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : registry())
            n.push_back(k);
        return n;
    }();
    return names;
}

Report run_check(Session& s, const std::string& name)
{
    const auto it = registry().find(name);
    if (it == registry().end())
        throw std::invalid_argument("unknown check " + name);
    Report r;
    r.check = name;
    r.type = s.roots().name();
    r.rank = s.roots().rank;
    Stopwatch clock;
    try {
        it->second(s, r);
    } catch (const ResourceError& e) {
        r.status = Status::SkippedResource;
        r.details["reason"] = e.what();
    }
    r.wall_time = clock.seconds();
    return r;
}

std::vector<Report> run_suite(Session& s, const std::string& suite)
{
    std::vector<Report> out;
    for (const auto& name : suite_checks(suite)) {
        if (name == "cocycle_d1" && s.options().cocycle_degree.value_or(1) != 1)
            continue;
        if (name == "cocycle_d2" && s.options().cocycle_degree.value_or(2) != 2)
            continue;
        out.push_back(run_check(s, name));
    }
    return out;
}

Report ddegree_report(Session& s, const Word& u, const Word& v, const Word& w)
{
    Report r;
    r.check = "ddegree";
    r.type = s.roots().name();
    r.rank = s.roots().rank;
    r.params["u"] = word_str(u);
    r.params["v"] = word_str(v);
    r.params["w"] = word_str(w);
    Stopwatch clock;
    for (const Word* x : {&u, &v, &w})
        for (int i : *x)
            if (i < 0 || i > s.roots().rank)
                throw std::invalid_argument("letter " + std::to_string(i) + " out of range in " + word_str(*x));
    r.details["d"] = to_string(d_degree(s.roots(), u, v, w));
    r.wall_time = clock.seconds();
    return r;
}

} // namespace cdsw
