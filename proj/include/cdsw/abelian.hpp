#pragma once

#include "cdsw/affweyl.hpp"
#include "cdsw/cartan.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cdsw {

/// Abelian ideal of the Borel subalgebra: sorted indices into RootSystem::positive.
using AbelianIdeal = std::vector<int>;

bool is_upper_closed(const RootSystem& rs, const AbelianIdeal& ideal);
bool is_abelian(const RootSystem& rs, const AbelianIdeal& ideal);

/// All abelian ideals, sorted by (size, indices).
std::vector<AbelianIdeal> enumerate_abelian_ideals(const RootSystem& rs);

/// {alpha > 0 : delta - alpha in inversion_set(w)}, as sorted positive-root indices.
AbelianIdeal ideal_of(const RootSystem& rs, const Word& w);

struct ZetaResult {
    /// zeta(ideals[k]) = aff2[image[k]], or -1 when no element matches.
    std::vector<int> image;
    bool bijective = false;
    bool lengths_match = false;
    std::vector<std::string> failures;
};
ZetaResult zeta_map(const RootSystem& rs, const std::vector<AbelianIdeal>& ideals, const std::vector<AffWeylElt>& aff2);

struct XiBounds {
    /// Indices into the ideal list of the members of the filtered set.
    std::vector<int> filtered;
    int max_dim = 0;
    int dim_z = 0;
    int bound = 0;
    bool bound_holds = false;
};
/// Ideals whose roots all pair nontrivially with theta, with the h-1 bound.
XiBounds xi_o_and_bounds(const RootSystem& rs, const std::vector<AbelianIdeal>& ideals,
                         const std::optional<ZetaResult>& zeta = std::nullopt,
                         const std::vector<AffWeylElt>& aff2 = {});

/// Size histogram: entry k counts ideals with k roots.
std::vector<int> dim_histogram(const std::vector<AbelianIdeal>& ideals);

nlohmann::json abelian_summary(const RootSystem& rs, const std::vector<AbelianIdeal>& ideals);

} // namespace cdsw
