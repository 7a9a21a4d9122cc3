#pragma once

#include <vector>

#include "k1alex/grouprings.hpp"

namespace k1alex {

/// Representation of a knot group into H x| Z: x_i -> images[i-1] in H,
/// meridian -> tau, with tau h tau^-1 = kappa(h). N is the cover degree and
/// kappa^N = id.
struct MetaRep {
    AutPtr kappa;
    std::vector<FiniteAbelianGroup::Element> images;
    long N = 1;

    const GroupPtr& group() const { return kappa->group(); }
};

/// Trivial group, identity automorphism.
MetaRep trivial_rep(int genus, long N = 1);

}  // namespace k1alex
