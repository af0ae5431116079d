#ifndef BIOP_INSTANCES_HPP
#define BIOP_INSTANCES_HPP

#include "biop/diop.hpp"

// Concrete size-bounded pairs: skeletal finite sets with their opposite,
// colored bibouquets, pointed sets, and arrow categories.

namespace biop {

// Two-sided corolla: an ordered list of top colors over an ordered list of
// bottom colors, colors stored as indices into a palette.
struct Bibouquet {
    std::vector<int> top;
    std::vector<int> bottom;
    auto operator<=>(const Bibouquet&) const = default;
};

// Objects (a,m) with a,m <= bound, morphisms all pairs of a forward map on
// the first components and a backward map on the second.
DiopPair sfset2(int bound);

// Bibouquets with at most `bound` colors on either side; morphisms are the
// underlying two-sided maps, unconstrained by colors.
DiopPair bbq(const std::vector<std::string>& colors, int bound);

// Pointed sets of size <= bound; fiber = preimage of the base point,
// cofiber = complement of the image with the base point attached.
DiopPair pointed_sets(int bound);

// Objects are morphisms of c, morphisms are commuting squares; the square
// components are the fiber and the cofiber.
DiopPair arrow_cat(const FinCat& c);

// One object, one morphism, tautological on both sides.
DiopPair terminal_pair();

// Checks that taking bicardinalities is a morphism of pairs into the
// two-sided skeletal finite sets (ends, identities, composition).
Report bicardinality_projection(const DiopPair& q);

// Standalone bibouquet calculus (also used by the CLI worked example).
Bibouquet bbq_fiber(const Bibouquet& src, const Bibouquet& tgt, const BiMap& phi, int i);
Bibouquet bbq_cofiber(const Bibouquet& src, const Bibouquet& tgt, const BiMap& phi, int j);
std::string bbq_name(const Bibouquet& b, const std::vector<std::string>& colors);

// Name lookups for tests and the CLI; throw when absent.
ObjId obj_by_name(const FinCat& cat, const std::string& name);
MorId mor_by_name(const FinCat& cat, const std::string& name);

}  // namespace biop

#endif
