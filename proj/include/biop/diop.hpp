#ifndef BIOP_DIOP_HPP
#define BIOP_DIOP_HPP

#include "biop/opcat.hpp"

// Pairs of operadic structures on a category and its opposite: fibers and
// cofibers, the analysis of a morphism, dioperadic / bioperadic
// classification, sources and targets, and the two envelopes.

namespace biop {

struct DiopPair {
    std::string name;
    std::shared_ptr<const FinCat> base;
    std::shared_ptr<const FinCat> op;  // opposite(base), same object/morphism ids
    OperadicStructure left;            // on base
    OperadicStructure right;           // on op

    std::pair<int, int> bicard(ObjId x) const {
        return {left.card_obj(x).n, right.card_obj(x).n};
    }
    int n_fibers(MorId h) const { return left.card_mor(h).cod; }
    int n_cofibers(MorId h) const { return right.card_mor(h).cod; }
    ObjId fiber_at(MorId h, int i) const { return left.fiber_at(h, i); }
    ObjId cofiber_at(MorId h, int j) const { return right.fiber_at(h, j); }
    // for a chain h then g in the base: the induced morphism between the
    // i-th fibers of gh and g
    MorId induced_fiber(MorId h, MorId g, int i) const { return left.induced_at(h, g, i); }
    // dually, the morphism of the opposite between the j-th cofibers of gh
    // and h (as a base morphism it runs cofiber_at(h,j) -> cofiber_at(gh,j))
    MorId induced_cofiber(MorId h, MorId g, int j) const {
        return right.induced_at(g, h, j);
    }
};

struct Analysis {
    MorId h = -1;
    ObjId S = -1, T = -1;
    std::vector<ObjId> fibers;            // F_1..F_n
    std::vector<ObjId> cofibers;          // D_1..D_m
    std::vector<ObjId> U_S, C_S, U_T, C_T;
    std::vector<std::vector<ObjId>> U_D;  // identity fibers of each cofiber
    std::vector<std::vector<ObjId>> C_F;  // identity cofibers of each fiber
};

std::vector<ObjId> identity_fibers(const DiopPair& q, ObjId x);
std::vector<ObjId> identity_cofibers(const DiopPair& q, ObjId x);

// Fully populated analysis; for unary pairs the equalities U_F = U_S and
// C_D = C_T are verified and a logic_error is thrown if they fail.
Analysis analysis(const DiopPair& q, MorId h);

struct ClassifyReport {
    bool left_diop = false, right_diop = false, diop = false;
    FiberSub QF, QC;
    Report detail;
};

ClassifyReport classify(const DiopPair& q);

// The identity-(co)fiber matching conditions, quantified asymmetrically:
// failures of the fiber-side condition on fiber-subcategory morphisms (and
// dually) fail the report, violations of the "bis" equalities outside the
// subcategories are recorded as warnings only.  strict = compare ObjIds;
// lenient mode compares iso-classes instead.
Report check_bioperadic(const DiopPair& q, bool strict = true);

struct SourceTarget {
    std::vector<std::vector<ObjId>> source_objs, target_objs;  // U^i_X / C^j_X
    std::vector<std::vector<int>> source, target;              // pi0 classes
};

// When rep is non-null additionally asserts that the sets of source and
// target elements coincide (valid for bioperadic pairs).
SourceTarget source_target(const DiopPair& q, Report* rep = nullptr);

// Left structure kept, right structure the constant-to-units idempotent on
// the opposite; requires os to satisfy the domain-functor condition over
// the slices of the units.
DiopPair bivariant_envelope(const OperadicStructure& os, const UnitFamily& units);

// Right structure with cardinality [0] everywhere; requires os perfect.
DiopPair dioperadic_envelope(const OperadicStructure& os);

}  // namespace biop

#endif
