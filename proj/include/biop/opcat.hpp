#ifndef BIOP_OPCAT_HPP
#define BIOP_OPCAT_HPP

#include <functional>
#include <memory>
#include <optional>
#include <set>

#include "biop/catcore.hpp"
#include "biop/finord.hpp"
#include "biop/report.hpp"

// Operadic structures: a cardinality functor to skeletal finite sets plus a
// fiber object and an induced morphism for every output index.

namespace biop {

struct OperadicStructure {
    std::shared_ptr<const FinCat> base;
    bool unary = false;
    std::function<Ord(ObjId)> card_obj;
    std::function<FinMap(MorId)> card_mor;
    // i-th fiber of h, 1 <= i <= card_obj(tgt h).n
    std::function<ObjId(MorId, int)> fiber_at;
    // induced morphism between the i-th fibers of g∘h and g (h then g)
    std::function<MorId(MorId, MorId, int)> induced_at;

    const FinCat& cat() const { return *base; }
    ObjId fiber1(MorId h) const { return fiber_at(h, 1); }
    MorId induced1(MorId h, MorId g) const { return induced_at(h, g, 1); }
};

// Wraps single-fiber data as a structure with constant cardinality [1].
OperadicStructure make_unary(std::shared_ptr<const FinCat> base,
                             std::function<ObjId(MorId)> fiber1,
                             std::function<MorId(MorId, MorId)> induced1);

// Verifies (a) functoriality of the cardinality, (b) the fiber-cardinality
// law, (c) for unary structures the fiber-functor algebra law over the
// decalage (object part and functoriality), (d) on composable pairs the
// matching of fibers of induced morphisms with fibers of the composite.
Report check_operadic(const OperadicStructure& os);

// The structure fiber(h) = r(src h), induced = r(h); defined exactly when r
// is idempotent, otherwise returns nothing and fills the witness.
std::optional<OperadicStructure> from_idempotent(std::shared_ptr<const FinCat> cat,
                                                 const Endofunctor& r,
                                                 nlohmann::json* witness = nullptr);

// fiber(u: f -> g) = u viewed as an object of the decalage; the unital
// structure carried by any decalage.
OperadicStructure decalage_structure(std::shared_ptr<const FinCat> dcat,
                                     std::shared_ptr<const Decalage> d,
                                     std::shared_ptr<const FinCat> underlying);

struct UnitFamily {
    std::vector<ObjId> units;  // one per connected component, indexed by pi0 class
};

// Chosen local terminal of cardinality [1] per component; checked within the
// finite subcategory only.
Report check_unit_family(const OperadicStructure& os, const UnitFamily& units);

struct UnitalityReport {
    bool left = false;
    bool right = false;
    Report detail;
};

UnitalityReport check_unitality(const OperadicStructure& os, const UnitFamily& units);

struct FiberSub {
    bool perfect = false;
    std::set<ObjId> objs;
    std::set<MorId> mors;     // induced morphisms and identities of fiber objects
    FinCat cat;               // the closure, as its own category
    std::vector<ObjId> obj_of;   // subcategory object -> ambient ObjId
    std::vector<MorId> mor_of;   // subcategory morphism -> ambient MorId
    nlohmann::json witness;   // composite escaping the class, when not perfect
};

FiberSub fiber_subcategory(const OperadicStructure& os);

}  // namespace biop

#endif
