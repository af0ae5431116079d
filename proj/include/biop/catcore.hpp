#ifndef BIOP_CATCORE_HPP
#define BIOP_CATCORE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biop/finord.hpp"

// Explicit finite categories: object and morphism lists with a composition
// table (or, for large instances, a composition callback).  ObjId/MorId are
// indices into the tables; names are kept for printing only.

namespace biop {

using ObjId = int;
using MorId = int;

struct FinCat {
    struct Mor {
        ObjId src = -1;
        ObjId tgt = -1;
        std::string name;
    };

    std::vector<std::string> objects;
    std::vector<Mor> mors;
    std::vector<MorId> id_of;                    // identity morphism per object
    std::vector<std::vector<MorId>> comp_table;  // comp_table[g][f] = g∘f, -1 if not composable
    std::function<MorId(MorId, MorId)> comp_fn;  // used when comp_table is empty
    std::vector<std::vector<MorId>> mors_from;   // morphisms grouped by source object

    ObjId add_object(const std::string& name);
    MorId add_mor(const std::string& name, ObjId src, ObjId tgt);
    void set_identity(ObjId x, MorId m);
    // Allocates the composition table and fills identity compositions.
    void init_comp_table();
    void set_comp(MorId f, MorId g, MorId gf);  // records g∘f
    // Builds the src index; call after all morphisms are added.
    void finish();

    int n_objects() const { return (int)objects.size(); }
    int n_mors() const { return (int)mors.size(); }
    ObjId src(MorId m) const { return mors[m].src; }
    ObjId tgt(MorId m) const { return mors[m].tgt; }
    bool composable(MorId f, MorId g) const { return mors[f].tgt == mors[g].src; }
    bool is_identity(MorId m) const { return src(m) == tgt(m) && id_of[src(m)] == m; }
    // g∘f; requires composability.
    MorId compose(MorId f, MorId g) const;
};

struct CatReport {
    bool ok = true;
    std::string what;
    nlohmann::json witness;
};

// Checks totality of composition, src/tgt compatibility, identity laws, and
// associativity on all composable triples.
CatReport validate(const FinCat& cat);

// Same ids; src/tgt swapped and composition reversed.
FinCat opposite(const FinCat& cat);

// Component index per object, connectivity through morphisms in either direction.
std::vector<int> pi0(const FinCat& cat);

// Objects grouped by the existence of mutually inverse morphisms.
std::vector<int> iso_classes(const FinCat& cat);

struct Decalage {
    FinCat cat;                    // objects are the morphisms of the base
    std::vector<MorId> obj_mor;    // base morphism underlying each object
    std::vector<MorId> mor_under;  // base morphism underlying each morphism
    // lookup: (src object, tgt object, underlying base morphism) -> MorId
    std::map<std::tuple<ObjId, ObjId, MorId>, MorId> mor_index;
};

// Disjoint union of all slices: objects are morphisms f: x -> c, morphisms
// f -> g over the same c are u: x -> y with g∘u = f.
Decalage decalage(const FinCat& cat);

struct Endofunctor {
    std::vector<ObjId> obj_map;
    std::vector<MorId> mor_map;
};

CatReport validate_endofunctor(const FinCat& cat, const Endofunctor& r);
Endofunctor identity_endofunctor(const FinCat& cat);
Endofunctor compose(const FinCat& cat, const Endofunctor& r, const Endofunctor& s);
// Brute-force enumeration; intended for very small categories.
std::vector<Endofunctor> all_endofunctors(const FinCat& cat);

// Declarative text form; canonical output round-trips byte-exactly.
std::string to_text(const FinCat& cat);
FinCat fincat_from_text(const std::string& text);

// Stock small categories used across tests.
FinCat terminal_cat();                // one object, one morphism
FinCat path_cat(int n);               // 0 -> 1 -> ... -> n-1 with all composites
FinCat discrete_cat(int n);
FinCat chaotic_cat(int n);            // exactly one morphism between any two objects

}  // namespace biop

#endif
