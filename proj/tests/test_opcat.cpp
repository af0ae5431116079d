#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biop/opcat.hpp"

using namespace biop;

namespace {

// fiber(h) = src(h), induced(u, g) = u; valid on any category
OperadicStructure tautological(std::shared_ptr<const FinCat> cat) {
    auto cp = cat.get();
    return make_unary(
        cat, [cp](MorId h) { return cp->src(h); },
        [](MorId u, MorId) { return u; });
}

// three objects S, T, F; h: S -> T; endomorphisms e, w of F with
// e∘e = w and all other products w.  fiber ≡ F, induced(h, 1_T) = e,
// all other induced morphisms identities.  The fiber class {1_F, e} is
// not closed: e∘e = w escapes.
struct MonoidExample {
    std::shared_ptr<const FinCat> cat;
    OperadicStructure os;
};

MonoidExample monoid_example() {
    auto c = std::make_shared<FinCat>();
    ObjId S = c->add_object("S"), T = c->add_object("T"), F = c->add_object("F");
    MorId oneS = c->add_mor("1S", S, S);
    MorId oneT = c->add_mor("1T", T, T);
    MorId oneF = c->add_mor("1F", F, F);
    MorId h = c->add_mor("h", S, T);
    MorId e = c->add_mor("e", F, F);
    MorId w = c->add_mor("w", F, F);
    c->set_identity(S, oneS);
    c->set_identity(T, oneT);
    c->set_identity(F, oneF);
    c->init_comp_table();
    c->set_comp(e, e, w);
    c->set_comp(e, w, w);
    c->set_comp(w, e, w);
    c->set_comp(w, w, w);
    c->finish();
    auto cat = std::shared_ptr<const FinCat>(c);
    OperadicStructure os = make_unary(
        cat, [F](MorId) { return F; },
        [h, oneT, e, oneF](MorId u, MorId g) { return u == h && g == oneT ? e : oneF; });
    return {cat, os};
}

}  // namespace

TEST_CASE("tautological structure is operadic and perfect") {
    auto p3 = std::make_shared<const FinCat>(path_cat(3));
    OperadicStructure os = tautological(p3);
    Report rep = check_operadic(os);
    CHECK(rep.ok);
    FiberSub fs = fiber_subcategory(os);
    CHECK(fs.perfect);
    CHECK(fs.objs.size() == 3);
    CHECK(fs.mors.size() == 6);
}

TEST_CASE("decalage carries a unital structure") {
    auto base = std::make_shared<const FinCat>(path_cat(3));
    auto d = std::make_shared<const Decalage>(decalage(*base));
    auto dcat = std::make_shared<const FinCat>(d->cat);
    OperadicStructure os = decalage_structure(dcat, d, base);
    CHECK(check_operadic(os).ok);

    UnitFamily units{{0, 1, 2}};  // the identity morphisms as objects
    CHECK(check_unit_family(os, units).ok);
    UnitalityReport u = check_unitality(os, units);
    CHECK(u.left);
    CHECK(u.right);

    FiberSub fs = fiber_subcategory(os);
    CHECK(fs.perfect);
    CHECK(fs.objs.size() == 6);  // every object is a fiber of its identity
}

TEST_CASE("idempotent endofunctors give structures, others do not") {
    auto ch = std::make_shared<const FinCat>(chaotic_cat(2));
    // swap of the two objects: an involution, not idempotent
    Endofunctor swap;
    swap.obj_map = {1, 0};
    swap.mor_map.resize(ch->n_mors());
    for (MorId m = 0; m < ch->n_mors(); ++m) {
        // e_ij goes to e_(1-i)(1-j); morphism ids follow chaotic_cat layout
        ObjId i = ch->src(m), j = ch->tgt(m);
        for (MorId k = 0; k < ch->n_mors(); ++k)
            if (ch->src(k) == 1 - i && ch->tgt(k) == 1 - j) swap.mor_map[m] = k;
    }
    CHECK(validate_endofunctor(*ch, swap).ok);
    nlohmann::json w;
    CHECK_FALSE(from_idempotent(ch, swap, &w).has_value());
    CHECK(w.at("reason") == "not idempotent");

    auto os = from_idempotent(ch, identity_endofunctor(*ch));
    REQUIRE(os.has_value());
    CHECK(check_operadic(*os).ok);
}

TEST_CASE("unitality of idempotent structures") {
    auto ch = std::make_shared<const FinCat>(chaotic_cat(3));
    UnitFamily units{{0}};  // connected, x0 chosen
    CHECK(check_unit_family(*from_idempotent(ch, identity_endofunctor(*ch)), units).ok);

    // r = identity: the fiber functor over slices is the domain functor
    UnitalityReport uid = check_unitality(*from_idempotent(ch, identity_endofunctor(*ch)), units);
    CHECK(uid.right);
    CHECK_FALSE(uid.left);  // fibers of identities are the objects themselves

    // r = constant to x0: fibers of identities all land in the unit family
    Endofunctor cst;
    cst.obj_map = {0, 0, 0};
    cst.mor_map.assign(ch->n_mors(), ch->id_of[0]);
    auto osc = from_idempotent(ch, cst);
    REQUIRE(osc.has_value());
    CHECK(check_operadic(*osc).ok);
    UnitalityReport uc = check_unitality(*osc, units);
    CHECK(uc.left);
    CHECK_FALSE(uc.right);

    FiberSub fsc = fiber_subcategory(*osc);
    CHECK(fsc.perfect);
    CHECK(fsc.objs == std::set<ObjId>{0});  // the image of r
}

TEST_CASE("discrete categories: identity structure is unital") {
    auto d = std::make_shared<const FinCat>(discrete_cat(3));
    UnitFamily units{{0, 1, 2}};
    auto os = from_idempotent(d, identity_endofunctor(*d));
    REQUIRE(os.has_value());
    UnitalityReport u = check_unitality(*os, units);
    CHECK(u.left);
    CHECK(u.right);
}

TEST_CASE("a fiber class can fail to be closed") {
    MonoidExample ex = monoid_example();
    CHECK(validate(*ex.cat).ok);
    CHECK(check_operadic(ex.os).ok);
    FiberSub fs = fiber_subcategory(ex.os);
    CHECK_FALSE(fs.perfect);
    CHECK(fs.witness.at("composite") == 5);  // w
    CHECK(fs.objs == std::set<ObjId>{2});
    CHECK(fs.mors.count(5) == 1);  // the closure absorbed w
}

TEST_CASE("unit family diagnostics") {
    auto d = std::make_shared<const FinCat>(discrete_cat(2));
    auto os = from_idempotent(d, identity_endofunctor(*d));
    CHECK_FALSE(check_unit_family(*os, UnitFamily{{0}}).ok);       // one component uncovered
    CHECK_FALSE(check_unit_family(*os, UnitFamily{{0, 0}}).ok);    // wrong component
    CHECK(check_unit_family(*os, UnitFamily{{0, 1}}).ok);
}
