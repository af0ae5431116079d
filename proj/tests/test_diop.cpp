#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biop/diop.hpp"
#include "biop/instances.hpp"

using namespace biop;

namespace {

OperadicStructure tautological(std::shared_ptr<const FinCat> cat) {
    auto cp = cat.get();
    return make_unary(
        cat, [cp](MorId h) { return cp->src(h); },
        [](MorId u, MorId) { return u; });
}

}  // namespace

TEST_CASE("terminal pair is trivially bioperadic") {
    DiopPair q = terminal_pair();
    ClassifyReport cr = classify(q);
    CHECK(cr.diop);
    CHECK(check_bioperadic(q).ok);
    Report rep;
    SourceTarget st = source_target(q, &rep);
    CHECK(rep.ok);
    CHECK(st.source[0] == std::vector<int>{0});
    CHECK(st.target[0] == std::vector<int>{0});
}

TEST_CASE("analysis of an identity lists the identity (co)fibers") {
    DiopPair q = pointed_sets(2);
    Analysis a = analysis(q, q.base->id_of[2]);
    CHECK(a.fibers == a.U_S);
    CHECK(a.cofibers == a.C_S);
    CHECK(a.U_S == a.U_T);
}

TEST_CASE("pointed sets: fibers and cofibers of the two-to-three map") {
    DiopPair q = pointed_sets(3);
    // h : {u,o} -> {x,y,o} with h(u) = y; sizes 1 and 2, table [2]
    MorId h = mor_by_name(*q.base, "(1->2:2)");
    Analysis a = analysis(q, h);
    REQUIRE(a.fibers.size() == 1);
    REQUIRE(a.cofibers.size() == 1);
    CHECK(a.fibers[0] == 0);    // F = {o}
    CHECK(a.cofibers[0] == 1);  // D = {x, o}
}

TEST_CASE("arrow category of a path is bioperadic") {
    DiopPair q = arrow_cat(path_cat(3));
    CHECK(validate(*q.base).ok);
    ClassifyReport cr = classify(q);
    CHECK(cr.diop);
    // the fiber subcategory is the decalage of the underlying category
    Decalage d = decalage(path_cat(3));
    CHECK(cr.QF.cat.n_objects() == d.cat.n_objects());
    CHECK(cr.QF.cat.n_mors() == d.cat.n_mors());
    // the cofiber subcategory is the disjoint union of the coslices
    CHECK(cr.QC.cat.n_objects() == 6);
    CHECK(cr.QC.cat.n_mors() == 10);
    Report rep = check_bioperadic(q);
    CHECK(rep.ok);
    Report strep;
    source_target(q, &strep);
    CHECK(strep.ok);
}

TEST_CASE("arrow category source and target components") {
    FinCat two = discrete_cat(2);
    DiopPair q = arrow_cat(two);  // two objects 1x0, 1x1; identity squares only
    SourceTarget st = source_target(q);
    // s(1x0) = component of 1x0 viewed as an object, and dually
    CHECK(st.source_objs[0] == std::vector<ObjId>{0});
    CHECK(st.target_objs[0] == std::vector<ObjId>{0});
    CHECK(st.source[0] != st.source[1]);
}

TEST_CASE("bivariant envelope of a decalage") {
    auto base = std::make_shared<const FinCat>(path_cat(3));
    auto d = std::make_shared<const Decalage>(decalage(*base));
    auto dcat = std::make_shared<const FinCat>(d->cat);
    OperadicStructure os = decalage_structure(dcat, d, base);
    UnitFamily units{{0, 1, 2}};
    DiopPair q = bivariant_envelope(os, units);
    ClassifyReport cr = classify(q);
    CHECK(cr.diop);
    // fiber side is the whole decalage, cofiber side is discrete on units
    CHECK(cr.QF.cat.n_objects() == dcat->n_objects());
    CHECK(cr.QF.cat.n_mors() == dcat->n_mors());
    CHECK(cr.QC.cat.n_objects() == 3);
    CHECK(cr.QC.cat.n_mors() == 3);
    CHECK(check_bioperadic(q).ok);
    Report rep;
    source_target(q, &rep);
    CHECK(rep.ok);
}

TEST_CASE("bivariant envelope rejects non right unital input") {
    auto ch = std::make_shared<const FinCat>(chaotic_cat(3));
    Endofunctor cst;
    cst.obj_map = {0, 0, 0};
    cst.mor_map.assign(ch->n_mors(), ch->id_of[0]);
    auto os = from_idempotent(ch, cst);
    REQUIRE(os.has_value());
    CHECK_THROWS_AS(bivariant_envelope(*os, UnitFamily{{0}}), std::invalid_argument);
}

TEST_CASE("dioperadic envelope has no cofibers") {
    auto p3 = std::make_shared<const FinCat>(path_cat(3));
    DiopPair q = dioperadic_envelope(tautological(p3));
    ClassifyReport cr = classify(q);
    CHECK(cr.diop);
    CHECK(cr.QC.cat.n_objects() == 0);
    CHECK(cr.QF.cat.n_mors() == 6);  // the whole input fiber side
    Analysis a = analysis(q, 3);     // a01
    CHECK(a.cofibers.empty());
    CHECK(a.fibers.size() == 1);
}

TEST_CASE("classify flags a non-closed fiber class") {
    // fiber ≡ F with one non-identity induced endomorphism e whose square w
    // escapes the class (same construction as in the opcat tests)
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
    OperadicStructure left = make_unary(
        cat, [F](MorId) { return F; },
        [h, oneT, e, oneF](MorId u, MorId g) { return u == h && g == oneT ? e : oneF; });
    auto op = std::make_shared<const FinCat>(opposite(*cat));
    auto opp = op.get();
    OperadicStructure right = make_unary(
        op, [opp](MorId m) { return opp->src(m); }, [](MorId u, MorId) { return u; });
    DiopPair q{"nonperfect", cat, op, left, right};
    ClassifyReport cr = classify(q);
    CHECK_FALSE(cr.left_diop);
    CHECK(cr.right_diop);
    CHECK_FALSE(cr.diop);
    CHECK_FALSE(cr.detail.ok);
    CHECK(cr.detail.witness.contains("composite"));
}

TEST_CASE("unary analysis equalities are enforced") {
    // break U_F = U_S deliberately: fibers of identities differ across a
    // connected pair of objects
    auto ch = std::make_shared<const FinCat>(chaotic_cat(2));
    auto cp = ch.get();
    OperadicStructure left = make_unary(
        ch, [cp](MorId h) { return cp->src(h); }, [](MorId u, MorId) { return u; });
    auto op = std::make_shared<const FinCat>(opposite(*ch));
    auto opp = op.get();
    OperadicStructure right = make_unary(
        op, [opp](MorId m) { return opp->src(m); }, [](MorId u, MorId) { return u; });
    DiopPair q{"taut2", ch, op, left, right};
    // tautological on both sides: U_F = U_S holds, analysis succeeds
    for (MorId m = 0; m < ch->n_mors(); ++m) CHECK_NOTHROW(analysis(q, m));
    // fiber of everything = x0 while identity fibers vary: U_F != U_S on e01
    OperadicStructure bad = make_unary(
        ch, [cp](MorId h) { return cp->is_identity(h) ? cp->src(h) : 0; },
        [cp](MorId u, MorId) { return cp->is_identity(u) ? cp->id_of[0] : u; });
    DiopPair qb{"bad", ch, op, bad, right};
    // fiber of e10 is x0 whose identity fiber is x0, but U_S = {x1}
    CHECK_THROWS_AS(analysis(qb, mor_by_name(*ch, "e10")), std::logic_error);
}
