#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biop/instances.hpp"

using namespace biop;

TEST_CASE("sfset2 small bounds") {
    DiopPair q = sfset2(1);
    CHECK(validate(*q.base).ok);
    CHECK(q.base->n_objects() == 4);
    DiopPair q2 = sfset2(2);
    CHECK(validate(*q2.base).ok);
    CHECK(q2.base->n_objects() == 9);
    CHECK(q2.base->n_mors() == 121);
    CHECK(check_operadic(q2.left).ok);
    CHECK(check_operadic(q2.right).ok);
    ClassifyReport cr = classify(q2);
    CHECK(cr.diop);
    // both one-sided subcategories are skeletal finite sets up to the bound
    CHECK(cr.QF.cat.n_objects() == 3);
    CHECK(cr.QF.cat.n_mors() == 11);
    CHECK(cr.QC.cat.n_objects() == 3);
    CHECK(cr.QC.cat.n_mors() == 11);
    CHECK(check_bioperadic(q2).ok);
}

TEST_CASE("sfset2 identity fibers") {
    DiopPair q = sfset2(2);
    ObjId x = obj_by_name(*q.base, "(2,2)");
    MorId one = q.base->id_of[x];
    CHECK(q.n_fibers(one) == 2);
    CHECK(q.n_cofibers(one) == 2);
    for (int i = 1; i <= 2; ++i) {
        CHECK(q.base->objects[q.fiber_at(one, i)] == "(1,1)");
        CHECK(q.base->objects[q.cofiber_at(one, i)] == "(1,1)");
    }
}

TEST_CASE("the two-sided map from the worked example") {
    DiopPair q = sfset2(4);
    ObjId s = obj_by_name(*q.base, "(4,3)");
    ObjId t = obj_by_name(*q.base, "(2,3)");
    MorId phi = mor_by_name(*q.base, "(4,3)->(2,3):[2,1,2,1|3,2,2]");
    REQUIRE(q.base->src(phi) == s);
    REQUIRE(q.base->tgt(phi) == t);
    Analysis a = analysis(q, phi);
    REQUIRE(a.fibers.size() == 2);
    REQUIRE(a.cofibers.size() == 3);
    CHECK(q.bicard(a.fibers[0]) == std::pair<int, int>{2, 1});
    CHECK(q.bicard(a.fibers[1]) == std::pair<int, int>{2, 1});
    CHECK(q.bicard(a.cofibers[0]) == std::pair<int, int>{1, 0});
    CHECK(q.bicard(a.cofibers[1]) == std::pair<int, int>{1, 2});
    CHECK(q.bicard(a.cofibers[2]) == std::pair<int, int>{1, 1});
}

TEST_CASE("bibouquet fibers of the worked example") {
    // colors 0..3 = u'1..u'4 on top, 4..6 = v'1..v'3 below, 7..8 = u''1,u''2,
    // 9..11 = v''1..v''3
    std::vector<std::string> colors{"u'1", "u'2", "u'3", "u'4", "v'1", "v'2", "v'3",
                                    "u''1", "u''2", "v''1", "v''2", "v''3"};
    Bibouquet src{{0, 1, 2, 3}, {4, 5, 6}};
    Bibouquet tgt{{7, 8}, {9, 10, 11}};
    BiMap phi{FinMap(4, 2, {2, 1, 2, 1}), FinMap(3, 3, {3, 2, 2})};
    CHECK(bbq_name(bbq_fiber(src, tgt, phi, 1), colors) == "u'2,u'4/u''1");
    CHECK(bbq_name(bbq_fiber(src, tgt, phi, 2), colors) == "u'1,u'3/u''2");
    CHECK(bbq_name(bbq_cofiber(src, tgt, phi, 1), colors) == "v'1/∅");
    CHECK(bbq_name(bbq_cofiber(src, tgt, phi, 2), colors) == "v'2/v''2,v''3");
    CHECK(bbq_name(bbq_cofiber(src, tgt, phi, 3), colors) == "v'3/v''1");
}

TEST_CASE("one-color bibouquets match the uncolored archetype") {
    DiopPair b = bbq({"c"}, 2);
    DiopPair s = sfset2(2);
    CHECK(b.base->n_objects() == s.base->n_objects());
    CHECK(b.base->n_mors() == s.base->n_mors());
    CHECK(check_operadic(b.left).ok);
    CHECK(check_operadic(b.right).ok);
    CHECK(classify(b).diop);
}

TEST_CASE("two-color bibouquets: roots govern the fiber side") {
    DiopPair q = bbq({"a", "b"}, 1);
    CHECK(validate(*q.base).ok);
    CHECK(q.base->n_objects() == 9);
    CHECK(check_operadic(q.left).ok);
    CHECK(check_operadic(q.right).ok);
    ClassifyReport cr = classify(q);
    CHECK(cr.diop);
    // fiber-side morphisms only ever connect bouquets with equal root colors
    for (MorId m = 0; m < cr.QF.cat.n_mors(); ++m) {
        ObjId s = cr.QF.cat.src(m), t = cr.QF.cat.tgt(m);
        std::string sn = cr.QF.cat.objects[s], tn = cr.QF.cat.objects[t];
        CHECK(sn.substr(sn.find('/')) == tn.substr(tn.find('/')));
    }
    Report rep = check_bioperadic(q);
    CHECK(rep.ok);
    CHECK_FALSE(rep.warnings.empty());  // the companion equalities fail off the fiber side
}

TEST_CASE("pointed sets within a bound") {
    DiopPair q = pointed_sets(3);
    CHECK(validate(*q.base).ok);
    CHECK(q.base->n_objects() == 4);
    CHECK(q.base->n_mors() == 144);
    CHECK(check_operadic(q.left).ok);
    CHECK(check_operadic(q.right).ok);
    CHECK(classify(q).diop);
    CHECK(check_bioperadic(q).ok);
    Report strep;
    source_target(q, &strep);
    CHECK(strep.ok);
}

TEST_CASE("pointed sets: constant map analysis") {
    DiopPair q = pointed_sets(2);
    // constant-to-base map on {1,2,o} to itself
    MorId h = mor_by_name(*q.base, "(2->2:0,0)");
    Analysis a = analysis(q, h);
    CHECK(a.fibers == std::vector<ObjId>{2});    // the whole domain
    CHECK(a.cofibers == std::vector<ObjId>{2});  // nothing is hit
    MorId one = q.base->id_of[2];
    Analysis ai = analysis(q, one);
    CHECK(ai.fibers == std::vector<ObjId>{0});
    CHECK(ai.cofibers == std::vector<ObjId>{0});
}

TEST_CASE("pointed sets: induced cofiber morphism case split") {
    DiopPair q = pointed_sets(3);
    // g: {1,o} -> {1,2,3,o}, g(1) = 1;  h: {1,2,3,o} -> {1,2,3,o} with
    // h(1) = 2, h(2) = 2, h(3) = 3
    MorId g = mor_by_name(*q.base, "(1->3:1)");
    MorId h = mor_by_name(*q.base, "(3->3:2,2,3)");
    // cofiber(g) = {2,3,o}; hg sends 1 to 2, so cofiber(hg) = {1,3,o};
    // the induced map sends 2 to o (2 = h(2) lies in Im(hg)) and 3 to 3
    MorId ind = q.induced_cofiber(g, h, 1);
    CHECK(q.base->mors[ind].name == "(2->2:0,2)");
}

TEST_CASE("arrow category of the terminal category") {
    DiopPair q = arrow_cat(terminal_cat());
    CHECK(q.base->n_objects() == 1);
    CHECK(q.base->n_mors() == 1);
    CHECK(classify(q).diop);
    CHECK(check_bioperadic(q).ok);
}

TEST_CASE("arrow category of two chaotic colors") {
    DiopPair q = arrow_cat(chaotic_cat(2));
    CHECK(validate(*q.base).ok);
    CHECK(q.base->n_objects() == 4);   // one arrow for each ordered color pair
    CHECK(check_operadic(q.left).ok);
    CHECK(check_operadic(q.right).ok);
    CHECK(classify(q).diop);
    CHECK(check_bioperadic(q).ok);
}

TEST_CASE("bicardinality projections") {
    CHECK(bicardinality_projection(sfset2(2)).ok);
    CHECK(bicardinality_projection(bbq({"a", "b"}, 1)).ok);
    CHECK(bicardinality_projection(pointed_sets(2)).ok);
    CHECK(bicardinality_projection(arrow_cat(path_cat(3))).ok);
    CHECK(bicardinality_projection(terminal_pair()).ok);
}
