#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biop/catcore.hpp"

using namespace biop;

TEST_CASE("stock categories validate") {
    CHECK(validate(terminal_cat()).ok);
    CHECK(validate(path_cat(1)).ok);
    CHECK(validate(path_cat(4)).ok);
    CHECK(validate(discrete_cat(3)).ok);
    CHECK(validate(chaotic_cat(3)).ok);
}

TEST_CASE("validation catches broken data") {
    FinCat c;
    ObjId x = c.add_object("x");
    c.add_mor("f", x, x);  // never registered as the identity
    c.init_comp_table();
    c.finish();
    CHECK_FALSE(validate(c).ok);
    CHECK(validate(c).what == "missing identity");
}

TEST_CASE("composition via table and via callback agree") {
    FinCat p = path_cat(3);
    MorId a01 = 3, a02 = 4, a12 = 5;  // added after the three identities
    CHECK(p.mors[a01].name == "a01");
    CHECK(p.compose(a01, a12) == a02);
    CHECK_THROWS(p.compose(a12, a01));
    FinCat q = p;
    q.comp_table.clear();
    q.comp_fn = [&p](MorId f, MorId g) { return p.compose(f, g); };
    CHECK(validate(q).ok);
    CHECK(q.compose(a01, a12) == a02);
}

TEST_CASE("opposite swaps ends and reverses composition") {
    FinCat p = path_cat(3);
    FinCat o = opposite(p);
    CHECK(validate(o).ok);
    MorId a01 = 3, a02 = 4, a12 = 5;
    CHECK(o.src(a01) == 1);
    CHECK(o.tgt(a01) == 0);
    CHECK(o.compose(a12, a01) == a02);  // a01 after a12 in the opposite
    FinCat oo = opposite(o);
    CHECK(oo.src(a01) == p.src(a01));
    CHECK(oo.compose(a01, a12) == a02);
}

TEST_CASE("components and iso classes") {
    CHECK(pi0(discrete_cat(3)) == std::vector<int>{0, 1, 2});
    CHECK(pi0(path_cat(3)) == std::vector<int>{0, 0, 0});
    CHECK(iso_classes(chaotic_cat(3)) == std::vector<int>{0, 0, 0});
    CHECK(iso_classes(path_cat(3)) == std::vector<int>{0, 1, 2});
}

TEST_CASE("decalage of a path") {
    Decalage d = decalage(path_cat(2));
    CHECK(validate(d.cat).ok);
    CHECK(d.cat.n_objects() == 3);  // 1x0, 1x1, a01
    CHECK(d.cat.n_mors() == 4);     // three identities + a01 -> 1x1
    // the non-identity morphism lies over a01
    int non_id = 0;
    for (MorId m = 0; m < d.cat.n_mors(); ++m)
        if (!d.cat.is_identity(m)) {
            ++non_id;
            CHECK(d.mor_under[m] == 2);  // a01 is the third morphism of path_cat(2)
        }
    CHECK(non_id == 1);

    Decalage d3 = decalage(path_cat(3));
    CHECK(validate(d3.cat).ok);
    CHECK(d3.cat.n_objects() == 6);
    CHECK(d3.cat.n_mors() == 10);
    CHECK(pi0(d3.cat) == std::vector<int>{0, 1, 2, 1, 2, 2});
}

TEST_CASE("endofunctor validation and enumeration") {
    FinCat ch = chaotic_cat(2);
    CHECK(validate_endofunctor(ch, identity_endofunctor(ch)).ok);
    auto all = all_endofunctors(ch);
    CHECK(all.size() == 4);  // one per object map
    auto alld = all_endofunctors(discrete_cat(2));
    CHECK(alld.size() == 4);
    auto allp = all_endofunctors(path_cat(2));
    // object maps 00, 01, 11 extend (01 sends a01 to a01), 10 does not
    CHECK(allp.size() == 3);
    Endofunctor bad = identity_endofunctor(ch);
    bad.mor_map[ch.id_of[0]] = ch.compose(ch.id_of[0], ch.id_of[0]);  // still fine
    CHECK(validate_endofunctor(ch, bad).ok);
    bad.obj_map[0] = 1;  // ends no longer preserved
    CHECK_FALSE(validate_endofunctor(ch, bad).ok);
}

TEST_CASE("text serialization round trips") {
    FinCat p = path_cat(3);
    std::string t = to_text(p);
    FinCat q = fincat_from_text(t);
    CHECK(validate(q).ok);
    CHECK(to_text(q) == t);
    CHECK(q.n_objects() == p.n_objects());
    CHECK(q.n_mors() == p.n_mors());
    CHECK_THROWS(fincat_from_text("objects: a b\nend\n"));  // missing header
}
