#include "biop/opcat.hpp"

namespace biop {

OperadicStructure make_unary(std::shared_ptr<const FinCat> base,
                             std::function<ObjId(MorId)> fiber1,
                             std::function<MorId(MorId, MorId)> induced1) {
    OperadicStructure os;
    os.base = std::move(base);
    os.unary = true;
    os.card_obj = [](ObjId) { return Ord(1); };
    os.card_mor = [](MorId) { return FinMap::identity(1); };
    os.fiber_at = [fiber1 = std::move(fiber1)](MorId h, int i) {
        if (i != 1) throw std::invalid_argument("unary fiber index must be 1");
        return fiber1(h);
    };
    os.induced_at = [induced1 = std::move(induced1)](MorId h, MorId g, int i) {
        if (i != 1) throw std::invalid_argument("unary fiber index must be 1");
        return induced1(h, g);
    };
    return os;
}

Report check_operadic(const OperadicStructure& os) {
    Report rep;
    rep.check = "check_operadic";
    const FinCat& cat = os.cat();
    const int nm = cat.n_mors();

    std::vector<FinMap> cm(nm);
    for (MorId f = 0; f < nm; ++f) cm[f] = os.card_mor(f);

    // (a) cardinality is a functor to skeletal finite sets
    for (MorId f = 0; f < nm; ++f) {
        if (cm[f].dom != os.card_obj(cat.src(f)).n || cm[f].cod != os.card_obj(cat.tgt(f)).n)
            rep.fail("cardinality of morphism does not match its ends", {{"mor", f}});
    }
    for (ObjId x = 0; x < cat.n_objects(); ++x)
        if (!cm[cat.id_of[x]].is_identity())
            rep.fail("cardinality of identity is not the identity map", {{"object", x}});
    for (MorId f = 0; f < nm && rep.ok; ++f)
        for (MorId g : cat.mors_from[cat.tgt(f)]) {
            if (cm[cat.compose(f, g)] != compose(cm[f], cm[g]))
                rep.fail("cardinality not functorial", {{"f", f}, {"g", g}});
            rep.bump("functoriality_pairs");
        }

    // (b) fiber sizes agree with the cardinality map's fibers
    for (MorId h = 0; h < nm && rep.ok; ++h) {
        int n = cm[h].cod;
        for (int i = 1; i <= n; ++i) {
            ObjId F = os.fiber_at(h, i);
            if (os.card_obj(F).n != fiber(cm[h], i).size.n)
                rep.fail("fiber cardinality law fails", {{"mor", h}, {"i", i}});
            rep.bump("fiber_cardinality");
        }
    }

    // induced unit law: the morphism induced by an identity is an identity
    for (MorId g = 0; g < nm && rep.ok; ++g) {
        MorId one = cat.id_of[cat.src(g)];
        for (int i = 1; i <= cm[g].cod; ++i) {
            if (os.induced_at(one, g, i) != cat.id_of[os.fiber_at(g, i)])
                rep.fail("induced morphism of identity is not an identity",
                         {{"g", g}, {"i", i}});
        }
    }

    // (d) axiom-(iv) instances on composable pairs
    for (MorId h = 0; h < nm && rep.ok; ++h) {
        for (MorId g : cat.mors_from[cat.tgt(h)]) {
            MorId gh = cat.compose(h, g);
            for (int i = 1; i <= cm[g].cod; ++i) {
                MorId hi = os.induced_at(h, g, i);
                if (cat.src(hi) != os.fiber_at(gh, i) || cat.tgt(hi) != os.fiber_at(g, i)) {
                    rep.fail("induced morphism has wrong ends",
                             {{"h", h}, {"g", g}, {"i", i}});
                    break;
                }
                if (cm[hi] != induced_on_fibers(cm[h], cm[g], i)) {
                    rep.fail("cardinality of induced morphism is not the induced map",
                             {{"h", h}, {"g", g}, {"i", i}});
                    break;
                }
                OrdFiber inc = fiber(cm[g], i);
                for (int j = 1; j <= inc.size.n; ++j) {
                    if (os.fiber_at(hi, j) != os.fiber_at(h, inc.incl(j))) {
                        rep.fail("fibers of induced morphism differ from fibers of h",
                                 {{"h", h}, {"g", g}, {"i", i}, {"j", j}});
                        break;
                    }
                }
                rep.bump("axiom_iv_instances");
            }
            if (!rep.ok) break;
        }
    }

    // (c) unary: the fiber functor is an algebra over the decalage monad;
    // object part fiber(induced(u,g)) = fiber(u), morphism part functoriality
    if (os.unary && rep.ok) {
        for (MorId u = 0; u < nm && rep.ok; ++u)
            for (MorId g : cat.mors_from[cat.tgt(u)]) {
                if (os.fiber1(os.induced1(u, g)) != os.fiber1(u))
                    rep.fail("decalage algebra law fails", {{"u", u}, {"g", g}});
                rep.bump("decalage_obj");
            }
        for (MorId u = 0; u < nm && rep.ok; ++u)
            for (MorId v : cat.mors_from[cat.tgt(u)])
                for (MorId k : cat.mors_from[cat.tgt(v)]) {
                    MorId vu = cat.compose(u, v);
                    MorId kv = cat.compose(v, k);
                    if (os.induced1(vu, k) !=
                        cat.compose(os.induced1(u, kv), os.induced1(v, k))) {
                        rep.fail("induced morphisms not functorial",
                                 {{"u", u}, {"v", v}, {"k", k}});
                        break;
                    }
                    rep.bump("induced_functoriality");
                }
    }
    return rep;
}

std::optional<OperadicStructure> from_idempotent(std::shared_ptr<const FinCat> cat,
                                                 const Endofunctor& r,
                                                 nlohmann::json* witness) {
    CatReport vr = validate_endofunctor(*cat, r);
    if (!vr.ok) {
        if (witness) *witness = {{"reason", "invalid endofunctor: " + vr.what},
                                 {"detail", vr.witness}};
        return std::nullopt;
    }
    Endofunctor rr = compose(*cat, r, r);
    for (ObjId x = 0; x < cat->n_objects(); ++x)
        if (rr.obj_map[x] != r.obj_map[x]) {
            if (witness)
                *witness = {{"reason", "not idempotent"},
                            {"object", x},
                            {"r", r.obj_map[x]},
                            {"rr", rr.obj_map[x]}};
            return std::nullopt;
        }
    for (MorId f = 0; f < cat->n_mors(); ++f)
        if (rr.mor_map[f] != r.mor_map[f]) {
            if (witness)
                *witness = {{"reason", "not idempotent on morphisms"}, {"mor", f}};
            return std::nullopt;
        }
    auto rp = std::make_shared<Endofunctor>(r);
    const FinCat* cp = cat.get();
    return make_unary(
        cat, [rp, cp](MorId h) { return rp->obj_map[cp->src(h)]; },
        [rp](MorId h, MorId) { return rp->mor_map[h]; });
}

OperadicStructure decalage_structure(std::shared_ptr<const FinCat> dcat,
                                     std::shared_ptr<const Decalage> d,
                                     std::shared_ptr<const FinCat> underlying) {
    // fiber of u: (f: x->c) -> (g: y->c) is u: x->y as an object of the
    // decalage (in the slice over y); the induced morphism of (u, v) is u
    // regarded as a morphism from v∘u to v.
    auto fiber1 = [d](MorId m) -> ObjId {
        // object index of a base morphism equals its MorId by construction
        return (ObjId)d->mor_under[m];
    };
    auto induced1 = [d, dcat, underlying](MorId m1, MorId m2) -> MorId {
        MorId u = d->mor_under[m1];
        MorId v = d->mor_under[m2];
        MorId vu = underlying->compose(u, v);
        return d->mor_index.at({(ObjId)vu, (ObjId)v, u});
    };
    return make_unary(std::move(dcat), fiber1, induced1);
}

Report check_unit_family(const OperadicStructure& os, const UnitFamily& units) {
    Report rep;
    rep.check = "check_unit_family";
    const FinCat& cat = os.cat();
    std::vector<int> comp = pi0(cat);
    int nc = 0;
    for (int c : comp) nc = std::max(nc, c + 1);
    if ((int)units.units.size() != nc) {
        rep.fail("one unit per component required", {{"components", nc}});
        return rep;
    }
    for (int c = 0; c < nc; ++c) {
        ObjId u = units.units[c];
        if (comp[u] != c) rep.fail("unit lies in the wrong component", {{"component", c}});
        if (os.card_obj(u).n != 1)
            rep.fail("unit does not have cardinality [1]", {{"object", u}});
    }
    for (ObjId x = 0; x < cat.n_objects() && rep.ok; ++x) {
        ObjId u = units.units[comp[x]];
        int arrows = 0;
        for (MorId m : cat.mors_from[x])
            if (cat.tgt(m) == u) ++arrows;
        if (arrows != 1)
            rep.fail("unit is not local terminal within the test subcategory",
                     {{"object", x}, {"arrows", arrows}});
    }
    rep.warnings.push_back("local terminality checked within the finite subcategory only");
    return rep;
}

UnitalityReport check_unitality(const OperadicStructure& os, const UnitFamily& units) {
    UnitalityReport out;
    out.detail.check = "check_unitality";
    const FinCat& cat = os.cat();
    std::vector<int> comp = pi0(cat);
    std::set<ObjId> unit_set(units.units.begin(), units.units.end());

    out.left = true;
    for (ObjId x = 0; x < cat.n_objects(); ++x) {
        MorId one = cat.id_of[x];
        int n = os.card_mor(one).cod;
        for (int i = 1; i <= n; ++i)
            if (!unit_set.count(os.fiber_at(one, i))) {
                out.left = false;
                out.detail.witness["left"] = {{"object", x}, {"i", i}};
            }
    }

    // right: over a unit, the fiber functor is the domain functor
    out.right = true;
    for (MorId h = 0; h < cat.n_mors(); ++h) {
        if (!unit_set.count(cat.tgt(h))) continue;
        if (os.card_mor(h).cod != 1) continue;
        if (os.fiber_at(h, 1) != cat.src(h)) {
            out.right = false;
            out.detail.witness["right"] = {{"mor", h}};
        }
    }
    if (out.right) {
        for (MorId u = 0; u < cat.n_mors() && out.right; ++u)
            for (MorId h : cat.mors_from[cat.tgt(u)]) {
                if (!unit_set.count(cat.tgt(h))) continue;
                if (os.card_mor(h).cod != 1) continue;
                if (os.induced_at(u, h, 1) != u) {
                    out.right = false;
                    out.detail.witness["right"] = {{"u", u}, {"h", h}};
                    break;
                }
            }
    }
    out.detail.counts["left"] = out.left;
    out.detail.counts["right"] = out.right;
    return out;
}

FiberSub fiber_subcategory(const OperadicStructure& os) {
    FiberSub fs;
    const FinCat& cat = os.cat();
    const int nm = cat.n_mors();
    std::vector<FinMap> cm(nm);
    for (MorId f = 0; f < nm; ++f) cm[f] = os.card_mor(f);

    for (MorId h = 0; h < nm; ++h)
        for (int i = 1; i <= cm[h].cod; ++i) fs.objs.insert(os.fiber_at(h, i));
    std::set<MorId> induced;
    for (MorId h = 0; h < nm; ++h)
        for (MorId g : cat.mors_from[cat.tgt(h)])
            for (int i = 1; i <= cm[g].cod; ++i) induced.insert(os.induced_at(h, g, i));
    fs.mors = induced;
    for (ObjId x : fs.objs) fs.mors.insert(cat.id_of[x]);

    // closure under composition; the class is perfect iff nothing new appears
    fs.perfect = true;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<MorId> cur(fs.mors.begin(), fs.mors.end());
        for (MorId f : cur)
            for (MorId g : cur) {
                if (!cat.composable(f, g)) continue;
                MorId gf = cat.compose(f, g);
                if (!fs.mors.count(gf)) {
                    if (fs.perfect) {
                        fs.perfect = false;
                        fs.witness = {{"f", f}, {"g", g}, {"composite", gf}};
                    }
                    fs.mors.insert(gf);
                    fs.objs.insert(cat.src(gf));
                    fs.objs.insert(cat.tgt(gf));
                    grew = true;
                }
            }
    }

    std::map<ObjId, ObjId> oidx;
    for (ObjId x : fs.objs) {
        oidx[x] = fs.cat.add_object(cat.objects[x]);
        fs.obj_of.push_back(x);
    }
    std::map<MorId, MorId> midx;
    for (MorId m : fs.mors) {
        midx[m] = fs.cat.add_mor(cat.mors[m].name, oidx.at(cat.src(m)), oidx.at(cat.tgt(m)));
        fs.mor_of.push_back(m);
    }
    for (ObjId x : fs.objs) fs.cat.set_identity(oidx.at(x), midx.at(cat.id_of[x]));
    fs.cat.init_comp_table();
    for (MorId f : fs.mors)
        for (MorId g : fs.mors) {
            if (!cat.composable(f, g)) continue;
            fs.cat.set_comp(midx.at(f), midx.at(g), midx.at(cat.compose(f, g)));
        }
    fs.cat.finish();
    return fs;
}

}  // namespace biop
