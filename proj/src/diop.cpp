#include "biop/diop.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace biop {

std::vector<ObjId> identity_fibers(const DiopPair& q, ObjId x) {
    MorId h = q.base->id_of[x];
    std::vector<ObjId> out;
    int n = q.n_fibers(h);
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.push_back(q.fiber_at(h, i));
    return out;
}

std::vector<ObjId> identity_cofibers(const DiopPair& q, ObjId x) {
    MorId h = q.base->id_of[x];
    std::vector<ObjId> out;
    int m = q.n_cofibers(h);
    out.reserve(m);
    for (int j = 1; j <= m; ++j) out.push_back(q.cofiber_at(h, j));
    return out;
}

Analysis analysis(const DiopPair& q, MorId h) {
    if (h < 0 || h >= q.base->n_mors())
        throw std::out_of_range("analysis: morphism not in base");
    Analysis a;
    a.h = h;
    a.S = q.base->src(h);
    a.T = q.base->tgt(h);
    int n = q.n_fibers(h), m = q.n_cofibers(h);
    for (int i = 1; i <= n; ++i) a.fibers.push_back(q.fiber_at(h, i));
    for (int j = 1; j <= m; ++j) a.cofibers.push_back(q.cofiber_at(h, j));
    a.U_S = identity_fibers(q, a.S);
    a.C_S = identity_cofibers(q, a.S);
    a.U_T = identity_fibers(q, a.T);
    a.C_T = identity_cofibers(q, a.T);
    for (ObjId d : a.cofibers) a.U_D.push_back(identity_fibers(q, d));
    for (ObjId f : a.fibers) a.C_F.push_back(identity_cofibers(q, f));
    if (q.left.unary && q.right.unary) {
        // forced by the decalage-algebra law at u = 1_S and its dual
        for (ObjId f : a.fibers)
            if (identity_fibers(q, f) != a.U_S)
                throw std::logic_error("analysis: U_F != U_S for unary morphism " +
                                       q.base->mors[h].name);
        for (ObjId d : a.cofibers)
            if (identity_cofibers(q, d) != a.C_T)
                throw std::logic_error("analysis: C_D != C_T for unary morphism " +
                                       q.base->mors[h].name);
    }
    return a;
}

ClassifyReport classify(const DiopPair& q) {
    ClassifyReport cr;
    cr.detail.check = "classify";
    Report lop = check_operadic(q.left);
    lop.check = "left";
    Report rop = check_operadic(q.right);
    rop.check = "right";
    cr.detail.merge(lop);
    cr.detail.merge(rop);
    cr.QF = fiber_subcategory(q.left);
    cr.QC = fiber_subcategory(q.right);
    cr.left_diop = lop.ok && cr.QF.perfect;
    cr.right_diop = rop.ok && cr.QC.perfect;
    cr.diop = cr.left_diop && cr.right_diop;
    cr.detail.counts["QF_objects"] = (long long)cr.QF.objs.size();
    cr.detail.counts["QF_mors"] = (long long)cr.QF.mors.size();
    cr.detail.counts["QC_objects"] = (long long)cr.QC.objs.size();
    cr.detail.counts["QC_mors"] = (long long)cr.QC.mors.size();
    if (!cr.QF.perfect)
        cr.detail.fail("left fiber class not closed under composition", cr.QF.witness);
    if (!cr.QC.perfect)
        cr.detail.fail("right fiber class not closed under composition", cr.QC.witness);
    return cr;
}

namespace {

void warn_capped(Report& rep, long long& extra, const std::string& msg) {
    if (rep.warnings.size() < 10)
        rep.warnings.push_back(msg);
    else
        ++extra;
}

}  // namespace

Report check_bioperadic(const DiopPair& q, bool strict) {
    Report rep;
    rep.check = "check_bioperadic";
    const FinCat& cat = *q.base;

    std::vector<int> iso;
    if (!strict) iso = iso_classes(cat);
    auto eq = [&](ObjId a, ObjId b) { return strict ? a == b : iso[a] == iso[b]; };
    auto eq_list = [&](const std::vector<ObjId>& a, const std::vector<ObjId>& b) {
        if (a.size() != b.size()) return false;
        for (size_t k = 0; k < a.size(); ++k)
            if (!eq(a[k], b[k])) return false;
        return true;
    };

    FiberSub QF = fiber_subcategory(q.left);
    FiberSub QC = fiber_subcategory(q.right);
    if (!QF.perfect) {
        rep.fail("pair is not left dioperadic", QF.witness);
        return rep;
    }
    if (!QC.perfect) {
        rep.fail("pair is not right dioperadic", QC.witness);
        return rep;
    }

    for (ObjId x : QF.objs) {
        rep.bump("QF_biarity");
        if (q.right.card_obj(x).n != 1)
            rep.fail("fiber-side object without biarity (a,1)",
                     {{"object", cat.objects[x]},
                      {"cofibers", q.right.card_obj(x).n}});
    }
    for (ObjId x : QC.objs) {
        rep.bump("QC_biarity");
        if (q.left.card_obj(x).n != 1)
            rep.fail("cofiber-side object without biarity (1,b)",
                     {{"object", cat.objects[x]},
                      {"fibers", q.left.card_obj(x).n}});
    }

    // biarities of fibers and cofibers of arbitrary morphisms, and their
    // coherence with the fibers of the bicardinality
    for (MorId h = 0; h < cat.n_mors(); ++h) {
        FinMap cl = q.left.card_mor(h);
        FinMap cr = q.right.card_mor(h);
        for (int i = 1; i <= cl.cod; ++i) {
            ObjId f = q.fiber_at(h, i);
            rep.bump("fiber_biarity");
            auto [fl, fr] = q.bicard(f);
            if (fr != 1 || fl != fiber(cl, i).size.n)
                rep.fail("fiber biarity differs from bicardinality fiber",
                         {{"mor", cat.mors[h].name},
                          {"i", i},
                          {"fiber", cat.objects[f]},
                          {"bicard", {fl, fr}},
                          {"expected", {fiber(cl, i).size.n, 1}}});
        }
        for (int j = 1; j <= cr.cod; ++j) {
            ObjId d = q.cofiber_at(h, j);
            rep.bump("cofiber_biarity");
            auto [dl, dr] = q.bicard(d);
            if (dl != 1 || dr != fiber(cr, j).size.n)
                rep.fail("cofiber biarity differs from bicardinality cofiber",
                         {{"mor", cat.mors[h].name},
                          {"j", j},
                          {"cofiber", cat.objects[d]},
                          {"bicard", {dl, dr}},
                          {"expected", {1, fiber(cr, j).size.n}}});
        }
    }
    if (!rep.ok) return rep;

    // the two matching equalities, over every morphism
    for (MorId h = 0; h < cat.n_mors(); ++h) {
        ObjId S = cat.src(h), T = cat.tgt(h);
        std::vector<ObjId> U_T = identity_fibers(q, T);
        std::vector<ObjId> C_S = identity_cofibers(q, S);
        int n = q.n_fibers(h), m = q.n_cofibers(h);
        for (int i = 1; i <= n; ++i) {
            rep.bump("eq_cofiber_of_fiber");
            std::vector<ObjId> C_F = identity_cofibers(q, q.fiber_at(h, i));
            if (C_F.size() != 1 || (int)U_T.size() < i || !eq(C_F[0], U_T[i - 1]))
                rep.fail("cofiber of fiber differs from identity fiber of target",
                         {{"mor", cat.mors[h].name}, {"i", i}});
        }
        for (int j = 1; j <= m; ++j) {
            rep.bump("eq_fiber_of_cofiber");
            std::vector<ObjId> U_D = identity_fibers(q, q.cofiber_at(h, j));
            if (U_D.size() != 1 || (int)C_S.size() < j || !eq(U_D[0], C_S[j - 1]))
                rep.fail("fiber of cofiber differs from identity cofiber of source",
                         {{"mor", cat.mors[h].name}, {"j", j}});
        }
    }

    // the companion equalities: required on the fiber subcategories, only
    // warned about elsewhere
    long long extra_warnings = 0;
    for (MorId h = 0; h < cat.n_mors(); ++h) {
        ObjId S = cat.src(h), T = cat.tgt(h);
        bool in_qf = QF.mors.count(h) > 0;
        bool in_qc = QC.mors.count(h) > 0;
        std::vector<ObjId> C_S = identity_cofibers(q, S);
        std::vector<ObjId> C_T = identity_cofibers(q, T);
        if (in_qf) {
            rep.bump("eq_source_target_cofibers");
            if (!eq_list(C_S, C_T))
                rep.fail("identity cofibers of source and target differ on fiber side",
                         {{"mor", cat.mors[h].name}});
        } else if (!eq_list(C_S, C_T)) {
            warn_capped(rep, extra_warnings,
                        "identity cofibers differ outside fiber side: " + cat.mors[h].name);
        }
        std::vector<ObjId> U_S = identity_fibers(q, S);
        std::vector<ObjId> U_T = identity_fibers(q, T);
        if (in_qc) {
            rep.bump("eq_source_target_fibers");
            if (!eq_list(U_T, U_S))
                rep.fail("identity fibers of source and target differ on cofiber side",
                         {{"mor", cat.mors[h].name}});
        } else if (!eq_list(U_T, U_S)) {
            warn_capped(rep, extra_warnings,
                        "identity fibers differ outside cofiber side: " + cat.mors[h].name);
        }
    }
    if (extra_warnings > 0)
        rep.warnings.push_back("... and " + std::to_string(extra_warnings) + " more");
    return rep;
}

SourceTarget source_target(const DiopPair& q, Report* rep) {
    SourceTarget st;
    const FinCat& cat = *q.base;
    std::vector<int> comp = pi0(cat);
    st.source_objs.resize(cat.n_objects());
    st.target_objs.resize(cat.n_objects());
    st.source.resize(cat.n_objects());
    st.target.resize(cat.n_objects());
    for (ObjId x = 0; x < cat.n_objects(); ++x) {
        st.source_objs[x] = identity_fibers(q, x);
        st.target_objs[x] = identity_cofibers(q, x);
        for (ObjId u : st.source_objs[x]) st.source[x].push_back(comp[u]);
        for (ObjId c : st.target_objs[x]) st.target[x].push_back(comp[c]);
    }
    if (rep) {
        rep->check = "source_target";
        std::set<int> s_all, t_all;
        for (ObjId x = 0; x < cat.n_objects(); ++x) {
            s_all.insert(st.source[x].begin(), st.source[x].end());
            t_all.insert(st.target[x].begin(), st.target[x].end());
        }
        rep->counts["source_elements"] = (long long)s_all.size();
        rep->counts["target_elements"] = (long long)t_all.size();
        if (s_all != t_all) {
            std::vector<int> only_s, only_t;
            std::set_difference(s_all.begin(), s_all.end(), t_all.begin(), t_all.end(),
                                std::back_inserter(only_s));
            std::set_difference(t_all.begin(), t_all.end(), s_all.begin(), s_all.end(),
                                std::back_inserter(only_t));
            rep->fail("source and target element sets differ",
                      {{"source_only", only_s}, {"target_only", only_t}});
        }
    }
    return st;
}

DiopPair bivariant_envelope(const OperadicStructure& os, const UnitFamily& units) {
    UnitalityReport u = check_unitality(os, units);
    if (!u.right)
        throw std::invalid_argument("bivariant_envelope: " + u.detail.what);
    auto op_sp = std::make_shared<const FinCat>(opposite(*os.base));
    std::vector<int> comp = pi0(*os.base);
    Endofunctor r;
    r.obj_map.resize(os.base->n_objects());
    for (ObjId x = 0; x < os.base->n_objects(); ++x) r.obj_map[x] = units.units[comp[x]];
    r.mor_map.resize(os.base->n_mors());
    for (MorId m = 0; m < os.base->n_mors(); ++m)
        r.mor_map[m] = os.base->id_of[r.obj_map[os.base->src(m)]];
    auto right = from_idempotent(op_sp, r);
    if (!right) throw std::logic_error("bivariant_envelope: constant functor not idempotent");
    return DiopPair{"bivariant_envelope", os.base, op_sp, os, *right};
}

DiopPair dioperadic_envelope(const OperadicStructure& os) {
    FiberSub fs = fiber_subcategory(os);
    if (!fs.perfect)
        throw std::invalid_argument("dioperadic_envelope: structure is not perfect");
    auto op_sp = std::make_shared<const FinCat>(opposite(*os.base));
    OperadicStructure right;
    right.base = op_sp;
    right.unary = false;
    right.card_obj = [](ObjId) { return Ord(0); };
    right.card_mor = [](MorId) { return FinMap(0, 0, {}); };
    right.fiber_at = [](MorId, int) -> ObjId {
        throw std::logic_error("dioperadic envelope has no cofibers");
    };
    right.induced_at = [](MorId, MorId, int) -> MorId {
        throw std::logic_error("dioperadic envelope has no cofibers");
    };
    return DiopPair{"dioperadic_envelope", os.base, op_sp, os, right};
}

}  // namespace biop
