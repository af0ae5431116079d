#include "biop/instances.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace biop {

namespace {

std::string table_str(const FinMap& f) {
    std::string s;
    for (int i = 0; i < f.dom; ++i) {
        if (i) s += ",";
        s += std::to_string(f.table[i]);
    }
    return s;
}

std::string bimap_str(const BiMap& b) {
    return "[" + table_str(b.fwd) + "|" + table_str(b.bwd) + "]";
}

}  // namespace

ObjId obj_by_name(const FinCat& cat, const std::string& name) {
    for (ObjId x = 0; x < cat.n_objects(); ++x)
        if (cat.objects[x] == name) return x;
    throw std::out_of_range("no object named " + name);
}

MorId mor_by_name(const FinCat& cat, const std::string& name) {
    for (MorId m = 0; m < cat.n_mors(); ++m)
        if (cat.mors[m].name == name) return m;
    throw std::out_of_range("no morphism named " + name);
}

// ---------------------------------------------------------------- sfset2

namespace {

struct Sf2State {
    int bound = 0;
    std::vector<BiMap> bm;          // per MorId
    std::map<BiMap, MorId> index;   // the BiMap determines src and tgt
};

}  // namespace

DiopPair sfset2(int bound) {
    if (bound < 0) throw std::invalid_argument("sfset2: negative bound");
    auto st = std::make_shared<Sf2State>();
    st->bound = bound;
    auto cat = std::make_shared<FinCat>();
    auto obj_id = [bound](int a, int m) { return a * (bound + 1) + m; };
    for (int a = 0; a <= bound; ++a)
        for (int m = 0; m <= bound; ++m)
            cat->add_object("(" + std::to_string(a) + "," + std::to_string(m) + ")");
    for (int a = 0; a <= bound; ++a)
        for (int m = 0; m <= bound; ++m)
            for (int n = 0; n <= bound; ++n)
                for (int b = 0; b <= bound; ++b)
                    for (const FinMap& fwd : enumerate_maps(a, n))
                        for (const FinMap& bwd : enumerate_maps(b, m)) {
                            BiMap bi{fwd, bwd};
                            // the endpoints disambiguate tables with free codomain points
                            std::string nm = cat->objects[obj_id(a, m)] + "->" +
                                             cat->objects[obj_id(n, b)] + ":" + bimap_str(bi);
                            MorId id = cat->add_mor(nm, obj_id(a, m), obj_id(n, b));
                            st->bm.push_back(bi);
                            st->index.emplace(std::move(bi), id);
                        }
    for (int a = 0; a <= bound; ++a)
        for (int m = 0; m <= bound; ++m)
            cat->set_identity(obj_id(a, m),
                              st->index.at({FinMap::identity(a), FinMap::identity(m)}));
    cat->comp_fn = [st](MorId f, MorId g) {  // g after f
        return st->index.at(compose(st->bm[f], st->bm[g]));
    };
    cat->finish();
    auto base = std::shared_ptr<const FinCat>(cat);
    auto op = std::make_shared<const FinCat>(opposite(*base));

    OperadicStructure left;
    left.base = base;
    left.unary = false;
    left.card_obj = [st](ObjId x) { return Ord(x / (st->bound + 1)); };
    left.card_mor = [st](MorId h) { return st->bm[h].fwd; };
    left.fiber_at = [st, obj_id](MorId h, int i) {
        return obj_id(fiber(st->bm[h].fwd, i).size.n, 1);
    };
    left.induced_at = [st](MorId h, MorId g, int i) {  // h then g in the base
        return st->index.at(
            {induced_on_fibers(st->bm[h].fwd, st->bm[g].fwd, i), FinMap::identity(1)});
    };

    OperadicStructure right;
    right.base = op;
    right.unary = false;
    right.card_obj = [st](ObjId x) { return Ord(x % (st->bound + 1)); };
    right.card_mor = [st](MorId h) { return st->bm[h].bwd; };
    right.fiber_at = [st, obj_id](MorId h, int j) {
        return obj_id(1, fiber(st->bm[h].bwd, j).size.n);
    };
    right.induced_at = [st](MorId h, MorId g, int j) {  // base chain: g then h
        return st->index.at(
            {FinMap::identity(1), induced_on_fibers(st->bm[h].bwd, st->bm[g].bwd, j)});
    };

    return DiopPair{"sfset2:" + std::to_string(bound), base, op, left, right};
}

// ------------------------------------------------------------------- bbq

Bibouquet bbq_fiber(const Bibouquet& src, const Bibouquet& tgt, const BiMap& phi, int i) {
    Bibouquet f;
    for (int s = 1; s <= phi.fwd.dom; ++s)
        if (phi.fwd(s) == i) f.top.push_back(src.top[s - 1]);
    f.bottom.push_back(tgt.top[i - 1]);
    return f;
}

Bibouquet bbq_cofiber(const Bibouquet& src, const Bibouquet& tgt, const BiMap& phi, int j) {
    Bibouquet d;
    d.top.push_back(src.bottom[j - 1]);
    for (int t = 1; t <= phi.bwd.dom; ++t)
        if (phi.bwd(t) == j) d.bottom.push_back(tgt.bottom[t - 1]);
    return d;
}

std::string bbq_name(const Bibouquet& b, const std::vector<std::string>& colors) {
    auto side = [&](const std::vector<int>& cs) -> std::string {
        if (cs.empty()) return "∅";
        std::string s;
        for (size_t k = 0; k < cs.size(); ++k) {
            if (k) s += ",";
            s += colors[cs[k]];
        }
        return s;
    };
    return side(b.top) + "/" + side(b.bottom);
}

namespace {

struct BbqState {
    std::vector<std::string> colors;
    std::vector<Bibouquet> obj;
    std::map<Bibouquet, ObjId> obj_index;
    std::vector<BiMap> bm;
    std::map<std::tuple<ObjId, ObjId, BiMap>, MorId> index;
};

std::vector<std::vector<int>> color_lists(int n_colors, int max_len) {
    std::vector<std::vector<int>> out{{}};
    std::vector<std::vector<int>> level{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : level)
            for (int c = 0; c < n_colors; ++c) {
                auto w2 = w;
                w2.push_back(c);
                next.push_back(w2);
            }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

}  // namespace

DiopPair bbq(const std::vector<std::string>& colors, int bound) {
    if (colors.empty()) throw std::invalid_argument("bbq: empty color set");
    if (bound < 1) throw std::invalid_argument("bbq: bound must be at least 1");
    auto st = std::make_shared<BbqState>();
    st->colors = colors;
    auto cat = std::make_shared<FinCat>();
    auto lists = color_lists((int)colors.size(), bound);
    for (const auto& t : lists)
        for (const auto& b : lists) {
            Bibouquet bq{t, b};
            st->obj_index.emplace(bq, cat->add_object(bbq_name(bq, colors)));
            st->obj.push_back(std::move(bq));
        }
    for (ObjId s = 0; s < cat->n_objects(); ++s)
        for (ObjId t = 0; t < cat->n_objects(); ++t) {
            int a = (int)st->obj[s].top.size(), m = (int)st->obj[s].bottom.size();
            int n = (int)st->obj[t].top.size(), b = (int)st->obj[t].bottom.size();
            for (const FinMap& fwd : enumerate_maps(a, n))
                for (const FinMap& bwd : enumerate_maps(b, m)) {
                    BiMap bi{fwd, bwd};
                    MorId id = cat->add_mor(
                        cat->objects[s] + "->" + cat->objects[t] + ":" + bimap_str(bi), s, t);
                    st->bm.push_back(bi);
                    st->index.emplace(std::make_tuple(s, t, std::move(bi)), id);
                }
        }
    for (ObjId x = 0; x < cat->n_objects(); ++x) {
        int a = (int)st->obj[x].top.size(), m = (int)st->obj[x].bottom.size();
        cat->set_identity(
            x, st->index.at({x, x, BiMap{FinMap::identity(a), FinMap::identity(m)}}));
    }
    auto catp = cat.get();
    cat->comp_fn = [st, catp](MorId f, MorId g) {  // g after f
        return st->index.at(
            {catp->src(f), catp->tgt(g), compose(st->bm[f], st->bm[g])});
    };
    cat->finish();
    auto base = std::shared_ptr<const FinCat>(cat);
    auto op = std::make_shared<const FinCat>(opposite(*base));

    auto fiber_obj = [st, base](MorId h, int i) {
        return st->obj_index.at(
            bbq_fiber(st->obj[base->src(h)], st->obj[base->tgt(h)], st->bm[h], i));
    };
    auto cofiber_obj = [st, base](MorId h, int j) {
        return st->obj_index.at(
            bbq_cofiber(st->obj[base->src(h)], st->obj[base->tgt(h)], st->bm[h], j));
    };

    OperadicStructure left;
    left.base = base;
    left.unary = false;
    left.card_obj = [st](ObjId x) { return Ord((int)st->obj[x].top.size()); };
    left.card_mor = [st](MorId h) { return st->bm[h].fwd; };
    left.fiber_at = fiber_obj;
    left.induced_at = [st, base, fiber_obj](MorId h, MorId g, int i) {
        MorId gh = base->compose(h, g);
        return st->index.at(
            {fiber_obj(gh, i), fiber_obj(g, i),
             BiMap{induced_on_fibers(st->bm[h].fwd, st->bm[g].fwd, i), FinMap::identity(1)}});
    };

    OperadicStructure right;
    right.base = op;
    right.unary = false;
    right.card_obj = [st](ObjId x) { return Ord((int)st->obj[x].bottom.size()); };
    right.card_mor = [st](MorId h) { return st->bm[h].bwd; };
    right.fiber_at = cofiber_obj;
    right.induced_at = [st, base, cofiber_obj](MorId h, MorId g, int j) {
        MorId hg = base->compose(g, h);  // base chain: g then h
        return st->index.at(
            {cofiber_obj(g, j), cofiber_obj(hg, j),
             BiMap{FinMap::identity(1), induced_on_fibers(st->bm[h].bwd, st->bm[g].bwd, j)}});
    };

    return DiopPair{"bbq:" + std::to_string((int)colors.size()) + ":" + std::to_string(bound),
                    base, op, left, right};
}

// ---------------------------------------------------------- pointed sets

namespace {

struct PSetState {
    // per morphism: source size, target size, table over {1..s} with values
    // in {0..t}, 0 standing for the base point
    struct PMor {
        int s = 0, t = 0;
        std::vector<int> table;
    };
    std::vector<PMor> pm;
    std::map<std::tuple<int, int, std::vector<int>>, MorId> index;

    std::vector<int> fiber_elems(MorId h) const {  // preimage of the base point
        std::vector<int> out;
        for (int x = 1; x <= pm[h].s; ++x)
            if (pm[h].table[x - 1] == 0) out.push_back(x);
        return out;
    }
    std::vector<int> cofiber_elems(MorId h) const {  // complement of the image
        std::vector<bool> hit(pm[h].t + 1, false);
        for (int v : pm[h].table)
            if (v > 0) hit[v] = true;
        std::vector<int> out;
        for (int y = 1; y <= pm[h].t; ++y)
            if (!hit[y]) out.push_back(y);
        return out;
    }
};

int local_index(const std::vector<int>& elems, int ambient) {
    if (ambient == 0) return 0;
    auto it = std::find(elems.begin(), elems.end(), ambient);
    if (it == elems.end()) throw std::logic_error("pointed sets: element escapes the (co)fiber");
    return (int)(it - elems.begin()) + 1;
}

}  // namespace

DiopPair pointed_sets(int bound) {
    if (bound < 0) throw std::invalid_argument("pointed_sets: negative bound");
    auto st = std::make_shared<PSetState>();
    auto cat = std::make_shared<FinCat>();
    for (int s = 0; s <= bound; ++s) cat->add_object(std::to_string(s) + "+*");
    for (int s = 0; s <= bound; ++s)
        for (int t = 0; t <= bound; ++t)
            for (const FinMap& f : enumerate_maps(s, t + 1)) {
                // shift: FinMap values 1..t+1 encode 0..t
                std::vector<int> table(f.table);
                for (int& v : table) v -= 1;
                std::string nm = "(" + std::to_string(s) + "->" + std::to_string(t) + ":";
                for (int i = 0; i < s; ++i) nm += (i ? "," : "") + std::to_string(table[i]);
                nm += ")";
                MorId id = cat->add_mor(nm, s, t);
                st->pm.push_back({s, t, table});
                st->index.emplace(std::make_tuple(s, t, std::move(table)), id);
            }
    for (int s = 0; s <= bound; ++s) {
        std::vector<int> idt(s);
        for (int x = 1; x <= s; ++x) idt[x - 1] = x;
        cat->set_identity(s, st->index.at({s, s, idt}));
    }
    cat->comp_fn = [st](MorId f, MorId g) {  // g after f
        const auto& a = st->pm[f];
        const auto& b = st->pm[g];
        std::vector<int> table(a.s);
        for (int x = 1; x <= a.s; ++x) {
            int y = a.table[x - 1];
            table[x - 1] = y == 0 ? 0 : b.table[y - 1];
        }
        return st->index.at({a.s, b.t, table});
    };
    cat->finish();
    auto base = std::shared_ptr<const FinCat>(cat);
    auto op = std::make_shared<const FinCat>(opposite(*base));

    OperadicStructure left = make_unary(
        base,
        [st](MorId h) { return (ObjId)st->fiber_elems(h).size(); },
        [st, base](MorId h, MorId g) {  // restriction fiber(gh) -> fiber(g)
            MorId gh = base->compose(h, g);
            std::vector<int> dom = st->fiber_elems(gh);
            std::vector<int> cod = st->fiber_elems(g);
            std::vector<int> table;
            for (int x : dom) table.push_back(local_index(cod, st->pm[h].table[x - 1]));
            return st->index.at({(int)dom.size(), (int)cod.size(), table});
        });

    OperadicStructure right = make_unary(
        op,
        [st](MorId h) { return (ObjId)st->cofiber_elems(h).size(); },
        [st, base](MorId h, MorId g) {  // base chain g then h: cofiber(g) -> cofiber(hg)
            MorId hg = base->compose(g, h);
            std::vector<int> dom = st->cofiber_elems(g);
            std::vector<int> cod = st->cofiber_elems(hg);
            std::vector<int> table;
            for (int x : dom) {
                int y = st->pm[h].table[x - 1];
                bool in_cod = y > 0 && std::find(cod.begin(), cod.end(), y) != cod.end();
                table.push_back(in_cod ? local_index(cod, y) : 0);
            }
            return st->index.at({(int)dom.size(), (int)cod.size(), table});
        });

    return DiopPair{"pset:" + std::to_string(bound), base, op, left, right};
}

// -------------------------------------------------------- arrow category

namespace {

struct ArrState {
    FinCat c;
    struct Square {
        MorId F = -1, D = -1;
    };
    std::vector<Square> sq;
    std::map<std::tuple<ObjId, ObjId, MorId, MorId>, MorId> index;
};

}  // namespace

DiopPair arrow_cat(const FinCat& c) {
    auto st = std::make_shared<ArrState>();
    st->c = c;
    auto cat = std::make_shared<FinCat>();
    // object ids coincide with the morphism ids of c
    for (MorId f = 0; f < c.n_mors(); ++f) cat->add_object(c.mors[f].name);
    for (MorId f = 0; f < c.n_mors(); ++f)
        for (MorId g = 0; g < c.n_mors(); ++g)
            for (MorId F = 0; F < c.n_mors(); ++F) {
                if (c.src(F) != c.src(f) || c.tgt(F) != c.src(g)) continue;
                for (MorId D = 0; D < c.n_mors(); ++D) {
                    if (c.src(D) != c.tgt(f) || c.tgt(D) != c.tgt(g)) continue;
                    if (c.compose(F, g) != c.compose(f, D)) continue;
                    MorId id = cat->add_mor(
                        "(" + c.mors[F].name + "," + c.mors[D].name + ")", f, g);
                    st->sq.push_back({F, D});
                    st->index.emplace(std::make_tuple(f, g, F, D), id);
                }
            }
    for (MorId f = 0; f < c.n_mors(); ++f)
        cat->set_identity(f, st->index.at({f, f, c.id_of[c.src(f)], c.id_of[c.tgt(f)]}));
    auto catp = cat.get();
    cat->comp_fn = [st, catp](MorId m1, MorId m2) {  // m2 after m1
        return st->index.at({catp->src(m1), catp->tgt(m2),
                             st->c.compose(st->sq[m1].F, st->sq[m2].F),
                             st->c.compose(st->sq[m1].D, st->sq[m2].D)});
    };
    cat->finish();
    auto base = std::shared_ptr<const FinCat>(cat);
    auto op = std::make_shared<const FinCat>(opposite(*base));

    OperadicStructure left = make_unary(
        base,
        [st](MorId m) { return (ObjId)st->sq[m].F; },
        [st, base](MorId h, MorId g) {  // fiber(gh) -> fiber(g): square (F_h, 1)
            MorId Fh = st->sq[h].F, Fg = st->sq[g].F;
            return st->index.at({st->c.compose(Fh, Fg), Fg, Fh,
                                 st->c.id_of[st->c.tgt(Fg)]});
        });

    OperadicStructure right = make_unary(
        op,
        [st](MorId m) { return (ObjId)st->sq[m].D; },
        [st, base](MorId h, MorId g) {  // base chain g then h: cofiber(g) -> cofiber(hg)
            MorId Dg = st->sq[g].D, Dh = st->sq[h].D;
            return st->index.at({Dg, st->c.compose(Dg, Dh),
                                 st->c.id_of[st->c.src(Dg)], Dh});
        });

    return DiopPair{"arr", base, op, left, right};
}

// --------------------------------------------------------------- helpers

DiopPair terminal_pair() {
    auto base = std::make_shared<const FinCat>(terminal_cat());
    auto op = std::make_shared<const FinCat>(opposite(*base));
    OperadicStructure left = make_unary(
        base, [](MorId) { return (ObjId)0; }, [](MorId, MorId) { return (MorId)0; });
    OperadicStructure right = make_unary(
        op, [](MorId) { return (ObjId)0; }, [](MorId, MorId) { return (MorId)0; });
    return DiopPair{"terminal", base, op, left, right};
}

Report bicardinality_projection(const DiopPair& q) {
    Report rep;
    rep.check = "bicardinality_projection";
    const FinCat& cat = *q.base;
    auto bimap_of = [&](MorId h) { return BiMap{q.left.card_mor(h), q.right.card_mor(h)}; };
    for (MorId h = 0; h < cat.n_mors(); ++h) {
        auto [a, m] = q.bicard(cat.src(h));
        auto [n, b] = q.bicard(cat.tgt(h));
        BiMap bi = bimap_of(h);
        rep.bump("ends");
        if (bi.fwd.dom != a || bi.fwd.cod != n || bi.bwd.dom != b || bi.bwd.cod != m)
            rep.fail("bicardinality has wrong ends",
                     {{"mor", cat.mors[h].name},
                      {"src", {a, m}},
                      {"tgt", {n, b}},
                      {"fwd", {bi.fwd.dom, bi.fwd.cod}},
                      {"bwd", {bi.bwd.dom, bi.bwd.cod}}});
        if (cat.is_identity(h)) {
            rep.bump("identities");
            if (!bi.fwd.is_identity() || !bi.bwd.is_identity())
                rep.fail("identity with non-identity bicardinality",
                         {{"mor", cat.mors[h].name}});
        }
    }
    for (MorId h = 0; h < cat.n_mors(); ++h)
        for (MorId g : cat.mors_from[cat.tgt(h)]) {
            rep.bump("composites");
            if (bimap_of(cat.compose(h, g)) != compose(bimap_of(h), bimap_of(g)))
                rep.fail("bicardinality not functorial",
                         {{"h", cat.mors[h].name}, {"g", cat.mors[g].name}});
        }
    return rep;
}

}  // namespace biop
