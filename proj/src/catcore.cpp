#include "biop/catcore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace biop {

ObjId FinCat::add_object(const std::string& name) {
    objects.push_back(name);
    id_of.push_back(-1);
    return (ObjId)objects.size() - 1;
}

MorId FinCat::add_mor(const std::string& name, ObjId src, ObjId tgt) {
    mors.push_back(Mor{src, tgt, name});
    return (MorId)mors.size() - 1;
}

void FinCat::set_identity(ObjId x, MorId m) {
    if (mors[m].src != x || mors[m].tgt != x)
        throw std::invalid_argument("set_identity: not an endomorphism of x");
    id_of[x] = m;
}

void FinCat::init_comp_table() {
    comp_table.assign(mors.size(), std::vector<MorId>(mors.size(), -1));
    for (MorId f = 0; f < n_mors(); ++f) {
        for (ObjId x = 0; x < n_objects(); ++x) {
            if (id_of[x] < 0) continue;
            if (mors[f].src == x) comp_table[f][id_of[x]] = f;  // f∘id
            if (mors[f].tgt == x) comp_table[id_of[x]][f] = f;  // id∘f
        }
    }
}

void FinCat::set_comp(MorId f, MorId g, MorId gf) {
    if (!composable(f, g)) throw std::invalid_argument("set_comp: not composable");
    if (mors[gf].src != mors[f].src || mors[gf].tgt != mors[g].tgt)
        throw std::invalid_argument("set_comp: composite has wrong ends");
    comp_table[g][f] = gf;
}

void FinCat::finish() {
    mors_from.assign(objects.size(), {});
    for (MorId m = 0; m < n_mors(); ++m) mors_from[mors[m].src].push_back(m);
}

MorId FinCat::compose(MorId f, MorId g) const {
    if (!composable(f, g)) throw std::invalid_argument("compose: not composable");
    if (!comp_table.empty()) {
        MorId r = comp_table[g][f];
        if (r < 0) throw std::logic_error("compose: missing table entry");
        return r;
    }
    return comp_fn(f, g);
}

CatReport validate(const FinCat& cat) {
    CatReport rep;
    auto fail = [&](const std::string& what, nlohmann::json w) {
        rep.ok = false;
        rep.what = what;
        rep.witness = std::move(w);
        return rep;
    };
    for (ObjId x = 0; x < cat.n_objects(); ++x) {
        if (cat.id_of[x] < 0) return fail("missing identity", {{"object", x}});
        MorId i = cat.id_of[x];
        if (cat.src(i) != x || cat.tgt(i) != x)
            return fail("identity has wrong ends", {{"object", x}, {"mor", i}});
    }
    for (MorId f = 0; f < cat.n_mors(); ++f) {
        for (MorId g = 0; g < cat.n_mors(); ++g) {
            if (!cat.composable(f, g)) continue;
            MorId gf;
            try {
                gf = cat.compose(f, g);
            } catch (const std::exception&) {
                return fail("composition not total", {{"f", f}, {"g", g}});
            }
            if (cat.src(gf) != cat.src(f) || cat.tgt(gf) != cat.tgt(g))
                return fail("composite has wrong ends", {{"f", f}, {"g", g}, {"gf", gf}});
        }
    }
    for (MorId f = 0; f < cat.n_mors(); ++f) {
        if (cat.compose(cat.id_of[cat.src(f)], f) != f)
            return fail("right identity law fails", {{"f", f}});
        if (cat.compose(f, cat.id_of[cat.tgt(f)]) != f)
            return fail("left identity law fails", {{"f", f}});
    }
    for (MorId f = 0; f < cat.n_mors(); ++f)
        for (MorId g = 0; g < cat.n_mors(); ++g) {
            if (!cat.composable(f, g)) continue;
            MorId gf = cat.compose(f, g);
            for (MorId h = 0; h < cat.n_mors(); ++h) {
                if (!cat.composable(g, h)) continue;
                MorId hg = cat.compose(g, h);
                if (cat.compose(gf, h) != cat.compose(f, hg))
                    return fail("associativity fails", {{"f", f}, {"g", g}, {"h", h}});
            }
        }
    return rep;
}

FinCat opposite(const FinCat& cat) {
    FinCat op;
    op.objects = cat.objects;
    op.id_of = cat.id_of;
    op.mors = cat.mors;
    for (auto& m : op.mors) std::swap(m.src, m.tgt);
    if (!cat.comp_table.empty()) {
        op.comp_table.assign(cat.mors.size(), std::vector<MorId>(cat.mors.size(), -1));
        for (MorId g = 0; g < cat.n_mors(); ++g)
            for (MorId f = 0; f < cat.n_mors(); ++f)
                if (cat.comp_table[g][f] >= 0) op.comp_table[f][g] = cat.comp_table[g][f];
    } else {
        auto fn = cat.comp_fn;
        op.comp_fn = [fn](MorId f, MorId g) { return fn(g, f); };
    }
    op.finish();
    return op;
}

std::vector<int> pi0(const FinCat& cat) {
    std::vector<int> parent(cat.n_objects());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& m : cat.mors) parent[find(m.src)] = find(m.tgt);
    std::vector<int> cls(cat.n_objects());
    std::map<int, int> relabel;
    for (ObjId x = 0; x < cat.n_objects(); ++x) {
        int root = find(x);
        auto it = relabel.find(root);
        if (it == relabel.end()) it = relabel.emplace(root, (int)relabel.size()).first;
        cls[x] = it->second;
    }
    return cls;
}

std::vector<int> iso_classes(const FinCat& cat) {
    int n = cat.n_objects();
    std::vector<std::vector<bool>> iso(n, std::vector<bool>(n, false));
    for (ObjId x = 0; x < n; ++x) iso[x][x] = true;
    for (MorId f = 0; f < cat.n_mors(); ++f) {
        ObjId x = cat.src(f), y = cat.tgt(f);
        if (iso[x][y]) continue;
        for (MorId g : cat.mors_from[y]) {
            if (cat.tgt(g) != x) continue;
            if (cat.compose(f, g) == cat.id_of[x] && cat.compose(g, f) == cat.id_of[y]) {
                iso[x][y] = iso[y][x] = true;
                break;
            }
        }
    }
    std::vector<int> cls(n, -1);
    int next = 0;
    for (ObjId x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        cls[x] = next;
        for (ObjId y = x + 1; y < n; ++y)
            if (iso[x][y]) cls[y] = next;
        ++next;
    }
    return cls;
}

Decalage decalage(const FinCat& cat) {
    Decalage d;
    for (MorId f = 0; f < cat.n_mors(); ++f) {
        d.cat.add_object(cat.mors[f].name);
        d.obj_mor.push_back(f);
    }
    for (ObjId a = 0; a < d.cat.n_objects(); ++a) {
        MorId f = d.obj_mor[a];
        for (ObjId b = 0; b < d.cat.n_objects(); ++b) {
            MorId g = d.obj_mor[b];
            if (cat.tgt(f) != cat.tgt(g)) continue;
            for (MorId u : cat.mors_from[cat.src(f)]) {
                if (cat.tgt(u) != cat.src(g)) continue;
                if (cat.compose(u, g) != f) continue;
                MorId m = d.cat.add_mor(cat.mors[u].name + ":" + cat.mors[f].name + ">" +
                                            cat.mors[g].name,
                                        a, b);
                d.mor_under.push_back(u);
                d.mor_index[{a, b, u}] = m;
                if (a == b && cat.is_identity(u)) d.cat.set_identity(a, m);
            }
        }
    }
    d.cat.init_comp_table();
    for (MorId m1 = 0; m1 < d.cat.n_mors(); ++m1)
        for (MorId m2 = 0; m2 < d.cat.n_mors(); ++m2) {
            if (!d.cat.composable(m1, m2)) continue;
            MorId u = cat.compose(d.mor_under[m1], d.mor_under[m2]);
            d.cat.set_comp(m1, m2, d.mor_index.at({d.cat.src(m1), d.cat.tgt(m2), u}));
        }
    d.cat.finish();
    return d;
}

CatReport validate_endofunctor(const FinCat& cat, const Endofunctor& r) {
    CatReport rep;
    auto fail = [&](const std::string& what, nlohmann::json w) {
        rep.ok = false;
        rep.what = what;
        rep.witness = std::move(w);
        return rep;
    };
    if ((int)r.obj_map.size() != cat.n_objects() || (int)r.mor_map.size() != cat.n_mors())
        return fail("endofunctor tables have wrong size", {});
    for (MorId f = 0; f < cat.n_mors(); ++f) {
        MorId rf = r.mor_map[f];
        if (cat.src(rf) != r.obj_map[cat.src(f)] || cat.tgt(rf) != r.obj_map[cat.tgt(f)])
            return fail("src/tgt not preserved", {{"f", f}});
    }
    for (ObjId x = 0; x < cat.n_objects(); ++x)
        if (r.mor_map[cat.id_of[x]] != cat.id_of[r.obj_map[x]])
            return fail("identities not preserved", {{"object", x}});
    for (MorId f = 0; f < cat.n_mors(); ++f)
        for (MorId g = 0; g < cat.n_mors(); ++g) {
            if (!cat.composable(f, g)) continue;
            if (r.mor_map[cat.compose(f, g)] != cat.compose(r.mor_map[f], r.mor_map[g]))
                return fail("composition not preserved", {{"f", f}, {"g", g}});
        }
    return rep;
}

Endofunctor identity_endofunctor(const FinCat& cat) {
    Endofunctor r;
    r.obj_map.resize(cat.n_objects());
    r.mor_map.resize(cat.n_mors());
    std::iota(r.obj_map.begin(), r.obj_map.end(), 0);
    std::iota(r.mor_map.begin(), r.mor_map.end(), 0);
    return r;
}

Endofunctor compose(const FinCat& cat, const Endofunctor& r, const Endofunctor& s) {
    Endofunctor t;
    t.obj_map.resize(cat.n_objects());
    t.mor_map.resize(cat.n_mors());
    for (ObjId x = 0; x < cat.n_objects(); ++x) t.obj_map[x] = s.obj_map[r.obj_map[x]];
    for (MorId f = 0; f < cat.n_mors(); ++f) t.mor_map[f] = s.mor_map[r.mor_map[f]];
    return t;
}

std::vector<Endofunctor> all_endofunctors(const FinCat& cat) {
    std::vector<Endofunctor> out;
    int no = cat.n_objects(), nm = cat.n_mors();
    std::vector<ObjId> omap(no, 0);
    // enumerate object maps, then extend to morphism maps by backtracking
    auto extend = [&](const std::vector<ObjId>& om) {
        std::vector<MorId> mmap(nm, -1);
        for (ObjId x = 0; x < no; ++x) mmap[cat.id_of[x]] = cat.id_of[om[x]];
        std::vector<MorId> free_mors;
        for (MorId f = 0; f < nm; ++f)
            if (mmap[f] < 0) free_mors.push_back(f);
        std::function<void(size_t)> rec = [&](size_t k) {
            if (k == free_mors.size()) {
                Endofunctor r{om, mmap};
                if (validate_endofunctor(cat, r).ok) out.push_back(std::move(r));
                return;
            }
            MorId f = free_mors[k];
            for (MorId c = 0; c < nm; ++c) {
                if (cat.src(c) != om[cat.src(f)] || cat.tgt(c) != om[cat.tgt(f)]) continue;
                mmap[f] = c;
                rec(k + 1);
            }
            mmap[f] = -1;
        };
        rec(0);
    };
    while (true) {
        extend(omap);
        int i = no - 1;
        while (i >= 0 && omap[i] == no - 1) omap[i--] = 0;
        if (i < 0) break;
        ++omap[i];
    }
    if (no == 0) out.push_back(Endofunctor{});
    return out;
}

std::string to_text(const FinCat& cat) {
    std::ostringstream os;
    os << "fincat\n";
    os << "objects:";
    for (const auto& o : cat.objects) os << ' ' << o;
    os << '\n';
    for (const auto& m : cat.mors)
        os << "mor: " << m.name << ' ' << cat.objects[m.src] << ' ' << cat.objects[m.tgt]
           << '\n';
    for (ObjId x = 0; x < cat.n_objects(); ++x)
        os << "identity: " << cat.objects[x] << ' ' << cat.mors[cat.id_of[x]].name << '\n';
    for (MorId g = 0; g < cat.n_mors(); ++g)
        for (MorId f = 0; f < cat.n_mors(); ++f) {
            if (!cat.composable(f, g)) continue;
            if (cat.is_identity(f) || cat.is_identity(g)) continue;
            os << "comp: " << cat.mors[g].name << ' ' << cat.mors[f].name << ' '
               << cat.mors[cat.compose(f, g)].name << '\n';
        }
    os << "end\n";
    return os.str();
}

FinCat fincat_from_text(const std::string& text) {
    FinCat cat;
    std::map<std::string, ObjId> obj_by_name;
    std::map<std::string, MorId> mor_by_name;
    std::istringstream is(text);
    std::string line;
    bool started = false, comp_init = false;
    auto require = [](bool c, const std::string& msg) {
        if (!c) throw std::invalid_argument("fincat_from_text: " + msg);
    };
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key.empty() || key[0] == '#') continue;
        if (key == "fincat") {
            started = true;
        } else if (key == "objects:") {
            std::string name;
            while (ls >> name) obj_by_name[name] = cat.add_object(name);
        } else if (key == "mor:") {
            std::string name, s, t;
            require(bool(ls >> name >> s >> t), "bad mor line");
            require(obj_by_name.count(s) && obj_by_name.count(t), "unknown object in mor");
            mor_by_name[name] = cat.add_mor(name, obj_by_name[s], obj_by_name[t]);
        } else if (key == "identity:") {
            std::string o, m;
            require(bool(ls >> o >> m), "bad identity line");
            require(obj_by_name.count(o) && mor_by_name.count(m), "unknown name in identity");
            cat.set_identity(obj_by_name[o], mor_by_name[m]);
        } else if (key == "comp:") {
            if (!comp_init) {
                cat.init_comp_table();
                comp_init = true;
            }
            std::string g, f, gf;
            require(bool(ls >> g >> f >> gf), "bad comp line");
            require(mor_by_name.count(g) && mor_by_name.count(f) && mor_by_name.count(gf),
                    "unknown morphism in comp");
            cat.set_comp(mor_by_name[f], mor_by_name[g], mor_by_name[gf]);
        } else if (key == "end") {
            break;
        } else {
            require(false, "unknown directive " + key);
        }
    }
    require(started, "missing fincat header");
    if (!comp_init) cat.init_comp_table();
    cat.finish();
    return cat;
}

FinCat terminal_cat() {
    FinCat c;
    ObjId x = c.add_object("*");
    MorId i = c.add_mor("1", x, x);
    c.set_identity(x, i);
    c.init_comp_table();
    c.finish();
    return c;
}

FinCat path_cat(int n) {
    FinCat c;
    for (int i = 0; i < n; ++i) c.add_object("x" + std::to_string(i));
    for (int i = 0; i < n; ++i) c.set_identity(i, c.add_mor("1x" + std::to_string(i), i, i));
    std::map<std::pair<int, int>, MorId> arrow;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            arrow[{i, j}] =
                c.add_mor("a" + std::to_string(i) + std::to_string(j), i, j);
    c.init_comp_table();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                c.set_comp(arrow[{i, j}], arrow[{j, k}], arrow[{i, k}]);
    c.finish();
    return c;
}

FinCat discrete_cat(int n) {
    FinCat c;
    for (int i = 0; i < n; ++i) c.add_object("x" + std::to_string(i));
    for (int i = 0; i < n; ++i) c.set_identity(i, c.add_mor("1x" + std::to_string(i), i, i));
    c.init_comp_table();
    c.finish();
    return c;
}

FinCat chaotic_cat(int n) {
    FinCat c;
    for (int i = 0; i < n; ++i) c.add_object("x" + std::to_string(i));
    std::vector<std::vector<MorId>> m(n, std::vector<MorId>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = c.add_mor("e" + std::to_string(i) + std::to_string(j), i, j);
    for (int i = 0; i < n; ++i) c.set_identity(i, m[i][i]);
    c.init_comp_table();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) c.set_comp(m[i][j], m[j][k], m[i][k]);
    c.finish();
    return c;
}

}  // namespace biop
