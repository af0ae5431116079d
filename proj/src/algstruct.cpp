#include "biop/algstruct.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace biop {

// ---------------------------------------------------------------------------
// sparse linear operators

LinOp identity_op(long n) {
    LinOp op;
    op.dom = op.cod = n;
    op.col = [](long i) -> SparseVec { return {{i, Scalar(1)}}; };
    return op;
}

LinOp zero_op(long cod, long dom) {
    LinOp op;
    op.dom = dom;
    op.cod = cod;
    op.col = [](long) -> SparseVec { return {}; };
    return op;
}

LinOp from_vecmor(const VecMor& m) {
    LinOp op;
    op.dom = m.dom_dim;
    op.cod = m.cod_dim;
    op.col = [m](long c) -> SparseVec {
        SparseVec v;
        for (int r = 0; r < m.cod_dim; ++r)
            if (m.at(r, (int)c) != 0) v.push_back({r, m.at(r, (int)c)});
        return v;
    };
    return op;
}

SparseVec apply_op(const LinOp& h, const SparseVec& x) {
    std::map<long, Scalar> acc;
    for (const auto& [i, c] : x)
        for (const auto& [j, d] : h.col(i)) acc[j] += c * d;
    SparseVec out;
    for (auto& [j, c] : acc)
        if (c != 0) out.push_back({j, c});
    return out;
}

LinOp op_then(const LinOp& first, const LinOp& second) {
    if (first.cod != second.dom) throw std::logic_error("op_then: dimension mismatch");
    LinOp op;
    op.dom = first.dom;
    op.cod = second.cod;
    op.col = [first, second](long i) { return apply_op(second, first.col(i)); };
    return op;
}

LinOp kron(const std::vector<LinOp>& factors) {
    std::vector<long> doms, cods;
    long dom = 1, cod = 1;
    for (const auto& f : factors) {
        doms.push_back(f.dom);
        cods.push_back(f.cod);
        dom *= f.dom;
        cod *= f.cod;
    }
    LinOp op;
    op.dom = dom;
    op.cod = cod;
    op.col = [factors, doms, cods](long idx) -> SparseVec {
        auto dig = split_index(idx, doms);
        SparseVec acc{{0, Scalar(1)}};
        for (size_t k = 0; k < factors.size(); ++k) {
            SparseVec part = factors[k].col(dig[k]);
            SparseVec next;
            for (const auto& [j, c] : acc)
                for (const auto& [jk, ck] : part) next.push_back({j * cods[k] + jk, c * ck});
            acc = std::move(next);
            if (acc.empty()) break;
        }
        return acc;
    };
    return op;
}

SparseVec normalized(const Field& f, SparseVec v) {
    std::map<long, Scalar> acc;
    for (auto& [i, c] : v) acc[i] += c;
    SparseVec out;
    for (auto& [i, c] : acc) {
        Scalar r = f.reduce(c);
        if (r != 0) out.push_back({i, r});
    }
    return out;
}

nlohmann::json sparse_to_json(const SparseVec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [i, c] : v) j.push_back({i, c.get_str()});
    return j;
}

std::vector<long> split_index(long idx, const std::vector<long>& dims) {
    std::vector<long> dig(dims.size(), 0);
    for (size_t k = dims.size(); k-- > 0;) {
        dig[k] = idx % dims[k];
        idx /= dims[k];
    }
    return dig;
}

long join_index(const std::vector<long>& digits, const std::vector<long>& dims) {
    long idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

long shape_dim(const Shape& s) {
    long d = 1;
    for (const auto& f : s) d *= f.dim;
    return d;
}

LinOp perm_op(const Shape& from, const Shape& to) {
    if (from.size() != to.size()) throw std::logic_error("perm_op: sizes differ");
    std::map<std::string, size_t> pos;
    for (size_t k = 0; k < from.size(); ++k)
        if (!pos.emplace(from[k].tag, k).second)
            throw std::logic_error("perm_op: duplicate tag " + from[k].tag);
    std::vector<size_t> source(to.size());
    std::vector<long> fdims, tdims;
    for (const auto& f : from) fdims.push_back(f.dim);
    for (size_t p = 0; p < to.size(); ++p) {
        auto it = pos.find(to[p].tag);
        if (it == pos.end()) throw std::logic_error("perm_op: unmatched tag " + to[p].tag);
        if (from[it->second].dim != to[p].dim)
            throw std::logic_error("perm_op: dimension clash at " + to[p].tag);
        source[p] = it->second;
        tdims.push_back(to[p].dim);
        pos.erase(it);
    }
    LinOp op;
    op.dom = shape_dim(from);
    op.cod = shape_dim(to);
    op.col = [source, fdims, tdims](long idx) -> SparseVec {
        auto dig = split_index(idx, fdims);
        std::vector<long> tdig(tdims.size());
        for (size_t p = 0; p < tdims.size(); ++p) tdig[p] = dig[source[p]];
        return {{join_index(tdig, tdims), Scalar(1)}};
    };
    return op;
}

OpsEqual ops_equal(const Field& f, const LinOp& a, const LinOp& b) {
    OpsEqual r;
    if (a.dom != b.dom || a.cod != b.cod) {
        r.equal = false;
        r.at = -2;
        return r;
    }
    for (long i = 0; i < a.dom; ++i) {
        SparseVec la = normalized(f, a.col(i));
        SparseVec lb = normalized(f, b.col(i));
        if (la != lb) {
            r.equal = false;
            r.at = i;
            r.lhs = std::move(la);
            r.rhs = std::move(lb);
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// checker plumbing

namespace {

std::string mname(const FinCat& c, MorId m) { return c.mors[m].name; }
std::string oname(const FinCat& c, ObjId x) { return c.objects[x]; }

// preimages of each codomain point, sorted, 1-based elements
std::vector<std::vector<int>> finmap_blocks(const FinMap& f) {
    std::vector<std::vector<int>> blocks(f.cod);
    for (int e = 1; e <= f.dom; ++e) blocks[f(e) - 1].push_back(e);
    return blocks;
}

bool collection_shapes_ok(const DiopPair& q, const Collection& c, bool cofiber_side,
                          Report& rep) {
    const FinCat& B = *q.base;
    for (const auto& [h, op] : c.op) {
        long need = 1;
        bool have = c.has_obj(B.src(h)) && c.has_obj(B.tgt(h));
        int n = cofiber_side ? q.n_cofibers(h) : q.n_fibers(h);
        for (int i = 1; i <= n && have; ++i) {
            ObjId f = cofiber_side ? q.cofiber_at(h, i) : q.fiber_at(h, i);
            if (!c.has_obj(f))
                have = false;
            else
                need *= c.dim.at(f);
        }
        long dom = -1, cod = -1;
        if (have) {
            dom = cofiber_side ? c.dim.at(B.tgt(h)) : c.dim.at(B.tgt(h)) * need;
            cod = cofiber_side ? need * c.dim.at(B.src(h)) : c.dim.at(B.src(h));
        }
        if (!have || op.dom != dom || op.cod != cod) {
            rep.fail("operation shape mismatch",
                     {{"morphism", mname(B, h)},
                      {"dom", op.dom},
                      {"cod", op.cod},
                      {"expected_dom", dom},
                      {"expected_cod", cod}});
            return false;
        }
    }
    return true;
}

nlohmann::json law_witness(const FinCat& B, const std::string& structure, MorId h, MorId g,
                           const OpsEqual& d) {
    nlohmann::json w{{"morphism", mname(B, h)},
                     {"basis", d.at},
                     {"lhs", sparse_to_json(d.lhs)},
                     {"rhs", sparse_to_json(d.rhs)}};
    nlohmann::json replay{{"structure", structure}, {"only_h", mname(B, h)}};
    if (g >= 0) {
        w["then"] = mname(B, g);
        replay["only_g"] = mname(B, g);
    }
    w["replay"] = replay;
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// operad / cooperad / bimodule laws

Report check_operad(const DiopPair& q, const Operad& P, LawOptions opt) {
    Report rep;
    rep.check = "operad-law";
    const FinCat& B = *q.base;
    if (!collection_shapes_ok(q, P, false, rep)) return rep;
    for (const auto& [h, oph] : P.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        for (const auto& [g, opg] : P.op) {
            if (opt.only_g >= 0 && g != opt.only_g) continue;
            if (!B.composable(h, g)) continue;
            MorId gh = B.compose(h, g);
            if (!P.has_op(gh)) {
                rep.bump("skipped");
                continue;
            }
            rep.bump("pairs");
            int a = q.n_fibers(g);
            auto blocks = finmap_blocks(q.left.card_mor(g));  // fibers of h per fiber of g
            bool usable = true;
            std::vector<LinOp> mid{identity_op(P.dim.at(B.tgt(g)))};
            Shape common{{"Z", P.dim.at(B.tgt(g))}};
            Shape inter = common;
            for (int i = 1; i <= a; ++i) common.push_back({"g:" + std::to_string(i),
                                                           P.dim.at(q.fiber_at(g, i))});
            for (int j = 1; j <= q.n_fibers(h); ++j)
                common.push_back({"h:" + std::to_string(j), P.dim.at(q.fiber_at(h, j))});
            for (int i = 1; i <= a && usable; ++i) {
                MorId hi = q.induced_fiber(h, g, i);
                const auto& blk = blocks[i - 1];
                if (q.n_fibers(hi) != (int)blk.size()) usable = false;
                for (size_t k = 0; k < blk.size() && usable; ++k)
                    if (q.fiber_at(hi, (int)k + 1) != q.fiber_at(h, blk[k])) usable = false;
                if (!usable) {
                    rep.fail("induced-morphism fibers do not match the fibers of the composite",
                             {{"morphism", mname(B, h)},
                              {"then", mname(B, g)},
                              {"induced", mname(B, hi)},
                              {"output", i}});
                    break;
                }
                if (!P.has_op(hi)) {
                    rep.bump("skipped");
                    usable = false;
                    break;
                }
                mid.push_back(P.op.at(hi));
                inter.push_back({"g:" + std::to_string(i), P.dim.at(q.fiber_at(g, i))});
                for (int j : blk)
                    inter.push_back({"h:" + std::to_string(j), P.dim.at(q.fiber_at(h, j))});
            }
            if (!usable) continue;
            rep.bump("checked");
            long restf = shape_dim(common) / P.dim.at(B.tgt(g));
            for (int i = 1; i <= a; ++i) restf /= P.dim.at(q.fiber_at(g, i));
            LinOp rhs = op_then(kron({opg, identity_op(restf)}), oph);
            LinOp lhs = op_then(op_then(perm_op(common, inter), kron(mid)), P.op.at(gh));
            OpsEqual d = ops_equal(P.field, lhs, rhs);
            if (!d.equal) rep.fail("composition law failed", law_witness(B, "operad", h, g, d));
        }
    }
    return rep;
}

Report check_cooperad(const DiopPair& q, const Cooperad& C, LawOptions opt) {
    Report rep;
    rep.check = "cooperad-law";
    const FinCat& B = *q.base;
    if (!collection_shapes_ok(q, C, true, rep)) return rep;
    for (const auto& [h, oph] : C.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        for (const auto& [g, opg] : C.op) {
            if (opt.only_g >= 0 && g != opt.only_g) continue;
            if (!B.composable(h, g)) continue;
            MorId gh = B.compose(h, g);
            if (!C.has_op(gh)) {
                rep.bump("skipped");
                continue;
            }
            rep.bump("pairs");
            int b = q.n_cofibers(h);
            if (q.n_cofibers(gh) != b) {
                rep.fail("cofiber counts of a composite differ",
                         {{"morphism", mname(B, h)}, {"then", mname(B, g)}});
                continue;
            }
            auto rblocks = finmap_blocks(q.right.card_mor(h));  // cofibers of g per cofiber of h
            Shape canon;
            for (int jp = 1; jp <= q.n_cofibers(g); ++jp)
                canon.push_back({"C:" + std::to_string(jp), C.dim.at(q.cofiber_at(g, jp))});
            for (int j = 1; j <= b; ++j)
                canon.push_back({"D:" + std::to_string(j), C.dim.at(q.cofiber_at(h, j))});
            canon.push_back({"S", C.dim.at(B.src(h))});
            bool usable = true;
            std::vector<LinOp> split;
            Shape grouped;
            for (int j = 1; j <= b && usable; ++j) {
                MorId gj = q.induced_cofiber(h, g, j);
                const auto& blk = rblocks[j - 1];
                if (q.n_cofibers(gj) != (int)blk.size()) usable = false;
                for (size_t k = 0; k < blk.size() && usable; ++k)
                    if (q.cofiber_at(gj, (int)k + 1) != q.cofiber_at(g, blk[k])) usable = false;
                if (!usable) {
                    rep.fail("induced-morphism cofibers do not match the cofibers of the composite",
                             {{"morphism", mname(B, h)},
                              {"then", mname(B, g)},
                              {"induced", mname(B, gj)},
                              {"output", j}});
                    break;
                }
                if (!C.has_op(gj)) {
                    rep.bump("skipped");
                    usable = false;
                    break;
                }
                split.push_back(C.op.at(gj));
                for (int jp : blk)
                    grouped.push_back({"C:" + std::to_string(jp), C.dim.at(q.cofiber_at(g, jp))});
                grouped.push_back({"D:" + std::to_string(j), C.dim.at(q.cofiber_at(h, j))});
            }
            if (!usable) continue;
            rep.bump("checked");
            grouped.push_back({"S", C.dim.at(B.src(h))});
            split.push_back(identity_op(C.dim.at(B.src(h))));
            long cg = 1;
            for (int jp = 1; jp <= q.n_cofibers(g); ++jp) cg *= C.dim.at(q.cofiber_at(g, jp));
            LinOp path2 = op_then(opg, kron({identity_op(cg), oph}));
            LinOp path1 = op_then(op_then(C.op.at(gh), kron(split)), perm_op(grouped, canon));
            OpsEqual d = ops_equal(C.field, path1, path2);
            if (!d.equal)
                rep.fail("decomposition law failed", law_witness(B, "cooperad", h, g, d));
        }
    }
    return rep;
}

Report check_bimodule(const DiopPair& q, const Operad& P, const Cooperad& C,
                      const Bimodule& M, LawOptions opt) {
    Report rep;
    rep.check = "bimodule-law";
    const FinCat& B = *q.base;
    // shape pass for the module operations
    for (const auto& [m, op] : M.op) {
        bool have = M.has_obj(B.src(m)) && M.has_obj(B.tgt(m));
        long pf = 1, cf = 1;
        for (int i = 1; i <= q.n_fibers(m) && have; ++i)
            have = P.has_obj(q.fiber_at(m, i)) && (pf *= P.dim.at(q.fiber_at(m, i)), true);
        for (int j = 1; j <= q.n_cofibers(m) && have; ++j)
            have = C.has_obj(q.cofiber_at(m, j)) && (cf *= C.dim.at(q.cofiber_at(m, j)), true);
        if (!have || op.dom != M.dim.at(B.tgt(m)) * pf || op.cod != cf * M.dim.at(B.src(m))) {
            rep.fail("module operation shape mismatch", {{"morphism", mname(B, m)}});
            return rep;
        }
    }
    for (const auto& [h, omh] : M.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        for (const auto& [g, omg] : M.op) {
            if (opt.only_g >= 0 && g != opt.only_g) continue;
            if (!B.composable(h, g)) continue;
            MorId gh = B.compose(h, g);
            if (!M.has_op(gh)) {
                rep.bump("skipped");
                continue;
            }
            rep.bump("pairs");
            int a = q.n_fibers(g), b = q.n_cofibers(h);
            if (q.n_cofibers(gh) != b) {
                rep.fail("cofiber counts of a composite differ",
                         {{"morphism", mname(B, h)}, {"then", mname(B, g)}});
                continue;
            }
            auto blocks = finmap_blocks(q.left.card_mor(g));
            auto rblocks = finmap_blocks(q.right.card_mor(h));
            long mz = M.dim.at(B.tgt(g)), ms = M.dim.at(B.src(h));
            bool usable = true;
            // fiber side
            std::vector<LinOp> merge{identity_op(mz)};
            Shape common{{"MZ", mz}}, inter{{"MZ", mz}};
            for (int i = 1; i <= a; ++i)
                common.push_back({"g:" + std::to_string(i), P.dim.at(q.fiber_at(g, i))});
            for (int i = 1; i <= a && usable; ++i) {
                MorId hi = q.induced_fiber(h, g, i);
                const auto& blk = blocks[i - 1];
                if (q.n_fibers(hi) != (int)blk.size()) usable = false;
                for (size_t k = 0; k < blk.size() && usable; ++k)
                    if (q.fiber_at(hi, (int)k + 1) != q.fiber_at(h, blk[k])) usable = false;
                if (!usable) {
                    rep.fail("induced-morphism fibers do not match the fibers of the composite",
                             {{"morphism", mname(B, h)}, {"then", mname(B, g)}, {"output", i}});
                    break;
                }
                if (!P.has_op(hi)) {
                    rep.bump("skipped");
                    usable = false;
                    break;
                }
                merge.push_back(P.op.at(hi));
                inter.push_back({"g:" + std::to_string(i), P.dim.at(q.fiber_at(g, i))});
                for (int j : blk) {
                    common.push_back({"h:" + std::to_string(j), P.dim.at(q.fiber_at(h, j))});
                    inter.push_back({"h:" + std::to_string(j), P.dim.at(q.fiber_at(h, j))});
                }
            }
            if (!usable) continue;
            // cofiber side
            std::vector<LinOp> split;
            Shape grouped, canon;
            for (int jp = 1; jp <= q.n_cofibers(g); ++jp)
                canon.push_back({"C:" + std::to_string(jp), C.dim.at(q.cofiber_at(g, jp))});
            for (int j = 1; j <= b; ++j)
                canon.push_back({"D:" + std::to_string(j), C.dim.at(q.cofiber_at(h, j))});
            canon.push_back({"MS", ms});
            for (int j = 1; j <= b && usable; ++j) {
                MorId gj = q.induced_cofiber(h, g, j);
                const auto& blk = rblocks[j - 1];
                if (q.n_cofibers(gj) != (int)blk.size()) usable = false;
                for (size_t k = 0; k < blk.size() && usable; ++k)
                    if (q.cofiber_at(gj, (int)k + 1) != q.cofiber_at(g, blk[k])) usable = false;
                if (!usable) {
                    rep.fail("induced-morphism cofibers do not match the cofibers of the composite",
                             {{"morphism", mname(B, h)}, {"then", mname(B, g)}, {"output", j}});
                    break;
                }
                if (!C.has_op(gj)) {
                    rep.bump("skipped");
                    usable = false;
                    break;
                }
                split.push_back(C.op.at(gj));
                for (int jp : blk)
                    grouped.push_back({"C:" + std::to_string(jp), C.dim.at(q.cofiber_at(g, jp))});
                grouped.push_back({"D:" + std::to_string(j), C.dim.at(q.cofiber_at(h, j))});
            }
            if (!usable) continue;
            rep.bump("checked");
            grouped.push_back({"MS", ms});
            split.push_back(identity_op(ms));
            // path through the composite
            LinOp pathA = op_then(
                op_then(op_then(op_then(perm_op(common, inter), kron(merge)), M.op.at(gh)),
                        kron(split)),
                perm_op(grouped, canon));
            // path acting one step at a time
            long pg = 1, ph = 1, cg = 1;
            for (int i = 1; i <= a; ++i) pg *= P.dim.at(q.fiber_at(g, i));
            for (int j = 1; j <= q.n_fibers(h); ++j) ph *= P.dim.at(q.fiber_at(h, j));
            for (int jp = 1; jp <= q.n_cofibers(g); ++jp) cg *= C.dim.at(q.cofiber_at(g, jp));
            Shape afterg{{"CG", cg}, {"MT", M.dim.at(B.tgt(h))}};
            Shape sortedh = afterg;
            Shape groupedh = afterg;
            for (int j = 1; j <= q.n_fibers(h); ++j)
                sortedh.push_back({"h:" + std::to_string(j), P.dim.at(q.fiber_at(h, j))});
            for (int i = 0; i < a; ++i)
                for (int j : blocks[i])
                    groupedh.push_back({"h:" + std::to_string(j), P.dim.at(q.fiber_at(h, j))});
            LinOp pathB = op_then(op_then(kron({omg, identity_op(ph)}),
                                          perm_op(groupedh, sortedh)),
                                  kron({identity_op(cg), omh}));
            OpsEqual d = ops_equal(M.field, pathA, pathB);
            if (!d.equal)
                rep.fail("module compatibility failed", law_witness(B, "bimodule", h, g, d));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// algebras, coalgebras, traces

namespace {

[[noreturn]] void structural(const FinCat& B, MorId h, const std::string& why) {
    throw std::invalid_argument("law undefined at " + mname(B, h) + ": " + why);
}

}  // namespace

Report check_algebra(const DiopPair& q, const Operad& P, const AlgebraData& A,
                     LawOptions opt) {
    Report rep;
    rep.check = "algebra-law";
    const FinCat& B = *q.base;
    SourceTarget st = source_target(q);
    auto ad = [&](int c) { return A.dim.count(c) ? A.dim.at(c) : -1; };
    for (const auto& [h, gamma] : P.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        ObjId S = B.src(h), T = B.tgt(h);
        int n = q.n_fibers(h);
        rep.bump("morphisms");
        bool have = A.has_op(S) && A.has_op(T) && P.has_obj(S) && P.has_obj(T);
        std::vector<ObjId> fib(n);
        for (int j = 0; j < n && have; ++j) {
            fib[j] = q.fiber_at(h, j + 1);
            have = A.has_op(fib[j]) && P.has_obj(fib[j]);
        }
        for (int c : st.source[S])
            if (ad(c) < 0) have = false;
        if (!have) {
            rep.bump("skipped");
            continue;
        }
        // the identifications the two paths silently use
        if ((int)st.source[T].size() != n) structural(B, h, "source slots of the target");
        for (int j = 0; j < n; ++j) {
            if (st.target[fib[j]].size() != 1) structural(B, h, "fiber with several target slots");
            if (st.target[fib[j]][0] != st.source[T][j])
                structural(B, h, "fiber target differs from the matching source slot");
        }
        if (st.target[T] != st.target[S]) structural(B, h, "targets of the ends differ");
        FinMap fh = q.left.card_mor(h);
        if (fh.cod != n || fh.dom != (int)st.source[S].size())
            structural(B, h, "cardinality inconsistent with the source slots");
        auto blocks = finmap_blocks(fh);
        for (int j = 0; j < n; ++j) {
            if (st.source[fib[j]].size() != blocks[j].size())
                structural(B, h, "fiber source slots disagree with the cardinality");
            for (size_t k = 0; k < blocks[j].size(); ++k)
                if (st.source[fib[j]][k] != st.source[S][blocks[j][k] - 1])
                    structural(B, h, "fiber source slot class mismatch");
        }
        rep.bump("checked");
        Shape common{{"PT", P.dim.at(T)}}, flat = common;
        std::vector<LinOp> act{identity_op(P.dim.at(T))};
        long adom = 1;
        for (int j = 0; j < n; ++j) {
            common.push_back({"PF:" + std::to_string(j + 1), P.dim.at(fib[j])});
            flat.push_back({"PF:" + std::to_string(j + 1), P.dim.at(fib[j])});
            for (int e : blocks[j])
                common.push_back({"A:" + std::to_string(e), ad(st.source[S][e - 1])});
            act.push_back(A.op.at(fib[j]));
        }
        for (size_t e = 1; e <= st.source[S].size(); ++e) {
            flat.push_back({"A:" + std::to_string(e), ad(st.source[S][e - 1])});
            adom *= ad(st.source[S][e - 1]);
        }
        LinOp top = op_then(kron(act), A.op.at(T));
        LinOp bottom = op_then(op_then(perm_op(common, flat), kron({gamma, identity_op(adom)})),
                               A.op.at(S));
        OpsEqual d = ops_equal(A.field, top, bottom);
        if (!d.equal) rep.fail("action law failed", law_witness(B, "algebra", h, -1, d));
    }
    return rep;
}

Report check_algebra_classical(const OperadicStructure& os, const Operad& P,
                               const AlgebraData& A, LawOptions opt) {
    Report rep;
    rep.check = "classical-algebra-law";
    const FinCat& B = *os.base;
    std::vector<int> comp = pi0(B);
    auto sou = [&](ObjId x) { return comp[os.fiber1(B.id_of[x])]; };
    auto ad = [&](int c) { return A.dim.count(c) ? A.dim.at(c) : -1; };
    for (const auto& [h, gamma] : P.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        ObjId S = B.src(h), T = B.tgt(h);
        ObjId F = os.fiber1(h);
        rep.bump("morphisms");
        if (!A.has_op(S) || !A.has_op(T) || !A.has_op(F) || !P.has_obj(F) ||
            ad(sou(F)) < 0) {
            rep.bump("skipped");
            continue;
        }
        if (comp[F] != sou(T)) structural(B, h, "fiber component differs from the target source");
        if (sou(F) != sou(S)) structural(B, h, "fiber source differs from the source slots");
        if (comp[T] != comp[S]) structural(B, h, "targets of the ends differ");
        rep.bump("checked");
        long a = ad(sou(F));
        LinOp top = op_then(kron({identity_op(P.dim.at(T)), A.op.at(F)}), A.op.at(T));
        LinOp bottom = op_then(kron({gamma, identity_op(a)}), A.op.at(S));
        OpsEqual d = ops_equal(A.field, top, bottom);
        if (!d.equal)
            rep.fail("action law failed", law_witness(B, "classical-algebra", h, -1, d));
    }
    return rep;
}

Report check_coalgebra(const DiopPair& q, const Cooperad& C, const AlgebraData& Bc,
                       LawOptions opt) {
    Report rep;
    rep.check = "coalgebra-law";
    const FinCat& B = *q.base;
    SourceTarget st = source_target(q);
    auto bd = [&](int c) { return Bc.dim.count(c) ? Bc.dim.at(c) : -1; };
    for (const auto& [h, delta] : C.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        ObjId S = B.src(h), T = B.tgt(h);
        int m = q.n_cofibers(h);
        rep.bump("morphisms");
        bool have = Bc.has_op(S) && Bc.has_op(T) && C.has_obj(S) && C.has_obj(T);
        std::vector<ObjId> cof(m);
        for (int j = 0; j < m && have; ++j) {
            cof[j] = q.cofiber_at(h, j + 1);
            have = Bc.has_op(cof[j]) && C.has_obj(cof[j]);
        }
        for (int c : st.source[S])
            if (bd(c) < 0) have = false;
        for (int c : st.target[T])
            if (bd(c) < 0) have = false;
        if (!have) {
            rep.bump("skipped");
            continue;
        }
        if (st.source[T] != st.source[S]) structural(B, h, "sources of the ends differ");
        if ((int)st.target[S].size() != m) structural(B, h, "target slots of the source");
        for (int j = 0; j < m; ++j) {
            if (st.source[cof[j]].size() != 1)
                structural(B, h, "cofiber with several source slots");
            if (st.source[cof[j]][0] != st.target[S][j])
                structural(B, h, "cofiber source differs from the matching target slot");
        }
        FinMap bw = q.right.card_mor(h);
        if (bw.cod != m || bw.dom != (int)st.target[T].size())
            structural(B, h, "cardinality inconsistent with the target slots");
        auto rblocks = finmap_blocks(bw);
        for (int j = 0; j < m; ++j) {
            if (st.target[cof[j]].size() != rblocks[j].size())
                structural(B, h, "cofiber target slots disagree with the cardinality");
            for (size_t k = 0; k < rblocks[j].size(); ++k)
                if (st.target[cof[j]][k] != st.target[T][rblocks[j][k] - 1])
                    structural(B, h, "cofiber target slot class mismatch");
        }
        rep.bump("checked");
        long bs = 1, cd = 1;
        for (int c : st.source[S]) bs *= bd(c);
        for (int j = 0; j < m; ++j) cd *= C.dim.at(cof[j]);
        Shape afters, inter, groupedt, sorted;
        for (int j = 0; j < m; ++j)
            afters.push_back({"CD:" + std::to_string(j + 1), C.dim.at(cof[j])});
        for (int j = 0; j < m; ++j)
            afters.push_back({"B:" + std::to_string(j + 1), bd(st.target[S][j])});
        for (int j = 0; j < m; ++j) {
            inter.push_back({"CD:" + std::to_string(j + 1), C.dim.at(cof[j])});
            inter.push_back({"B:" + std::to_string(j + 1), bd(st.target[S][j])});
        }
        std::vector<LinOp> finals;
        for (int j = 0; j < m; ++j) {
            finals.push_back(Bc.op.at(cof[j]));
            for (int e : rblocks[j])
                groupedt.push_back({"T:" + std::to_string(e), bd(st.target[T][e - 1])});
        }
        for (size_t e = 1; e <= st.target[T].size(); ++e)
            sorted.push_back({"T:" + std::to_string(e), bd(st.target[T][e - 1])});
        LinOp down = Bc.op.at(T);
        LinOp up = op_then(
            op_then(op_then(op_then(kron({delta, identity_op(bs)}),
                                    kron({identity_op(cd), Bc.op.at(S)})),
                            perm_op(afters, inter)),
                    kron(finals)),
            perm_op(groupedt, sorted));
        OpsEqual d = ops_equal(Bc.field, up, down);
        if (!d.equal) rep.fail("coaction law failed", law_witness(B, "coalgebra", h, -1, d));
    }
    return rep;
}

Report check_trace(const DiopPair& q, const Operad& P, const Cooperad& C, const Bimodule& M,
                   const AlgebraData& A, const AlgebraData& Bc, const TraceData& tr,
                   LawOptions opt) {
    Report rep;
    rep.check = "trace-law";
    const FinCat& B = *q.base;
    if (opt.only_h < 0) {
        rep.merge(check_operad(q, P));
        rep.merge(check_cooperad(q, C));
        rep.merge(check_bimodule(q, P, C, M));
        rep.merge(check_algebra(q, P, A));
        rep.merge(check_coalgebra(q, C, Bc));
        if (!rep.ok) return rep;
    }
    SourceTarget st = source_target(q);
    auto ad = [&](int c) { return A.dim.count(c) ? A.dim.at(c) : -1; };
    auto bd = [&](int c) { return Bc.dim.count(c) ? Bc.dim.at(c) : -1; };
    for (const auto& [h, omega] : M.op) {
        if (opt.only_h >= 0 && h != opt.only_h) continue;
        ObjId S = B.src(h), T = B.tgt(h);
        int n = q.n_fibers(h), m = q.n_cofibers(h);
        rep.bump("morphisms");
        bool have = tr.has_op(S) && tr.has_op(T) && M.has_obj(S) && M.has_obj(T);
        std::vector<ObjId> fib(n), cof(m);
        for (int j = 0; j < n && have; ++j) {
            fib[j] = q.fiber_at(h, j + 1);
            have = A.has_op(fib[j]) && P.has_obj(fib[j]);
        }
        for (int j = 0; j < m && have; ++j) {
            cof[j] = q.cofiber_at(h, j + 1);
            have = Bc.has_op(cof[j]) && C.has_obj(cof[j]);
        }
        for (int c : st.source[S])
            if (ad(c) < 0) have = false;
        for (int c : st.target[T])
            if (bd(c) < 0) have = false;
        if (!have) {
            rep.bump("skipped");
            continue;
        }
        if ((int)st.source[T].size() != n || (int)st.target[S].size() != m)
            structural(B, h, "slot counts of the ends");
        for (int j = 0; j < n; ++j)
            if (st.target[fib[j]].size() != 1 || st.target[fib[j]][0] != st.source[T][j])
                structural(B, h, "fiber target slot");
        for (int j = 0; j < m; ++j)
            if (st.source[cof[j]].size() != 1 || st.source[cof[j]][0] != st.target[S][j])
                structural(B, h, "cofiber source slot");
        FinMap fh = q.left.card_mor(h);
        FinMap bw = q.right.card_mor(h);
        if (fh.cod != n || fh.dom != (int)st.source[S].size() || bw.cod != m ||
            bw.dom != (int)st.target[T].size())
            structural(B, h, "cardinality inconsistent with the slots");
        auto blocks = finmap_blocks(fh);
        auto rblocks = finmap_blocks(bw);
        for (int j = 0; j < n; ++j) {
            if (st.source[fib[j]].size() != blocks[j].size())
                structural(B, h, "fiber source slots");
            for (size_t k = 0; k < blocks[j].size(); ++k)
                if (st.source[fib[j]][k] != st.source[S][blocks[j][k] - 1])
                    structural(B, h, "fiber source slot class mismatch");
        }
        for (int j = 0; j < m; ++j) {
            if (st.target[cof[j]].size() != rblocks[j].size())
                structural(B, h, "cofiber target slots");
            for (size_t k = 0; k < rblocks[j].size(); ++k)
                if (st.target[cof[j]][k] != st.target[T][rblocks[j][k] - 1])
                    structural(B, h, "cofiber target slot class mismatch");
        }
        rep.bump("checked");
        long mt = M.dim.at(T), ms = M.dim.at(S);
        Shape common{{"MT", mt}}, flat = common;
        std::vector<LinOp> act{identity_op(mt)};
        long adom = 1, cd = 1;
        for (int j = 0; j < n; ++j) {
            common.push_back({"PF:" + std::to_string(j + 1), P.dim.at(fib[j])});
            flat.push_back({"PF:" + std::to_string(j + 1), P.dim.at(fib[j])});
            for (int e : blocks[j])
                common.push_back({"A:" + std::to_string(e), ad(st.source[S][e - 1])});
            act.push_back(A.op.at(fib[j]));
        }
        for (size_t e = 1; e <= st.source[S].size(); ++e) {
            flat.push_back({"A:" + std::to_string(e), ad(st.source[S][e - 1])});
            adom *= ad(st.source[S][e - 1]);
        }
        for (int j = 0; j < m; ++j) cd *= C.dim.at(cof[j]);
        LinOp top = op_then(kron(act), tr.op.at(T));
        Shape afters, inter, groupedt, sorted;
        for (int j = 0; j < m; ++j)
            afters.push_back({"CD:" + std::to_string(j + 1), C.dim.at(cof[j])});
        for (int j = 0; j < m; ++j)
            afters.push_back({"B:" + std::to_string(j + 1), bd(st.target[S][j])});
        for (int j = 0; j < m; ++j) {
            inter.push_back({"CD:" + std::to_string(j + 1), C.dim.at(cof[j])});
            inter.push_back({"B:" + std::to_string(j + 1), bd(st.target[S][j])});
        }
        std::vector<LinOp> finals;
        for (int j = 0; j < m; ++j) {
            finals.push_back(Bc.op.at(cof[j]));
            for (int e : rblocks[j])
                groupedt.push_back({"T:" + std::to_string(e), bd(st.target[T][e - 1])});
        }
        for (size_t e = 1; e <= st.target[T].size(); ++e)
            sorted.push_back({"T:" + std::to_string(e), bd(st.target[T][e - 1])});
        LinOp bottom = op_then(
            op_then(op_then(op_then(op_then(perm_op(common, flat),
                                            kron({omega, identity_op(adom)})),
                                    kron({identity_op(cd), tr.op.at(S)})),
                            perm_op(afters, inter)),
                    kron(finals)),
            perm_op(groupedt, sorted));
        OpsEqual d = ops_equal(A.field, top, bottom);
        if (!d.equal) rep.fail("trace law failed", law_witness(B, "trace", h, -1, d));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// rankings

long fact(int n) {
    long r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

long seq_rank(const std::vector<int>& s) {
    int n = (int)s.size();
    long r = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (s[j] < s[i]) ++smaller;
        r += smaller * fact(n - 1 - i);
    }
    return r;
}

std::vector<int> seq_unrank(int n, long r) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> out;
    out.reserve(n);
    for (int i = n; i > 0; --i) {
        long f = fact(i - 1);
        long d = r / f;
        r %= f;
        out.push_back(pool[d]);
        pool.erase(pool.begin() + d);
    }
    return out;
}

// ---------------------------------------------------------------------------
// instances

namespace {

bool one_output(const DiopPair& q, ObjId x) { return q.bicard(x).second == 1; }
bool one_input(const DiopPair& q, ObjId x) { return q.bicard(x).first == 1; }

long cyc_dim(int n) { return n == 0 ? 1 : fact(n - 1); }

// canonical representative: rotate the minimum to the front
std::vector<int> cyc_canon(std::vector<int> s) {
    if (s.empty()) return s;
    auto it = std::min_element(s.begin(), s.end());
    std::rotate(s.begin(), it, s.end());
    return s;
}

long cyc_rank(const std::vector<int>& canon) {
    if (canon.empty()) return 0;
    std::vector<int> tail(canon.begin() + 1, canon.end());
    for (int& e : tail) --e;
    return seq_rank(tail);
}

std::vector<int> cyc_unrank(int n, long r) {
    if (n == 0) return {};
    std::vector<int> tail = seq_unrank(n - 1, r);
    std::vector<int> out{0};
    for (int e : tail) out.push_back(e + 1);
    return out;
}

// substitute the fiber orders into the outer sequence of fiber indices
std::vector<int> subst(const std::vector<int>& outer,
                       const std::vector<std::vector<int>>& elems,
                       const std::vector<long>& fiber_digits) {
    std::vector<int> out;
    for (int j : outer) {
        auto lj = seq_unrank((int)elems[j].size(), fiber_digits[j]);
        for (int p : lj) out.push_back(elems[j][p]);
    }
    return out;
}

}  // namespace

Operad trivial_operad(const DiopPair& q, Field f) {
    Operad P;
    P.field = f;
    for (ObjId x = 0; x < q.base->n_objects(); ++x) P.dim[x] = 1;
    LinOp one;
    one.dom = one.cod = 1;
    one.col = [](long) -> SparseVec { return {{0, Scalar(1)}}; };
    for (MorId m = 0; m < q.base->n_mors(); ++m) P.op[m] = one;
    return P;
}

Cooperad trivial_cooperad(const DiopPair& q, Field f) { return trivial_operad(q, f); }

Operad order_operad(const DiopPair& q, Field f) {
    Operad P;
    P.field = f;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x)
        if (one_output(q, x)) P.dim[x] = fact(q.bicard(x).first);
    for (MorId h = 0; h < B.n_mors(); ++h) {
        if (!P.has_obj(B.src(h)) || !P.has_obj(B.tgt(h))) continue;
        FinMap fwd = q.left.card_mor(h);
        int s = fwd.dom, t = fwd.cod;
        std::vector<std::vector<int>> elems(t);
        for (int e = 1; e <= s; ++e) elems[fwd(e) - 1].push_back(e - 1);
        std::vector<long> dims{fact(t)};
        for (const auto& el : elems) dims.push_back(fact((int)el.size()));
        LinOp op;
        op.cod = fact(s);
        op.dom = 1;
        for (long d : dims) op.dom *= d;
        op.col = [dims, elems, t](long idx) -> SparseVec {
            auto dig = split_index(idx, dims);
            std::vector<long> fdig(dig.begin() + 1, dig.end());
            return {{seq_rank(subst(seq_unrank(t, dig[0]), elems, fdig)), Scalar(1)}};
        };
        P.op[h] = std::move(op);
    }
    return P;
}

Cooperad order_cooperad(const DiopPair& q, Field f) {
    Cooperad C;
    C.field = f;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x)
        if (one_input(q, x)) C.dim[x] = fact(q.bicard(x).second);
    for (MorId h = 0; h < B.n_mors(); ++h) {
        if (!C.has_obj(B.src(h)) || !C.has_obj(B.tgt(h))) continue;
        FinMap bwd = q.right.card_mor(h);
        int mt = bwd.dom, ms = bwd.cod;
        std::vector<std::vector<int>> elems(ms);
        for (int e = 1; e <= mt; ++e) elems[bwd(e) - 1].push_back(e - 1);
        std::vector<long> cdims;
        for (const auto& el : elems) cdims.push_back(fact((int)el.size()));
        cdims.push_back(fact(ms));
        LinOp op;
        op.dom = fact(mt);
        op.cod = 1;
        for (long d : cdims) op.cod *= d;
        std::vector<int> fiber_of(mt), local(mt);
        for (int j = 0; j < ms; ++j)
            for (size_t k = 0; k < elems[j].size(); ++k) {
                fiber_of[elems[j][k]] = j;
                local[elems[j][k]] = (int)k;
            }
        op.col = [cdims, fiber_of, local, mt, ms](long y) -> SparseVec {
            std::vector<int> lt = seq_unrank(mt, y);
            // group the listing into runs of constant cofiber
            std::vector<std::vector<int>> lj(ms);
            std::vector<int> run_order;
            std::vector<char> seen(ms, 0);
            int cur = -1;
            for (int e : lt) {
                int j = fiber_of[e];
                if (j != cur) {
                    if (seen[j]) return {};  // a cofiber split across runs: not in the image
                    seen[j] = 1;
                    run_order.push_back(j);
                    cur = j;
                }
                lj[j].push_back(local[e]);
            }
            // every outer order restricting to the run order contributes
            std::vector<int> ls(ms);
            for (int j = 0; j < ms; ++j) ls[j] = j;
            SparseVec out;
            do {
                std::vector<int> restricted;
                for (int j : ls)
                    if (!lj[j].empty()) restricted.push_back(j);
                if (restricted != run_order) continue;
                std::vector<long> dig;
                for (int j = 0; j < ms; ++j) dig.push_back(seq_rank(lj[j]));
                dig.push_back(seq_rank(ls));
                out.push_back({join_index(dig, cdims), Scalar(1)});
            } while (std::next_permutation(ls.begin(), ls.end()));
            return out;
        };
        C.op[h] = std::move(op);
    }
    return C;
}

Bimodule cyclic_module(const DiopPair& q, Field f) {
    Bimodule M;
    M.field = f;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x)
        if (one_output(q, x)) M.dim[x] = cyc_dim(q.bicard(x).first);
    for (MorId h = 0; h < B.n_mors(); ++h) {
        if (!M.has_obj(B.src(h)) || !M.has_obj(B.tgt(h))) continue;
        FinMap fwd = q.left.card_mor(h);
        int s = fwd.dom, t = fwd.cod;
        std::vector<std::vector<int>> elems(t);
        for (int e = 1; e <= s; ++e) elems[fwd(e) - 1].push_back(e - 1);
        std::vector<long> dims{cyc_dim(t)};
        for (const auto& el : elems) dims.push_back(fact((int)el.size()));
        LinOp op;
        op.cod = cyc_dim(s);
        op.dom = 1;
        for (long d : dims) op.dom *= d;
        op.col = [dims, elems, t](long idx) -> SparseVec {
            auto dig = split_index(idx, dims);
            std::vector<long> fdig(dig.begin() + 1, dig.end());
            std::vector<int> out = subst(cyc_unrank(t, dig[0]), elems, fdig);
            return {{cyc_rank(cyc_canon(out)), Scalar(1)}};
        };
        M.op[h] = std::move(op);
    }
    return M;
}

Bimodule order_diff_module(const DiopPair& q, Field f) {
    Bimodule M;
    M.field = f;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x)
        if (one_output(q, x)) M.dim[x] = std::max(fact(q.bicard(x).first) - 1, 0L);
    for (MorId h = 0; h < B.n_mors(); ++h) {
        if (!one_output(q, B.src(h)) || !one_output(q, B.tgt(h))) continue;
        FinMap fwd = q.left.card_mor(h);
        int s = fwd.dom, t = fwd.cod;
        std::vector<std::vector<int>> elems(t);
        for (int e = 1; e <= s; ++e) elems[fwd(e) - 1].push_back(e - 1);
        std::vector<long> dims{M.dim.at(B.tgt(h))};
        for (const auto& el : elems) dims.push_back(fact((int)el.size()));
        LinOp op;
        op.cod = M.dim.at(B.src(h));
        op.dom = 1;
        for (long d : dims) op.dom *= d;
        long cod = op.cod;
        op.col = [dims, elems, t, cod](long idx) -> SparseVec {
            auto dig = split_index(idx, dims);
            std::vector<long> fdig(dig.begin() + 1, dig.end());
            long ru = seq_rank(subst(seq_unrank(t, dig[0] + 1), elems, fdig));
            long rv = seq_rank(subst(seq_unrank(t, 0), elems, fdig));
            if (cod == 0 || ru == rv) return {};
            SparseVec out;
            if (ru > 0) out.push_back({ru - 1, Scalar(1)});
            if (rv > 0) out.push_back({rv - 1, Scalar(-1)});
            return out;
        };
        M.op[h] = std::move(op);
    }
    return M;
}

WordSpace word_space(int letters, int maxlen) {
    WordSpace w;
    w.letters = letters;
    w.maxlen = maxlen;
    w.offset.assign(maxlen + 2, 0);
    long p = 1;
    for (int l = 0; l <= maxlen; ++l) {
        w.offset[l + 1] = w.offset[l] + p;
        p *= letters;
    }
    w.dim = w.offset[maxlen + 1];
    return w;
}

long word_rank(const WordSpace& w, const std::vector<int>& word) {
    if ((int)word.size() > w.maxlen) return -1;
    long v = 0;
    for (int d : word) v = v * w.letters + d;
    return w.offset[word.size()] + v;
}

std::vector<int> word_at(const WordSpace& w, long idx) {
    int len = 0;
    while (idx >= w.offset[len + 1]) ++len;
    long v = idx - w.offset[len];
    std::vector<int> out(len);
    for (int i = len; i-- > 0;) {
        out[i] = (int)(v % w.letters);
        v /= w.letters;
    }
    return out;
}

AlgebraData word_algebra(const DiopPair& q, Field f, const WordSpace& w) {
    AlgebraData A;
    A.field = f;
    for (int c : pi0(*q.base)) A.dim[c] = w.dim;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x) {
        if (!one_output(q, x)) continue;
        int n = q.bicard(x).first;
        std::vector<long> dims{fact(n)};
        for (int j = 0; j < n; ++j) dims.push_back(w.dim);
        LinOp op;
        op.cod = w.dim;
        op.dom = 1;
        for (long d : dims) op.dom *= d;
        op.col = [dims, n, w](long idx) -> SparseVec {
            auto dig = split_index(idx, dims);
            std::vector<int> prod;
            for (int slot : seq_unrank(n, dig[0])) {
                auto part = word_at(w, dig[1 + slot]);
                prod.insert(prod.end(), part.begin(), part.end());
            }
            long r = word_rank(w, prod);
            if (r < 0) return {};
            return {{r, Scalar(1)}};
        };
        A.op[x] = std::move(op);
    }
    return A;
}

NecklaceSpace necklace_space(const WordSpace& w) {
    NecklaceSpace n;
    n.words = w;
    n.cls.assign(w.dim, -1);
    std::map<std::vector<int>, long> index;
    for (long i = 0; i < w.dim; ++i) {
        std::vector<int> word = word_at(w, i);
        std::vector<int> best = word;
        std::vector<int> rot = word;
        for (size_t k = 1; k < word.size(); ++k) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            if (rot < best) best = rot;
        }
        auto [it, fresh] = index.emplace(best, n.dim);
        if (fresh) ++n.dim;
        n.cls[i] = it->second;
    }
    return n;
}

LinOp necklace_projection(const NecklaceSpace& n) {
    LinOp op;
    op.dom = n.words.dim;
    op.cod = n.dim;
    auto cls = n.cls;
    op.col = [cls](long i) -> SparseVec { return {{cls[i], Scalar(1)}}; };
    return op;
}

TraceData cyclic_trace(const DiopPair& q, const WordSpace& w, const LinOp& to_b) {
    TraceData tr;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x) {
        if (!one_output(q, x)) continue;
        int n = q.bicard(x).first;
        std::vector<long> dims{cyc_dim(n)};
        for (int j = 0; j < n; ++j) dims.push_back(w.dim);
        LinOp op;
        op.cod = to_b.cod;
        op.dom = 1;
        for (long d : dims) op.dom *= d;
        op.col = [dims, n, w, to_b](long idx) -> SparseVec {
            auto dig = split_index(idx, dims);
            std::vector<int> prod;
            for (int slot : cyc_unrank(n, dig[0])) {
                auto part = word_at(w, dig[1 + slot]);
                prod.insert(prod.end(), part.begin(), part.end());
            }
            long r = word_rank(w, prod);
            if (r < 0) return {};
            return to_b.col(r);
        };
        tr.op[x] = std::move(op);
    }
    return tr;
}

TraceData cut_trace(const DiopPair& q, const WordSpace& w, const LinOp& bil) {
    TraceData tr;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x) {
        if (!one_output(q, x)) continue;
        int n = q.bicard(x).first;
        long mdim = std::max(fact(n) - 1, 0L);
        std::vector<long> dims{mdim};
        for (int j = 0; j < n; ++j) dims.push_back(w.dim);
        LinOp op;
        op.cod = bil.cod;
        op.dom = 1;
        for (long d : dims) op.dom *= d;
        op.col = [dims, n, w, bil](long idx) -> SparseVec {
            auto dig = split_index(idx, dims);
            auto hat = [&](const std::vector<int>& order) -> SparseVec {
                std::vector<int> rest;
                for (size_t k = 1; k < order.size(); ++k) {
                    auto part = word_at(w, dig[1 + order[k]]);
                    rest.insert(rest.end(), part.begin(), part.end());
                }
                long rr = word_rank(w, rest);
                if (rr < 0) return {};
                return bil.col(dig[1 + order[0]] * w.dim + rr);
            };
            SparseVec out = hat(seq_unrank(n, dig[0] + 1));
            for (auto& [i, c] : hat(seq_unrank(n, 0))) out.push_back({i, -c});
            return out;
        };
        tr.op[x] = std::move(op);
    }
    return tr;
}

AlgebraData nil_square_algebra(const DiopPair& q, Field f) {
    AlgebraData A;
    A.field = f;
    for (int c : pi0(*q.base)) A.dim[c] = 2;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x) {
        if (!one_output(q, x)) continue;
        int n = q.bicard(x).first;
        long adom = fact(n) << n;
        LinOp op;
        op.dom = adom;
        op.cod = 2;
        op.col = [n](long idx) -> SparseVec {
            int count = 0;
            for (int j = 0; j < n; ++j)
                if (idx >> j & 1) ++count;  // the order digit sits above the factor bits
            if (count > 1) return {};
            return {{count, Scalar(1)}};
        };
        A.op[x] = std::move(op);
    }
    return A;
}

AlgebraData nil_square_coalgebra(const DiopPair& q, Field f) {
    AlgebraData Bc;
    Bc.field = f;
    for (int c : pi0(*q.base)) Bc.dim[c] = 2;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x) {
        // No operation at the empty object: the splitting operations of the
        // order cooperad sum over the placements of empty factors, so data
        // at them would overcount and the law genuinely fails there.
        if (!one_input(q, x) || q.bicard(x).second == 0) continue;
        int m = q.bicard(x).second;
        LinOp op;
        op.dom = fact(m) * 2;
        op.cod = 1L << m;
        op.col = [m](long idx) -> SparseVec {
            long c = idx & 1;  // the element digit is least significant
            if (c == 0) return {{0, Scalar(1)}};
            SparseVec out;
            for (int i = 0; i < m; ++i) out.push_back({1L << (m - 1 - i), Scalar(1)});
            return out;
        };
        Bc.op[x] = std::move(op);
    }
    return Bc;
}

AlgebraData identity_coalgebra(const DiopPair& q, Field f, long d) {
    AlgebraData Bc;
    Bc.field = f;
    for (int c : pi0(*q.base)) Bc.dim[c] = d;
    const FinCat& B = *q.base;
    for (ObjId x = 0; x < B.n_objects(); ++x)
        if (identity_fibers(q, x).size() == 1 && identity_cofibers(q, x).size() == 1)
            Bc.op[x] = identity_op(d);
    return Bc;
}

}  // namespace biop
