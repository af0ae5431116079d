#include "biop/exactla.hpp"

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <tuple>

namespace biop {

// ------------------------------------------------------------------ field

Field Field::prime(long p) {
    if (p < 2 || p >= (1L << 16)) throw std::invalid_argument("modulus out of range");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("modulus not prime");
    return Field{p};
}

Scalar Field::reduce(const Scalar& x) const {
    if (p == 0) return x;
    mpz_class m(p), n = x.get_num() % m, d = x.get_den() % m;
    if (n < 0) n += m;
    mpz_class di;
    if (mpz_invert(di.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("denominator divisible by the modulus");
    return Scalar((n * di) % m);
}

Scalar Field::inv(const Scalar& x) const {
    Scalar r = reduce(x);
    if (r == 0) throw std::domain_error("inverting zero");
    if (p == 0) return 1 / r;
    mpz_class m(p), v = r.get_num(), vi;
    mpz_invert(vi.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return Scalar(vi);
}

// --------------------------------------------------------------- matrices

VecMor::VecMor(Field f, int cod, int dom, std::vector<long> entries)
    : field(f), dom_dim(dom), cod_dim(cod) {
    if ((long)entries.size() != (long)cod * dom)
        throw std::invalid_argument("entry count does not match the dimensions");
    a.reserve(entries.size());
    for (long e : entries) a.push_back(f.reduce(Scalar(e)));
}

VecMor VecMor::identity(Field f, int n) {
    VecMor m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool VecMor::operator==(const VecMor& o) const {
    if (dom_dim != o.dom_dim || cod_dim != o.cod_dim) return false;
    for (size_t k = 0; k < a.size(); ++k)
        if (!field.eq(a[k], o.a[k])) return false;
    return true;
}

VecMor compose(const VecMor& h, const VecMor& g) {
    if (h.cod_dim != g.dom_dim) throw std::invalid_argument("dimensions do not compose");
    VecMor r(h.field, g.cod_dim, h.dom_dim);
    for (int i = 0; i < g.cod_dim; ++i)
        for (int j = 0; j < h.dom_dim; ++j) {
            Scalar s(0);
            for (int k = 0; k < h.cod_dim; ++k) s += g.at(i, k) * h.at(k, j);
            r.at(i, j) = h.field.reduce(s);
        }
    return r;
}

std::vector<Scalar> apply(const VecMor& h, const std::vector<Scalar>& x) {
    if ((int)x.size() != h.dom_dim) throw std::invalid_argument("vector has wrong length");
    std::vector<Scalar> y(h.cod_dim, Scalar(0));
    for (int i = 0; i < h.cod_dim; ++i) {
        Scalar s(0);
        for (int j = 0; j < h.dom_dim; ++j) s += h.at(i, j) * x[j];
        y[i] = h.field.reduce(s);
    }
    return y;
}

std::string to_string(const VecMor& h) {
    std::string s = "(" + std::to_string(h.dom_dim) + "->" + std::to_string(h.cod_dim) + ")[";
    for (int i = 0; i < h.cod_dim; ++i) {
        if (i) s += ";";
        for (int j = 0; j < h.dom_dim; ++j) {
            if (j) s += ",";
            s += h.field.reduce(h.at(i, j)).get_str();
        }
    }
    return s + "]";
}

nlohmann::json to_json(const VecMor& h) {
    return {{"dom", h.dom_dim}, {"cod", h.cod_dim}, {"matrix", to_string(h)}};
}

namespace {

struct Echelon {
    VecMor m;
    std::vector<int> pivots;  // pivot column per nonzero row
};

Echelon rref(const VecMor& in) {
    Echelon e{in, {}};
    VecMor& m = e.m;
    const Field& f = m.field;
    int row = 0;
    for (int col = 0; col < m.dom_dim && row < m.cod_dim; ++col) {
        int pr = -1;
        for (int r = row; r < m.cod_dim; ++r)
            if (!f.is_zero(m.at(r, col))) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < m.dom_dim; ++c) std::swap(m.at(pr, c), m.at(row, c));
        Scalar piv = f.inv(m.at(row, col));
        for (int c = 0; c < m.dom_dim; ++c) m.at(row, c) = f.mul(m.at(row, c), piv);
        for (int r = 0; r < m.cod_dim; ++r) {
            if (r == row || f.is_zero(m.at(r, col))) continue;
            Scalar fac = m.at(r, col);
            for (int c = 0; c < m.dom_dim; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(fac, m.at(row, c)));
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

VecMor transpose(const VecMor& h) {
    VecMor t(h.field, h.dom_dim, h.cod_dim);
    for (int i = 0; i < h.cod_dim; ++i)
        for (int j = 0; j < h.dom_dim; ++j) t.at(j, i) = h.at(i, j);
    return t;
}

std::vector<Scalar> column(const VecMor& h, int j) {
    std::vector<Scalar> c(h.cod_dim);
    for (int i = 0; i < h.cod_dim; ++i) c[i] = h.at(i, j);
    return c;
}

VecMor from_columns(Field f, int ambient, const std::vector<std::vector<Scalar>>& cols) {
    VecMor m(f, ambient, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
        for (int i = 0; i < ambient; ++i) m.at(i, j) = f.reduce(cols[j][i]);
    return m;
}

std::optional<std::vector<Scalar>> solve(const VecMor& a, const std::vector<Scalar>& b) {
    VecMor aug(a.field, a.cod_dim, a.dom_dim + 1);
    for (int i = 0; i < a.cod_dim; ++i) {
        for (int j = 0; j < a.dom_dim; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.dom_dim) = b[i];
    }
    Echelon e = rref(aug);
    std::vector<Scalar> x(a.dom_dim, Scalar(0));
    for (int r = 0; r < (int)e.pivots.size(); ++r) {
        if (e.pivots[r] == a.dom_dim) return std::nullopt;  // inconsistent
        x[e.pivots[r]] = e.m.at(r, a.dom_dim);
    }
    return x;
}

VecMor inverse(const VecMor& a) {
    if (a.dom_dim != a.cod_dim) throw std::invalid_argument("inverse of a non-square matrix");
    int n = a.dom_dim;
    VecMor aug(a.field, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    Echelon e = rref(aug);
    if ((int)e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw std::domain_error("matrix is singular");
    VecMor inv(a.field, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = e.m.at(i, n + j);
    return inv;
}

}  // namespace

int rank(const VecMor& h) { return (int)rref(h).pivots.size(); }

Scalar det(const VecMor& h) {
    if (h.dom_dim != h.cod_dim)
        throw std::invalid_argument("determinant of a non-square matrix");
    const Field& f = h.field;
    VecMor m = h;
    int n = h.dom_dim, sign = 1;
    Scalar d(1);
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r)
            if (!f.is_zero(m.at(r, col))) {
                pr = r;
                break;
            }
        if (pr < 0) return Scalar(0);
        if (pr != col) {
            sign = -sign;
            for (int c = 0; c < n; ++c) std::swap(m.at(pr, c), m.at(col, c));
        }
        d = f.mul(d, m.at(col, col));
        Scalar piv = f.inv(m.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            Scalar fac = f.mul(m.at(r, col), piv);
            for (int c = col; c < n; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(fac, m.at(col, c)));
        }
    }
    return f.reduce(sign * d);
}

Scalar det_of_iso(const VecMor& h) {
    Scalar d = det(h);
    if (h.field.is_zero(d)) throw std::domain_error("morphism is not an isomorphism");
    return d;
}

// -------------------------------------------------- kernels and cokernels

SubQuot kernel(const VecMor& h) {
    Echelon e = rref(h);
    const Field& f = h.field;
    std::vector<bool> is_pivot(h.dom_dim, false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> cols;
    for (int c = 0; c < h.dom_dim; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(h.dom_dim, Scalar(0));
        v[c] = 1;
        for (int r = 0; r < (int)e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.m.at(r, c));
        cols.push_back(std::move(v));
    }
    SubQuot k;
    k.field = f;
    k.ambient = h.dom_dim;
    k.is_sub = true;
    k.map = from_columns(f, h.dom_dim, cols);
    return k;
}

SubQuot image(const VecMor& h) {
    Echelon e = rref(transpose(h));
    std::vector<std::vector<Scalar>> cols;
    for (int r = 0; r < (int)e.pivots.size(); ++r) cols.push_back(column(transpose(e.m), r));
    SubQuot im;
    im.field = h.field;
    im.ambient = h.cod_dim;
    im.is_sub = true;
    im.map = from_columns(h.field, h.cod_dim, cols);
    return im;
}

SubQuot cokernel(const VecMor& h) {
    const Field& f = h.field;
    SubQuot im = image(h);
    Echelon e = rref(transpose(h));  // pivot rows of the column-reduced image
    std::vector<bool> is_pivot(h.cod_dim, false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (int r = 0; r < h.cod_dim; ++r)
        if (!is_pivot[r]) free.push_back(r);
    SubQuot q;
    q.field = f;
    q.ambient = h.cod_dim;
    q.is_sub = false;
    q.map = VecMor(f, (int)free.size(), h.cod_dim);
    q.reps = VecMor(f, h.cod_dim, (int)free.size());
    for (int k = 0; k < (int)free.size(); ++k) {
        q.reps.at(free[k], k) = 1;
        q.map.at(k, free[k]) = 1;
        for (int i = 0; i < im.dim(); ++i)
            q.map.at(k, e.pivots[i]) = f.neg(im.map.at(free[k], i));
    }
    return q;
}

VecMor induced_fiber_map(const VecMor& h, const VecMor& g) {
    SubQuot kgh = kernel(compose(h, g)), kg = kernel(g);
    std::vector<std::vector<Scalar>> cols;
    for (int j = 0; j < kgh.dim(); ++j) {
        auto x = solve(kg.map, biop::apply(h, column(kgh.map, j)));
        if (!x) throw std::logic_error("image of a kernel vector escapes the kernel");
        cols.push_back(*x);
    }
    return from_columns(h.field, kg.dim(), cols);
}

VecMor induced_cofiber_map(const VecMor& h, const VecMor& g) {
    SubQuot ch = cokernel(h), cgh = cokernel(compose(h, g));
    return compose(ch.reps, compose(g, cgh.map));
}

VecMor rho(const VecMor& h, const VecMor& g) {
    VecMor hz = induced_fiber_map(h, g);
    VecMor gs = induced_cofiber_map(h, g);
    SubQuot mho = cokernel(hz), omega = kernel(gs);
    SubQuot kg = kernel(g), ch = cokernel(h);
    if (mho.dim() != omega.dim())
        throw std::logic_error("comparison spaces have different dimensions");
    std::vector<std::vector<Scalar>> cols;
    for (int j = 0; j < mho.dim(); ++j) {
        auto d = biop::apply(ch.map, biop::apply(kg.map, column(mho.reps, j)));
        auto x = solve(omega.map, d);
        if (!x) throw std::logic_error("comparison image escapes the kernel");
        cols.push_back(*x);
    }
    return from_columns(h.field, omega.dim(), cols);
}

// --------------------------------------------------------- determinant act

namespace {

Scalar ses_det(const SubQuot& sub, const VecMor& proj, bool sub_first) {
    int n = sub.ambient, q = proj.cod_dim;
    if (!sub.is_sub || proj.dom_dim != n || sub.dim() + q != n)
        throw std::invalid_argument("not a short exact sequence");
    if (!(compose(sub.map, proj) == VecMor(sub.field, q, sub.dim())) || rank(proj) != q)
        throw std::invalid_argument("not a short exact sequence");
    std::vector<std::vector<Scalar>> cols;
    auto push_lifts = [&] {
        for (int j = 0; j < q; ++j) {
            std::vector<Scalar> e(q, Scalar(0));
            e[j] = 1;
            cols.push_back(*solve(proj, e));
        }
    };
    auto push_sub = [&] {
        for (int j = 0; j < sub.dim(); ++j) cols.push_back(column(sub.map, j));
    };
    if (sub_first) {
        push_sub();
        push_lifts();
    } else {
        push_lifts();
        push_sub();
    }
    return det(from_columns(sub.field, n, cols));
}

Scalar chi_impl(const VecMor& h, bool sign_slip) {
    const Field& f = h.field;
    SubQuot ker = kernel(h), im = image(h), coker = cokernel(h);
    // corestriction of h onto its image, in the canonical image basis
    std::vector<std::vector<Scalar>> cols;
    for (int j = 0; j < h.dom_dim; ++j) cols.push_back(*solve(im.map, column(h, j)));
    VecMor onto = from_columns(f, im.dim(), cols);
    Scalar a = ses_det(ker, onto, sign_slip);
    Scalar b = ses_det(im, coker.map, false);
    return f.div(a, b);
}

}  // namespace

Scalar ses_det_iso(const SubQuot& sub, const VecMor& proj) { return ses_det(sub, proj, false); }

Scalar ses_det_iso(const SubQuot& sub, const SubQuot& quot) {
    if (quot.is_sub) throw std::invalid_argument("second argument must be a quotient");
    return ses_det(sub, quot.map, false);
}

Scalar chi_det(const VecMor& h) { return chi_impl(h, false); }

// ------------------------------------------------------- coherence checks

namespace {

// change of basis from the canonical basis of Ker(h) to the canonical basis
// of Ker(h_Z), through the inclusion Ker(h) ⊆ Ker(gh)
VecMor kernel_comparison(const VecMor& h, const VecMor& g) {
    SubQuot kh = kernel(h), kgh = kernel(compose(h, g)), km = kernel(induced_fiber_map(h, g));
    std::vector<std::vector<Scalar>> cols;
    for (int j = 0; j < kh.dim(); ++j) {
        auto x = solve(kgh.map, column(kh.map, j));
        if (!x) throw std::logic_error("Ker(h) does not sit inside Ker(gh)");
        auto c = solve(km.map, *x);
        if (!c) throw std::logic_error("Ker(h) does not match Ker(h_Z)");
        cols.push_back(*c);
    }
    return from_columns(h.field, km.dim(), cols);
}

// change of basis from Coker(g^S) to the canonical basis of Coker(g)
VecMor cokernel_comparison(const VecMor& h, const VecMor& g) {
    SubQuot cgs = cokernel(induced_cofiber_map(h, g));
    SubQuot cg = cokernel(g), cgh = cokernel(compose(h, g));
    std::vector<std::vector<Scalar>> cols;
    for (int j = 0; j < cgs.dim(); ++j)
        cols.push_back(biop::apply(cg.map, biop::apply(cgh.reps, column(cgs.reps, j))));
    VecMor v = from_columns(h.field, cg.dim(), cols);
    if (v.dom_dim != v.cod_dim)
        throw std::logic_error("Coker(g^S) does not match Coker(g)");
    return v;
}

struct DetChecker {
    Field f;
    DetCheckOptions opt;
    Report rep;

    Scalar chi(const VecMor& m) { return chi_impl(m, opt.sign_slip); }

    void naturality(const VecMor& h, const VecMor& s, const VecMor& t) {
        rep.bump("naturality");
        VecMor h2 = compose(inverse(s), compose(h, t));
        SubQuot k1 = kernel(h), k2 = kernel(h2);
        std::vector<std::vector<Scalar>> cols;
        for (int j = 0; j < k1.dim(); ++j)
            cols.push_back(*solve(k2.map, biop::apply(s, column(k1.map, j))));
        VecMor st = from_columns(f, k2.dim(), cols);
        VecMor ts = compose(cokernel(h).reps, compose(t, cokernel(h2).map));
        Scalar lhs = f.mul(f.mul(det(ts), det(s)), chi(h));
        Scalar rhs = f.mul(f.mul(chi(h2), det(t)), det(st));
        if (!f.eq(lhs, rhs))
            rep.fail("naturality square broken",
                     {{"h", to_string(h)}, {"s", to_string(s)}, {"t", to_string(t)},
                      {"lhs", f.reduce(lhs).get_str()}, {"rhs", f.reduce(rhs).get_str()}});
    }

    void hexagon(const VecMor& h, const VecMor& g) {
        rep.bump("hexagon");
        rep.bump("rank_nullity");
        if (kernel(h).dim() - h.dom_dim + h.cod_dim - cokernel(h).dim() != 0)
            rep.fail("rank-nullity violated", {{"h", to_string(h)}});
        VecMor hz = induced_fiber_map(h, g);
        VecMor gs = induced_cofiber_map(h, g);
        VecMor r = rho(h, g);
        rep.bump("rho_invertible");
        Scalar dr = det(r);
        if (f.is_zero(dr) && r.dom_dim > 0) {
            rep.fail("rho is singular", {{"h", to_string(h)}, {"g", to_string(g)}});
            return;
        }
        VecMor u = kernel_comparison(h, g);
        VecMor v = cokernel_comparison(h, g);
        // determinant lines are graded by the dimension, so the two symmetry
        // edges carry the Koszul signs of the swapped factors
        int x_dim = kernel(compose(h, g)).dim();
        long swap_par = (long)r.dom_dim * x_dim + (long)r.cod_dim * h.dom_dim;
        Scalar sym = swap_par % 2 ? Scalar(-1) : Scalar(1);
        Scalar lhs = f.mul(f.mul(f.mul(det(v), chi(gs)), f.mul(chi(compose(h, g)), dr)),
                           f.mul(f.mul(chi(hz), det(u)), sym));
        Scalar rhs = f.mul(chi(h), chi(g));
        if (!f.eq(lhs, rhs))
            rep.fail("hexagon broken",
                     {{"h", to_string(h)}, {"g", to_string(g)},
                      {"lhs", f.reduce(lhs).get_str()}, {"rhs", f.reduce(rhs).get_str()}});
    }
};

std::vector<VecMor> all_matrices(const Field& f, int cod, int dom) {
    std::vector<long> vals;
    if (f.p > 0)
        for (long v = 0; v < f.p; ++v) vals.push_back(v);
    else
        vals = {0, 1, -1};
    std::vector<VecMor> out;
    std::vector<long> e((size_t)cod * dom, vals.front());
    std::vector<int> idx((size_t)cod * dom, 0);
    while (true) {
        out.emplace_back(f, cod, dom, e);
        int k = 0;
        for (; k < (int)e.size(); ++k) {
            if (++idx[k] < (int)vals.size()) {
                e[k] = vals[idx[k]];
                break;
            }
            idx[k] = 0;
            e[k] = vals.front();
        }
        if (k == (int)e.size()) break;
        if (e.empty()) break;
    }
    return out;
}

std::vector<VecMor> all_isos(const Field& f, int n) {
    std::vector<VecMor> out;
    for (const VecMor& m : all_matrices(f, n, n))
        if (!f.is_zero(det(m))) out.push_back(m);
    return out;
}

VecMor random_matrix(const Field& f, int cod, int dom, std::mt19937_64& rng) {
    VecMor m(f, cod, dom);
    for (Scalar& x : m.a)
        x = f.p > 0 ? Scalar((long)(rng() % (unsigned long)f.p))
                    : Scalar((long)(rng() % 7) - 3);
    return m;
}

VecMor random_iso(const Field& f, int n, std::mt19937_64& rng) {
    while (true) {
        VecMor m = random_matrix(f, n, n, rng);
        if (!f.is_zero(det(m)) || n == 0) return m;
    }
}

}  // namespace

Report check_bicharade_pair(const Field& f, const VecMor& h, const VecMor& g,
                            bool sign_slip) {
    DetCheckOptions opt;
    opt.sign_slip = sign_slip;
    DetChecker ck{f, opt, {}};
    ck.rep.check = "bicharade_det:pair";
    if (h.cod_dim != g.dom_dim) {
        ck.rep.fail("not composable", {{"h", to_string(h)}, {"g", to_string(g)}});
        return ck.rep;
    }
    ck.naturality(h, VecMor::identity(f, h.dom_dim), VecMor::identity(f, h.cod_dim));
    ck.hexagon(h, g);
    return ck.rep;
}

VecMor vecmor_from_string(Field f, const std::string& s) {
    size_t arrow = s.find("->");
    size_t close = s.find(')');
    size_t open = s.find('[');
    if (s.empty() || s[0] != '(' || arrow == std::string::npos ||
        close == std::string::npos || open != close + 1 || s.back() != ']')
        throw std::invalid_argument("vecmor_from_string: bad format");
    int dom = std::stoi(s.substr(1, arrow - 1));
    int cod = std::stoi(s.substr(arrow + 2, close - arrow - 2));
    VecMor m(f, cod, dom);
    std::string body = s.substr(open + 1, s.size() - open - 2);
    size_t pos = 0;
    for (int i = 0; i < cod; ++i)
        for (int j = 0; j < dom; ++j) {
            size_t end = body.find_first_of(",;", pos);
            std::string entry = body.substr(pos, end == std::string::npos ? end : end - pos);
            m.at(i, j) = f.reduce(Scalar(mpq_class(entry)));
            pos = end == std::string::npos ? body.size() : end + 1;
        }
    return m;
}

Report check_bicharade_det(const Field& f, int dim_bound, DetCheckOptions opt) {
    DetChecker ck{f, opt, {}};
    ck.rep.check = "bicharade_det:" + f.str() + ":" + std::to_string(dim_bound);
    if (opt.exhaustive) {
        for (int s = 0; s <= dim_bound; ++s)
            for (int t = 0; t <= dim_bound; ++t) {
                auto hs = all_matrices(f, t, s);
                auto is = all_isos(f, s), it = all_isos(f, t);
                for (const VecMor& h : hs)
                    for (const VecMor& si : is)
                        for (const VecMor& ti : it) ck.naturality(h, si, ti);
                for (int z = 0; z <= dim_bound; ++z)
                    for (const VecMor& h : hs)
                        for (const VecMor& g : all_matrices(f, z, t)) ck.hexagon(h, g);
            }
    } else {
        std::mt19937_64 rng(opt.seed);
        auto dim = [&] { return (int)(rng() % (unsigned long)(dim_bound + 1)); };
        for (int i = 0; i < opt.samples; ++i) {
            int s = dim(), t = dim(), z = dim();
            VecMor h = random_matrix(f, t, s, rng);
            ck.naturality(h, random_iso(f, s, rng), random_iso(f, t, rng));
            ck.hexagon(h, random_matrix(f, z, t, rng));
        }
    }
    return ck.rep;
}

// ----------------------------------------------------------- standard form

namespace {

// greedily extends the independent columns of `have` by columns from `pool`
void extend_basis(const Field& f, int ambient, std::vector<std::vector<Scalar>>& have,
                  const std::vector<std::vector<Scalar>>& pool, int target_dim) {
    for (const auto& c : pool) {
        if ((int)have.size() == target_dim) return;
        auto trial = have;
        trial.push_back(c);
        if (rank(from_columns(f, ambient, trial)) == (int)trial.size()) have = std::move(trial);
    }
    if ((int)have.size() != target_dim)
        throw std::logic_error("basis extension fell short of the target dimension");
}

std::vector<std::vector<Scalar>> columns_of(const VecMor& m) {
    std::vector<std::vector<Scalar>> out;
    for (int j = 0; j < m.dom_dim; ++j) out.push_back(column(m, j));
    return out;
}

std::vector<std::vector<Scalar>> std_basis(int n) {
    std::vector<std::vector<Scalar>> out;
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> e(n, Scalar(0));
        e[j] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

// basis of the intersection of two subspaces given by independent columns
std::vector<std::vector<Scalar>> intersect(const Field& f, int ambient, const VecMor& A,
                                           const VecMor& B) {
    VecMor both(f, ambient, A.dom_dim + B.dom_dim);
    for (int i = 0; i < ambient; ++i) {
        for (int j = 0; j < A.dom_dim; ++j) both.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.dom_dim; ++j) both.at(i, A.dom_dim + j) = f.neg(B.at(i, j));
    }
    SubQuot null = kernel(both);
    std::vector<std::vector<Scalar>> gens;
    for (int j = 0; j < null.dim(); ++j) {
        std::vector<Scalar> full = column(null.map, j);
        std::vector<Scalar> x(full.begin(), full.begin() + A.dom_dim);
        gens.push_back(biop::apply(A, x));
    }
    return columns_of(image(from_columns(f, ambient, gens)).map);
}

}  // namespace

StandardForm standard_form(const VecMor& h, const VecMor& g) {
    if (h.cod_dim != g.dom_dim) throw std::invalid_argument("dimensions do not compose");
    const Field& f = h.field;
    int sd = h.dom_dim, td = h.cod_dim, zd = g.cod_dim;
    SubQuot im_h = image(h), ker_g = kernel(g), ker_h = kernel(h);
    auto b_beta = intersect(f, td, im_h.map, ker_g.map);
    auto b_gamma = b_beta;
    extend_basis(f, td, b_gamma, columns_of(im_h.map), im_h.dim());
    b_gamma.erase(b_gamma.begin(), b_gamma.begin() + (int)b_beta.size());
    auto b_psi = b_beta;
    extend_basis(f, td, b_psi, columns_of(ker_g.map), ker_g.dim());
    b_psi.erase(b_psi.begin(), b_psi.begin() + (int)b_beta.size());
    auto t_basis = b_beta;
    t_basis.insert(t_basis.end(), b_gamma.begin(), b_gamma.end());
    auto b_phi = t_basis;
    b_phi.insert(b_phi.end(), b_psi.begin(), b_psi.end());
    int before = (int)b_phi.size();
    extend_basis(f, td, b_phi, std_basis(td), td);
    b_phi.erase(b_phi.begin(), b_phi.begin() + before);

    StandardForm sf;
    sf.beta = (int)b_beta.size();
    sf.gamma = (int)b_gamma.size();
    sf.psi = (int)b_psi.size();
    sf.phi = (int)b_phi.size();
    sf.alpha = ker_h.dim();
    sf.sigma = zd - sf.gamma - sf.phi;

    std::vector<std::vector<Scalar>> s_basis = columns_of(ker_h.map);
    for (const auto* blk : {&b_beta, &b_gamma})
        for (const auto& c : *blk) {
            auto pre = solve(h, c);
            if (!pre) throw std::logic_error("image vector has no preimage");
            s_basis.push_back(*pre);
        }
    std::vector<std::vector<Scalar>> q_basis = b_beta;
    q_basis.insert(q_basis.end(), b_gamma.begin(), b_gamma.end());
    q_basis.insert(q_basis.end(), b_phi.begin(), b_phi.end());
    q_basis.insert(q_basis.end(), b_psi.begin(), b_psi.end());
    std::vector<std::vector<Scalar>> z_basis;
    for (const auto* blk : {&b_gamma, &b_phi})
        for (const auto& c : *blk) z_basis.push_back(biop::apply(g, c));
    extend_basis(f, zd, z_basis, std_basis(zd), zd);

    sf.P = from_columns(f, sd, s_basis);
    sf.Q = from_columns(f, td, q_basis);
    sf.R = from_columns(f, zd, z_basis);
    sf.h_std = compose(compose(sf.P, h), inverse(sf.Q));
    sf.g_std = compose(compose(sf.Q, g), inverse(sf.R));
    return sf;
}

// ------------------------------------------------------------ fdVec pair

namespace {

struct FdState {
    Field f;
    std::vector<VecMor> vm;
    std::map<std::tuple<int, int, std::vector<long>>, MorId> index;

    std::vector<long> key(const VecMor& m) const {
        std::vector<long> e;
        e.reserve(m.a.size());
        for (const Scalar& x : m.a) e.push_back(f.reduce(x).get_num().get_si());
        return e;
    }
    MorId id_of_mat(const VecMor& m) const {
        return index.at({m.dom_dim, m.cod_dim, key(m)});
    }
};

}  // namespace

DiopPair fdvec_pair(int bound) {
    if (bound < 0) throw std::invalid_argument("fdvec_pair: negative bound");
    auto st = std::make_shared<FdState>();
    st->f = Field::prime(2);
    auto cat = std::make_shared<FinCat>();
    for (int d = 0; d <= bound; ++d) cat->add_object(std::to_string(d));
    for (int s = 0; s <= bound; ++s)
        for (int t = 0; t <= bound; ++t)
            for (const VecMor& m : all_matrices(st->f, t, s)) {
                MorId id = cat->add_mor(to_string(m), s, t);
                st->index.emplace(std::make_tuple(s, t, st->key(m)), id);
                st->vm.push_back(m);
            }
    for (int d = 0; d <= bound; ++d)
        cat->set_identity(d, st->id_of_mat(VecMor::identity(st->f, d)));
    cat->comp_fn = [st](MorId a, MorId b) {  // b after a
        return st->id_of_mat(compose(st->vm[a], st->vm[b]));
    };
    cat->finish();
    auto base = std::shared_ptr<const FinCat>(cat);
    auto op = std::make_shared<const FinCat>(opposite(*base));

    OperadicStructure left = make_unary(
        base,
        [st](MorId h) { return (ObjId)kernel(st->vm[h]).dim(); },
        [st](MorId h, MorId g) {  // h then g: Ker(gh) -> Ker(g)
            return st->id_of_mat(induced_fiber_map(st->vm[h], st->vm[g]));
        });
    OperadicStructure right = make_unary(
        op,
        [st](MorId h) { return (ObjId)cokernel(st->vm[h]).dim(); },
        [st](MorId h, MorId g) {  // base chain g then h: Coker(g) -> Coker(hg)
            return st->id_of_mat(induced_cofiber_map(st->vm[g], st->vm[h]));
        });

    return DiopPair{"fdvec:" + std::to_string(bound), base, op, left, right};
}

}  // namespace biop
