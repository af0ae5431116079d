#ifndef BIOP_EXACTLA_HPP
#define BIOP_EXACTLA_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "biop/diop.hpp"
#include "biop/report.hpp"

// Exact linear algebra over Q and over prime fields: kernels, cokernels with
// canonical representatives, the maps they induce along a composable pair,
// the comparison isomorphism rho, determinant lines and the determinant
// action chi, plus the coherence checker for the two determinant diagrams.

namespace biop {

using Scalar = mpq_class;

struct Field {
    long p = 0;  // 0 means the rationals, otherwise a prime modulus

    static Field rationals() { return Field{0}; }
    static Field prime(long p);

    Scalar reduce(const Scalar& x) const;
    Scalar add(const Scalar& x, const Scalar& y) const { return reduce(x + y); }
    Scalar sub(const Scalar& x, const Scalar& y) const { return reduce(x - y); }
    Scalar mul(const Scalar& x, const Scalar& y) const { return reduce(x * y); }
    Scalar neg(const Scalar& x) const { return reduce(-x); }
    Scalar inv(const Scalar& x) const;
    Scalar div(const Scalar& x, const Scalar& y) const { return mul(x, inv(y)); }
    bool eq(const Scalar& x, const Scalar& y) const { return reduce(x) == reduce(y); }
    bool is_zero(const Scalar& x) const { return reduce(x) == 0; }
    std::string str() const { return p == 0 ? "q" : "f" + std::to_string(p); }
};

struct VecMor {
    Field field;
    int dom_dim = 0, cod_dim = 0;
    std::vector<Scalar> a;  // row-major, cod_dim x dom_dim

    VecMor() = default;
    VecMor(Field f, int cod, int dom)
        : field(f), dom_dim(dom), cod_dim(cod), a((size_t)cod * dom, Scalar(0)) {}
    VecMor(Field f, int cod, int dom, std::vector<long> entries);

    Scalar& at(int r, int c) { return a[(size_t)r * dom_dim + c]; }
    const Scalar& at(int r, int c) const { return a[(size_t)r * dom_dim + c]; }

    static VecMor identity(Field f, int n);
    bool operator==(const VecMor& o) const;
};

// h then g, i.e. the matrix product g * h
VecMor compose(const VecMor& h, const VecMor& g);
std::vector<Scalar> apply(const VecMor& h, const std::vector<Scalar>& x);
int rank(const VecMor& h);
std::string to_string(const VecMor& h);
nlohmann::json to_json(const VecMor& h);

// A subspace of an ambient coordinate space, or a quotient of one.  Sub:
// map is the inclusion (columns a reduced basis).  Quot: map is the
// projection and reps a section of it by canonical representatives.
struct SubQuot {
    Field field;
    int ambient = 0;
    bool is_sub = true;
    VecMor map;
    VecMor reps;  // quotients only

    int dim() const { return is_sub ? map.dom_dim : map.cod_dim; }
};

SubQuot kernel(const VecMor& h);
SubQuot image(const VecMor& h);  // subspace of the codomain
// Codomain modulo the image; representatives are the standard basis vectors
// at the non-pivot coordinates of the column-reduced image.
SubQuot cokernel(const VecMor& h);

// h_Z: Ker(gh) -> Ker(g) for the chain h then g, in the two kernel bases
VecMor induced_fiber_map(const VecMor& h, const VecMor& g);
// g^S: Coker(h) -> Coker(gh)
VecMor induced_cofiber_map(const VecMor& h, const VecMor& g);
// the comparison map Coker(h_Z) -> Ker(g^S); always invertible over a field
VecMor rho(const VecMor& h, const VecMor& g);

Scalar det(const VecMor& h);         // square input
Scalar det_of_iso(const VecMor& h);  // throws unless square and invertible

// The pairing det(quot) ⊗ det(sub) -> det(ambient) of a short exact
// sequence sub -> ambient -> quot, as a scalar in the canonical basis
// vectors: the determinant of [lifted quotient basis | sub basis].  The
// value does not depend on the choice of lifts.
Scalar ses_det_iso(const SubQuot& sub, const VecMor& proj);
Scalar ses_det_iso(const SubQuot& sub, const SubQuot& quot);

// chi_h: det(T) ⊗ det(Ker h) -> det(Coker h) ⊗ det(S), the scalar of the
// span through det(Coker h) ⊗ det(Im h) ⊗ det(Ker h)
Scalar chi_det(const VecMor& h);

struct DetCheckOptions {
    bool exhaustive = false;
    int samples = 200;
    unsigned long seed = 1;
    // negative control: evaluates one of the two exact-sequence pairings
    // inside chi with the basis factors in the wrong order
    bool sign_slip = false;
};

// Re-evaluates both determinant diagrams on a single composable pair, in
// isolation; used to replay hexagon witnesses.
Report check_bicharade_pair(const Field& f, const VecMor& h, const VecMor& g,
                            bool sign_slip = false);

// Parses the to_string format "(dom->cod)[row;row;...]".
VecMor vecmor_from_string(Field f, const std::string& s);

// Verifies, exhaustively or on seeded samples, that chi is natural under
// isomorphisms of morphisms and satisfies the hexagon relating the chi of
// h, g, gh, h_Z and g^S through det(rho).  Determinant lines are graded by
// the dimension of the underlying space, so the symmetry isomorphisms in
// the hexagon contribute Koszul signs.
Report check_bicharade_det(const Field& f, int dim_bound, DetCheckOptions opt = {});

struct StandardForm {
    int alpha = 0, beta = 0, gamma = 0, phi = 0, psi = 0, sigma = 0;
    VecMor P, Q, R;            // invertible basis changes on S, T, Z
    VecMor h_std, g_std;       // Q^-1 h P and R^-1 g Q, in block form
};

// Decomposes a composable chain h then g so that, in the new bases,
// S = alpha+beta+gamma, T = beta+gamma+phi+psi, Z = gamma+phi+sigma with
// h the identity on beta+gamma and zero on alpha, g the identity on
// gamma+phi and zero on beta+psi.
StandardForm standard_form(const VecMor& h, const VecMor& g);

// Finite-dimensional F_2 vector spaces of dimension at most bound, with
// kernels as fibers and cokernels as cofibers.
DiopPair fdvec_pair(int bound);

}  // namespace biop

#endif
