#ifndef BIOP_ALGSTRUCT_HPP
#define BIOP_ALGSTRUCT_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "biop/diop.hpp"
#include "biop/exactla.hpp"
#include "biop/report.hpp"

// Linear structures carried by a two-sided pair: collections of spaces
// indexed by objects with operations indexed by morphisms, algebras and
// coalgebras indexed by components, modules and traces, and the checkers
// for the coherence laws relating them.  Operations are kept as sparse
// column maps; the tensor-product domains the laws quantify over get far
// too large for dense matrices.

namespace biop {

// sparse vector: (basis index, coefficient) terms
using SparseVec = std::vector<std::pair<long, Scalar>>;

struct LinOp {
    long dom = 0, cod = 0;
    std::function<SparseVec(long)> col;  // image of a domain basis vector
};

LinOp identity_op(long n);
LinOp zero_op(long cod, long dom);
LinOp from_vecmor(const VecMor& m);
LinOp op_then(const LinOp& first, const LinOp& second);  // second after first
// Tensor product; the leftmost factor is the most significant index digit.
LinOp kron(const std::vector<LinOp>& factors);
SparseVec apply_op(const LinOp& h, const SparseVec& x);
SparseVec normalized(const Field& f, SparseVec v);
nlohmann::json sparse_to_json(const SparseVec& v);

// mixed-radix splitting of a tensor index, leftmost digit most significant
std::vector<long> split_index(long idx, const std::vector<long>& dims);
long join_index(const std::vector<long>& digits, const std::vector<long>& dims);

// A tensor factor with a label; permutations between factor lists are built
// by matching labels, never by hand-written index arithmetic.
struct Fac {
    std::string tag;
    long dim = 1;
};
using Shape = std::vector<Fac>;

long shape_dim(const Shape& s);
// The factor permutation sending each `from` factor to the position of the
// equally-tagged factor of `to`; throws logic_error unless the tag multisets
// match and tags within each shape are unique.
LinOp perm_op(const Shape& from, const Shape& to);

struct OpsEqual {
    bool equal = true;
    long at = -1;  // first differing domain basis index
    SparseVec lhs, rhs;
};
OpsEqual ops_equal(const Field& f, const LinOp& a, const LinOp& b);

// Spaces over objects, operations over morphisms.  Used in three roles: as
// an operad (op[h] merges the fiber factors into the source), a cooperad
// (op[h] splits the target into the cofiber factors and the source), and a
// bimodule (op[h] : M(T) (x) P(h) -> botP(h) (x) M(S)).  Objects or
// morphisms without data are simply not quantified over; the reports count
// skipped instances.
struct Collection {
    Field field;
    std::map<ObjId, long> dim;
    std::map<MorId, LinOp> op;

    bool has_obj(ObjId x) const { return dim.count(x) != 0; }
    bool has_op(MorId m) const { return op.count(m) != 0; }
};

using Operad = Collection;
using Cooperad = Collection;
using Bimodule = Collection;

// One space per component of the base, one structure map per object:
// op[X] : P(X) (x) A_{sou X} -> A_{tar X} for algebras and
// op[X] : botP(X) (x) B_{sou X} -> B_{tar X} for coalgebras.
struct AlgebraData {
    Field field;
    std::map<int, long> dim;  // component index -> dimension
    std::map<ObjId, LinOp> op;

    bool has_op(ObjId x) const { return op.count(x) != 0; }
};

// op[X] : M(X) (x) A_{sou X} -> B_{tar X}
struct TraceData {
    std::map<ObjId, LinOp> op;

    bool has_op(ObjId x) const { return op.count(x) != 0; }
};

struct LawOptions {
    // restrict the run to a single morphism or composable pair (replays)
    MorId only_h = -1, only_g = -1;
};

// Associativity of the operations over every composable pair of base
// morphisms whose data is present, including the matching of the fibers of
// the induced morphisms against the fibers of the composite.
Report check_operad(const DiopPair& q, const Operad& P, LawOptions opt = {});
Report check_cooperad(const DiopPair& q, const Cooperad& C, LawOptions opt = {});
// The compatibility pentagon relating omega with the operations of P and C
// over every composable pair with data.
Report check_bimodule(const DiopPair& q, const Operad& P, const Cooperad& C,
                      const Bimodule& M, LawOptions opt = {});
// The action square over every base morphism with data; requires the
// fiber-side identity-cofiber equalities on the quantified instances and
// throws invalid_argument where they fail, since the law is not even
// well-typed there.
Report check_algebra(const DiopPair& q, const Operad& P, const AlgebraData& A,
                     LawOptions opt = {});
// The action square in the one-sided setting: sources are components of
// identity fibers, targets are components of the objects themselves.
Report check_algebra_classical(const OperadicStructure& os, const Operad& P,
                               const AlgebraData& A, LawOptions opt = {});
Report check_coalgebra(const DiopPair& q, const Cooperad& C, const AlgebraData& B,
                       LawOptions opt = {});
// The eight-sided compatibility diagram of a trace over every base morphism
// with data.  All five component laws are re-checked first (skipped when a
// replay restriction is given) and a failing component fails the report.
Report check_trace(const DiopPair& q, const Operad& P, const Cooperad& C,
                   const Bimodule& M, const AlgebraData& A, const AlgebraData& B,
                   const TraceData& tr, LawOptions opt = {});

// ranking of sequences: lexicographic rank among the permutations of [0,n)
long fact(int n);
long seq_rank(const std::vector<int>& s);
std::vector<int> seq_unrank(int n, long r);

// dimension 1 everywhere, every operation the scalar 1
Operad trivial_operad(const DiopPair& q, Field f);
Cooperad trivial_cooperad(const DiopPair& q, Field f);

// Spaces of linear orders over the one-output objects of the two-sided
// finite-set pair, composed by order substitution; the cooperad is the
// mirror construction on the one-input objects, split by the transpose.
Operad order_operad(const DiopPair& q, Field f);
Cooperad order_cooperad(const DiopPair& q, Field f);

// Cyclic orders acted on by order substitution; a module over the order
// operad with scalar cofiber factors (pair with the trivial cooperad).
Bimodule cyclic_module(const DiopPair& q, Field f);
// Differences of linear orders (the kernel of the coefficient-sum
// functional), closed under substitution.  Basis r = 1..n!-1 is the r-th
// order minus the identity order.
Bimodule order_diff_module(const DiopPair& q, Field f);

// Words over a finite alphabet up to a length bound; longer products vanish.
struct WordSpace {
    int letters = 2, maxlen = 4;
    long dim = 0;
    std::vector<long> offset;  // first index of each length, size maxlen + 2
};

WordSpace word_space(int letters, int maxlen);
long word_rank(const WordSpace& w, const std::vector<int>& word);  // -1: vanishes
std::vector<int> word_at(const WordSpace& w, long idx);

// The truncated free algebra on the word space, one copy per component.
AlgebraData word_algebra(const DiopPair& q, Field f, const WordSpace& w);

// span of 1 and x with x^2 = 0, and its dual coalgebra
AlgebraData nil_square_algebra(const DiopPair& q, Field f);
AlgebraData nil_square_coalgebra(const DiopPair& q, Field f);

// identity maps of a fixed d-dimensional space, placed only on the objects
// whose single identity fiber and cofiber make the coalgebra law trivial
AlgebraData identity_coalgebra(const DiopPair& q, Field f, long d);

// Cyclic words: rotation classes of words, indexed by least rotations.
struct NecklaceSpace {
    WordSpace words;
    long dim = 0;
    std::vector<long> cls;  // word index -> class index
};

NecklaceSpace necklace_space(const WordSpace& w);
LinOp necklace_projection(const NecklaceSpace& n);

// Trace over the cyclic module: reads the algebra entries around the cycle
// and applies to_b : A -> B to their product.
TraceData cyclic_trace(const DiopPair& q, const WordSpace& w, const LinOp& to_b);
// Trace over the order-difference module: cuts the ordered entries after
// the first one and applies the pairing bil : A (x) A -> B.
TraceData cut_trace(const DiopPair& q, const WordSpace& w, const LinOp& bil);

}  // namespace biop

#endif
