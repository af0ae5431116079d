#ifndef BIOP_FINORD_HPP
#define BIOP_FINORD_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

// Skeletal finite ordinals [n] = {1..n} and maps between them.  All indices
// are 1-based; [0] is the empty ordinal and is legal everywhere.

namespace biop {

struct Ord {
    int n = 0;
    Ord() = default;
    explicit Ord(int k) : n(k) {
        if (k < 0) throw std::invalid_argument("Ord: negative");
    }
    auto operator<=>(const Ord&) const = default;
};

struct FinMap {
    int dom = 0;
    int cod = 0;
    std::vector<int> table;  // table[s-1] in {1..cod}, size dom

    FinMap() = default;
    FinMap(int d, int c, std::vector<int> t);
    static FinMap identity(int n);
    static FinMap constant(int d, int c, int value);

    int operator()(int s) const { return table[s - 1]; }
    bool is_identity() const;
    auto operator<=>(const FinMap&) const = default;
};

// g after f; requires f.cod == g.dom.
FinMap compose(const FinMap& f, const FinMap& g);

struct OrdFiber {
    Ord size;
    FinMap incl;  // order-preserving inclusion [size] -> [f.dom]
};

// Preimage of i under f, as an ordinal with its inclusion.
OrdFiber fiber(const FinMap& f, int i);

// Restriction of h to (g∘h)^{-1}(i) -> g^{-1}(i) in fiber coordinates.
// Requires h.cod == g.dom and 1 <= i <= g.cod.
FinMap induced_on_fibers(const FinMap& h, const FinMap& g, int i);

// All n^a maps [a] -> [n], tables in lexicographic order.
std::vector<FinMap> enumerate_maps(int a, int n);

// Morphism (a,m) -> (n,b) of the product of skeletal finite sets with the
// opposite of itself: a forward map [a]->[n] and a backward map [b]->[m].
struct BiMap {
    FinMap fwd;
    FinMap bwd;
    auto operator<=>(const BiMap&) const = default;
};

// (g2,b2) after (g1,b1): forward maps compose forward, backward maps backward.
BiMap compose(const BiMap& f, const BiMap& g);

nlohmann::json to_json(const FinMap& f);
FinMap finmap_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BiMap& f);

}  // namespace biop

#endif
