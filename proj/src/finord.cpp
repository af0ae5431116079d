#include "biop/finord.hpp"

namespace biop {

FinMap::FinMap(int d, int c, std::vector<int> t) : dom(d), cod(c), table(std::move(t)) {
    if (d < 0 || c < 0) throw std::invalid_argument("FinMap: negative ordinal");
    if ((int)table.size() != d) throw std::invalid_argument("FinMap: table length != dom");
    for (int v : table)
        if (v < 1 || v > c) throw std::invalid_argument("FinMap: entry out of codomain");
}

FinMap FinMap::identity(int n) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) t[i] = i + 1;
    return FinMap(n, n, std::move(t));
}

FinMap FinMap::constant(int d, int c, int value) {
    return FinMap(d, c, std::vector<int>(d, value));
}

bool FinMap::is_identity() const {
    if (dom != cod) return false;
    for (int i = 0; i < dom; ++i)
        if (table[i] != i + 1) return false;
    return true;
}

FinMap compose(const FinMap& f, const FinMap& g) {
    if (f.cod != g.dom) throw std::invalid_argument("compose: f.cod != g.dom");
    std::vector<int> t(f.dom);
    for (int s = 1; s <= f.dom; ++s) t[s - 1] = g(f(s));
    return FinMap(f.dom, g.cod, std::move(t));
}

OrdFiber fiber(const FinMap& f, int i) {
    if (i < 1 || i > f.cod) throw std::invalid_argument("fiber: index out of range");
    std::vector<int> incl;
    for (int s = 1; s <= f.dom; ++s)
        if (f(s) == i) incl.push_back(s);
    int k = (int)incl.size();
    return OrdFiber{Ord(k), FinMap(k, f.dom, std::move(incl))};
}

FinMap induced_on_fibers(const FinMap& h, const FinMap& g, int i) {
    if (h.cod != g.dom) throw std::invalid_argument("induced_on_fibers: not composable");
    FinMap gh = compose(h, g);
    OrdFiber src = fiber(gh, i);
    OrdFiber tgt = fiber(g, i);
    // position of each ambient element within the target fiber
    std::vector<int> pos(g.dom + 1, 0);
    for (int s = 1; s <= tgt.size.n; ++s) pos[tgt.incl(s)] = s;
    std::vector<int> t(src.size.n);
    for (int s = 1; s <= src.size.n; ++s) {
        int image = h(src.incl(s));
        if (pos[image] == 0) throw std::logic_error("induced_on_fibers: image outside fiber");
        t[s - 1] = pos[image];
    }
    return FinMap(src.size.n, tgt.size.n, std::move(t));
}

std::vector<FinMap> enumerate_maps(int a, int n) {
    std::vector<FinMap> out;
    if (a == 0) {
        out.push_back(FinMap(0, n, {}));
        return out;
    }
    if (n == 0) return out;  // no maps [a]->[0] when a > 0
    std::vector<int> t(a, 1);
    while (true) {
        out.push_back(FinMap(a, n, t));
        int i = a - 1;
        while (i >= 0 && t[i] == n) t[i--] = 1;
        if (i < 0) break;
        ++t[i];
    }
    return out;
}

BiMap compose(const BiMap& f, const BiMap& g) {
    return BiMap{compose(f.fwd, g.fwd), compose(g.bwd, f.bwd)};
}

nlohmann::json to_json(const FinMap& f) {
    return nlohmann::json{{"dom", f.dom}, {"cod", f.cod}, {"table", f.table}};
}

FinMap finmap_from_json(const nlohmann::json& j) {
    return FinMap(j.at("dom").get<int>(), j.at("cod").get<int>(),
                  j.at("table").get<std::vector<int>>());
}

nlohmann::json to_json(const BiMap& f) {
    return nlohmann::json{{"fwd", to_json(f.fwd)}, {"bwd", to_json(f.bwd)}};
}

}  // namespace biop
