#include "biop/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "biop/algstruct.hpp"
#include "biop/instances.hpp"

namespace biop {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Field field_from(const std::string& s) {
    if (s == "q") return Field::rationals();
    if (s.size() > 1 && s[0] == 'f') return Field::prime(std::stol(s.substr(1)));
    throw std::invalid_argument("unknown field " + s);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json make_report(const std::string& command, json config, json checks, bool timing,
                 std::chrono::steady_clock::time_point t0) {
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.value("status", "") == "pass";
    json j{{"schema", kReportSchema},
           {"command", command},
           {"config", std::move(config)},
           {"status", ok ? "pass" : "fail"},
           {"checks", std::move(checks)}};
    if (timing) j["timing"] = {{"seconds", seconds_since(t0)}};
    return j;
}

DiopPair envelope_of_path3() {
    auto base = std::make_shared<const FinCat>(path_cat(3));
    auto d = std::make_shared<const Decalage>(decalage(*base));
    auto dcat = std::make_shared<const FinCat>(d->cat);
    OperadicStructure os = decalage_structure(dcat, d, base);
    std::vector<int> comp = pi0(*dcat);
    UnitFamily units;
    units.units.assign(*std::max_element(comp.begin(), comp.end()) + 1, -1);
    for (ObjId x = 0; x < dcat->n_objects(); ++x)
        if (base->is_identity(d->obj_mor[x])) units.units[comp[x]] = x;
    return bivariant_envelope(os, units);
}

// -------------------------------------------------------------- law-check

LinOp linop_from(Field f, const json& rows) {
    int cod = (int)rows.size();
    int dom = cod ? (int)rows.at(0).size() : 0;
    VecMor m(f, cod, dom);
    for (int i = 0; i < cod; ++i) {
        if ((int)rows.at(i).size() != dom)
            throw std::invalid_argument("law-check: ragged matrix");
        for (int j = 0; j < dom; ++j) m.at(i, j) = f.reduce(Scalar(rows.at(i).at(j).get<long>()));
    }
    return from_vecmor(m);
}

WordSpace word_space_arg(const std::vector<std::string>& parts) {
    if (parts.size() != 3) throw std::invalid_argument("law-check: expected <name>:<letters>:<maxlen>");
    return word_space(std::stoi(parts[1]), std::stoi(parts[2]));
}

LinOp concat_pairing(const WordSpace& w) {
    LinOp bil;
    bil.dom = w.dim * w.dim;
    bil.cod = w.dim;
    bil.col = [w](long idx) -> SparseVec {
        std::vector<int> prod = word_at(w, idx / w.dim);
        auto second = word_at(w, idx % w.dim);
        prod.insert(prod.end(), second.begin(), second.end());
        long r = word_rank(w, prod);
        if (r < 0) return {};
        return {{r, Scalar(1)}};
    };
    return bil;
}

Collection builtin_collection(const DiopPair& q, Field f, const std::string& name) {
    if (name == "trivial-operad") return trivial_operad(q, f);
    if (name == "trivial-cooperad") return trivial_cooperad(q, f);
    if (name == "order-operad") return order_operad(q, f);
    if (name == "order-cooperad") return order_cooperad(q, f);
    if (name == "cyclic-module") return cyclic_module(q, f);
    if (name == "order-diff-module") return order_diff_module(q, f);
    throw std::invalid_argument("unknown builtin collection " + name);
}

AlgebraData builtin_algebra(const DiopPair& q, Field f, const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts[0] == "word-algebra") return word_algebra(q, f, word_space_arg(parts));
    if (parts[0] == "nil-square-algebra") return nil_square_algebra(q, f);
    if (parts[0] == "nil-square-coalgebra") return nil_square_coalgebra(q, f);
    if (parts[0] == "identity-coalgebra" && parts.size() == 2)
        return identity_coalgebra(q, f, std::stol(parts[1]));
    throw std::invalid_argument("unknown builtin algebra " + spec);
}

TraceData builtin_trace(const DiopPair& q, const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts[0] == "necklace-trace") {
        WordSpace w = word_space_arg(parts);
        return cyclic_trace(q, w, necklace_projection(necklace_space(w)));
    }
    if (parts[0] == "cut-trace") {
        WordSpace w = word_space_arg(parts);
        return cut_trace(q, w, concat_pairing(w));
    }
    throw std::invalid_argument("unknown builtin trace " + spec);
}

std::string builtin_name(const json& sec) {
    std::string s = sec.get<std::string>();
    if (s.rfind("builtin:", 0) != 0)
        throw std::invalid_argument("law-check: string section must be builtin:<name>");
    return s.substr(8);
}

Collection collection_from(const DiopPair& q, Field f, const json& sec) {
    if (sec.is_string()) return builtin_collection(q, f, builtin_name(sec));
    Collection c;
    c.field = f;
    for (const auto& [name, d] : sec.at("dims").items())
        c.dim[obj_by_name(*q.base, name)] = d.get<long>();
    for (const auto& [name, rows] : sec.at("ops").items())
        c.op[mor_by_name(*q.base, name)] = linop_from(f, rows);
    return c;
}

AlgebraData algebra_from(const DiopPair& q, Field f, const json& sec) {
    if (sec.is_string()) return builtin_algebra(q, f, builtin_name(sec));
    AlgebraData a;
    a.field = f;
    for (const auto& [cls, d] : sec.at("dims").items()) a.dim[std::stoi(cls)] = d.get<long>();
    for (const auto& [name, rows] : sec.at("ops").items())
        a.op[obj_by_name(*q.base, name)] = linop_from(f, rows);
    return a;
}

TraceData trace_from(const DiopPair& q, Field f, const json& sec) {
    if (sec.is_string()) return builtin_trace(q, builtin_name(sec));
    TraceData t;
    for (const auto& [name, rows] : sec.at("ops").items())
        t.op[obj_by_name(*q.base, name)] = linop_from(f, rows);
    return t;
}

Report run_law_check(const DiopPair& q, const std::string& structure, const json& data,
                     LawOptions opt) {
    Field f = field_from(data.at("field").get<std::string>());
    auto col = [&](const char* key) { return collection_from(q, f, data.at(key)); };
    auto alg = [&](const char* key) { return algebra_from(q, f, data.at(key)); };
    if (structure == "operad") return check_operad(q, col("operad"), opt);
    if (structure == "cooperad") return check_cooperad(q, col("cooperad"), opt);
    if (structure == "bimodule")
        return check_bimodule(q, col("operad"), col("cooperad"), col("module"), opt);
    if (structure == "algebra") return check_algebra(q, col("operad"), alg("algebra"), opt);
    if (structure == "coalgebra")
        return check_coalgebra(q, col("cooperad"), alg("coalgebra"), opt);
    if (structure == "trace")
        return check_trace(q, col("operad"), col("cooperad"), col("module"), alg("algebra"),
                           alg("coalgebra"), trace_from(q, f, data.at("trace")), opt);
    throw std::invalid_argument("unknown structure " + structure);
}

// ------------------------------------------------------- example registry

const Field kF3 = Field::prime(3);

json example_bbq_phi() {
    std::vector<std::string> colors{"u'1", "u'2", "u'3", "u'4", "v'1", "v'2", "v'3",
                                    "u''1", "u''2", "v''1", "v''2", "v''3"};
    Bibouquet src{{0, 1, 2, 3}, {4, 5, 6}};
    Bibouquet tgt{{7, 8}, {9, 10, 11}};
    BiMap phi{FinMap(4, 2, {2, 1, 2, 1}), FinMap(3, 3, {3, 2, 2})};
    json fibers = json::array(), cofibers = json::array();
    for (int i = 1; i <= 2; ++i) fibers.push_back(bbq_name(bbq_fiber(src, tgt, phi, i), colors));
    for (int j = 1; j <= 3; ++j)
        cofibers.push_back(bbq_name(bbq_cofiber(src, tgt, phi, j), colors));
    bool ok = fibers == json{"u'2,u'4/u''1", "u'1,u'3/u''2"} &&
              cofibers == json{"v'1/∅", "v'2/v''2,v''3", "v'3/v''1"};
    return json{{"check", "bbq-phi"},
                {"status", ok ? "pass" : "fail"},
                {"map", "[2,1,2,1|3,2,2]"},
                {"source", bbq_name(src, colors)},
                {"target", bbq_name(tgt, colors)},
                {"fibers", fibers},
                {"cofibers", cofibers}};
}

json example_pset_counterexample() {
    DiopPair q = pointed_sets(3);
    MorId h = mor_by_name(*q.base, "(1->2:2)");
    MorId g = mor_by_name(*q.base, "(2->1:1,1)");
    MorId hz = q.induced_fiber(h, g, 1);
    ObjId mho = q.cofiber_at(hz, 1);       // cofiber of the induced kernel map
    MorId gs = q.induced_cofiber(h, g, 1);
    ObjId omega = q.fiber_at(gs, 1);       // fiber of the induced cokernel map
    bool ok = q.base->objects[mho] == "0+*" && q.base->objects[omega] == "1+*";
    return json{{"check", "pset-counterexample"},
                {"status", ok ? "pass" : "fail"},
                {"h", "(1->2:2)"},
                {"g", "(2->1:1,1)"},
                {"kernel_side", q.base->objects[mho]},
                {"cokernel_side", q.base->objects[omega]},
                {"rho", "{∘} ⊊ {x,∘}"},
                {"isomorphism", false}};
}

json example_rho_linearized() {
    Field f = Field::rationals();
    VecMor h(f, 2, 1, {0, 1});  // the free span of u -> y
    VecMor g(f, 1, 2, {1, 1});  // both generators to v
    VecMor r = rho(h, g);
    bool ok = r.dom_dim == 1 && r.cod_dim == 1 && !f.is_zero(det(r));
    return json{{"check", "rho-linearized"},
                {"status", ok ? "pass" : "fail"},
                {"rho", to_string(r)},
                {"isomorphism", ok},
                {"note", "the canonical kernel basis is y-x, so rho(x-y) = x reads as -1"}};
}

json with_name(Report rep, const std::string& name) {
    json j = rep.to_json();
    j["check"] = name;
    return j;
}

json example_cycl_trace() {
    DiopPair q = sfset2(2);
    WordSpace w = word_space(2, 4);
    NecklaceSpace nk = necklace_space(w);
    Report rep = check_trace(q, order_operad(q, kF3), trivial_cooperad(q, kF3),
                             cyclic_module(q, kF3), word_algebra(q, kF3, w),
                             identity_coalgebra(q, kF3, nk.dim),
                             cyclic_trace(q, w, necklace_projection(nk)));
    json j = with_name(std::move(rep), "cycl-trace");
    j["note"] = "the trace law is the cyclic symmetry of the projection onto cyclic words";
    return j;
}

json example_aug_trace() {
    DiopPair q = sfset2(2);
    WordSpace w = word_space(2, 4);
    Report rep = check_trace(q, order_operad(q, kF3), trivial_cooperad(q, kF3),
                             order_diff_module(q, kF3), word_algebra(q, kF3, w),
                             identity_coalgebra(q, kF3, w.dim),
                             cut_trace(q, w, concat_pairing(w)));
    json j = with_name(std::move(rep), "aug-trace");
    j["note"] = "the trace law is the associativity T(uv,z) = T(u,vz) of the cut pairing";
    return j;
}

json example_det_chi() {
    DetCheckOptions opt;
    opt.exhaustive = true;
    return with_name(check_bicharade_det(Field::prime(2), 2, opt), "det-chi");
}

}  // namespace

// ------------------------------------------------------------- public API

DiopPair pair_from_selector(const std::string& sel) {
    auto parts = split(sel, ':');
    const std::string& kind = parts[0];
    if (kind == "sfset2" && parts.size() == 2) return sfset2(std::stoi(parts[1]));
    if (kind == "bbq" && parts.size() == 3) {
        std::vector<std::string> colors = split(parts[1], ',');
        return bbq(colors, std::stoi(parts[2]));
    }
    if (kind == "pset" && parts.size() == 2) return pointed_sets(std::stoi(parts[1]));
    if (kind == "fdvec" && parts.size() == 2) return fdvec_pair(std::stoi(parts[1]));
    if (kind == "benv" && parts.size() == 2 && parts[1] == "path3") return envelope_of_path3();
    if (kind == "arr" && parts.size() == 2) {
        if (parts[1] == "path3") return arrow_cat(path_cat(3));
        if (parts[1] == "terminal") return arrow_cat(terminal_cat());
        std::ifstream in(parts[1]);
        if (!in) throw std::invalid_argument("cannot open category file " + parts[1]);
        std::stringstream ss;
        ss << in.rdbuf();
        return arrow_cat(fincat_from_text(ss.str()));
    }
    throw std::invalid_argument("unknown selector " + sel);
}

nlohmann::json run_suite(const SuiteConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    DiopPair q = pair_from_selector(cfg.selector);
    std::vector<std::string> names = cfg.checks;
    if (names.empty())
        names = {"operadic-left", "operadic-right", "dioperadic", "bioperadic"};
    json checks = json::array();
    for (const auto& name : names) {
        if (name == "operadic-left") {
            checks.push_back(with_name(check_operadic(q.left), name));
        } else if (name == "operadic-right") {
            checks.push_back(with_name(check_operadic(q.right), name));
        } else if (name == "dioperadic") {
            ClassifyReport cr = classify(q);
            json j = with_name(cr.detail, name);
            j["status"] = cr.diop ? "pass" : "fail";
            j["left_perfect"] = cr.left_diop;
            j["right_perfect"] = cr.right_diop;
            j["fiber_subcategory"] = {{"objects", cr.QF.cat.n_objects()},
                                      {"morphisms", cr.QF.cat.n_mors()}};
            j["cofiber_subcategory"] = {{"objects", cr.QC.cat.n_objects()},
                                        {"morphisms", cr.QC.cat.n_mors()}};
            checks.push_back(std::move(j));
        } else if (name == "bioperadic") {
            checks.push_back(with_name(check_bioperadic(q), name));
        } else {
            throw std::invalid_argument("unknown check " + name);
        }
    }
    json config{{"selector", cfg.selector}, {"checks", names}};
    return make_report("check-suite", std::move(config), std::move(checks), cfg.timing, t0);
}

nlohmann::json fibers_json(const std::string& selector, const std::string& morphism) {
    auto t0 = std::chrono::steady_clock::now();
    DiopPair q = pair_from_selector(selector);
    MorId h = mor_by_name(*q.base, morphism);
    Analysis a = analysis(q, h);
    auto names = [&](const std::vector<ObjId>& v) {
        json arr = json::array();
        for (ObjId x : v) arr.push_back(q.base->objects[x]);
        return arr;
    };
    json j{{"check", "fibers"},
           {"status", "pass"},
           {"morphism", morphism},
           {"source", q.base->objects[a.S]},
           {"target", q.base->objects[a.T]},
           {"fibers", names(a.fibers)},
           {"cofibers", names(a.cofibers)},
           {"source_identity_fibers", names(a.U_S)},
           {"source_identity_cofibers", names(a.C_S)},
           {"target_identity_fibers", names(a.U_T)},
           {"target_identity_cofibers", names(a.C_T)}};
    json config{{"selector", selector}, {"morphism", morphism}};
    return make_report("fibers", std::move(config), json::array({std::move(j)}), false, t0);
}

nlohmann::json bicharade_det_json(const std::string& field, int dims, DetCheckOptions opt,
                                  bool timing) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep = check_bicharade_det(field_from(field), dims, opt);
    json config{{"field", field},     {"dims", dims},
                {"exhaustive", opt.exhaustive}, {"samples", opt.samples},
                {"seed", opt.seed},   {"sign_slip", opt.sign_slip}};
    return make_report("bicharade-det", std::move(config),
                       json::array({rep.to_json()}), timing, t0);
}

nlohmann::json paper_example_json(const std::string& name) {
    auto t0 = std::chrono::steady_clock::now();
    json ex;
    if (name == "bbq-phi")
        ex = example_bbq_phi();
    else if (name == "pset-counterexample")
        ex = example_pset_counterexample();
    else if (name == "rho-linearized")
        ex = example_rho_linearized();
    else if (name == "arr-bioperadic")
        ex = with_name(check_bioperadic(arrow_cat(path_cat(3))), "arr-bioperadic");
    else if (name == "cycl-trace")
        ex = example_cycl_trace();
    else if (name == "aug-trace")
        ex = example_aug_trace();
    else if (name == "det-chi")
        ex = example_det_chi();
    else
        throw std::invalid_argument("unknown example " + name);
    return make_report("paper-example", json{{"name", name}}, json::array({std::move(ex)}),
                       false, t0);
}

nlohmann::json law_check_json(const std::string& selector, const std::string& structure,
                              const nlohmann::json& data, bool timing,
                              const std::string& only_h, const std::string& only_g) {
    auto t0 = std::chrono::steady_clock::now();
    DiopPair q = pair_from_selector(selector);
    LawOptions opt;
    if (!only_h.empty()) opt.only_h = mor_by_name(*q.base, only_h);
    if (!only_g.empty()) opt.only_g = mor_by_name(*q.base, only_g);
    Report rep = run_law_check(q, structure, data, opt);
    json config{{"instance", selector}, {"structure", structure}, {"data", data}};
    if (!only_h.empty()) config["only_h"] = only_h;
    if (!only_g.empty()) config["only_g"] = only_g;
    return make_report("law-check", std::move(config), json::array({rep.to_json()}), timing,
                       t0);
}

nlohmann::json replay_json(const nlohmann::json& report) {
    auto t0 = std::chrono::steady_clock::now();
    std::string of = report.value("command", "");
    const json& config = report.at("config");
    const json* failing = nullptr;
    for (const auto& c : report.at("checks"))
        if (c.value("status", "") == "fail") {
            failing = &c;
            break;
        }
    json detail;
    bool reproduced = false;
    if (!failing) {
        detail = {{"note", "report contains no failing check"}};
    } else if (of == "law-check" && failing->contains("witness") &&
               failing->at("witness").contains("replay")) {
        const json& r = failing->at("witness").at("replay");
        detail = law_check_json(config.at("instance").get<std::string>(),
                                r.at("structure").get<std::string>(), config.at("data"),
                                false, r.value("only_h", ""), r.value("only_g", ""));
        reproduced = !report_ok(detail);
    } else if (of == "bicharade-det" && failing->contains("witness") &&
               failing->at("witness").contains("g")) {
        Field f = field_from(config.at("field").get<std::string>());
        const json& w = failing->at("witness");
        Report rep = check_bicharade_pair(f, vecmor_from_string(f, w.at("h")),
                                          vecmor_from_string(f, w.at("g")),
                                          config.value("sign_slip", false));
        detail = rep.to_json();
        reproduced = !rep.ok;
    } else if (of == "bicharade-det") {
        DetCheckOptions o;
        o.exhaustive = config.value("exhaustive", false);
        o.samples = config.value("samples", 200);
        o.seed = config.value("seed", 1ul);
        o.sign_slip = config.value("sign_slip", false);
        detail = bicharade_det_json(config.at("field").get<std::string>(),
                                    config.at("dims").get<int>(), o, false);
        reproduced = !report_ok(detail) &&
                     detail.at("checks").at(0).value("reason", "") ==
                         failing->value("reason", "");
    } else if (of == "paper-example") {
        detail = paper_example_json(config.at("name").get<std::string>());
        reproduced = !report_ok(detail);
    } else {
        // generic path: rerun the single failing check of the original config
        SuiteConfig cfg;
        cfg.selector = config.at("selector").get<std::string>();
        if (failing) cfg.checks = {failing->value("check", "")};
        cfg.timing = false;
        detail = run_suite(cfg);
        reproduced = failing && !report_ok(detail) &&
                     detail.at("checks").at(0).value("reason", "") ==
                         failing->value("reason", "");
    }
    json j{{"schema", kReportSchema},
           {"command", "replay"},
           {"config", {{"of", of}}},
           {"status", reproduced ? "pass" : "fail"},
           {"reproduced", reproduced},
           {"detail", std::move(detail)}};
    (void)t0;
    return j;
}

bool report_ok(const nlohmann::json& report) { return report.value("status", "") == "pass"; }

void write_report_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << bytes;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

}  // namespace biop
