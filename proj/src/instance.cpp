#include "thetarig/instance.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "thetarig/errors.hpp"

namespace thetarig {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw input_error("instance: " + where + ": " + what);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

const json& need(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) fail(where, "missing key '" + key + "'");
    return j.at(key);
}

int need_int(const json& j, const std::string& where, const std::string& key) {
    const json& v = need(j, where, key);
    if (!v.is_number_integer()) fail(where, "'" + key + "' must be an integer");
    return v.get<int>();
}

std::string need_str(const json& j, const std::string& where, const std::string& key) {
    const json& v = need(j, where, key);
    if (!v.is_string()) fail(where, "'" + key + "' must be a string");
    return v.get<std::string>();
}

DimClass parse_dim_class(const std::string& s, const std::string& where) {
    if (s == "4k") return DimClass::dim_4k;
    if (s == "4k+2") return DimClass::dim_4k_plus_2;
    if (s == "4k-1") return DimClass::dim_4k_minus_1;
    if (s == "4k+1") return DimClass::dim_4k_plus_1;
    fail(where, "dimension_class must be one of 4k, 4k+2, 4k-1, 4k+1");
}

Lambda parse_lambda(const json& v, const std::string& where) {
    if (v.is_string() && v.get<std::string>() == "all") return Lambda::all;
    if (v.is_number_integer()) {
        int n = v.get<int>();
        if (n == 1) return Lambda::q1;
        if (n == 2) return Lambda::q2;
        if (n == 3) return Lambda::q3;
    }
    fail(where, "lambda must be 1, 2, 3 or \"all\"");
}

struct VarBuilder {
    VarTable table;
    int get(const std::string& name, int default_degree, const std::string& where) {
        if (name.empty()) fail(where, "empty variable name");
        if (auto id = table.find(name)) return *id;
        return table.add(name, default_degree);
    }
};

} // namespace

Monomial parse_monomial(const std::string& text, const VarTable& table) {
    Monomial m;
    if (text.empty() || text == "1") return m;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        std::string name = tok;
        long power = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            name = tok.substr(0, caret);
            power = std::stol(tok.substr(caret + 1));
            if (power < 1) throw input_error("monomial power must be >= 1 in '" + text + "'");
        }
        int id = table.require(name);
        for (long p = 0; p < power; ++p) m.vars.push_back(id);
    }
    std::sort(m.vars.begin(), m.vars.end());
    return m;
}

namespace {

IntegrationFunctional parse_functional(const json& j, const VarTable& table,
                                       const std::string& where) {
    check_keys(j, where, {"top_degree", "pairings"});
    IntegrationFunctional f;
    f.top_degree = need_int(j, where, "top_degree");
    if (j.contains("pairings")) {
        const json& p = j.at("pairings");
        if (!p.is_object()) fail(where, "pairings must be an object");
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (!it.value().is_string())
                fail(where, "pairing values are decimal strings, got " + it.value().dump());
            Monomial m = parse_monomial(it.key(), table);
            f.pairings[m] = parse_complex(it.value().get<std::string>());
        }
    }
    return f;
}

json serialize_functional(const IntegrationFunctional& f, const VarTable& table,
                          unsigned digits) {
    json p = json::object();
    for (const auto& [m, c] : f.pairings) p[to_string(m, table)] = to_string(c, digits);
    return json{{"top_degree", f.top_degree}, {"pairings", p}};
}

} // namespace

InstanceFile parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("instance: JSON parse error: ") + e.what());
    }
    check_keys(j, "top level",
               {"case", "precision", "variables", "components", "E", "manifold"});

    InstanceFile inst;

    {
        const json& c = need(j, "top level", "case");
        check_keys(c, "case", {"dimension_class", "lambda", "k"});
        inst.sel.dim_class = parse_dim_class(need_str(c, "case", "dimension_class"), "case");
        inst.sel.lambda = parse_lambda(need(c, "case", "lambda"), "case");
        inst.sel.k = need_int(c, "case", "k");
    }
    if (j.contains("precision")) {
        const json& p = j.at("precision");
        check_keys(p, "precision", {"digits", "q_order"});
        if (p.contains("digits")) inst.digits = static_cast<unsigned>(need_int(p, "precision", "digits"));
        if (p.contains("q_order")) inst.q_order_eighths = need_int(p, "precision", "q_order");
        if (inst.digits == 0) fail("precision", "digits must be positive");
        if (inst.q_order_eighths < 0) fail("precision", "q_order must be >= 0");
    }

    VarBuilder vb;
    if (j.contains("variables")) {
        const json& vs = j.at("variables");
        if (!vs.is_array()) fail("variables", "expected an array");
        for (const auto& v : vs) {
            check_keys(v, "variables[]", {"name", "degree"});
            vb.table.add(need_str(v, "variables[]", "name"), need_int(v, "variables[]", "degree"));
        }
    }

    const bool toeplitz = is_toeplitz_class(inst.sel.dim_class);

    // First pass registers every root variable (degree 2) so pairings can
    // reference them in any order.
    const json& comps = need(j, "top level", "components");
    if (!comps.is_array() || comps.empty()) fail("components", "expected a non-empty array");
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const std::string where = "components[" + std::to_string(ci) + "]";
        const json& c = comps[ci];
        check_keys(c, where,
                   {"s", "tangent_names", "normal", "V", "sigma", "u_name", "cap", "functional"});
        if (c.contains("tangent_names"))
            for (const auto& n : c.at("tangent_names"))
                vb.get(n.get<std::string>(), 2, where);
        for (const char* sec : {"normal", "V"}) {
            if (!c.contains(sec)) continue;
            for (const auto& s : c.at(sec))
                if (s.contains("root_names"))
                    for (const auto& n : s.at("root_names")) vb.get(n.get<std::string>(), 2, where);
        }
        if (c.contains("u_name")) vb.get(c.at("u_name").get<std::string>(), 2, where);
    }
    if (j.contains("manifold")) {
        const json& m = j.at("manifold");
        check_keys(m, "manifold",
                   {"dim", "tangent_pair_names", "line_root_name", "V", "cap", "functional"});
        if (m.contains("tangent_pair_names"))
            for (const auto& n : m.at("tangent_pair_names"))
                vb.get(n.get<std::string>(), 2, "manifold");
        vb.get(need_str(m, "manifold", "line_root_name"), 2, "manifold");
        if (m.contains("V"))
            for (const auto& s : m.at("V"))
                vb.get(need_str(s, "manifold.V[]", "root_name"), 2, "manifold");
    }
    if (j.contains("E")) {
        const json& e = j.at("E");
        check_keys(e, "E", {"N", "c3_is_zero", "trace_components"});
        if (e.contains("trace_components"))
            for (const auto& tc : e.at("trace_components")) {
                check_keys(tc, "E.trace_components[]", {"w", "a", "w_coeff", "a_coeff"});
                // names must already be declared (their degrees matter)
                (void)tc;
            }
    }

    auto table = std::make_shared<VarTable>(std::move(vb.table));
    inst.vars = table;

    inst.data.sel = inst.sel;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const std::string where = "components[" + std::to_string(ci) + "]";
        const json& c = comps[ci];
        FixedComponent fc;
        fc.vars = table;
        fc.s = need_int(c, where, "s");
        fc.sigma = need_int(c, where, "sigma");

        int default_cap = 2 * fc.s + (toeplitz ? 1 : 0);
        if (c.contains("functional"))
            default_cap = std::max(default_cap, c.at("functional").value("top_degree", 0));
        fc.cap = c.contains("cap") ? need_int(c, where, "cap") : default_cap;

        if (fc.s > 0) {
            const json& tn = need(c, where, "tangent_names");
            if (!tn.is_array() || static_cast<int>(tn.size()) != fc.s)
                fail(where, "tangent_names must list s names");
            for (const auto& n : tn)
                fc.tangent_roots.push_back(
                    Jet::variable(table, table->require(n.get<std::string>()), fc.cap));
        }

        auto parse_summands = [&](const char* sec, const char* rot_key, const char* mult_key,
                                  std::vector<WeightedSummand>& out) {
            if (!c.contains(sec)) return;
            const json& arr = c.at(sec);
            if (!arr.is_array()) fail(where, std::string(sec) + " must be an array");
            for (const auto& s : arr) {
                check_keys(s, where + "." + sec, {rot_key, mult_key, "root_names"});
                int rot = need_int(s, where, rot_key);
                int mult = need_int(s, where, mult_key);
                if (mult < 1) fail(where, std::string(mult_key) + " must be >= 1");
                std::vector<std::string> names;
                if (s.contains("root_names"))
                    for (const auto& n : s.at("root_names")) names.push_back(n.get<std::string>());
                if (names.empty()) {
                    out.push_back({Jet::scalar(Complex(0)), rot, static_cast<unsigned>(mult)});
                } else if (static_cast<int>(names.size()) == mult) {
                    for (const auto& nm : names)
                        out.push_back(
                            {Jet::variable(table, table->require(nm), fc.cap), rot, 1});
                } else {
                    fail(where, "root_names must be empty or list one name per line");
                }
            }
        };
        parse_summands("normal", "m", "mult", fc.normal);
        parse_summands("V", "n", "pairs", fc.v_parts);

        fc.u = c.contains("u_name")
                   ? Jet::variable(table, table->require(c.at("u_name").get<std::string>()),
                                   fc.cap)
                   : Jet::scalar(Complex(0));
        fc.functional = parse_functional(need(c, where, "functional"), *table, where);
        inst.data.components.push_back(std::move(fc));
    }

    if (j.contains("E")) {
        const json& e = j.at("E");
        OddEData ed;
        ed.rank_n = need_int(e, "E", "N");
        ed.c3_is_zero = e.value("c3_is_zero", false);
        int cap = inst.data.components.front().cap;
        if (e.contains("trace_components")) {
            for (const auto& tc : e.at("trace_components")) {
                TraceTerm tt;
                Jet w = Jet::zero(table, cap);
                w.set_term(parse_monomial(need_str(tc, "E.trace_components[]", "w"), *table),
                           tc.contains("w_coeff")
                               ? parse_complex(tc.at("w_coeff").get<std::string>())
                               : Complex(1));
                Jet a = Jet::zero(table, cap);
                a.set_term(parse_monomial(need_str(tc, "E.trace_components[]", "a"), *table),
                           tc.contains("a_coeff")
                               ? parse_complex(tc.at("a_coeff").get<std::string>())
                               : Complex(1));
                tt.w = std::move(w);
                tt.a = std::move(a);
                ed.trace.push_back(std::move(tt));
            }
        }
        inst.data.e_data = std::move(ed);
    }

    if (j.contains("manifold")) {
        const json& m = j.at("manifold");
        ManifoldData md;
        md.vars = table;
        md.dim = need_int(m, "manifold", "dim");
        md.cap = m.contains("cap") ? need_int(m, "manifold", "cap") : md.dim;
        if (m.contains("tangent_pair_names"))
            for (const auto& n : m.at("tangent_pair_names"))
                md.tangent_pair_roots.push_back(
                    Jet::variable(table, table->require(n.get<std::string>()), md.cap));
        md.line_root =
            Jet::variable(table, table->require(need_str(m, "manifold", "line_root_name")),
                          md.cap);
        if (m.contains("V"))
            for (const auto& s : m.at("V")) {
                check_keys(s, "manifold.V[]", {"root_name", "pairs"});
                int pairs = need_int(s, "manifold.V[]", "pairs");
                if (pairs < 1) fail("manifold.V[]", "pairs must be >= 1");
                md.v_pairs.push_back(
                    {Jet::variable(table, table->require(need_str(s, "manifold.V[]", "root_name")),
                                   md.cap),
                     0, static_cast<unsigned>(pairs)});
            }
        md.functional = parse_functional(need(m, "manifold", "functional"), *table, "manifold");
        md.e_data = inst.data.e_data;
        inst.manifold = std::move(md);
    }

    inst.data.validate();
    return inst;
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

std::string serialize_instance(const InstanceFile& inst) {
    const VarTable& table = *inst.vars;
    json j;
    const char* dc = to_string(inst.sel.dim_class);
    json lambda;
    if (inst.sel.lambda == Lambda::all)
        lambda = "all";
    else
        lambda = static_cast<int>(inst.sel.lambda);
    j["case"] = json{{"dimension_class", dc}, {"lambda", lambda}, {"k", inst.sel.k}};
    j["precision"] = json{{"digits", inst.digits}, {"q_order", inst.q_order_eighths}};

    json vars = json::array();
    for (int id = 0; id < table.size(); ++id)
        vars.push_back(json{{"name", table.name(id)}, {"degree", table.degree(id)}});
    j["variables"] = vars;

    auto root_names_of = [&](const Jet& root) {
        std::vector<std::string> names;
        for (const auto& [m, c] : root.terms())
            if (m.vars.size() == 1) names.push_back(table.name(m.vars[0]));
        return names;
    };

    json comps = json::array();
    for (const auto& c : inst.data.components) {
        json jc;
        jc["s"] = c.s;
        if (!c.tangent_roots.empty()) {
            json tn = json::array();
            for (const auto& y : c.tangent_roots)
                for (const auto& n : root_names_of(y)) tn.push_back(n);
            jc["tangent_names"] = tn;
        }
        auto dump_summands = [&](const std::vector<WeightedSummand>& v, const char* rot_key,
                                 const char* mult_key) {
            json arr = json::array();
            for (const auto& s : v) {
                json e;
                e[rot_key] = s.rotation;
                e[mult_key] = static_cast<int>(s.multiplicity);
                json rn = json::array();
                for (const auto& n : root_names_of(s.chern_root)) rn.push_back(n);
                e["root_names"] = rn;
                arr.push_back(e);
            }
            return arr;
        };
        jc["normal"] = dump_summands(c.normal, "m", "mult");
        jc["V"] = dump_summands(c.v_parts, "n", "pairs");
        jc["sigma"] = c.sigma;
        auto u_names = root_names_of(c.u);
        if (!u_names.empty()) jc["u_name"] = u_names.front();
        jc["cap"] = c.cap;
        jc["functional"] = serialize_functional(c.functional, table, inst.digits);
        comps.push_back(jc);
    }
    j["components"] = comps;

    if (inst.data.e_data) {
        const auto& e = *inst.data.e_data;
        json arr = json::array();
        for (const auto& tt : e.trace) {
            json t;
            const auto& wterms = tt.w.terms();
            const auto& aterms = tt.a.terms();
            if (wterms.size() == 1) {
                t["w"] = to_string(wterms.begin()->first, table);
                t["w_coeff"] = to_string(wterms.begin()->second, inst.digits);
            }
            if (aterms.size() == 1) {
                t["a"] = to_string(aterms.begin()->first, table);
                t["a_coeff"] = to_string(aterms.begin()->second, inst.digits);
            }
            arr.push_back(t);
        }
        j["E"] = json{{"N", e.rank_n}, {"c3_is_zero", e.c3_is_zero}, {"trace_components", arr}};
    }

    if (inst.manifold) {
        const auto& m = *inst.manifold;
        json jm;
        jm["dim"] = m.dim;
        json tn = json::array();
        for (const auto& y : m.tangent_pair_roots)
            for (const auto& n : root_names_of(y)) tn.push_back(n);
        jm["tangent_pair_names"] = tn;
        jm["line_root_name"] = root_names_of(m.line_root).front();
        json vv = json::array();
        for (const auto& p : m.v_pairs)
            vv.push_back(json{{"root_name", root_names_of(p.chern_root).front()},
                              {"pairs", static_cast<int>(p.multiplicity)}});
        jm["V"] = vv;
        jm["cap"] = m.cap;
        jm["functional"] = serialize_functional(m.functional, table, inst.digits);
        j["manifold"] = jm;
    }

    return j.dump(2) + "\n";
}

} // namespace thetarig
