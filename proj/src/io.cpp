#include "ybt/io.hpp"

#include <fstream>

namespace ybt {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

ScalarExpr expr_from_json(const Json& j) {
    if (j.is_string()) return ScalarExpr::parse(j.get<std::string>());
    if (j.is_number_integer()) return ScalarExpr(j.get<long>());
    throw ParseError("expected an expression string, got " + j.dump());
}

namespace {

int int_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing integer field '") + key + "'");
    return j[key].get<int>();
}

std::vector<std::vector<ScalarExpr>> table_from_json(const Json& j, int N, const char* what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(N))
        throw ParseError(std::string(what) + " must be an N x N array");
    std::vector<std::vector<ScalarExpr>> t;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(N))
            throw ParseError(std::string(what) + " must be an N x N array");
        t.emplace_back();
        for (const auto& e : row) t.back().push_back(expr_from_json(e));
    }
    return t;
}

std::vector<ScalarExpr> column_from_json(const Json& j, int N, const char* what) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(N))
        throw ParseError(std::string(what) + " must list N expressions");
    std::vector<ScalarExpr> v;
    for (const auto& e : j) v.push_back(expr_from_json(e));
    return v;
}

// [[i, j, expr]...] with 1 <= i < j <= N.
template <class Fn>
void for_each_pair_entry(const Json& list, int N, const char* what, Fn fn) {
    if (!list.is_array()) throw ParseError(std::string(what) + " must be a list of [i, j, expr]");
    for (const auto& e : list) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError(std::string(what) + " entries must be [i, j, expr]");
        int i = e[0].get<int>(), j = e[1].get<int>();
        if (i < 1 || j > N || i >= j) throw ParseError(std::string(what) + " entries need 1 <= i < j <= N");
        fn(i, j, expr_from_json(e[2]));
    }
}

}  // namespace

RootTable roots_from_json(const Json& j, int N) {
    RootTable s(N);
    if (j.contains("s")) for_each_pair_entry(j["s"], N, "s", [&](int a, int b, ScalarExpr v) { s.set(a, b, v); });
    if (j.contains("phi")) {
        for_each_pair_entry(j["phi"], N, "phi", [&](int a, int b, const ScalarExpr& v) {
            if (j.contains("s")) {
                if (!(s.phi(a, b) - v).is_zero())
                    throw ParseError("phi_" + std::to_string(a) + "_" + std::to_string(b) + " disagrees with s^2");
                return;
            }
            auto root = exact_sqrt(v);
            if (!root)
                throw ParseError("phi_" + std::to_string(a) + "_" + std::to_string(b) +
                                 " has no exact square root; give the roots under \"s\"");
            s.set(a, b, *root);
        });
    }
    return s;
}

Json roots_to_json(const RootTable& s) {
    Json out = Json::array();
    for (int i = 1; i <= s.N(); ++i)
        for (int j = i + 1; j <= s.N(); ++j)
            if (!s.s(i, j).is_one()) out.push_back(Json::array({i, j, s.s(i, j).to_string()}));
    return out;
}

TwistData twist_from_json(const Json& j) {
    TwistData tw = TwistData::identity(int_field(j, "N"));
    tw.s = roots_from_json(j, tw.N);
    if (j.contains("colour")) {
        if (!j["colour"].is_string()) throw ParseError("colour must be a symbol name");
        tw.colour = Symbol::named(j["colour"].get<std::string>());
    }
    if (j.contains("v1")) tw.v1 = column_from_json(j["v1"], tw.N, "v1");
    if (j.contains("v2")) tw.v2 = column_from_json(j["v2"], tw.N, "v2");
    tw.validate();
    return tw;
}

Json twist_to_json(const TwistData& tw) {
    Json v1 = Json::array(), v2 = Json::array();
    for (const auto& e : tw.v1) v1.push_back(e.to_string());
    for (const auto& e : tw.v2) v2.push_back(e.to_string());
    return Json{{"N", tw.N}, {"s", roots_to_json(tw.s)}, {"v1", v1}, {"v2", v2}, {"colour", tw.colour.name()}};
}

ParticleConservingR r_from_json(const Json& j) {
    const int N = int_field(j, "N");
    if (N < 1) throw ParseError("N must be positive");
    if (j.contains("f") || j.contains("g")) {
        if (!j.contains("f") || !j.contains("g")) throw ParseError("explicit R needs both f and g tables");
        SpectralKind kind = spectral_kind_from_string(j.value("spectral", std::string("none")));
        return ParticleConservingR::from_tables(kind, table_from_json(j["f"], N, "f"), table_from_json(j["g"], N, "g"));
    }
    if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("R spec needs a kind or explicit f/g tables");
    const std::string kind = j["kind"].get<std::string>();
    const Json params = j.value("params", Json::object());
    if (!params.is_object()) throw ParseError("params must be an object");
    auto param = [&](const char* key, Symbol fallback) {
        return params.contains(key) ? expr_from_json(params[key]) : ScalarExpr(fallback);
    };
    if (kind == "identity") return ParticleConservingR::identity(N);
    if (kind == "permutation") return ParticleConservingR::permutation(N);
    if (kind == "trig") return ParticleConservingR::trig(N, param("q", params::q()));
    if (kind == "multiparam") return ParticleConservingR::multiparam(N, roots_from_json(params, N), param("q", params::q()));
    if (kind == "rational") return ParticleConservingR::rational(N, param("h", params::h()));
    if (kind == "coloured-rational") {
        Json tw = params.value("twist", Json::object());
        tw["N"] = N;
        return ParticleConservingR::coloured_rational(N, twist_from_json(tw), param("h", params::h()));
    }
    throw ParseError("unknown R kind '" + kind + "'");
}

Json r_to_json(const ParticleConservingR& R) {
    Json f = Json::array(), g = Json::array();
    for (int i = 1; i <= R.N(); ++i) {
        Json fr = Json::array(), gr = Json::array();
        for (int j = 1; j <= R.N(); ++j) {
            fr.push_back(R.source_f(i, j).to_string());
            gr.push_back(R.source_g(i, j).to_string());
        }
        f.push_back(fr);
        g.push_back(gr);
    }
    return Json{{"N", R.N()}, {"spectral", to_string(R.kind())}, {"f", f}, {"g", g}};
}

}  // namespace ybt
