#include "ihf/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ihf {

namespace {

ParseError semantic(const std::string& where, const std::string& what) { return ParseError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw semantic(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string str_field(const Json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_string()) throw semantic(where, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Json half_to_json(std::int64_t twice) {
    if (twice % 2 == 0) return Json(twice / 2);
    return Json(static_cast<double>(twice) / 2.0);
}

std::int64_t half_from_json(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return 2 * v.get<std::int64_t>();
    if (v.is_number_float()) {
        double x = v.get<double>() * 2.0;
        if (std::abs(x - std::round(x)) > 1e-9) throw semantic(where, "grading must be an integer or half-integer");
        return static_cast<std::int64_t>(std::llround(x));
    }
    throw semantic(where, "grading must be a number");
}

Json grading_to_json(const Grading& g) {
    Json a = Json::array();
    for (auto t : g.twice) a.push_back(half_to_json(t));
    return a;
}

Grading grading_from_json(const Json& j, Mode mode, const std::string& where) {
    if (!j.is_array()) throw semantic(where, "grading must be an array");
    Grading g;
    for (const auto& v : j) g.twice.push_back(half_from_json(v, where));
    if (static_cast<int>(g.size()) != grading_dim(mode))
        throw semantic(where, "grading has " + std::to_string(g.size()) + " entries, ring " + mode.name() + " needs " +
                                  std::to_string(grading_dim(mode)));
    return g;
}

Json entries_to_json(const Matrix& m, const FreeComplex& S, const FreeComplex& T) {
    Json a = Json::array();
    for (int x = 0; x < m.cols(); ++x)
        for (const auto& [y, c] : m.column(x))
            a.push_back(Json{{"from", S.generator(x).name}, {"to", T.generator(y).name}, {"coeff", to_string(c)}});
    return a;
}

Matrix entries_from_json(const Json& j, const FreeComplex& S, const FreeComplex& T, const std::string& where) {
    if (!j.is_array()) throw semantic(where, "entries must be an array");
    Matrix m(S.mode(), T.size(), S.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string w = where + "[" + std::to_string(i) + "]";
        auto from = str_field(j[i], "from", w), to = str_field(j[i], "to", w), coeff = str_field(j[i], "coeff", w);
        auto x = S.index_of(from);
        auto y = T.index_of(to);
        if (!x) throw semantic(w, "unknown source generator '" + from + "'");
        if (!y) throw semantic(w, "unknown target generator '" + to + "'");
        try {
            m.add(*y, *x, parse_coefficient(coeff, S.mode()));
        } catch (const RingError& e) {
            throw semantic(w, e.what());
        }
    }
    return m;
}

Mode mode_from_json(const Json& j, const std::string& where) {
    try {
        return Mode::parse(str_field(j, "ring", where));
    } catch (const RingError& e) {
        throw semantic(where, e.what());
    }
}

void expect_kind(const Json& j, const char* kind, const std::string& where) {
    if (j.contains("kind") && j.at("kind") != kind)
        throw semantic(where, std::string("expected a '") + kind + "' document");
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        int line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError(msg, line, col);
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json complex_to_json(const FreeComplex& c) {
    Json gens = Json::array();
    for (const auto& g : c.generators()) gens.push_back(Json{{"name", g.name}, {"grading", grading_to_json(g.grading)}});
    return Json{{"kind", "complex"},
                {"ring", c.mode().name()},
                {"generators", gens},
                {"differential", entries_to_json(c.differential(), c, c)}};
}

ComplexPtr complex_from_json(const Json& j) {
    std::string where = "complex";
    expect_kind(j, "complex", where);
    Mode mode = mode_from_json(j, where);
    const auto& gj = field(j, "generators", where);
    if (!gj.is_array()) throw semantic(where, "generators must be an array");
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < gj.size(); ++i) {
        std::string w = where + ".generators[" + std::to_string(i) + "]";
        gens.push_back({str_field(gj[i], "name", w), grading_from_json(field(gj[i], "grading", w), mode, w)});
    }
    try {
        auto shell = std::make_shared<const FreeComplex>(mode, gens, Matrix(mode, static_cast<int>(gens.size()), static_cast<int>(gens.size())));
        Matrix d = entries_from_json(field(j, "differential", where), *shell, *shell, where + ".differential");
        return std::make_shared<const FreeComplex>(mode, std::move(gens), std::move(d));
    } catch (const ComplexError& e) {
        throw semantic(where, e.what());
    }
}

Json map_to_json(const ChainMap& f) {
    return Json{{"degree", grading_to_json(f.degree())},
                {"equivariance", f.skew() ? "skew" : "plain"},
                {"entries", entries_to_json(f.matrix(), *f.source(), *f.target())}};
}

ChainMap map_from_json(const Json& j, const ComplexPtr& source, const ComplexPtr& target) {
    std::string where = "map";
    Mode mode = source->mode();
    Grading deg = j.contains("degree") ? grading_from_json(j.at("degree"), mode, where + ".degree") : Grading::zero(mode);
    auto eqs = j.contains("equivariance") ? str_field(j, "equivariance", where) : std::string("plain");
    if (eqs != "plain" && eqs != "skew") throw semantic(where, "equivariance must be 'plain' or 'skew'");
    auto m = entries_from_json(field(j, "entries", where), *source, *target, where + ".entries");
    return ChainMap(source, target, std::move(m), deg, eqs == "skew" ? Equivariance::skew : Equivariance::plain);
}

Json iota_complex_to_json(const IotaComplex& c) {
    return Json{{"kind", "iota_complex"}, {"complex", complex_to_json(*c.base)}, {"iota", map_to_json(c.iota)}};
}

IotaComplex iota_complex_from_json(const Json& j) {
    expect_kind(j, "iota_complex", "iota_complex");
    auto c = complex_from_json(field(j, "complex", "iota_complex"));
    return IotaComplex{c, map_from_json(field(j, "iota", "iota_complex"), c, c)};
}

Json knot_to_json(const KnotComplex& k) {
    Json alex = Json::object();
    const auto& C = *k.base;
    if (C.mode() == kModeUV)
        for (int i = 0; i < C.size(); ++i) alex[C.generator(i).name] = half_to_json(alexander_twice(C.mode(), C.grading(i)));
    Json out{{"kind", "knot"}, {"complex", complex_to_json(C)}};
    if (C.mode() == kModeUV) out["alexander"] = alex;
    out["iota_k"] = map_to_json(k.iota_k);
    if (k.flip) out["flip_maps"] = Json{{"flip", map_to_json(*k.flip)}};
    return out;
}

KnotComplex knot_from_json(const Json& j) {
    std::string where = "knot";
    expect_kind(j, "knot", where);
    auto c = complex_from_json(field(j, "complex", where));
    if (!c->mode().two_variable()) throw semantic(where, "knot complexes must be over a two-variable ring");
    if (j.contains("alexander")) {
        const auto& a = j.at("alexander");
        if (!a.is_object() || c->mode() != kModeUV) throw semantic(where, "alexander must map generator names to gradings");
        for (const auto& [name, v] : a.items()) {
            auto i = c->index_of(name);
            if (!i) throw semantic(where + ".alexander", "unknown generator '" + name + "'");
            auto want = alexander_twice(c->mode(), c->grading(*i));
            if (half_from_json(v, where + ".alexander") != want)
                throw semantic(where + ".alexander", "Alexander grading of '" + name + "' disagrees with (gr_U - gr_V)/2 = " +
                                                         format_half(want));
        }
    }
    KnotComplex k{c, map_from_json(field(j, "iota_k", where), c, c), std::nullopt};
    if (j.contains("flip_maps")) {
        const auto& fm = j.at("flip_maps");
        try {
            auto bt = extract_flagged(*c, FlagKind::Btilde, 0);
            auto b = extract_flagged(*c, FlagKind::B, 0);
            k.flip = map_from_json(field(fm, "flip", where + ".flip_maps"), bt.complex, b.complex);
        } catch (const ComplexError& e) {
            throw semantic(where + ".flip_maps", e.what());
        }
    }
    return k;
}

Json hyperbox_to_json(const Hyperbox& h) {
    Json cells = Json::array();
    for (int i = 0; i < h.num_points(); ++i) {
        Json c = complex_to_json(*h.cell(i));
        c.erase("kind");
        c.erase("ring");
        cells.push_back(Json{{"at", h.point(i)}, {"complex", c}});
    }
    Json arrows = Json::array();
    for (const auto& [key, m] : h.arrows())
        arrows.push_back(Json{{"from", h.point(key.first)},
                              {"to", h.point(key.second)},
                              {"entries", entries_to_json(m, *h.cell(key.first), *h.cell(key.second))}});
    Json out{{"kind", "hyperbox"}, {"ring", h.mode().name()}, {"size", h.size()}, {"cells", cells}, {"arrows", arrows}};
    if (!h.axis_order.empty()) out["axis_order"] = h.axis_order;
    return out;
}

Hyperbox hyperbox_from_json(const Json& j) {
    std::string where = "hyperbox";
    expect_kind(j, "hyperbox", where);
    Mode mode = mode_from_json(j, where);
    const auto& sj = field(j, "size", where);
    if (!sj.is_array()) throw semantic(where, "size must be an array");
    std::vector<int> size;
    for (const auto& v : sj) {
        if (!v.is_number_integer() || v.get<int>() < 0) throw semantic(where, "size entries must be non-negative integers");
        size.push_back(v.get<int>());
    }
    Hyperbox h(mode, size);
    auto point_of = [&](const Json& p, const std::string& w) {
        if (!p.is_array()) throw semantic(w, "point must be an array");
        Point e;
        for (const auto& v : p) {
            if (!v.is_number_integer()) throw semantic(w, "point coordinates must be integers");
            e.push_back(v.get<int>());
        }
        if (!h.contains(e)) throw semantic(w, "point " + point_string(e) + " outside the hyperbox");
        return e;
    };
    const auto& cj = field(j, "cells", where);
    for (std::size_t i = 0; i < cj.size(); ++i) {
        std::string w = where + ".cells[" + std::to_string(i) + "]";
        Json c = field(cj[i], "complex", w);
        c["ring"] = mode.name();
        h.set_cell(point_of(field(cj[i], "at", w), w), complex_from_json(c));
    }
    if (!h.complete()) throw semantic(where, "every lattice point needs a cell");
    if (j.contains("arrows")) {
        const auto& aj = j.at("arrows");
        for (std::size_t i = 0; i < aj.size(); ++i) {
            std::string w = where + ".arrows[" + std::to_string(i) + "]";
            auto from = point_of(field(aj[i], "from", w), w), to = point_of(field(aj[i], "to", w), w);
            if (!arrow_allowed(from, to)) throw semantic(w, "no arrow allowed from " + point_string(from) + " to " + point_string(to));
            h.add_to_arrow(from, to, entries_from_json(field(aj[i], "entries", w), *h.cell(from), *h.cell(to), w + ".entries"));
        }
    }
    if (j.contains("axis_order")) h.axis_order = j.at("axis_order").get<std::vector<int>>();
    return h;
}

Json homology_to_json(const GradedHomology& h) {
    Json towers = Json::array();
    for (const auto& t : h.towers) towers.push_back(grading_to_json(t));
    Json torsion = Json::array();
    for (const auto& t : h.torsion) torsion.push_back(Json{{"grading", grading_to_json(t.anchor)}, {"order", t.order}});
    Json out{{"towers", towers}, {"torsion", torsion}};
    if (h.q_action) {
        Json q = Json::array();
        for (const auto& e : *h.q_action) q.push_back(Json{{"from", e.col}, {"to", e.row}, {"u_power", e.u_power}});
        out["q_action"] = q;
    }
    return out;
}

}  // namespace ihf
