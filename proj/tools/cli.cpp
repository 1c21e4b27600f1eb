#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "ihf/fixtures.hpp"
#include "ihf/homology.hpp"
#include "ihf/hypercube.hpp"
#include "ihf/involutive.hpp"
#include "ihf/io.hpp"
#include "ihf/knots.hpp"
#include "ihf/solver.hpp"
#include "ihf/surgery.hpp"

namespace ihf::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string verb;
    std::vector<std::string> inputs;
    std::optional<int> delta;
    std::optional<int> bound;
    std::optional<int> framing;
    std::string axis_order_text;
    std::vector<int> axis_order;
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    bool involutive = false;
};

// One report line per result, each naming the validator or computation behind it.
struct Report {
    std::vector<std::pair<std::string, std::string>> lines;
    Json data = Json::object();
    int status = kOk;

    void line(std::string text, std::string source) { lines.emplace_back(std::move(text), std::move(source)); }
    void fail(std::string text, std::string source) {
        status = kValidationFailure;
        line("FAILED: " + std::move(text), std::move(source));
    }
};

void need_inputs(const Options& o, std::size_t lo, std::size_t hi) {
    if (o.inputs.size() < lo || o.inputs.size() > hi)
        throw UsageError(o.verb + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                         " input file(s), got " + std::to_string(o.inputs.size()));
}

void parse_axis_order(Options& o) {
    if (o.axis_order_text.empty()) return;
    std::stringstream ss(o.axis_order_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            o.axis_order.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("--axis-order expects comma-separated integers, got '" + o.axis_order_text + "'");
        }
    }
}

void validate_options(const Options& o) {
    if (o.format != "text" && o.format != "structured") throw UsageError("--format must be 'text' or 'structured'");
    if (o.delta && *o.delta < 1) throw UsageError("--delta must be positive");
    if (o.bound && *o.bound < 1) throw UsageError("--bound must be positive");
    if (o.framing && *o.framing == 0) throw UsageError("--framing 0 is not supported");
    if (!o.axis_order.empty()) {
        auto sorted = o.axis_order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i)) throw UsageError("--axis-order must be a permutation of 0..d-1");
    }
    if (o.verb == "check" || o.verb == "homology" || o.verb == "cfi" || o.verb == "twist" || o.verb == "compress")
        need_inputs(o, 1, 1);
    if (o.verb == "surgery" || o.verb == "cobordism") {
        need_inputs(o, 1, 1);
        if (!o.framing) throw UsageError(o.verb + " needs --framing");
    }
    if (o.verb == "cobordism" && *o.framing % 2) throw UsageError("cobordism needs an even framing 2n");
    if (o.verb == "surgery" && o.involutive && *o.framing % 2)
        throw UsageError("the involutive cone needs an even framing (the Spin structure exists only for even framing)");
    if (o.verb == "s2xs2" && o.inputs.size() != 0 && o.inputs.size() != 2)
        throw UsageError("s2xs2 takes no inputs (built-in fixture) or the two half hyperboxes");
}

std::string kind_of(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) throw ParseError("input has no 'kind' field");
    return j.at("kind").get<std::string>();
}

std::string size_string(const std::vector<int>& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

std::string dims_string(const std::map<std::int64_t, int>& dims) {
    std::string out;
    for (auto it = dims.rbegin(); it != dims.rend(); ++it)
        out += (out.empty() ? "" : ", ") + format_half(it->first) + ": " + std::to_string(it->second);
    return out;
}

Json dims_json(const std::map<std::int64_t, int>& dims) {
    Json j = Json::array();
    for (auto it = dims.rbegin(); it != dims.rend(); ++it) {
        Json g = it->first % 2 ? Json(static_cast<double>(it->first) / 2.0) : Json(it->first / 2);
        j.push_back(Json{{"grading", g}, {"dim", it->second}});
    }
    return j;
}

void add_issues(Report& r, const std::vector<std::string>& issues, const std::string& source) {
    for (const auto& i : issues) r.line("  " + i, source);
}

// ---- check ------------------------------------------------------------------------

void check_complex(const Json& j, Report& r) {
    auto c = complex_from_json(j);
    auto rep = validate_complex(*c);
    r.data["value"] = complex_to_json(*c);
    r.data["d_squared_zero"] = rep.d_squared_zero;
    r.data["homogeneous"] = rep.homogeneous;
    if (rep.ok())
        r.line("valid complex over " + c->mode().name() + " with " + std::to_string(c->size()) + " generators; ∂² = 0, homogeneous",
               "validate_complex");
    else {
        r.fail("invalid complex", "validate_complex");
        add_issues(r, rep.issues, "validate_complex");
    }
}

void check_iota(const Json& j, Report& r) {
    auto c = iota_complex_from_json(j);
    r.data["value"] = iota_complex_to_json(c);
    auto plain = validate_complex(*c.base);
    auto rep = validate_iota_complex(c);
    r.data["towers"] = rep.towers;
    r.data["valid"] = rep.ok();
    if (rep.ok()) {
        r.line("valid ι-complex; one tower, ι a grading-preserving chain map, ι² ≃ id", "validate_iota_complex");
        if (rep.homotopy) r.line(rep.homotopy->is_zero() ? "ι² = id exactly" : "ι² ≃ id via solver-found homotopy", "homotopy_solve");
        return;
    }
    if (plain.ok()) r.line("valid plain complex; ∂² = 0, homogeneous", "validate_complex");
    r.fail("invalid ι-complex", "validate_iota_complex");
    add_issues(r, rep.issues, "validate_iota_complex");
}

void check_knot(const Json& j, Report& r, std::uint64_t seed) {
    auto k = knot_from_json(j);
    r.data["value"] = knot_to_json(k);
    auto rep = validate_iota_k(k);
    bool link = k.base->mode().components > 1;
    std::string name = link ? "ι_L" : "ι_K";
    std::string target = link ? "(id+Φ_ℓΨ_ℓ)∘⋯∘(id+Φ₁Ψ₁)" : "id+ΦΨ";
    r.data["valid"] = rep.ok();
    r.data["squared_exact"] = rep.squared_exact;
    if (!rep.ok()) {
        r.fail("invalid " + name + "-complex", "validate_iota_k");
        add_issues(r, rep.issues, "validate_iota_k");
        return;
    }
    r.line("valid " + name + "-complex; " + name + "² " + (rep.squared_exact ? "= " + target + " exactly" : "≃ " + target + " via solver-found homotopy"),
           "validate_iota_k");
    if (k.flip) {
        try {
            build_flip(k, seed);
            r.line("supplied flip map B̃_0 → B_0 is a homotopy equivalence", "find_homotopy_inverse");
        } catch (const SurgeryError& e) {
            r.fail(e.what(), "find_homotopy_inverse");
        }
    }
}

void check_box(const Json& j, Report& r) {
    auto h = hyperbox_from_json(j);
    r.data["value"] = hyperbox_to_json(h);
    auto rep = validate_hyperbox(h);
    r.data["relations_checked"] = rep.relations_checked;
    r.data["valid"] = rep.ok;
    if (rep.ok) {
        r.line("valid hyperbox of size " + size_string(h.size()) + "; " + std::to_string(rep.relations_checked) + " structure relations hold",
               "validate_hyperbox");
        return;
    }
    r.fail("hyperbox structure relation violated", "validate_hyperbox");
    for (const auto& f : rep.failures) r.line("  " + point_string(f.from) + " → " + point_string(f.to) + ": " + f.what, "validate_hyperbox");
}

void do_check(const Options& o, Report& r) {
    auto j = load_json_file(o.inputs[0]);
    auto kind = kind_of(j);
    r.data["kind"] = kind;
    if (kind == "complex")
        check_complex(j, r);
    else if (kind == "iota_complex")
        check_iota(j, r);
    else if (kind == "knot")
        check_knot(j, r, o.seed);
    else if (kind == "hyperbox")
        check_box(j, r);
    else
        throw ParseError("unknown kind '" + kind + "'");
}

// ---- homology, cfi, twist ---------------------------------------------------------------

void report_homology(const GradedHomology& h, const Options& o, Report& r, const std::string& what) {
    r.line(what + ": " + h.to_string(), "homology (graded Smith reduction)");
    r.data["homology"] = homology_to_json(h);
    if (o.delta) {
        auto dims = truncated_dimensions(h, *o.delta);
        r.line("dim H(C/U^" + std::to_string(*o.delta) + ") by grading: " + dims_string(dims), "truncated_dimensions");
        r.data["truncated"] = Json{{"delta", *o.delta}, {"dims", dims_json(dims)}};
    }
}

void do_homology(const Options& o, Report& r) {
    auto j = load_json_file(o.inputs[0]);
    auto kind = kind_of(j);
    if (kind == "complex") {
        auto c = complex_from_json(j);
        if (c->mode().two_variable()) throw ParseError("homology needs an F[U] or F[U,Q]/Q² complex; use a knot file for slices");
        report_homology(homology(c), o, r, "H_*");
    } else if (kind == "iota_complex") {
        report_homology(homology(iota_complex_from_json(j).base), o, r, "H_*");
    } else if (kind == "knot") {
        auto k = knot_from_json(j);
        if (k.base->mode().components > 1) throw ParseError("homology of link complexes is not supported");
        report_homology(homology(collapse_to_u(k).base), o, r, "H_*(A_0)");
    } else {
        throw ParseError("homology does not apply to kind '" + kind + "'");
    }
}

void do_cfi(const Options& o, Report& r) {
    auto c = iota_complex_from_json(load_json_file(o.inputs[0]));
    auto rep = validate_iota_complex(c);
    if (!rep.ok()) {
        r.fail("input is not a valid ι-complex", "validate_iota_complex");
        add_issues(r, rep.issues, "validate_iota_complex");
        return;
    }
    auto cfi = build_cfi(c);
    auto cr = validate_complex(*cfi);
    if (cr.ok())
        r.line("CFI = Cone(Q(id+ι)) over F[U,Q]/Q²; ∂² = 0", "validate_complex");
    else
        r.fail("CFI differential does not square to zero", "validate_complex");
    auto h = homology(cfi);
    report_homology(h, o, r, "H_*(CFI)");
    r.line("U-localized rank " + std::to_string(h.towers.size()) + (h.towers.size() == 2 ? " (one tower per Q-level)" : ""),
           "homology (graded Smith reduction)");
    r.data["complex"] = complex_to_json(*cfi);
}

void do_twist(const Options& o, Report& r) {
    auto c = iota_complex_from_json(load_json_file(o.inputs[0]));
    auto rep = validate_iota_complex(c);
    if (!rep.ok()) {
        r.fail("input is not a valid ι-complex", "validate_iota_complex");
        add_issues(r, rep.issues, "validate_iota_complex");
        return;
    }
    auto t = check_twist(c);
    r.data["chain_map"] = t.chain_map;
    r.data["squares_to_identity"] = t.squares_to_identity;
    r.data["homotopic_to_identity"] = t.homotopic_to_identity;
    r.data["phi_nonzero"] = t.phi_nonzero;
    std::string summary = t.homotopic_to_identity ? "Id+QΦ ≃ Id" : "Id+QΦ ≄ Id";
    summary += t.squares_to_identity ? "; (Id+QΦ)² = Id" : "; (Id+QΦ)² ≠ Id";
    if (t.chain_map && t.squares_to_identity)
        r.line(summary, "check_twist");
    else
        r.fail(summary, "check_twist");
    r.line(std::string("Id+QΦ ") + (t.chain_map ? "commutes" : "does not commute") + " with ∂_CFI", "validate_chain_map");
    r.line(std::string("Φ ") + (t.phi_nonzero ? "≠ 0" : "= 0") + " on the base complex", "phi");
    r.line(t.homotopic_to_identity ? "homotopy to Id found" : "no homotopy to Id exists", "homotopy_solve");
    r.data["map"] = map_to_json(twist_automorphism(c, build_cfi(c)));
}

// ---- compress, s2xs2 ---------------------------------------------------------------------

void do_compress(const Options& o, Report& r) {
    auto h = hyperbox_from_json(load_json_file(o.inputs[0]));
    if (!o.axis_order.empty() && static_cast<int>(o.axis_order.size()) != h.dim())
        throw UsageError("--axis-order has " + std::to_string(o.axis_order.size()) + " entries, hyperbox has dimension " +
                         std::to_string(h.dim()));
    auto in = validate_hyperbox(h);
    if (!in.ok) {
        r.fail("input hyperbox violates the structure relation", "validate_hyperbox");
        return;
    }
    auto out = compress(h, o.axis_order);
    auto rep = validate_hyperbox(out);
    std::string order;
    for (int a : out.axis_order) order += (order.empty() ? "" : ",") + std::to_string(a);
    if (rep.ok)
        r.line("compressed " + size_string(h.size()) + " → " + size_string(out.size()) + " along axis order [" + order + "]; " +
                   std::to_string(rep.relations_checked) + " cube relations hold",
               "validate_hyperbox");
    else
        r.fail("compressed hyperbox violates the structure relation", "validate_hyperbox");
    r.data["hyperbox"] = hyperbox_to_json(out);
}

void do_s2xs2(const Options& o, Report& r) {
    Hyperbox w1 = o.inputs.empty() ? fixtures::s2xs2_first_half() : hyperbox_from_json(load_json_file(o.inputs[0]));
    Hyperbox w2 = o.inputs.empty() ? fixtures::s2xs2_second_half() : hyperbox_from_json(load_json_file(o.inputs[1]));
    for (const auto* w : {&w1, &w2})
        if (!validate_hyperbox(*w).ok) {
            r.fail("half hyperbox violates the structure relation", "validate_hyperbox");
            return;
        }
    auto box = stack(w1, w2, 0);
    auto cube = compress(box, o.axis_order);
    if (!validate_hyperbox(cube).ok) {
        r.fail("compressed square violates the structure relation", "validate_hyperbox");
        return;
    }
    r.line("stacked " + size_string(box.size()) + " hyperbox compresses to a valid square", "validate_hyperbox");
    auto m = square_to_enhanced(cube, 1, Grading::from_halves({-2}));
    if (is_enhanced_chain_map(m))
        r.line("(F, h) is an enhanced ι-homomorphism; ∂_Mor(F, h) = 0", "mor_differential");
    else
        r.fail("(F, h) is not an enhanced ι-homomorphism", "mor_differential");
    auto f = to_cfi_map(m);
    auto q_id = lift_to_uq(Matrix::identity(kModeU, m.source->base->size()), true);
    bool is_q = f.matrix() == q_id;
    if (is_q)
        r.line("composite cobordism map = Q·id", "to_cfi_map (exact matrix equality)");
    else
        r.fail("composite cobordism map ≠ Q·id", "to_cfi_map (exact matrix equality)");
    r.data["equals_q_identity"] = is_q;
    r.data["map"] = map_to_json(f);
    r.data["cfi"] = complex_to_json(*f.source());
}

// ---- surgery, cobordism -------------------------------------------------------------------

KnotPtr load_knot(const std::string& path) {
    auto k = std::make_shared<const KnotComplex>(knot_from_json(load_json_file(path)));
    if (k->base->mode() != kModeUV) throw ParseError("surgery needs a knot (one component)");
    return k;
}

void do_surgery(const Options& o, Report& r) {
    auto k = load_knot(o.inputs[0]);
    SurgeryOptions so{o.bound, o.seed};
    int m = *o.framing;
    auto x = o.involutive ? build_involutive_cone(k, m / 2, so) : build_cone(k, m, so);
    auto rep = analyze_cone(x);
    std::string name = o.involutive ? "𝕏𝕀_" + std::to_string(m) : "𝕏_" + std::to_string(m);
    r.data["framing"] = m;
    r.data["bound"] = x.bound;
    r.data["involutive"] = o.involutive;
    r.data["flip"] = Json{{"from_input", x.flip->from_input}, {"candidates_tried", x.flip->candidates_tried}};
    if (rep.d_squared_zero && rep.homogeneous)
        r.line(name + " truncated at b = " + std::to_string(x.bound) + ": " + std::to_string(x.total->size()) +
                   " generators; ∂² = 0, homogeneous",
               "validate_complex");
    else
        r.fail(name + " differential is invalid", "validate_complex");
    Json classes = Json::array();
    int towers = 0;
    for (const auto& c : rep.classes) {
        towers += static_cast<int>(c.homology.towers.size());
        r.line("class " + std::to_string(c.spin_class) + (c.self_conjugate ? " (self-conjugate)" : "") + ": " + c.homology.to_string(),
               "homology (graded Smith reduction)");
        Json cj{{"class", c.spin_class}, {"self_conjugate", c.self_conjugate}, {"homology", homology_to_json(c.homology)}};
        if (o.delta) cj["truncated"] = dims_json(truncated_dimensions(c.homology, *o.delta));
        classes.push_back(cj);
    }
    r.data["classes"] = classes;
    r.data["towers"] = towers;
    r.line("free towers in total: " + std::to_string(towers), "homology (graded Smith reduction)");
    if (!o.involutive) return;
    auto pass = [&](bool ok, const std::string& text, const std::string& src) {
        if (ok)
            r.line(text, src);
        else
            r.fail(text, src);
    };
    pass(rep.iota_chain_map, "ι_𝕏 = ι_𝔸 + ι_𝔹 + H ṽ is a chain map", "validate_chain_map");
    pass(rep.iota_squared_homotopic, "ι_𝕏² ≃ id", "homotopy_solve");
    r.line("self-conjugate sector: " + std::to_string(rep.self_conjugate_towers_level0) + " towers at Q-level 0, " +
               std::to_string(rep.self_conjugate_towers_level1) + " at Q-level 1, " + std::to_string(rep.self_conjugate_towers_total) +
               " in the total homology",
           "homology (graded Smith reduction)");
    r.data["iota_chain_map"] = rep.iota_chain_map;
    r.data["iota_squared_homotopic"] = rep.iota_squared_homotopic;
    r.data["self_conjugate_towers"] = Json{{"level0", rep.self_conjugate_towers_level0},
                                           {"level1", rep.self_conjugate_towers_level1},
                                           {"total", rep.self_conjugate_towers_total}};
}

void do_cobordism(const Options& o, Report& r) {
    auto k = load_knot(o.inputs[0]);
    int m = *o.framing;
    auto x = build_involutive_cone(k, m / 2, SurgeryOptions{o.bound, o.seed});
    auto J = cobordism_map_J(x);
    auto rep = validate_chain_map(J.J);
    std::string text = "J = v_nΠ^A_n + QΠ^B_nι_𝕏 : 𝕏𝕀_" + std::to_string(m) + " → BI_" + std::to_string(m / 2);
    if (rep.ok())
        r.line(text + " is an F[U,Q]/Q²-chain map", "validate_chain_map");
    else {
        r.fail(text + " is not a chain map", "validate_chain_map");
        add_issues(r, rep.issues, "validate_chain_map");
    }
    r.data["chain_map"] = rep.ok();
    r.data["bi"] = complex_to_json(*J.bi);
    r.data["J"] = map_to_json(J.J);
}

// ---- plumbing -----------------------------------------------------------------------------

std::string repro_bundle(const std::vector<std::string>& args, const Options& o, const std::string& what) {
    Json inputs = Json::object();
    for (const auto& path : o.inputs) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        inputs[path] = ss.str();
    }
    Json bundle{{"args", args}, {"error", what}, {"inputs", inputs}};
    auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    auto path = std::filesystem::temp_directory_path() / ("ihf-repro-" + std::to_string(stamp) + ".json");
    std::ofstream(path) << dump_json(bundle);
    return path.string();
}

void emit(const Report& r, const Options& o, std::ostream& out) {
    if (o.format == "structured") {
        Json j{{"verb", o.verb}, {"status", r.status}};
        Json lines = Json::array();
        for (const auto& [text, src] : r.lines) lines.push_back(Json{{"text", text}, {"validator", src}});
        j["report"] = lines;
        for (const auto& [key, v] : r.data.items()) j[key] = v;
        out << dump_json(j);
        return;
    }
    for (const auto& [text, src] : r.lines) out << text << "   [" << src << "]\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Involutive Floer chain-level toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "text | structured");
    app.add_option("--seed", o.seed, "seed for randomized searches");
    app.add_option("--delta", o.delta, "truncation U^delta for dimension counts");
    app.add_option("--bound", o.bound, "truncation bound b of the surgery cone");
    app.add_option("--framing,-n", o.framing, "surgery framing m");
    app.add_option("--axis-order", o.axis_order_text, "compression order of the axes, e.g. 1,0");
    app.add_flag("--involutive", o.involutive, "build the involutive cone");
    const char* verbs[][2] = {{"check", "validate a complex, ι-complex, knot or hyperbox file"},
                              {"homology", "graded homology over F[U]"},
                              {"cfi", "the involutive cone CFI of an ι-complex"},
                              {"twist", "the automorphism Id+QΦ of CFI"},
                              {"compress", "compress a hyperbox to a hypercube"},
                              {"surgery", "the surgery mapping cone of a knot"},
                              {"cobordism", "the 2-handle map J of the involutive cone"},
                              {"s2xs2", "the composite S²×S² cobordism map"}};
    for (const auto& [name, help] : verbs) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("inputs", o.inputs, "input files");
        sub->callback([&o, n = std::string(name)] { o.verb = n; });
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        parse_axis_order(o);
        validate_options(o);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kParseError;
    }

    Report r;
    try {
        if (o.verb == "check") do_check(o, r);
        else if (o.verb == "homology") do_homology(o, r);
        else if (o.verb == "cfi") do_cfi(o, r);
        else if (o.verb == "twist") do_twist(o, r);
        else if (o.verb == "compress") do_compress(o, r);
        else if (o.verb == "s2xs2") do_s2xs2(o, r);
        else if (o.verb == "surgery") do_surgery(o, r);
        else if (o.verb == "cobordism") do_cobordism(o, r);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kParseError;
    } catch (const SurgeryError& e) {
        err << "validation failure: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const std::exception& e) {
        auto path = repro_bundle(args, o, e.what());
        err << "internal error: " << e.what() << "\nreproduction bundle written to " << path << "\n";
        return kInternalError;
    }
    emit(r, o, out);
    return r.status;
}

}  // namespace ihf::cli
