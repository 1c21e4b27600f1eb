#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "ihf/io.hpp"

using namespace ihf;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int s = cli::run(args, out, err);
    return {s, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(IHF_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("ihf-test-" + name);
    std::ofstream(p) << text;
    return p.string();
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("check accepts the fixtures and names the validator") {
    auto t = run({"check", fixture("trefoil.knot")});
    CHECK(t.status == cli::kOk);
    CHECK(contains(t.out, "valid ι_K-complex; ι_K² = id+ΦΨ exactly"));
    CHECK(contains(t.out, "[validate_iota_k]"));

    auto l = run({"check", fixture("link2.knot")});
    CHECK(l.status == cli::kOk);
    CHECK(contains(l.out, "ι_L"));

    auto s3 = run({"check", fixture("s3.iota")});
    CHECK(s3.status == cli::kOk);
    CHECK(contains(s3.out, "valid ι-complex"));

    auto box = run({"check", fixture("s2xs2_w1.box")});
    CHECK(box.status == cli::kOk);
    CHECK(contains(box.out, "[validate_hyperbox]"));

    auto bad = run({"check", fixture("s1xs2.iota")});
    CHECK(bad.status == cli::kValidationFailure);
    CHECK(contains(bad.out, "FAILED"));
    CHECK(contains(bad.out, "rank 2"));
}

TEST_CASE("twist, s2xs2, cfi, homology and compress verbs") {
    auto tw = run({"twist", fixture("figure8_a0.iota")});
    CHECK(tw.status == cli::kOk);
    CHECK(contains(tw.out, "Id+QΦ ≃ Id; (Id+QΦ)² = Id"));
    CHECK(contains(tw.out, "Φ ≠ 0"));

    auto s = run({"s2xs2"});
    CHECK(s.status == cli::kOk);
    CHECK(contains(s.out, "composite cobordism map = Q·id"));
    auto s2 = run({"s2xs2", fixture("s2xs2_w1.box"), fixture("s2xs2_w2.box")});
    CHECK(s2.status == cli::kOk);
    CHECK(contains(s2.out, "= Q·id"));

    auto c = run({"cfi", fixture("s3.iota")});
    CHECK(c.status == cli::kOk);
    CHECK(contains(c.out, "one tower per Q-level"));

    auto h = run({"homology", "--delta", "3", fixture("trefoil.knot")});
    CHECK(h.status == cli::kOk);
    CHECK(contains(h.out, "dim H(C/U^3)"));

    auto cp = run({"compress", "--axis-order", "1,0", fixture("s2xs2_w1.box")});
    CHECK(cp.status == cli::kOk);
    CHECK(contains(cp.out, "axis order [1,0]"));
}

TEST_CASE("surgery and cobordism verbs") {
    auto x = run({"surgery", "-n", "3", fixture("figure8.knot")});
    CHECK(x.status == cli::kOk);
    CHECK(contains(x.out, "free towers in total: 3"));

    auto xi = run({"surgery", "--involutive", "-n", "2", fixture("unknot.knot")});
    CHECK(xi.status == cli::kOk);
    CHECK(contains(xi.out, "2 towers at Q-level 0, 2 at Q-level 1"));

    auto j = run({"cobordism", "-n", "2", fixture("trefoil.knot")});
    CHECK(j.status == cli::kOk);
    CHECK(contains(j.out, "chain map"));
    CHECK_FALSE(contains(j.out, "FAILED"));
}

TEST_CASE("structured output re-parses and carries the canonical value") {
    auto r = run({"check", "--format", "structured", fixture("figure8.knot")});
    REQUIRE(r.status == cli::kOk);
    auto j = parse_json_text(r.out);
    CHECK(j.at("verb") == "check");
    CHECK(j.at("status") == 0);
    CHECK(j.at("report").is_array());
    auto k = knot_from_json(j.at("value"));
    auto ref = knot_from_json(load_json_file(fixture("figure8.knot")));
    CHECK(*k.base == *ref.base);

    auto s = run({"s2xs2", "--format", "structured"});
    auto sj = parse_json_text(s.out);
    CHECK(sj.at("equals_q_identity") == true);
}

TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"surgery", "--involutive", "-n", "2", fixture("trefoil.knot")},
             {"twist", "--format", "structured", fixture("figure8_a0.iota")},
             {"check", fixture("link2.knot")}}) {
        auto a = run(args), b = run(args);
        CHECK(a.status == b.status);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("exit codes") {
    CHECK(run({}).status == cli::kParseError);
    CHECK(run({"frobnicate"}).status == cli::kParseError);
    CHECK(run({"check", "--format", "xml", fixture("s3.iota")}).status == cli::kParseError);
    CHECK(run({"check"}).status == cli::kParseError);
    CHECK(run({"check", fixture("nope.knot")}).status == cli::kParseError);
    CHECK(run({"surgery", fixture("trefoil.knot")}).status == cli::kParseError);
    CHECK(run({"surgery", "-n", "0", fixture("trefoil.knot")}).status == cli::kParseError);
    CHECK(run({"cobordism", "-n", "3", fixture("trefoil.knot")}).status == cli::kParseError);
    CHECK(run({"surgery", "--involutive", "-n", "3", fixture("trefoil.knot")}).status == cli::kParseError);
    CHECK(run({"compress", "--axis-order", "0,0", fixture("s2xs2_w1.box")}).status == cli::kParseError);

    auto syntax = temp_file("syntax.knot", "{\n \"kind\": \"knot\",\n");
    auto r = run({"check", syntax});
    CHECK(r.status == cli::kParseError);
    CHECK(contains(r.err, "line"));

    auto small = run({"surgery", "-n", "1", "--bound", "1", fixture("trefoil.knot")});
    CHECK(small.status == cli::kValidationFailure);
    CHECK(contains(small.err, "too small"));

    auto wrong = run({"cfi", fixture("s1xs2.iota")});
    CHECK(wrong.status == cli::kValidationFailure);
}

TEST_CASE("axis order parsing") {
    CHECK(run({"compress", "--axis-order", "1,x", fixture("s2xs2_w1.box")}).status == cli::kParseError);
    CHECK(run({"compress", "--axis-order", "0,1,2", fixture("s2xs2_w1.box")}).status == cli::kParseError);
    CHECK(run({"compress", fixture("s2xs2_w1.box"), "--axis-order", "0,1"}).status == cli::kOk);
}
