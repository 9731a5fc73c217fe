#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "skein/bracket.hpp"
#include "skein/cli.hpp"
#include "skein/fixtures.hpp"
#include "skein/ideal.hpp"
#include "skein/templates.hpp"
#include "skein/recoupling.hpp"

using namespace skein;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "skein");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return std::string(SKEIN_FIXTURE_DIR) + "/" + rel; }

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "skein_cli_test";
    fs::create_directories(d);
    return d / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

CycNum value_of(const Json& v) { return cycnum_from_json(v.at("exact")); }

}  // namespace

TEST_CASE("sha256") {
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("bracket command") {
    auto r = run({"bracket", fx("diagrams/unknot.json"), "--level", "3"});
    REQUIRE(r.code == 0);
    Json j = r.json();
    CHECK(j["tool"] == "skein");
    CHECK(j["command"] == "bracket");
    CHECK(j["inputs"][0]["sha256"].get<std::string>().size() == 64);
    auto l = make_level(3);
    CycNum A = CycNum::u_power(l, 2), Ainv = CycNum::u_power(l, -2);
    CycNum v = value_of(j["results"][0]["value"]);
    CHECK(v == -(A * A) - Ainv * Ainv);
    double re = j["results"][0]["value"]["numeric"]["re"];
    CHECK(std::abs(re - numeric_embed(v).real()) < 1e-12);

    for (int rr : {5}) {
        auto o = run({"bracket", fx("diagrams/omega_unknot.json"), "--level", std::to_string(rr)});
        REQUIRE(o.code == 0);
        double x = o.json()["results"][0]["value"]["numeric"]["re"];
        CHECK(std::abs(x - std::sqrt(rr / 2.0) / std::sin(std::numbers::pi / rr)) < 1e-9);
        CHECK(value_of(o.json()["results"][0]["value"]) == omega_x(make_level(rr)));
    }

    // Trefoil values against the state-sum oracle and the golden file.
    auto t = run({"bracket", fx("diagrams/trefoil_right.json")});
    REQUIRE(t.code == 0);
    Json golden = Json::parse(std::ifstream(fx("golden/trefoil_right.json")));
    auto res = t.json()["results"];
    REQUIRE(res.size() == 3);
    for (size_t i = 0; i < res.size(); ++i) {
        auto lr = make_level(res[i]["level"].get<int>());
        CHECK(value_of(res[i]["value"]) == evaluate_bracket_naive(fixtures::trefoil(true), lr));
        CHECK(res[i]["value"]["exact"] == golden[i]);
    }
}

TEST_CASE("wrt and tv commands") {
    auto e = run({"wrt", fx("diagrams/s3_empty.json")});
    REQUIRE(e.code == 0);
    for (const auto& r : e.json()["results"]) CHECK(r["value"]["text"] == "(1)");
    auto l2 = run({"wrt", fx("lens/L2_1.json")});
    REQUIRE(l2.code == 0);
    for (const auto& r : l2.json()["results"]) CHECK(value_of(r["value"]).is_zero());
    auto l3 = run({"wrt", fx("lens/L3_1.json"), "--level", "3"});
    REQUIRE(l3.code == 0);
    auto r3 = l3.json()["results"][0];
    CHECK(!value_of(r3["value"]).is_zero());
    CHECK(r3["value"].contains("norm"));
    CHECK(r3["signature"] == 1);
    auto tv = run({"tv", fx("lens/L5_1.json"), "--level", "5"});
    REQUIRE(tv.code == 0);
    CycNum t = value_of(tv.json()["results"][0]["value"]);
    CHECK(t == t.conjugate());
    auto w5 = value_of(run({"wrt", fx("lens/L5_1.json"), "--level", "5"}).json()["results"][0]["value"]);
    CHECK(t == w5 * w5.conjugate());
}

TEST_CASE("lens command") {
    auto a = run({"lens", "2", "1"});
    REQUIRE(a.code == 0);
    CHECK(a.json()["results"][0]["framings"] == Json::array({2}));
    auto b = run({"lens", "5", "2"});
    CHECK(b.json()["results"][0]["framings"] == Json::array({3, 2}));
    auto c = run({"lens", "4", "2"});
    CHECK(c.code == 2);
    CHECK(c.err.find("p,q must be coprime") != std::string::npos);
    CHECK(c.out.empty());
    fs::path out = scratch("L7_2.json");
    auto d = run({"lens", "7", "2", "--out", out.string()});
    REQUIRE(d.code == 0);
    std::stringstream text;
    text << std::ifstream(out).rdbuf();
    CHECK(parse_diagram(text.str()) == lens_presentation(7, 2).diagram);
}

TEST_CASE("ideal-i command") {
    auto z = run({"ideal-i", fx("lens/L2_1.json"), "--level", "5"});
    REQUIRE(z.code == 0);
    auto r = z.json()["results"][0];
    CHECK(r["ideal"]["zero"] == true);
    CHECK(r["bound"].get<std::string>().find("lower bound") != std::string::npos);
    auto s = run({"ideal-i", fx("diagrams/s3_empty.json")});
    for (const auto& x : s.json()["results"]) CHECK(x["ideal"]["trivial"] == true);
    // TV sub-ideal inside the WRT sub-ideal for the same fillings.
    for (int lv : {3, 5}) {
        auto w = run({"ideal-i", fx("lens/L3_1.json"), fx("lens/L5_1.json"), "--level", std::to_string(lv)});
        auto t = run({"ideal-i", fx("lens/L3_1.json"), fx("lens/L5_1.json"), "--level", std::to_string(lv), "--mode", "tv"});
        REQUIRE(w.code == 0);
        REQUIRE(t.code == 0);
        auto l = make_level(lv);
        std::vector<CycNum> wg, tg;
        for (const auto& g : w.json()["results"][0]["generators"]) wg.push_back(value_of(g["value"]));
        for (const auto& g : t.json()["results"][0]["generators"]) tg.push_back(value_of(g["value"]));
        CHECK(subset(ideal_from_generators(l, tg), ideal_from_generators(l, wg)));
    }
    fs::path bad = scratch("bad.json");
    write(bad, "{\"crossings\": [[0,1]]}");
    auto b = run({"ideal-i", fx("lens/L3_1.json"), bad.string()});
    CHECK(b.code == 2);
    CHECK(b.err.find(bad.string()) != std::string::npos);
}

TEST_CASE("ideal-j command") {
    auto l = make_level(3);
    auto self = run({"ideal-j", fx("templates/solid_torus_self.json"), "--level", "3"});
    REQUIRE(self.code == 0);
    auto ideal_x = to_json(ideal_from_generators(l, {omega_x(l)}));
    CHECK(self.json()["results"][0]["ideal_J"]["hnf"] == ideal_x["hnf"]);
    auto sw = run({"ideal-j", fx("templates/solid_torus_swapped.json"), "--level", "3"});
    CHECK(sw.json()["results"][0]["ideal_J"]["trivial"] == true);
    auto cm = run({"ideal-j", fx("templates/chain_mail_21.json"), "--level", "3", "--scale-g", "1"});
    REQUIRE(cm.code == 0);
    auto sc = cm.json()["results"][0]["scaled_ideal"];
    CHECK(sc["denom_scale"] == 0);
    CHECK(sc["index"] == 256);
    CHECK(sc["hnf"] == to_json(ideal_from_generators(l, {CycNum::from_int(l, 2)}))["hnf"]);
    CHECK(cm.json()["results"][0]["partition_vector"]["entries"].size() == 4);
}

TEST_CASE("obstruct command") {
    auto m = run({"obstruct", fx("obstruct/solid_tori_21.json")});
    REQUIRE(m.code == 0);
    CHECK(m.json()["results"][0]["verdict"] == "OBSTRUCTED");
    auto s = run({"obstruct", fx("obstruct/s3_only.json")});
    REQUIRE(s.code == 0);
    CHECK(s.json()["results"][0]["verdict"] == "INCONCLUSIVE");
    auto c = run({"obstruct", fx("obstruct/containing_L2_1.json")});
    REQUIRE(c.code == 0);
    auto cj = c.json()["results"][0];
    CHECK(cj["verdict"] == "OBSTRUCTED");
    REQUIRE(cj["submanifold"]["containment"].size() == 2);
    for (const auto& k : cj["submanifold"]["containment"]) CHECK(k["consistent"] == true);

    // Verdict soundness: OBSTRUCTED exactly when some computed ideal has index other than 1.
    for (const auto& f : {"obstruct/solid_tori_21.json", "obstruct/s3_only.json", "obstruct/punctured_L3_1.json",
                          "obstruct/containing_L2_1.json"}) {
        auto r = run({"obstruct", fx(f)}).json()["results"][0];
        bool nontrivial = false;
        auto scan = [&](const Json& ev) {
            for (const auto& item : ev)
                for (const auto& lv : item["results"]) {
                    const Json& I = lv.contains("ideal") ? lv["ideal"] : lv["scaled_ideal"];
                    if (!I["trivial"].get<bool>()) nontrivial = true;
                }
        };
        scan(r["evidence"]);
        if (r.contains("submanifold")) scan(r["submanifold"]["evidence"]);
        CHECK((r["verdict"] == "OBSTRUCTED") == nontrivial);
        CHECK(r["verdict"] != "EMBEDS");
    }

    // Per-item status: a broken item is reported and the others still run.
    fs::path spec = scratch("spec.json");
    write(spec, Json{{"evidence", Json::array({{{"kind", "fillings"}, {"files", {"missing.json"}}},
                                              {{"kind", "fillings"}, {"files", {fx("lens/L2_1.json")}}}})},
                     {"levels", {3}}}
                    .dump());
    auto p = run({"obstruct", spec.string()});
    CHECK(p.code == 2);
    auto pj = p.json()["results"][0];
    CHECK(pj["evidence"][0]["status"] == "error");
    CHECK(pj["evidence"][1]["status"] == "ok");
    CHECK(pj["verdict"] == "OBSTRUCTED");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"bracket", "/nonexistent.json"}).code == 2);
    fs::path junk = scratch("junk.json");
    write(junk, "{ not json");
    CHECK(run({"bracket", junk.string()}).code == 2);
    CHECK(run({"bracket", fx("diagrams/unknot.json"), "--level", "9"}).code == 2);
    CHECK(run({"bracket", fx("diagrams/unknot.json"), "--level", "1"}).code == 2);
    CHECK(run({"bracket", fx("diagrams/unknot.json"), "--output", "xml"}).code == 2);
    CHECK(run({"lens", "0", "1"}).code == 2);
    // A two-strand cut cannot fit in width 1.
    auto w = run({"bracket", fx("diagrams/trefoil_right.json"), "--width-limit", "1", "--level", "3"});
    CHECK(w.code == 3);
    CHECK(!w.err.empty());
    // A chain-mail template declared with the wrong genus breaks the pairing check.
    Json t = Json::parse(std::ifstream(fx("templates/chain_mail_21.json")));
    t["genus"] = 1;
    fs::path wrong = scratch("wrong_genus.json");
    write(wrong, t.dump());
    CHECK(run({"ideal-j", wrong.string(), "--level", "3"}).code == 4);
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("determinism and pretty output") {
    auto a = run({"obstruct", fx("obstruct/containing_L2_1.json")});
    auto b = run({"obstruct", fx("obstruct/containing_L2_1.json"), "--threads", "2"});
    CHECK(a.out == b.out);
    auto p = run({"obstruct", fx("obstruct/solid_tori_21.json"), "--output", "pretty"});
    REQUIRE(p.code == 0);
    CHECK(p.out.find("verdict: OBSTRUCTED") != std::string::npos);
    CHECK(p.out.find("hnf") == std::string::npos);
}

TEST_CASE("bundled fixtures match their generators") {
    auto load = [](const std::string& rel) {
        std::stringstream s;
        s << std::ifstream(fx(rel)).rdbuf();
        return s.str();
    };
    CHECK(parse_diagram(load("diagrams/unknot.json")) == fixtures::unknot());
    CHECK(parse_diagram(load("diagrams/omega_unknot.json")) == fixtures::unknot(Decoration::omega()));
    CHECK(parse_diagram(load("diagrams/hopf.json")) == fixtures::hopf());
    CHECK(parse_diagram(load("diagrams/trefoil_right.json")) == fixtures::trefoil(true));
    CHECK(parse_diagram(load("diagrams/trefoil_left.json")) == fixtures::trefoil(false));
    CHECK(parse_diagram(load("diagrams/s3_empty.json")) == LinkDiagram{});
    CHECK(parse_diagram(load("diagrams/handle_slide_a.json")) == fixtures::handle_slide_pair().first);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}})
        CHECK(parse_diagram(load("lens/L" + std::to_string(p) + "_" + std::to_string(q) + ".json")) ==
              lens_presentation(p, q).diagram);
    CHECK(parse_template(load("templates/solid_torus_self.json")) == fixtures::solid_torus_template());
    CHECK(parse_template(load("templates/solid_torus_swapped.json")) == fixtures::solid_torus_template(0));
    CHECK(parse_template(load("templates/chain_mail_21.json")) == fixtures::chain_mail_template());
}
