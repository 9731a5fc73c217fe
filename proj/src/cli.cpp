#include "skein/cli.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "skein/bracket.hpp"
#include "skein/errors.hpp"
#include "skein/ideal.hpp"
#include "skein/recoupling.hpp"
#include "skein/tqft.hpp"

namespace skein::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 failed");
    std::ostringstream s;
    for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return s.str();
}

namespace {

struct Settings {
    std::vector<int> levels;
    std::string mode = "wrt";
    int scale_g = 0;
    int width_limit = 12;
    unsigned threads = 1;
    std::string output = "json";
};

// Tracks input files and their hashes for the report.
class Inputs {
public:
    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot read " + path);
        std::ostringstream s;
        s << in.rdbuf();
        std::string text = s.str();
        files_.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
        return text;
    }
    Json json() const { return files_; }

private:
    Json files_ = Json::array();
};

EvalOptions eval_options(const Settings& s) {
    EvalOptions o;
    o.width_limit = s.width_limit;
    o.threads = std::max(1u, s.threads);
    return o;
}

std::vector<Level> levels_of(const std::vector<int>& rs) {
    std::vector<Level> out;
    for (int r : rs) out.push_back(make_level(r));
    return out;
}

Json value_json(const CycNum& v) {
    Json j;
    j["text"] = v.to_string();
    j["exact"] = to_json(v);
    auto z = numeric_embed(v);
    j["numeric"] = {{"re", z.real()}, {"im", z.imag()}};
    if (v.is_integral()) {
        Integer n = norm(v);
        j["norm"] = integer_to_json(n);
        j["unit"] = abs(n) == 1;
    }
    return j;
}

SurgeryPresentation read_presentation(Inputs& in, const std::string& path) {
    try {
        return {parse_diagram(in.read(path))};
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// --------------------------------------------------------------- commands

Json cmd_bracket(Inputs& in, const std::string& file, const Settings& s) {
    LinkDiagram d = parse_diagram(in.read(file));
    Json rs = Json::array();
    for (const auto& l : levels_of(s.levels)) {
        validate(d, l);
        EvalStats st;
        CycNum v = evaluate_bracket(d, l, eval_options(s), &st);
        rs.push_back({{"level", l.r()}, {"value", value_json(v)}, {"max_cut_width", st.max_frontier / 2}});
    }
    return rs;
}

Json cmd_closed(Inputs& in, const std::string& file, const Settings& s, bool tv) {
    auto p = read_presentation(in, file);
    int sigma = linking_matrix(p.diagram).signature;
    Json rs = Json::array();
    for (const auto& l : levels_of(s.levels)) {
        validate(p.diagram, l);
        CycNum z = tv ? turaev_viro(p, l, eval_options(s)) : wrt(p, l, eval_options(s));
        Json r = {{"level", l.r()}, {"value", value_json(z)}};
        if (!tv) {
            r["signature"] = sigma;
            r["normalization"] = "kappa^(-signature) times the bracket; other presentations may differ by a power of kappa";
        }
        rs.push_back(r);
    }
    return rs;
}

Json cmd_lens(long long p, long long q, const std::string& out_file) {
    auto pres = lens_presentation(p, q);
    if (!out_file.empty()) {
        std::ofstream o(out_file);
        if (!o) throw ParseError("cannot write " + out_file);
        o << serialize(pres.diagram) << "\n";
    }
    return Json::array({{{"p", p}, {"q", q}, {"framings", lens_framings(p, q)}, {"diagram", to_json(pres.diagram)}}});
}

// Ideal generated by closed invariants of a filling family, per level.
Json filling_ideal(Inputs& in, const std::vector<std::string>& files, const Level& l, const Settings& s,
                   const std::string& mode, IdealLattice* ideal_out) {
    std::vector<CycNum> gens;
    Json gj = Json::array();
    for (const auto& f : files) {
        auto p = read_presentation(in, f);
        try {
            validate(p.diagram, l);
        } catch (const ValidationError& e) {
            throw ValidationError({f + ": " + e.what()});
        }
        CycNum z = mode == "tv" ? turaev_viro(p, l, eval_options(s)) : wrt(p, l, eval_options(s));
        gens.push_back(z);
        gj.push_back({{"file", f}, {"value", value_json(z)}});
    }
    IdealLattice I = ideal_from_generators(l, gens);
    if (ideal_out) *ideal_out = I;
    return {{"level", l.r()},
            {"mode", mode},
            {"generators", gj},
            {"ideal", to_json(I)},
            {"bound", "sub-ideal generated by the listed fillings; a lower bound for the full ideal"}};
}

Json cmd_ideal_i(Inputs& in, const std::vector<std::string>& files, const Settings& s) {
    if (s.mode != "wrt" && s.mode != "tv") throw ParseError("--mode must be wrt or tv");
    Json rs = Json::array();
    for (const auto& l : levels_of(s.levels)) rs.push_back(filling_ideal(in, files, l, s, s.mode, nullptr));
    return rs;
}

Json template_ideal(const MarkedTemplate& m, const Level& l, int scale_g, const Settings& s, IdealLattice* ideal_out) {
    PartitionVector pv = expand_in_basis(m, l, eval_options(s));
    IdealLattice J = ideal_from_partition_vector(pv);
    IdealLattice scaled = scale_by_inverse_X(J, scale_g);
    if (ideal_out) *ideal_out = scaled;
    Json entries = Json::array();
    for (const auto& [a, v] : pv.entries) entries.push_back({{"coloring", a}, {"value", value_json(v)}});
    Json pvj = to_json(pv);
    pvj["entries"] = entries;
    return {{"level", l.r()},
            {"partition_vector", pvj},
            {"ideal_J", to_json(J)},
            {"scale_g", scale_g},
            {"scaled_ideal", to_json(scaled)},
            {"contains_one", contains(scaled, CycNum::from_int(l, 1))}};
}

Json cmd_ideal_j(Inputs& in, const std::string& file, const Settings& s) {
    MarkedTemplate m = parse_template(in.read(file));
    validate_template(m);
    Json rs = Json::array();
    for (const auto& l : levels_of(s.levels)) rs.push_back(template_ideal(m, l, s.scale_g, s, nullptr));
    return rs;
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ResourceLimit*>(&e)) return 3;
    if (dynamic_cast<const ConsistencyError*>(&e) || dynamic_cast<const NotIntegral*>(&e)) return 4;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
        dynamic_cast<const InvalidLevel*>(&e) || dynamic_cast<const LevelMismatch*>(&e) ||
        dynamic_cast<const ScaleMismatch*>(&e))
        return 2;
    return 1;
}

struct Evidence {
    Json report = Json::array();
    bool any_obstruction = false;
    int failure = 0;
    std::string first_error;
    // level -> mode -> computed filling ideal
    std::map<int, std::map<std::string, IdealLattice>> filling;
};

Evidence run_evidence(Inputs& in, const Json& items, const std::vector<Level>& levels, const fs::path& base,
                      const Settings& s, const std::string& where) {
    Evidence ev;
    if (!items.is_array()) throw ParseError(where + ": expected an array");
    auto resolve = [&](const Json& j, const std::string& p) {
        if (!j.is_string()) throw ParseError(p + ": expected a file name");
        fs::path f = j.get<std::string>();
        return (f.is_absolute() ? f : base / f).string();
    };
    for (size_t i = 0; i < items.size(); ++i) {
        std::string p = where + "[" + std::to_string(i) + "]";
        const Json& it = items[i];
        Json item = {{"index", i}};
        try {
            if (!it.is_object() || !it.contains("kind")) throw ParseError(p + ": expected an object with a kind");
            std::string kind = it.at("kind").get<std::string>();
            item["kind"] = kind;
            Json per = Json::array();
            if (kind == "fillings") {
                std::string mode = it.value("mode", std::string("wrt"));
                if (mode != "wrt" && mode != "tv") throw ParseError(p + ".mode: expected wrt or tv");
                if (!it.contains("files") || !it.at("files").is_array()) throw ParseError(p + ".files: expected an array");
                std::vector<std::string> files;
                for (size_t k = 0; k < it.at("files").size(); ++k)
                    files.push_back(resolve(it.at("files")[k], p + ".files[" + std::to_string(k) + "]"));
                item["mode"] = mode;
                for (const auto& l : levels) {
                    IdealLattice I(l);
                    per.push_back(filling_ideal(in, files, l, s, mode, &I));
                    if (!contains(I, CycNum::from_int(l, 1))) ev.any_obstruction = true;
                    auto& slot = ev.filling[l.r()];
                    auto found = slot.find(mode);
                    if (found == slot.end())
                        slot.emplace(mode, I);
                    else
                        // Several filling families together generate the sum of their ideals.
                        found->second = ideal_from_generators(l, [&] {
                            auto a = basis_elements(found->second), b = basis_elements(I);
                            a.insert(a.end(), b.begin(), b.end());
                            return a;
                        }());
                }
            } else if (kind == "template") {
                if (!it.contains("file")) throw ParseError(p + ".file: missing");
                std::string file = resolve(it.at("file"), p + ".file");
                int g = it.value("scale_g", 0);
                MarkedTemplate m = parse_template(in.read(file));
                validate_template(m);
                item["file"] = file;
                for (const auto& l : levels) {
                    IdealLattice I(l);
                    per.push_back(template_ideal(m, l, g, s, &I));
                    if (!contains(I, CycNum::from_int(l, 1))) ev.any_obstruction = true;
                }
                item["bound"] = "upper estimate: the Turaev-Viro ideal lies in the scaled ideal";
            } else {
                throw ParseError(p + ".kind: expected fillings or template");
            }
            item["status"] = "ok";
            item["results"] = per;
        } catch (const std::exception& e) {
            item["status"] = "error";
            item["error"] = e.what();
            if (ev.failure == 0) {
                ev.failure = exit_code(e);
                ev.first_error = e.what();
            }
        }
        ev.report.push_back(item);
    }
    return ev;
}

Json cmd_obstruct(Inputs& in, const std::string& file, const Settings& s, int& code) {
    Json spec;
    try {
        spec = Json::parse(in.read(file));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!spec.is_object() || !spec.contains("evidence")) throw ParseError("$.evidence: missing");
    std::vector<int> rs = s.levels;
    if (spec.contains("levels")) {
        rs.clear();
        for (const auto& r : spec.at("levels")) {
            if (!r.is_number_integer()) throw ParseError("$.levels: expected integers");
            rs.push_back(r.get<int>());
        }
    }
    auto levels = levels_of(rs);
    fs::path base = fs::path(file).parent_path();

    Json out;
    out["manifold"] = spec.value("name", std::string(""));
    out["levels"] = rs;
    Evidence main = run_evidence(in, spec.at("evidence"), levels, base, s, "$.evidence");
    out["evidence"] = main.report;
    bool obstructed = main.any_obstruction;
    code = main.failure;
    if (spec.contains("submanifold")) {
        const Json& sub = spec.at("submanifold");
        if (!sub.is_object() || !sub.contains("evidence")) throw ParseError("$.submanifold.evidence: missing");
        Evidence se = run_evidence(in, sub.at("evidence"), levels, base, s, "$.submanifold.evidence");
        Json sj = {{"name", sub.value("name", std::string(""))}, {"evidence", se.report}};
        // An embedded M gives I(N) inside I(M); compare what was computed.
        Json checks = Json::array();
        for (const auto& [r, modes] : main.filling)
            for (const auto& [mode, I] : modes) {
                auto it = se.filling.find(r);
                if (it == se.filling.end() || !it->second.count(mode)) continue;
                checks.push_back({{"level", r}, {"mode", mode}, {"consistent", subset(I, it->second.at(mode))}});
            }
        sj["containment"] = checks;
        out["submanifold"] = sj;
        obstructed = obstructed || se.any_obstruction;
        if (code == 0) code = se.failure;
    }
    out["verdict"] = obstructed ? "OBSTRUCTED" : "INCONCLUSIVE";
    out["rule"] = obstructed ? "a computed ideal does not contain 1, so the manifold does not embed in S^3"
                             : "every computed ideal contains 1; no conclusion about embedding";
    return Json::array({out});
}

// ------------------------------------------------------------------ output

void pretty(std::ostream& os, const Json& j, int indent) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        if (j.contains("text") && j.contains("exact")) {
            os << j.at("text").get<std::string>() << "\n";
            return;
        }
        os << "\n";
        for (const auto& [k, v] : j.items()) {
            if (k == "exact" || k == "diagram" || k == "hnf") continue;
            os << pad << k << ": ";
            pretty(os, v, indent + 2);
        }
    } else if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
        if (flat) {
            os << j.dump() << "\n";
            return;
        }
        os << "\n";
        for (const auto& v : j) {
            os << pad << "-" << (v.is_object() || v.is_array() ? "" : " ");
            pretty(os, v, indent + 2);
        }
    } else if (j.is_string()) {
        os << j.get<std::string>() << "\n";
    } else {
        os << j.dump() << "\n";
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact skein-theoretic invariants and embedding obstructions for 3-manifolds", kToolName};
    app.require_subcommand(1);
    Settings s;
    app.add_option("--level,-r", s.levels, "level r (odd, at least 3); repeatable")->take_all();
    app.add_option("--width-limit", s.width_limit, "largest cut width the evaluator may use")->check(CLI::Range(1, 12));
    app.add_option("--threads", s.threads, "threads for the Omega color sum")->check(CLI::Range(1, 256));
    app.add_option("--output", s.output, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));
    app.set_version_flag("--version", kVersion);

    std::string file, out_file;
    std::vector<std::string> files;
    long long p = 0, q = 0;
    auto* bracket = app.add_subcommand("bracket", "Kauffman bracket of a diagram");
    bracket->add_option("file", file, "diagram JSON")->required();
    auto* w = app.add_subcommand("wrt", "WRT invariant of a surgery presentation");
    w->add_option("file", file, "diagram JSON; Omega components are surgery curves")->required();
    auto* tv = app.add_subcommand("tv", "Turaev-Viro value |Z|^2 of a surgery presentation");
    tv->add_option("file", file, "diagram JSON")->required();
    auto* lens = app.add_subcommand("lens", "surgery presentation of L(p,q)");
    lens->add_option("p", p)->required();
    lens->add_option("q", q)->required();
    lens->add_option("--out", out_file, "also write the diagram to this file");
    auto* ii = app.add_subcommand("ideal-i", "ideal generated by invariants of closed fillings");
    ii->add_option("files", files, "closed presentations")->required();
    ii->add_option("--mode", s.mode, "wrt or tv")->check(CLI::IsMember({"wrt", "tv"}));
    auto* ij = app.add_subcommand("ideal-j", "coefficient ideal of a marked template");
    ij->add_option("file", file, "template JSON")->required();
    ij->add_option("--scale-g", s.scale_g, "divide the ideal by X^g")->check(CLI::NonNegativeNumber);
    auto* ob = app.add_subcommand("obstruct", "embedding obstruction report");
    ob->add_option("file", file, "obstruction spec JSON")->required();
    for (auto* sc : {bracket, w, tv, lens, ii, ij, ob}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    if (s.levels.empty()) s.levels = {3, 5, 7};

    Inputs in;
    Json report;
    report["tool"] = kToolName;
    report["version"] = kVersion;
    int code = 0;
    try {
        Json results;
        if (*bracket) {
            report["command"] = "bracket";
            results = cmd_bracket(in, file, s);
        } else if (*w) {
            report["command"] = "wrt";
            results = cmd_closed(in, file, s, false);
        } else if (*tv) {
            report["command"] = "tv";
            results = cmd_closed(in, file, s, true);
        } else if (*lens) {
            report["command"] = "lens";
            results = cmd_lens(p, q, out_file);
        } else if (*ii) {
            report["command"] = "ideal-i";
            results = cmd_ideal_i(in, files, s);
        } else if (*ij) {
            report["command"] = "ideal-j";
            results = cmd_ideal_j(in, file, s);
        } else {
            report["command"] = "obstruct";
            results = cmd_obstruct(in, file, s, code);
        }
        report["inputs"] = in.json();
        report["results"] = results;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e);
    }
    if (s.output == "pretty") {
        out << report["tool"].get<std::string>() << " " << kVersion << " " << report["command"].get<std::string>();
        pretty(out, report["results"], 2);
    } else {
        out << report.dump(2) << "\n";
    }
    return code;
}

}  // namespace skein::cli
