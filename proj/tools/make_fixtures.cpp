// Writes the bundled fixture files. Usage: make_fixtures OUTDIR
#include <filesystem>
#include <fstream>
#include <iostream>

#include "skein/fixtures.hpp"
#include "skein/templates.hpp"
#include "skein/tqft.hpp"

using namespace skein;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const Json& j) {
    std::ofstream o(p);
    o << j.dump(2) << "\n";
    std::cout << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures OUTDIR\n";
        return 2;
    }
    fs::path out = argv[1];
    fs::create_directories(out / "diagrams");
    fs::create_directories(out / "lens");
    fs::create_directories(out / "templates");
    fs::create_directories(out / "obstruct");

    write(out / "diagrams/unknot.json", to_json(fixtures::unknot()));
    write(out / "diagrams/omega_unknot.json", to_json(fixtures::unknot(Decoration::omega())));
    write(out / "diagrams/hopf.json", to_json(fixtures::hopf()));
    write(out / "diagrams/trefoil_right.json", to_json(fixtures::trefoil(true)));
    write(out / "diagrams/trefoil_left.json", to_json(fixtures::trefoil(false)));
    write(out / "diagrams/omega_around_strand_1.json", to_json(fixtures::omega_around_strand(1)));
    write(out / "diagrams/s3_empty.json", to_json(LinkDiagram{}));
    auto [slid_a, slid_b] = fixtures::handle_slide_pair();
    write(out / "diagrams/handle_slide_a.json", to_json(slid_a));
    write(out / "diagrams/handle_slide_b.json", to_json(slid_b));

    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}})
        write(out / "lens" / ("L" + std::to_string(p) + "_" + std::to_string(q) + ".json"),
              to_json(lens_presentation(p, q).diagram));

    write(out / "templates/solid_torus_self.json", to_json(fixtures::solid_torus_template()));
    write(out / "templates/solid_torus_swapped.json", to_json(fixtures::solid_torus_template(0)));
    write(out / "templates/chain_mail_21.json", to_json(fixtures::chain_mail_template()));

    write(out / "obstruct/punctured_L3_1.json",
          Json{{"name", "L(3,1) minus a ball"},
               {"levels", {3}},
               {"evidence", Json::array({{{"kind", "fillings"}, {"mode", "wrt"}, {"files", {"../lens/L3_1.json"}}}})}});
    write(out / "obstruct/solid_tori_21.json",
          Json{{"name", "two solid tori glued along (2,1) annuli"},
               {"levels", {3}},
               {"evidence", Json::array({{{"kind", "template"},
                                          {"file", "../templates/chain_mail_21.json"},
                                          {"scale_g", 1}}})}});
    write(out / "obstruct/s3_only.json",
          Json{{"name", "S^3"},
               {"evidence",
                Json::array({{{"kind", "fillings"}, {"mode", "wrt"}, {"files", {"../diagrams/s3_empty.json"}}}})}});
    write(out / "obstruct/containing_L2_1.json",
          Json{{"name", "manifold with S^3 and L(2,1) fillings"},
               {"levels", {3, 5}},
               {"evidence", Json::array({{{"kind", "fillings"}, {"mode", "wrt"}, {"files", {"../lens/L2_1.json"}}}})},
               {"submanifold",
                {{"name", "L(2,1) minus a ball"},
                 {"evidence",
                  Json::array({{{"kind", "fillings"}, {"mode", "wrt"}, {"files", {"../lens/L2_1.json"}}}})}}}});
    return 0;
}
