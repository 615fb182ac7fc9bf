#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "confseq/algebra_file.hpp"
#include "confseq/catalog.hpp"
#include "confseq/cli.hpp"

using namespace confseq;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

const char* kStbFree = R"(# sphere tangent bundle over S2 x S2
cdga-free stb
field Q
generator x degree 2
generator y degree 2
generator u degree 3
generator v degree 3
generator t degree 3
d u = x*x
d v = y*y
d t = x*y
truncate 12
end
)";

}  // namespace

TEST_CASE("every catalog algebra survives a text round trip") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    Algebra a = catalog(name);
    CHECK(parse_algebra(serialize_algebra(a)) == a);
  }
}

TEST_CASE("free-form stb text equals the catalog model up to its name") {
  Algebra a = parse_algebra(kStbFree);
  Algebra b = catalog("stb_s2xs2");
  CHECK(a.dim() == b.dim());
  CHECK(a.truncation() == b.truncation());
  CHECK(serialize_algebra(retruncate(a, 8)).find("truncate 8") != std::string::npos);
  for (std::size_t i = 0; i < a.dim(); ++i) CHECK(a.degree(i) == b.degree(i));
}

TEST_CASE("parse errors name the offending line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_algebra(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("algebra a\nfield Q\nbasis 1 degree zero\nend\n") == 3);
  CHECK(line_of("algebra a\nbasis 1 degree 0\nbasis 1 degree 0\nunit 1\nend\n") == 3);
  CHECK(line_of("algebra a\nbasis 1 degree 0\nunit 1\nproduct 1 z = 1\nend\n") == 4);
  CHECK(line_of("algebra a\nbasis 1 degree 0\nunit 1\n") != 0);
  CHECK(line_of("algebra a\nbasis 1 degree 0\nunit 1\nend\nbasis 2 degree 1\n") == 5);
}

TEST_CASE("axioms are enforced on load") {
  // w*w = 1 breaks the grading.
  CHECK_THROWS(parse_algebra("algebra a\nbasis 1 degree 0\nbasis w degree 2\nunit 1\nproduct w w = 1\nend\n"));
}

TEST_CASE("exit codes") {
  CHECK(run({"check", "thm2", "--catalog", "s2", "--n", "3"}).code == kSuccess);
  CHECK(run({"pages", "--catalog", "s2", "--n", "5"}).code == kInputError);
  CHECK(run({"pages", "--catalog", "nowhere"}).code == kInputError);
  CHECK(run({"pages"}).code == kInputError);
  CHECK(run({"frobnicate"}).code == kInputError);
  CHECK(run({"check", "prop6", "--catalog", "stb_s2xs2"}).code == kInputError);
  CHECK(run({"check", "nothing", "--catalog", "s2"}).code == kInputError);
  CHECK(run({"massey", "--catalog", "t2", "a", "b", "a"}).code == kFail);
  CHECK(run({"massey", "--catalog", "t2", "a", "b", "q"}).code == kInputError);
  CHECK(run({"d2", "--catalog", "stb_s2xs2", "--n", "3", "x", "x", "y", "y"}).code == kInputError);

  auto bad = temp_file("confseq_bad.alg", "algebra a\nbasis 1 degree -x\nend\n");
  Run r = run({"total", "--input", bad.string()});
  CHECK(r.code == kInputError);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("an input file behaves like the catalog entry") {
  auto p = temp_file("confseq_s2.alg", serialize_algebra(catalog("s2")));
  Run a = run({"total", "--input", p.string(), "--n", "3", "--format", "json"});
  Run b = run({"total", "--catalog", "s2", "--n", "3", "--format", "json"});
  CHECK(a.code == kSuccess);
  CHECK(a.out == b.out);
}

TEST_CASE("d2 reports the nonzero class on e23e34") {
  Run r = run({"d2", "--catalog", "stb_s2xs2", "--n", "4", "x", "x", "y", "y"});
  CHECK(r.code == kSuccess);
  CHECK(r.out.find("e23e34  [x]⊗[ty-vx] - 2*[tx-uy]⊗[y] - [ty-vx]⊗[x]") != std::string::npos);
  CHECK(r.out.find("nonzero in E₂^{2,*}") != std::string::npos);
  CHECK(r.out.find("agrees with the bracket formula exactly") != std::string::npos);
}

TEST_CASE("d2 raises a low truncation bound") {
  Run r = run({"d2", "--catalog", "stb_s2xs2", "--truncate", "8", "x", "x", "y", "y"});
  CHECK(r.code == kSuccess);
  CHECK(r.out.find("truncation raised to 10") != std::string::npos);
  CHECK(r.out.find("nonzero in E₂^{2,*}") != std::string::npos);
}

TEST_CASE("seeds move the Massey representative but not the coset") {
  Run a = run({"massey", "--catalog", "stb_s2xs2", "x", "x", "y"});
  Run b = run({"massey", "--catalog", "stb_s2xs2", "x", "x", "y", "--seed", "7"});
  CHECK(a.code == kSuccess);
  CHECK(b.code == kSuccess);
  CHECK(a.out.find("class  -[tx-uy]") != std::string::npos);
  CHECK(b.out.find("class  -[tx-uy]") != std::string::npos);
}

TEST_CASE("outputs match the golden files") {
  const std::filesystem::path dir = CONFSEQ_GOLDEN_DIR;
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"check_prop1_s2_n3.json", {"check", "prop1", "--catalog", "s2", "--n", "3", "--format", "json"}},
      {"check_prop3_t2_n3.json", {"check", "prop3", "--catalog", "t2", "--n", "3", "--format", "json"}},
      {"check_thm2_cp2_n3.json", {"check", "thm2", "--catalog", "cp2", "--n", "3", "--format", "json"}},
      {"check_prop5_t2.json", {"check", "prop5", "--catalog", "t2", "--format", "json"}},
      {"check_prop6_cp2.json", {"check", "prop6", "--catalog", "cp2", "--format", "json"}},
      {"check_theorem1_s3_n2.json", {"check", "theorem1", "--catalog", "s3", "--n", "2", "--format", "json"}},
      {"ct_e2_t2_n3.json", {"ct-e2", "--catalog", "t2", "--n", "3", "--format", "json"}},
      {"pages_s2_n3.json", {"pages", "--catalog", "s2", "--n", "3", "--format", "json"}},
      {"total_ebar_cp2_n2.json", {"total", "--catalog", "cp2", "--n", "2", "--complex", "Ebar", "--format", "json"}},
      {"massey_stb_xxy.json", {"massey", "--catalog", "stb_s2xs2", "x", "x", "y", "--format", "json"}},
      {"massey_stb_xyy.txt", {"massey", "--catalog", "stb_s2xs2", "x", "y", "y"}},
      {"d2_stb_xxyy.txt", {"d2", "--catalog", "stb_s2xs2", "--n", "4", "x", "x", "y", "y"}},
      {"catalog.txt", {"catalog"}},
      {"catalog_stb_s2xs5.txt", {"catalog", "stb#s2xs5"}},
  };
  for (const auto& [file, args] : cases) {
    INFO(file);
    Run r = run(args);
    CHECK(r.code == kSuccess);
    CHECK(r.out == slurp(dir / file));
  }
}
