#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "app.hpp"
#include "torelli/polynomial.hpp"

using torelli::cli::run;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(std::vector<std::string> args, int expected_code = 0) {
  args.push_back("--format");
  args.push_back("json");
  const Outcome o = invoke(args);
  CHECK(o.code == expected_code);
  return Json::parse(o.out);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

const std::string kFermat = "x^3+y^3+z^3";
const std::string kWeierstrass = "y^2*z - x^3 - x*z^2";

}  // namespace

TEST_CASE("exit codes follow the status table") {
  CHECK(torelli::cli::exit_code_for("ok") == 0);
  CHECK(torelli::cli::exit_code_for("usage_error") == 2);
  CHECK(torelli::cli::exit_code_for("unsupported") == 3);
  CHECK(torelli::cli::exit_code_for("needs_extension") == 4);
  CHECK(torelli::cli::exit_code_for("internal_error") == 5);
  CHECK(torelli::cli::exit_code_for("anything else") == 5);

  // every emitted status maps to the returned code
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"analyze", "--poly", kFermat},
           {"analyze", "--poly", "x*y*z"},
           {"analyze", "--poly", "x^3+"},
           {"jump", "--poly", "x^2*y"},
           {"analyze", "--poly", "x^3+y^3", "--field", "fp:3"},
       }) {
    std::vector<std::string> a = args;
    a.push_back("--format");
    a.push_back("json");
    const Outcome o = invoke(a);
    const Json j = Json::parse(o.out);
    CHECK(o.code == torelli::cli::exit_code_for(j["status"].get<std::string>()));
  }
}

TEST_CASE("analyze examples") {
  const Json fermat = invoke_json({"analyze", "--poly", kFermat});
  CHECK(fermat["torelli"]["status"] == "NOT_TORELLI");
  CHECK(fermat["st"]["kind"] == "ST");
  CHECK(fermat["st"]["st_dim"] == 3);
  CHECK(fermat["smoothness"]["smooth"] == true);
  CHECK(fermat["decomposition"].is_object());

  const Json w = invoke_json({"analyze", "--poly", kWeierstrass});
  CHECK(w["torelli"]["status"] == "TORELLI");
  CHECK(w["decomposition"].is_null());

  const Outcome singular = invoke({"analyze", "--poly", "x*y*z"});
  CHECK(singular.code == 3);
  CHECK(singular.err.find("singular divisor: Theorem applies to smooth divisors only") != std::string::npos);
}

TEST_CASE("report fields are consistent") {
  for (const std::string& p : {kFermat, kWeierstrass, std::string("x*y + z^2"), std::string("x^4 + y^4 + z^4 + x*y*z^2")}) {
    const Json j = invoke_json({"analyze", "--poly", p});
    if (j["decomposition"].is_object()) {
      CHECK(j["st"]["kind"] == "ST");
      CHECK(j["torelli"]["status"] == "NOT_TORELLI");
    }
    CHECK((j["st"]["kind"] == "NOT_ST") == (j["torelli"]["status"] == "TORELLI"));
  }
}

TEST_CASE("subcommand examples") {
  const Json jump = invoke_json({"jump", "--poly", kFermat, "--against", "x^2"});
  REQUIRE(jump["reports"].size() == 1);
  CHECK(jump["reports"][0]["jumped"] == true);
  CHECK(jump["jumped"] == Json::array({"x^2"}));

  const Json hilbert = invoke_json({"hilbert", "--poly", kFermat, "--dmax", "3"});
  CHECK(hilbert["dims"] == Json::array({0, 0, 3, 9}));

  const Json cubic = invoke_json({"cubic", "--poly", kFermat});
  CHECK(cubic["st"] == "ST");
  CHECK(cubic["j_zero"] == true);
  CHECK(cubic["agree"] == true);

  // default candidates: the monomial basis of degree k-1
  const Json all = invoke_json({"jump", "--poly", kFermat});
  CHECK(all["reports"].size() == 6);
  CHECK(all["jumped"] == Json::array({"x^2", "y^2", "z^2"}));

  invoke_json({"jump", "--poly", "x*y*z"}, 3);
  invoke_json({"cubic", "--poly", "x^4+y^4+z^4"}, 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"analyze"}).code == 2);
  CHECK(invoke({"nosuch", "--poly", "x"}).code == 2);
  CHECK(invoke({"analyze", "--poly", "x^2+y^2", "--field", "fp:6"}).code == 2);
  CHECK(invoke({"analyze", "--poly", "x^2+y^2", "--format", "xml"}).code == 2);
  CHECK(invoke({"analyze", "--poly", "x^3 + y^2"}).code == 2);  // not homogeneous
  CHECK(invoke({"analyze", "--poly", "x^2+q^2", "--vars", "x,y"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("stdin input matches the flag") {
  const Outcome a = invoke({"analyze", "--poly", kFermat, "--format", "json"});
  const Outcome b = invoke({"analyze", "--poly", "-", "--format", "json"}, kFermat + "\n");
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("structured output is byte-identical across runs") {
  const std::vector<std::string> args{"st", "--poly", "x^3 + y^3 + 3*y^2*z + 3*y*z^2 + 2*z^3",
                                      "--seed", "7", "--recursive", "--format", "json"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("canonical polynomial round-trips") {
  using namespace torelli;
  for (const std::string& p : {kFermat, kWeierstrass, std::string("2*x^2 - 3/4*x*y + y^2 - z^2"),
                               std::string("x0^3 + x1^3 + x2^3 + x3^3 + x4^3")}) {
    const Json j = invoke_json({"analyze", "--poly", p});
    std::vector<std::string> vars = j["input"]["vars"].get<std::vector<std::string>>();
    const HomPoly original = parse_poly(p, vars, Field::rationals());
    const HomPoly echoed = parse_poly(j["input"]["poly"].get<std::string>(), vars, Field::rationals());
    CHECK(original == echoed);
  }
}

TEST_CASE("decomposition parts are expressed in the new variables") {
  using namespace torelli;
  const Json j = invoke_json({"analyze", "--poly", "x^3 + x^2*y + y^3 + z^3 + z*w^2 + w^3", "--recursive"});
  REQUIRE(j["decomposition"].is_object());
  const auto nv = j["decomposition"]["new_vars"].get<std::vector<std::string>>();
  const HomPoly f1 = parse_poly(j["decomposition"]["f1"].get<std::string>(), nv, Field::rationals());
  const HomPoly f2 = parse_poly(j["decomposition"]["f2"].get<std::string>(), nv, Field::rationals());
  CHECK(f1.support().size() + f2.support().size() == nv.size());
  CHECK(j["decomposition"]["parts"].size() == 2);
}

TEST_CASE("golden reports") {
  const std::string dir = TORELLI_GOLDEN_DIR;
  const std::string w = kWeierstrass;
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"analyze", {"analyze", "--poly", kFermat}},
      {"st", {"st", "--poly", "x^3 + y^3 + 3*y^2*z + 3*y*z^2 + 2*z^3"}},
      {"jacobi", {"jacobi", "--poly", w}},
      {"hilbert", {"hilbert", "--poly", kFermat, "--dmax", "3"}},
      {"jump", {"jump", "--poly", kFermat, "--against", "x^2", "--against", "x*y"}},
      {"reconstruct", {"reconstruct", "--poly", w}},
      {"cubic", {"cubic", "--poly", w}},
  };
  for (auto [name, args] : cases) {
    CAPTURE(name);
    args.push_back("--format");
    args.push_back("json");
    const Outcome o = invoke(args);
    CHECK(o.code == 0);
    CHECK(o.out == read_file(dir + "/" + name + ".json"));
  }
}
