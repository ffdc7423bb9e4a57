// Black-box tests of the crossidf binary. argv[1] = binary, argv[2] = golden
// directory; both are supplied by the build.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli;
std::string g_goldens;
const std::string kScratch = "cli_scratch";

struct RunResult {
  int code = -1;
  std::string output;
};

// Runs `crossidf <args>` through the shell; redirections in args pick which
// streams land in output (none means stdout only).
RunResult run_cli(const std::string& args) {
  const std::string cmd = "'" + g_cli + "' " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  RunResult r;
  r.output = std::move(out);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string scratch_path(const std::string& name) { return kScratch + "/" + name; }

// The reference design CSV every analysis test starts from.
std::string ref_csv() {
  const std::string path = scratch_path("ref24.csv");
  if (!std::filesystem::exists(path)) {
    const auto r =
        run_cli("design --word c12629581a946483 --out '" + path + "' 2>&1");
    REQUIRE(r.code == 0);
  }
  return path;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help 2>&1").code == 0);
  const auto help = run_cli("--help 2>&1");
  CHECK(help.output.find("enumerate") != std::string::npos);
  CHECK(help.output.find("verify") != std::string::npos);
  CHECK(run_cli("2>&1").code == 2);                 // missing subcommand
  CHECK(run_cli("enumerate --bogus 2>&1").code == 2);
  CHECK(run_cli("frobnicate 2>&1").code == 2);
  CHECK(run_cli("analyze 2>&1").code == 2);         // missing required file
  CHECK(run_cli("marginals x.csv 2>&1").code == 2); // missing required --T
}

TEST_CASE("enumerate: summary line, bundle bytes, worker invariance") {
  const std::string bundle = scratch_path("bundle.json");
  const auto r = run_cli("enumerate --out '" + bundle + "' 2>&1 1>/dev/null");
  CHECK(r.code == 0);
  CHECK(r.output == "192 solutions, 1 orbit, 12 anchored representatives\n");
  CHECK(slurp(bundle) == slurp(g_goldens + "/enumeration.json"));

  const std::string bundle3 = scratch_path("bundle3.json");
  CHECK(run_cli("enumerate --workers 3 --out '" + bundle3 + "' 2>/dev/null").code == 0);
  CHECK(slurp(bundle3) == slurp(bundle));

  const auto doc = nlohmann::json::parse(slurp(bundle));
  CHECK(doc.at("solutions").size() == 192);
  CHECK(doc.at("orbits").size() == 1);
  CHECK(doc.at("representatives").size() == 12);
  CHECK(doc.at("canonical_words")[0] == "1698a443c2251968");
  CHECK(doc.at("stabilizer_orders")[0] == 12);
  CHECK(doc.at("config").at("runs") == 24);
  CHECK(doc.at("constraints").at("runs") == 24);
}

TEST_CASE("enumerate: run counts and singular wording") {
  const auto empty = run_cli("enumerate --runs 8 2>&1 1>/dev/null");
  CHECK(empty.code == 0);
  CHECK(empty.output == "0 solutions, 0 orbits, 0 anchored representatives\n");

  const auto full = run_cli("enumerate --runs 64 2>&1 1>/dev/null");
  CHECK(full.code == 0);
  CHECK(full.output == "1 solution, 1 orbit, 1 anchored representative\n");

  CHECK(run_cli("enumerate --runs 12 2>&1").code == 2);
  CHECK(run_cli("enumerate --runs=-8 2>&1").code == 2);
  CHECK(run_cli("enumerate --workers 0 2>&1").code == 2);
}

TEST_CASE("enumerate: constraint flags") {
  const auto narrowed =
      run_cli("enumerate --require-uniform 1,6,7:star 2>&1 1>/dev/null");
  CHECK(narrowed.code == 0);
  CHECK(narrowed.output == "0 solutions, 0 orbits, 0 anchored representatives\n");

  const auto kept =
      run_cli("enumerate --forbid-uniform 1,6,7:star 2>&1 1>/dev/null");
  CHECK(kept.code == 0);
  CHECK(kept.output.rfind("192 solutions", 0) == 0);

  CHECK(run_cli("enumerate --require-uniform 1,2,x 2>&1").code == 2);
  CHECK(run_cli("enumerate --require-uniform 1,2,3:both 2>&1").code == 2);
  CHECK(run_cli("enumerate --require-uniform 0,1,2 2>&1").code == 2);
  CHECK(run_cli("enumerate --anchor 1,1 2>&1").code == 2);
  CHECK(run_cli("enumerate --anchor 1,1,1,1,1,2 2>&1").code == 2);

  // Anchoring on a point no solution misses more than both defaults do.
  const auto anchored = run_cli(
      "enumerate --anchor=-1,-1,-1,-1,-1,-1 2>&1 1>/dev/null");
  CHECK(anchored.code == 0);
  CHECK(anchored.output.find("192 solutions, 1 orbit,") == 0);
}

TEST_CASE("analyze: formats and term order") {
  const std::string csv = ref_csv();
  const std::string rep = scratch_path("report.json");
  CHECK(run_cli("analyze '" + csv + "' --out '" + rep + "' 2>&1").code == 0);
  const auto doc = nlohmann::json::parse(slurp(rep));
  CHECK(doc.at("strength").at("free") == 3);
  CHECK(doc.at("strength").at("star") == 2);
  CHECK(doc.at("design").at("word") == "c12629581a946483");
  CHECK(doc.at("quotient_basis").size() == 24);
  CHECK(doc.at("confounding").at("rows").size() == 24);
  CHECK(doc.at("confounding").at("columns").size() == 28);
  CHECK(doc.at("star_profile").at("cross_profile").at("pass") == true);

  const auto csv_out = run_cli("analyze '" + csv + "' --format csv");
  CHECK(csv_out.code == 0);
  CHECK(csv_out.output == slurp(g_goldens + "/confounding.csv"));

  const auto text = run_cli("analyze '" + csv + "' --format text");
  CHECK(text.code == 0);
  CHECK(text.output.find("c12629581a946483") != std::string::npos);
  CHECK(text.output.find("strength") != std::string::npos);

  CHECK(run_cli("analyze '" + csv + "' --format xml 2>&1").code == 2);
  CHECK(run_cli("analyze '" + csv + "' --order x1 2>&1").code == 2);
  CHECK(run_cli("analyze '" + csv + "' --order x1,x2,x3,x4,x5,x6,y1,y2,zz 2>&1")
            .code == 2);
  const std::string full_order = "y3,y2,y1,x6,x5,x4,x3,x2,x1";
  CHECK(run_cli("analyze '" + csv + "' --order " + full_order + " 2>/dev/null")
            .code == 0);
}

TEST_CASE("analyze: parse failures carry file and line") {
  const std::string bad = scratch_path("bad.csv");
  spit(bad, "x1,x2\n");
  const auto r = run_cli("analyze '" + bad + "' 2>&1");
  CHECK(r.code == 3);
  CHECK(r.output.find(bad + ":1:") != std::string::npos);

  spit(bad, "x1,x2,x3,y1,y2,y3\n-1,1,1,-1,1,7\n");
  const auto r2 = run_cli("analyze '" + bad + "' 2>&1");
  CHECK(r2.code == 3);
  CHECK(r2.output.find(bad + ":2:") != std::string::npos);

  CHECK(run_cli("analyze no_such_file.csv 2>&1").code == 3);
}

TEST_CASE("verify: green on the shipped goldens, red on damage") {
  const auto ok = run_cli("verify --dir '" + g_goldens + "' 2>&1");
  CHECK(ok.code == 0);
  CHECK(ok.output == "verified 6 golden artifacts\n");
  CHECK(run_cli("verify --dir '" + g_goldens + "' --workers 3 2>&1").code == 0);

  const std::string dir = scratch_path("goldens_copy");
  std::filesystem::remove_all(dir);
  const auto update = run_cli("verify --dir '" + dir + "' --update 2>&1");
  CHECK(update.code == 0);
  CHECK(update.output == "wrote 6 golden artifacts to " + dir + "\n");
  CHECK(run_cli("verify --dir '" + dir + "' 2>&1").code == 0);
  for (const char* name : {"enumeration.json", "representatives.json",
                           "design24.csv", "design32.csv", "quotient_basis.json",
                           "confounding.csv"})
    CHECK(slurp(dir + "/" + name) == slurp(g_goldens + "/" + name));

  // A flipped coefficient is diagnosed, not just detected.
  std::string reps = slurp(dir + "/representatives.json");
  const auto pos = reps.find("-1/8");
  REQUIRE(pos != std::string::npos);
  reps.replace(pos, 4, "1/-8");
  spit(dir + "/representatives.json", reps);
  const auto red = run_cli("verify --dir '" + dir + "' 2>&1");
  CHECK(red.code == 1);
  CHECK(red.output.find("mismatch: representatives.json") != std::string::npos);
  CHECK(red.output.find("coefficient of") != std::string::npos);

  std::filesystem::remove(dir + "/design32.csv");
  const auto missing = run_cli("verify --dir '" + dir + "' 2>&1");
  CHECK(missing.code == 1);
  CHECK(missing.output.find("design32.csv: missing golden file") != std::string::npos);

  CHECK(run_cli("verify --dir no_such_dir 2>&1").code == 1);
  CHECK(run_cli("verify --workers 0 2>&1").code == 2);
}

TEST_CASE("design and indicator round-trip through files") {
  const std::string csv = ref_csv();
  CHECK(slurp(csv) == slurp(g_goldens + "/design24.csv"));

  const std::string ind = scratch_path("ind.json");
  CHECK(run_cli("indicator '" + csv + "' --out '" + ind + "' 2>&1").code == 0);
  const auto doc = nlohmann::json::parse(slurp(ind));
  CHECK(doc.at("n") == 6);
  CHECK(doc.at("terms").size() == 16);

  const std::string back = scratch_path("back.csv");
  CHECK(run_cli("design '" + ind + "' --out '" + back + "' 2>&1").code == 0);
  CHECK(slurp(back) == slurp(csv));

  const std::string free_csv = scratch_path("free.csv");
  CHECK(run_cli("design --word c12629581a946483 --free --out '" + free_csv +
                "' 2>&1")
            .code == 0);
  CHECK(slurp(free_csv).rfind("x1,x2,x3,y1,y2,y3\n", 0) == 0);
  // Free-space CSV reloads to the same design.
  const auto ind2 = run_cli("indicator '" + free_csv + "'");
  CHECK(ind2.code == 0);
  CHECK(ind2.output == slurp(ind));
}

TEST_CASE("design: argument validation") {
  const std::string ind = scratch_path("ind.json");
  CHECK(run_cli("design 2>&1").code == 2);  // neither file nor --word
  CHECK(run_cli("design '" + ind + "' --word ff 2>&1").code == 2);  // both
  CHECK(run_cli("design --word zz 2>&1").code == 2);
  CHECK(run_cli("design --word 0123456789abcdef0 2>&1").code == 2);
  CHECK(run_cli("design no_such.json 2>&1").code == 3);

  // Valid JSON that is not an indicator is a config error, not an I/O error.
  const std::string notind = scratch_path("notind.json");
  spit(notind,
       R"({"n": 6, "vars": ["x1","x2","x3","y1","y2","y3"],
           "terms": [{"support": [], "num": 1, "den": 3}]})");
  const auto r = run_cli("design '" + notind + "' 2>&1");
  CHECK(r.code == 2);
  CHECK(r.output.find("not an indicator") != std::string::npos);

  const std::string garbled = scratch_path("garbled.json");
  spit(garbled, "{\"n\": 6,");
  CHECK(run_cli("design '" + garbled + "' 2>&1").code == 3);
}

TEST_CASE("strength and marginals") {
  const std::string csv = ref_csv();
  const auto s = run_cli("strength '" + csv + "'");
  CHECK(s.code == 0);
  CHECK(s.output == "free: 3\nstar: 2\n");

  const auto m = run_cli("marginals '" + csv + "' --T 1,2:free");
  CHECK(m.code == 0);
  const auto doc = nlohmann::json::parse(m.output);
  CHECK(doc.at("T") == nlohmann::json::array({1, 2}));
  CHECK(doc.at("star") == false);
  CHECK(doc.at("counts") == nlohmann::json::array({6, 6, 6, 6}));
  CHECK(doc.at("uniform") == true);

  const auto m2 = run_cli("marginals '" + csv + "' --T 1,6,7:star");
  CHECK(m2.code == 0);
  CHECK(nlohmann::json::parse(m2.output).at("uniform") == false);

  // Repeated --T concatenates one document per subset.
  const auto both = run_cli("marginals '" + csv + "' --T 1:free --T 2:free");
  CHECK(both.code == 0);
  CHECK(std::count(both.output.begin(), both.output.end(), '{') == 2);

  CHECK(run_cli("marginals '" + csv + "' --T 1,2:both 2>&1").code == 2);
  CHECK(run_cli("marginals '" + csv + "' --T 0 2>&1").code == 2);
  CHECK(run_cli("marginals '" + csv + "' --T 10:star 2>&1").code == 2);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_tests <crossidf-binary> <golden-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_goldens = argv[2];
  std::filesystem::remove_all(kScratch);
  std::filesystem::create_directories(kScratch);
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
