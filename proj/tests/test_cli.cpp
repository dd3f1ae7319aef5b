#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using chordal::cli::run;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int s = run(args, out, err);
  return {s, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(CHORDAL_TEST_TMP) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("command examples") {
  auto dims = call({"dims", "--space", "A", "--degree", "1"});
  CHECK(dims.status == 0);
  auto j = nlohmann::json::parse(dims.out);
  CHECK(j["dimension"] == 1);
  CHECK(j["meta"]["command"] == "dims");

  auto hopf = call({"verify", "--suite", "hopf", "--degree", "0"});
  CHECK(hopf.status == 0);
  CHECK(nlohmann::json::parse(hopf.out)["pass"] == true);

  auto ws = call({"ws", "--algebra", "sl2", "--rep", "1", "--diagram", "11", "--mode", "trace"});
  CHECK(ws.status == 0);
  CHECK(nlohmann::json::parse(ws.out)["value"] == "3");
}

TEST_CASE("usage errors exit 2") {
  CHECK(call({}).status == 2);
  CHECK(call({"dims"}).status == 2);
  CHECK(call({"dims", "--space", "Q", "--degree", "1"}).status == 2);
  CHECK(call({"dims", "--space", "A", "--degree", "1", "--format", "xml"}).status == 2);
  CHECK(call({"ws", "--algebra", "so3", "--rep", "1", "--diagram", "11"}).status == 2);
  CHECK(call({"reduce", "--space", "A", "--degree", "2", "--diagram", "11"}).status == 2);
  CHECK(call({"reduce", "--space", "A", "--degree", "1", "--diagram", "12"}).status == 2);
  auto help = call({"--help"});
  CHECK(help.status == 0);
  CHECK(help.out.find("decomposition") != std::string::npos);
}

TEST_CASE("verification failure exits 1") {
  auto path = temp_file("v01.lie",
                        "dim 3\nf 1 2 2 2\nf 2 1 2 -2\nf 1 3 3 -2\nf 3 1 3 2\nf 2 3 1 1\nf 3 2 1 -1\n"
                        "b 1 1 2\nb 2 3 1\nb 3 2 1\n"
                        "rho 1 1 2 2 1\nrho 1 1 3 3 -1\nrho 2 1 2 3 1\nrho 3 1 3 2 1\n");
  auto r = call({"ws", "--algebra", "file:" + path, "--rep", "1", "--diagram", "11"});
  CHECK(r.status == 1);
  CHECK(nlohmann::json::parse(r.out)["value"].is_null());
}

TEST_CASE("formats") {
  auto csv = call({"dims", "--space", "A", "--degree", "2", "--format", "csv"});
  CHECK(csv.out == "index,diagram\n0,1122\n1,1212\n");
  auto text = call({"ws", "--rep", "2", "--diagram", "1122", "--format", "text"});
  CHECK(text.out.find("value: 16") != std::string::npos);
  auto red = call({"reduce", "--space", "A", "--degree", "2", "--diagram", "1/2*1212", "--diagram", "1122"});
  auto j = nlohmann::json::parse(red.out);
  CHECK(j["coordinates"][0]["coefficient"] == "1");
  CHECK(j["coordinates"][1]["coefficient"] == "1/2");
}

TEST_CASE("config files") {
  auto cfg = temp_file("run.cfg", "# defaults\ndegree = 2\nformat = csv\n");
  auto r = call({"--config", cfg, "dims", "--space", "A"});
  CHECK(r.status == 0);
  CHECK(r.out == "index,diagram\n0,1122\n1,1212\n");
  auto over = call({"--config", cfg, "dims", "--space", "A", "--degree", "1"});
  CHECK(over.out == "index,diagram\n0,11\n");
  auto bad = temp_file("bad.cfg", "degre = 2\n");
  CHECK(call({"--config", bad, "dims", "--space", "A"}).status == 2);
}

TEST_CASE("output file") {
  const std::string path = std::string(CHORDAL_TEST_TMP) + "/dims.json";
  auto r = call({"--output", path, "dims", "--space", "G", "--degree", "2"});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(nlohmann::json::parse(ss.str())["dimension"] == 2);
}

TEST_CASE("reports do not depend on the number of jobs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "--suite", "primitives", "--degree", "3"},
           {"verify", "--suite", "lemker", "--legs", "2", "--grade", "1"},
           {"dims", "--space", "M", "--legs", "4", "--degree", "0"}}) {
    auto base = call(args);
    for (const char* jobs : {"4", "8"}) {
      auto with = args;
      with.insert(with.begin(), {"--jobs", jobs});
      CHECK(call(with).out == base.out);
    }
  }
}
