#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfz/coefficients.hpp"
#include "lfz/io.hpp"
#include "lfz/verify.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path work = LFZ_WORK_DIR;
const fs::path cache = LFZ_CACHE_DIR;

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  fs::create_directories(work);
  const auto o = work / "stdout.txt", e = work / "stderr.txt";
  const std::string cmd = "cd '" + work.string() + "' && '" + std::string(LFZ_BIN) + "' " + args + " > '" + o.string() +
                          "' 2> '" + e.string() + "'";
  const int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

// small tables keep the process tests quick
const std::string common = "--table_length 10000 --cache '" + cache.string() + "' ";

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  // RFC 4180 reader, test side
  std::vector<std::vector<std::string>> rows(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(field);
      field.clear();
    } else if (c == '\n') {
      rows.back().push_back(field);
      field.clear();
      rows.emplace_back();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (rows.back().empty()) rows.pop_back();
  return rows;
}

}  // namespace

TEST_CASE("csv quoting and atomic writes") {
  CHECK(lfz::csv_quote("plain") == "plain");
  CHECK(lfz::csv_quote("a,b") == "\"a,b\"");
  CHECK(lfz::csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(lfz::csv_quote("two\nlines") == "\"two\nlines\"");
  lfz::CsvTable t({"k", "v"});
  t.add_row({"x,y", "1"});
  t.add_row({"q\"", "line\nbreak"});
  const auto rows = parse_csv(t.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][0] == "x,y");
  CHECK(rows[2][0] == "q\"");
  CHECK(rows[2][1] == "line\nbreak");
  CHECK_THROWS(t.add_row({"only one"}));

  const auto p = work / "atomic" / "file.txt";
  fs::remove_all(p.parent_path());
  lfz::write_atomically(p, "first");
  lfz::write_atomically(p, "second");
  CHECK(slurp(p) == "second");
  CHECK(std::distance(fs::directory_iterator(p.parent_path()), fs::directory_iterator()) == 1);

  for (double x : {0.55, 0.1, 1e-300, 123456.789, -2.5, 1.0 / 3.0}) CHECK(std::stod(lfz::format_double(x)) == x);
  CHECK(lfz::format_double(0.55) == "0.55");
}

TEST_CASE("eval reports the dispatch regime") {
  auto r = run(common + "eval 5 --m 0");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["regime"] == "series");
  r = run(common + "eval 0.5+14i --m 0");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["regime"] == "completed");
  CHECK(j["s_im"] == 14.0);
  CHECK(j["error_estimate"].get<double>() < 1e-10);
  r = run(common + "eval -3 --m 1");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["regime"] == "reflected");
  // one line per order
  r = run(common + "eval 2-1.5i --m 0,2");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string a, b;
  std::getline(lines, a);
  std::getline(lines, b);
  CHECK(json::parse(a)["m"] == 0);
  CHECK(json::parse(b)["m"] == 2);
  CHECK(json::parse(b)["s_im"] == -1.5);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run(common + "count --T ''").code == 2);
  CHECK(run(common + "count --grid 30:20:10").code == 2);
  CHECK(run(common + "count --T 20 --grid 20:40:10").code == 2);
  CHECK(run(common + "count --T 150").code == 2);
  CHECK(run(common + "eval 1 --m 5").code == 2);
  CHECK(run(common + "eval 1 --weight 14").code == 2);
  CHECK(run(common + "eval 1 --precision quad").code == 2);
  CHECK(run(common + "eval not-a-number").code == 2);
  CHECK(run(common + "density --sigma 0.4").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  std::ofstream(work / "bad.cfg") << "weight = 12\ncolour = blue\n";
  const auto r = run(common + "count --config bad.cfg");
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);
  CHECK(run("--help").code == 0);
}

TEST_CASE("count writes the documented columns") {
  fs::remove_all(work / "count");
  const auto r = run(common + "count --m 0,1 --T 20,40 --out count");
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(slurp(work / "count" / "count.csv"));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"m", "T", "count", "main_term", "deviation", "deviation/logT"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double T = std::stod(rows[i][1]), n = std::stod(rows[i][2]), main = std::stod(rows[i][3]);
    CHECK(std::stod(rows[i][4]) == doctest::Approx(n - main).epsilon(1e-12));
    CHECK(std::stod(rows[i][5]) == doctest::Approx((n - main) / std::log(T)).epsilon(1e-12));
  }
  // (T/pi) log(T/(2 pi e)) at T = 40, 30 digits
  CHECK(std::stod(rows[2][3]) == doctest::Approx(10.8352989268952962273).epsilon(1e-13));
  const auto j = json::parse(slurp(work / "count" / "count.json"));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 4);
  for (const auto& row : j) {
    CHECK(row.contains("provenance"));
    CHECK(row["provenance"]["table_length"] == 10000);
    CHECK(row["rounding_gap"].get<double>() <= 0.01);
    CHECK(row.contains("strip"));
  }
  CHECK(j[1]["count"].get<int>() == std::stoi(rows[2][2]));
  for (const auto& e : fs::directory_iterator(work / "count")) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("config file with flag overrides, deterministic output") {
  fs::remove_all(work / "cfg");
  std::ofstream(work / "run.cfg") << "# comment\nweight = 12\nm = 1\nT = 20\nout = cfg\n";
  auto r = run(common + "count --config run.cfg --T 30");
  REQUIRE(r.code == 0);
  auto rows = parse_csv(slurp(work / "cfg" / "count.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "1");
  CHECK(rows[1][1] == "30");
  const std::string first = slurp(work / "cfg" / "count.csv") + slurp(work / "cfg" / "count.json");
  r = run(common + "count --config run.cfg --T 30 --jobs 3");
  REQUIRE(r.code == 0);
  CHECK(slurp(work / "cfg" / "count.csv") + slurp(work / "cfg" / "count.json") == first);
  // grid flag replaces a T list from the file
  r = run(common + "count --config run.cfg --grid 20:30:5");
  REQUIRE(r.code == 0);
  rows = parse_csv(slurp(work / "cfg" / "count.csv"));
  CHECK(rows.size() == 4);
}

TEST_CASE("density, mean square, littlewood and zeros outputs") {
  fs::remove_all(work / "misc");
  auto r = run(common + "density --m 0,1 --T 20 --sigma 0.55,0.95 --out misc");
  CHECK(r.code == 0);
  auto rows = parse_csv(slurp(work / "misc" / "density.csv"));
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "true");

  r = run(common + "meansquare --m 0 --T 10,20 --sigma 2 --out misc");
  CHECK(r.code == 0);
  rows = parse_csv(slurp(work / "misc" / "meansquare.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(std::stod(rows[2][6])) <= 2);

  r = run(common + "littlewood --m 1 --T 20 --sigma 0.6 --out misc");
  CHECK(r.code == 0);
  rows = parse_csv(slurp(work / "misc" / "littlewood.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].back() == "true");

  r = run(common + "zeros --m 0 --T 20 --out misc");
  CHECK(r.code == 0);
  rows = parse_csv(slurp(work / "misc" / "zeros.csv"));
  // four zeros of L_Delta below height 20
  REQUIRE(rows.size() == 5);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(9.2223793999).epsilon(1e-9));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) == doctest::Approx(0.5).epsilon(1e-9));

  r = run(common + "coeffs --rows 3 --out misc");
  CHECK(r.code == 0);
  rows = parse_csv(slurp(work / "misc" / "coeffs_k12.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[2][1] == "-24");
  CHECK(rows[3][1] == "252");
}

TEST_CASE("a corrupted cache is rebuilt and logged") {
  const fs::path dir = work / "corrupt_cache";
  fs::remove_all(dir);
  auto r = run("--table_length 10000 --cache '" + dir.string() + "' eval 2");
  REQUIRE(r.code == 0);
  const auto file = lfz::cache_file(dir, 12);
  REQUIRE(fs::exists(file));
  // flip one coefficient
  std::string text = slurp(file);
  const auto pos = text.find("\n7 -16744\n");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 9, "\n7 -16745");
  std::ofstream(file, std::ios::binary) << text;
  std::string why;
  CHECK(!lfz::load_table(file, lfz::EigenformSpec(12), 10000, &why));

  r = run("--table_length 10000 --cache '" + dir.string() + "' eval 2");
  CHECK(r.code == 0);
  CHECK(r.err.find("rebuilding") != std::string::npos);
  CHECK(r.err.find("checksum") != std::string::npos);
  CHECK(lfz::load_table(file, lfz::EigenformSpec(12), 10000).has_value());
}

TEST_CASE("verify with T up to 20 finishes inside a minute, from a cold cache") {
  const fs::path dir = work / "verify_cache";
  fs::remove_all(dir);
  fs::remove_all(work / "verify20");
  std::ofstream(work / "verify20.cfg") << "T = 20\nout = verify20\ncache = " << dir.string() << "\n";
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run("verify --config verify20.cfg");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("verify, T <= 20: " << secs << " s");
  CHECK(secs < 60);
  // 1 means some check failed; the report still lists every criterion
  CHECK((r.code == 0 || r.code == 1));
  const auto j = json::parse(slurp(work / "verify20" / "verify.json"));
  REQUIRE(j["checks"].size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(j["checks"][i]["criterion"] == i + 1);
  CHECK((r.code == 0) == j["all_pass"].get<bool>());
  CHECK(r.out.find("criterion 1 ") != std::string::npos);
}
