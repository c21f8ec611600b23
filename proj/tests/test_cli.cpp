#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eip/cli.hpp"

using namespace eip;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eip");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("eip-cli-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& body) const {
    const auto p = path / name;
    std::ofstream(p) << body;
    return p.string();
  }
};

std::string cube_text() {
  std::string s;
  for (int x = 1; x <= 3; ++x) {
    for (int y = 1; y <= 3; ++y) {
      for (int z = 1; z <= 3; ++z) s += std::to_string(x) + " " + std::to_string(y) + " " + std::to_string(z) + "\n";
    }
  }
  return s;
}

}  // namespace

TEST_CASE("perimeter and fluctuation") {
  TempDir dir;
  const std::string cube = dir.file("cube.txt", cube_text());
  const Run p = run({"perimeter", cube});
  CHECK(p.code == kExitOk);
  CHECK(p.out == "n 27\nbonds 54\nperimeter 54\n");
  const Run f = run({"fluctuation", cube});
  CHECK(f.code == kExitOk);
  CHECK(f.out == "n,ax,ay,az,sym_diff,ratio\n27,0,0,0,37,3.123769\n");
  const Run j = run({"fluctuation", "--json", cube});
  CHECK(j.out.find("\"sym_diff\": 37") != std::string::npos);
  const Run sq = run({"perimeter", dir.file("sq.txt", "0 0\n0 1\n1 0\n1 1\n")});
  CHECK(sq.out == "n 4\nbonds 4\nperimeter 8\n");
}

TEST_CASE("daisy and cuboidify") {
  TempDir dir;
  const Run d = run({"daisy", "5"});
  CHECK(d.code == kExitOk);
  CHECK(d.out == "# daisy d=5 s=2 s'=2 e=1\n1 1\n1 2\n1 3\n2 1\n2 2\n");
  const std::string out = (dir.path / "q.txt").string();
  const std::string trace = (dir.path / "trace.csv").string();
  const Run c = run({"cuboidify", dir.file("cube.txt", cube_text()), "-o", out, "--trace", trace, "--merge"});
  CHECK(c.code == kExitOk);
  std::ifstream t(trace);
  std::string header;
  std::getline(t, header);
  CHECK(header == "step_label,moved_points,bonds");
  CHECK(std::filesystem::exists(out));
}

TEST_CASE("construct-lower and scans") {
  TempDir dir;
  const Run c = run({"construct-lower", "--s", "4", "--out-dir", dir.path.string()});
  CHECK(c.code == kExitOk);
  CHECK(c.out.find("\"bonds_M2\": 159") != std::string::npos);
  CHECK(std::filesystem::exists(dir.path / "M2.txt"));

  const Run s3 = run({"scan-3d", "--s-min", "2", "--s-max", "6"});
  CHECK(s3.code == kExitOk);
  CHECK(s3.out.rfind("s,n,d,h1,bound_value,sym_diff,baseline_gap,ratio_bound,ratio_measured,bonds_conserved\n4,71,", 0) == 0);
  CHECK(s3.err.find("skipped 2") != std::string::npos);
  const Run again = run({"scan-3d", "--s-min", "2", "--s-max", "6", "--threads", "3"});
  CHECK(again.out == s3.out);

  const Run s2 = run({"scan-2d", "--s-min", "50", "--s-max", "70"});
  CHECK(s2.code == kExitOk);
  CHECK(s2.out.rfind("s,d,sym_diff,twice_bound,ratio\n50,", 0) == 0);
  CHECK(s2.err.rfind("fitted_exponent ", 0) == 0);
}

TEST_CASE("oracle subcommand") {
  TempDir dir;
  const Run r = run({"oracle", "--dim", "3", "--n", "8", "--cache-dir", dir.path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("max_bonds 12") != std::string::npos);
  CHECK(std::filesystem::exists(dir.path / "oracle-d3-n8-redelmeier-1.txt"));
  CHECK(run({"oracle", "--dim", "3", "--n", "8", "--cache-dir", dir.path.string()}).out == r.out);
  CHECK(run({"oracle", "--dim", "3", "--n", "11"}).code == kExitUsage);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"daisy", "0"}).code == kExitUsage);
  CHECK(run({"scan-2d", "--s-min", "9", "--s-max", "3"}).code == kExitUsage);
  CHECK(run({"construct-lower", "--s", "3"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"perimeter", (dir.path / "missing.txt").string()}).code == kExitData);
  const Run dup = run({"perimeter", dir.file("dup.txt", "1 1 1\n1 1 1\n")});
  CHECK(dup.code == kExitData);
  CHECK(dup.err.find("line 2") != std::string::npos);
  const Run gap = run({"cuboidify", dir.file("gap.txt", "0 0 0\n0 0 2\n")});
  CHECK(gap.code == kExitData);
  CHECK(gap.err.find("not an EIP minimizer") != std::string::npos);
}

TEST_CASE("verify --quick") {
  const Run v = run({"verify", "--quick"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("FAIL") == std::string::npos);
  CHECK(v.out.find("PASS cuboidify: every small minimizer") != std::string::npos);
}
