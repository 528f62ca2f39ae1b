#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Output {
  std::string out;
  int code = -1;
  json doc() const { return json::parse(out); }
};

Output run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + MACSEL_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  Output r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("macsel_cli_" + std::to_string(getpid()) + "_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, PolyExamples) {
  EXPECT_EQ(run("poly 1 --n 2").out, "m[1]\n");
  EXPECT_EQ(run("poly 2 --n 2").out, "m[2] + ((q*t-q+t-1)/(q*t-1))*m[1,1]\n");
  EXPECT_EQ(run("poly 1,1,1 --n 2").out, "0\n");
  json d = run("poly '(2,1)' --basis jack --format json").doc();
  EXPECT_EQ(d["schema"], "macsel-report/1");
  auto terms = d["reports"][0]["info"]["terms"];
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[1]["coeff"], "(6)/(alpha+2)");
}

TEST(Cli, VerifyCases) {
  Output a = run("verify thm12 --n 1 --m 1 --deg 4");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.doc()["reports"][0]["status"], "pass");
  Output b = run("verify qbt --n 2 --deg 0");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(b.doc()["reports"][0]["params"]["deg"], 0);
}

TEST(Cli, UnknownCaseIsAStructuredFailure) {
  Output r = run("verify no_such_case");
  EXPECT_EQ(r.code, 1);
  json d = r.doc();
  EXPECT_EQ(d["passed"], false);
  EXPECT_EQ(d["reports"][0]["status"], "fail");
  EXPECT_TRUE(d["reports"][0]["info"].contains("error"));
}

TEST(Cli, QChecks) {
  Output q = run("qcheck qbeta");
  EXPECT_EQ(q.code, 0);
  EXPECT_EQ(q.doc()["config"]["q"], "1/2");
  Output a = run("qcheck ahk --n 2 --k 1 --alpha 2 --beta 2");
  EXPECT_EQ(a.code, 0);
  Output t = run("qcheck thm41 --n 2 --m 0 --lambda 1");
  EXPECT_EQ(t.code, 0);
  json info = t.doc()["reports"][0]["info"];
  EXPECT_TRUE(info.contains("qkm_rel_diff"));
}

TEST(Cli, SelbergBetaAndCsv) {
  Output r = run("selberg --k1 0 --k2 1 --alpha2 2 --beta2 2 --samples 100000");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["reports"][0]["status"], "pass");
  Output c = run("selberg --k1 1 --k2 1 --beta1 0.7 --gamma 0.2 --samples 100000 --format csv");
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "seq,order,weight,value,error");
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 3);
}

TEST(Cli, SelbergBudget) {
  Output r = run("selberg --k1 3 --k2 3 --method quad");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.doc()["reports"][0]["info"]["error"].get<std::string>().find("budget"), std::string::npos);
  Output m = run("selberg --samples 1000 --max-samples 10");
  EXPECT_EQ(m.code, 1);
}

TEST(Cli, ByteIdenticalReports) {
  const std::string args = "selberg --k1 1 --k2 1 --beta1 0.7 --gamma 0.2 --samples 200000 --seed 7 --no-timing";
  Output a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  // The worker count changes the config block but not the results.
  Output w = run(args + " --workers 3");
  EXPECT_EQ(w.doc()["config"]["workers"], 3);
  EXPECT_EQ(w.doc()["reports"], a.doc()["reports"]);
  Output v1 = run("verify thmPQ --n 2 --wmax 3 --no-timing"), v2 = run("verify thmPQ --n 2 --wmax 3 --no-timing");
  EXPECT_EQ(v1.out, v2.out);
}

TEST(Cli, EnvironmentOverrides) {
  fs::path dir = scratch("env");
  Output r = run("cache warm --wmax 2", "MACSEL_WORKERS=2 MACSEL_CACHE_DIR=" + dir.string());
  EXPECT_EQ(r.doc()["config"]["workers"], 2);
  EXPECT_EQ(r.doc()["reports"][0]["params"]["dir"], dir.string());
  EXPECT_TRUE(fs::exists(dir));
  // A flag beats the variable.
  Output f = run("cache list --workers 1", "MACSEL_WORKERS=2 MACSEL_CACHE_DIR=" + dir.string());
  EXPECT_EQ(f.doc()["config"]["workers"], 1);
  fs::remove_all(dir);
}

TEST(Cli, CacheLifecycle) {
  fs::path dir = scratch("life");
  const std::string d = " --cache-dir " + dir.string();
  json w1 = run("cache warm --wmax 5 --n 3" + d).doc()["reports"][0]["info"];
  EXPECT_EQ(w1["records_before"]["macdonald"], 0);
  EXPECT_EQ(w1["records"]["macdonald"], 19);  // every partition of weight 1..5
  json w2 = run("cache warm --wmax 5 --n 3" + d).doc()["reports"][0]["info"];
  EXPECT_EQ(w2["records_before"], w2["records"]);
  EXPECT_EQ(w2["records"], w1["records"]);
  EXPECT_EQ(run("cache list" + d).doc()["reports"][0]["info"]["records"]["jack"], 19);
  EXPECT_EQ(run("cache clear" + d).doc()["reports"][0]["info"]["records"]["macdonald"], 0);
  EXPECT_EQ(run("cache list" + d).doc()["reports"][0]["info"]["records"]["macdonald"], 0);
  fs::remove_all(dir);
}

TEST(Cli, WarmAndColdCacheAgree) {
  fs::path dir = scratch("transparent");
  const std::string args = "verify thmPQ --n 2 --wmax 3 --no-timing";
  Output none = run(args);
  Output cold = run(args + " --cache-dir " + dir.string());
  Output warm = run(args + " --cache-dir " + dir.string());
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(cold.out, none.out);
  EXPECT_EQ(warm.out, none.out);
  EXPECT_EQ(run("poly 3,1 --basis Q --cache-dir " + dir.string()).out, run("poly 3,1 --basis Q").out);
  fs::remove_all(dir);
}

TEST(Cli, CorruptRecordsAreRecomputed) {
  fs::path dir = scratch("corrupt");
  const std::string d = " --cache-dir " + dir.string();
  run("cache warm --wmax 3" + d);
  json files = run("cache list" + d).doc()["reports"][0]["info"]["files"];
  fs::path mac = files[0].get<std::string>();
  ASSERT_TRUE(fs::exists(mac));
  // Flip one digit in the norm of the last record.
  std::ifstream in(mac);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  in.close();
  auto pos = text.rfind("\"norm\"");
  ASSERT_NE(pos, std::string::npos);
  pos = text.find_first_of("0123456789", pos);
  text[pos] = text[pos] == '7' ? '8' : '7';
  std::ofstream(mac) << text;
  EXPECT_GE(run("cache list" + d).doc()["reports"][0]["info"]["corrupt_records"].get<int>(), 1);
  EXPECT_EQ(run("poly 1,1,1 --basis Q" + d).out, run("poly 1,1,1 --basis Q").out);
  EXPECT_EQ(run("verify thmPQ --n 2 --wmax 3 --no-timing" + d).out, run("verify thmPQ --n 2 --wmax 3 --no-timing").out);
  fs::remove_all(dir);
}
