#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

std::filesystem::path cache_file() {
  static const auto path = std::filesystem::temp_directory_path() / ("zerosum-cli-test-" + std::to_string(::getpid()) + ".json");
  return path;
}

Run run(const std::string& args) {
  const std::string cmd =
      "ZEROSUM_CACHE='" + cache_file().string() + "' '" + std::string(ZEROSUM_CLI_PATH) + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = ::pclose(pipe);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json first_json(const Run& r) { return nlohmann::json::parse(r.out.substr(0, r.out.find('\n'))); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { std::filesystem::remove(cache_file()); }
  void TearDown() override { std::filesystem::remove(cache_file()); }
};

}  // namespace

TEST_F(Cli, GroupNegativeS) {
  auto r = run("group -m 4 -n 3 -s -1");
  ASSERT_EQ(r.rc, 0);
  auto j = first_json(r);
  EXPECT_EQ(j["order"], 12);
  EXPECT_EQ(j["ord_n_s"], 2);
  EXPECT_EQ(j["subgroups"][0]["name"], "<x^2*y>");
  EXPECT_EQ(j["subgroups"][0]["order"], 6);
  EXPECT_EQ(j["subgroups"][0]["normal"], true);
}

TEST_F(Cli, GroupCyclic) {
  auto j = first_json(run("group -m 1 -n 5 -s 1"));
  EXPECT_EQ(j["order"], 5);
  EXPECT_EQ(j["cyclic"], true);
}

TEST_F(Cli, GroupKleinQuotient) {
  auto j = first_json(run("group -m 4 -n 10 -s 3"));
  EXPECT_EQ(j["subgroups"][1]["name"], "<x^2, y^2>");
  EXPECT_EQ(j["subgroups"][1]["order"], 10);
  EXPECT_EQ(j["subgroups"][1]["quotient_klein_four"], true);
}

TEST_F(Cli, DavExact) {
  auto r = run("dav -m 4 -n 3 -s -1 --exact --no-cache");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(first_json(r)["d"]["exact"], 6);
  EXPECT_EQ(first_json(run("dav -m 2 -n 2 -s 1 --exact --no-cache"))["d"]["exact"], 2);
}

TEST_F(Cli, GaoExact) {
  auto r = run("gao -m 2 -n 3 -s -1 --exact --no-cache");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(first_json(r)["E"]["exact"], 9);
}

TEST_F(Cli, BudgetExceededExitCode) {
  EXPECT_EQ(run("gao -m 4 -n 3 -s -1 --exact --no-cache").rc, 2);
  EXPECT_EQ(run("gao -m 4 -n 3 -s -1 --exact --no-cache --bounds-ok").rc, 0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("dav -m 3 -n 7 -s 3").rc, 3);
  EXPECT_EQ(run("dav").rc, 3);
  EXPECT_EQ(run("frobnicate").rc, 3);
  EXPECT_EQ(run("verify-cert -m 2 -n 3 -s 2 --seq 'x^5' --claim po-free").rc, 3);
}

TEST_F(Cli, BassExitCodes) {
  EXPECT_EQ(run("bass -m 2 -n 3 -s 2").rc, 0);
  EXPECT_EQ(run("bass -m 4 -n 3 -s -1").rc, 1);
  EXPECT_EQ(run("bass -m 2 -n 8 -s 7").rc, 2);
}

TEST_F(Cli, VerifyCert) {
  auto ok = run("verify-cert -m 2 -n 3 -s -1 --seq '1^[5]·x·x*y·x*y^2' --claim 6-po-free");
  EXPECT_EQ(ok.rc, 0);
  EXPECT_EQ(first_json(ok)["verified"], true);
  auto bad = run("verify-cert -m 2 -n 3 -s -1 --seq 'y^[3]' --claim po-free");
  EXPECT_EQ(bad.rc, 1);
  auto j = first_json(bad);
  EXPECT_EQ(j["verified"], false);
  EXPECT_EQ(j["witness"]["subsequence"], "y^[3]");
  EXPECT_EQ(j["witness"]["product"], "1");
}

TEST_F(Cli, Scan) {
  auto r = run("scan --m 4..8 --n 3..9");
  ASSERT_EQ(r.rc, 0);
  for (const char* t : {"\"m\":4,\"n\":3,\"s\":2", "\"m\":4,\"n\":5,\"s\":4", "\"m\":4,\"n\":7,\"s\":6"})
    EXPECT_NE(r.out.find(t), std::string::npos) << t;
}

TEST_F(Cli, AuditB) {
  auto r = run("audit-b --m0 2 --n0 3 --sigma -1");
  ASSERT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("1^[5]·x·x*y·x*y^2"), std::string::npos);
  const auto last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  auto j = nlohmann::json::parse(last);
  EXPECT_EQ(j["summary"]["template_matches"], 18);
  EXPECT_EQ(j["summary"]["exceptions"], 1);
}

TEST_F(Cli, Pairs) {
  auto r = run("pairs -m 4 -n 10 -s 3 --random 52 --seed 3");
  ASSERT_EQ(r.rc, 0);
  auto j = first_json(r);
  EXPECT_GE(j["pair_count"].get<int>(), 24);
  EXPECT_EQ(j["h_order"], 10);
}

TEST_F(Cli, Deterministic) {
  for (const char* args : {"dav -m 4 -n 3 -s -1 --exact --no-timestamp", "scan --m 4..6 --n 3..7",
                           "pairs --random 52 --seed 9", "audit-b"}) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST_F(Cli, CacheRoundTrip) {
  auto fresh = run("gao -m 2 -n 3 -s 2 --exact --no-timestamp");
  ASSERT_EQ(fresh.rc, 0);
  auto list = run("cache list");
  EXPECT_NE(list.out.find("\"key\""), std::string::npos);
  auto cached = run("gao -m 2 -n 3 -s 2 --exact --no-timestamp");
  EXPECT_EQ(cached.out, fresh.out);
  auto uncached = run("gao -m 2 -n 3 -s 2 --exact --no-timestamp --no-cache");
  EXPECT_EQ(uncached.out, fresh.out);
  EXPECT_EQ(run("cache clear").rc, 0);
  EXPECT_TRUE(run("cache list").out.empty());
  EXPECT_NE(run("cache path").out.find(cache_file().filename().string()), std::string::npos);
}
