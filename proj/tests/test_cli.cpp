#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = mgs::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MGS_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("mgs_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kA2 = R"({"format":"iceq-v1","mutable":2,"frozen":0,"arrows":[[1,2,1]]})";

}  // namespace

TEST(Cli, Mutate) {
  auto a2 = temp_file("a2.iceq", kA2);
  auto r = run({"mutate", a2, "1"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "{\"format\":\"iceq-v1\",\"mutable\":2,\"frozen\":0,\"arrows\":[[2,1,1]]}\n");
  EXPECT_EQ(run({"mutate", a2, "1,1"}).out, std::string(kA2) + "\n");
  EXPECT_EQ(run({"mutate", a2, "3"}).status, 2);
  EXPECT_EQ(run({"mutate", "-i", a2, "2"}).status, 0);
}

TEST(Cli, Check) {
  auto a2 = temp_file("a2.iceq", kA2);
  auto ok = run({"check", a2, "1,2"});
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out, "ValidMaximalGreen\n");
  auto short_seq = run({"check", a2, "2,1"});
  EXPECT_EQ(short_seq.status, 1);
  EXPECT_EQ(short_seq.out, "ValidGreen\n");
  EXPECT_EQ(run({"check", a2, temp_file("bad.seq", "1,,2")}).status, 2);
  EXPECT_EQ(run({"check", a2, temp_file("good.seq", "2 1 2\n")}).status, 0);
  EXPECT_EQ(run({"check", data("missing.iceq"), "1"}).status, 2);
}

TEST(Cli, Surface) {
  auto q = run({"surface", "quiver", data("torus4_fig1.tagtri")});
  EXPECT_EQ(q.status, 0);
  EXPECT_NE(q.out.find("\"mutable\":12"), std::string::npos);
  auto c = run({"surface", "construct", data("genus2_tstar.tagtri")});
  EXPECT_EQ(c.status, 0);
  EXPECT_NE(c.out.find("ValidMaximalGreen"), std::string::npos);
  auto tr = run({"surface", "construct", data("genus2_tstar.tagtri"), "--trace"});
  EXPECT_NE(tr.out.find("\"name\":\"cycle:P1\""), std::string::npos);
  auto trace = temp_file("tstar.trace", tr.out);
  auto iceq = temp_file("tstar.iceq", q.status == 0 ? run({"surface", "quiver", data("genus2_tstar.tagtri")}).out : "");
  EXPECT_EQ(run({"check", iceq, trace}).status, 0);
  auto once = run({"surface", "construct", data("torus1.tagtri")});
  EXPECT_EQ(once.status, 2);
  EXPECT_NE(once.err.find("no maximal green sequence"), std::string::npos);
  EXPECT_EQ(run({"surface", "construct", data("disk5.tagtri")}).status, 0);
  auto f = run({"surface", "flip", data("torus4_fig1.tagtri"), "3,3"});
  EXPECT_EQ(f.status, 0);
}

TEST(Cli, Classes) {
  auto e = run({"class", "enumerate", "--seed", "x7"});
  EXPECT_EQ(e.status, 0);
  EXPECT_EQ(e.out, "2\n");
  EXPECT_EQ(run({"class", "enumerate", "--seed", "nope"}).status, 2);
  auto path = (std::filesystem::temp_directory_path() / "mgs_cli_x6.catalog").string();
  EXPECT_EQ(run({"class", "catalog", "--seed", "x6", "--max-len", "24", "-o", path}).status, 0);
  auto v = run({"class", "verify", path});
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(v.out, "x6 5 members, 5 verified\n");
}

TEST(Cli, SearchAndUsage) {
  auto a2 = temp_file("a2.iceq", kA2);
  auto s = run({"search", a2});
  EXPECT_EQ(s.status, 0);
  EXPECT_EQ(s.out, "1,2\n");
  auto x7 = run({"search", "--seed", "x7"});
  EXPECT_EQ(x7.status, 1);
  EXPECT_EQ(x7.out, "NotFoundWithin(20)\n");
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"search"}).status, 2);
}
