#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Run {
  int exit_code;
  std::string out;
};

/// Runs the CLI with the given arguments; stderr is merged into the output.
Run run(const std::string& args) {
  const std::string cmd = std::string(HKNODAL_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string problem(const std::string& name) { return std::string(HKNODAL_PROBLEMS) + "/" + name; }

json report(const std::string& args) {
  const auto r = run(args + " --json");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  auto j = json::parse(r.out.substr(r.out.find('{')));
  EXPECT_TRUE(j.contains("timing"));
  j.erase("timing");
  return j;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, EnPardue) {
  const auto r = run("en --p 2 --h 'x^3+y^3+x*y*z' --gens 'x,y,z' --n 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "e_1 = 7")) << r.out;
  EXPECT_TRUE(contains(run("en --problem " + problem("cubic_monomials_p2.txt") + " --n 0").out, "e_0 = 11"));
  EXPECT_TRUE(contains(run("en --problem " + problem("maximal_ideal_p7.txt") + " --q 7").out, "= 111"));
}

TEST(Cli, ExitCodes) {
  const auto bad = run("en --p 2 --h 'x^3+y^3+x*y*w' --gens 'x,y,z' --n 1");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_TRUE(contains(bad.out, "'w'")) << bad.out;
  EXPECT_EQ(run("en --p 4 --h 'x^3' --gens 'x,y,z'").exit_code, 1);
  EXPECT_EQ(run("en --p 2 --h 'x^3+y^3+x*y*z' --gens 'x,y'").exit_code, 2);
  const auto small = run("classify --problem " + problem("maximal_ideal_p2.txt") + " --n 2");
  EXPECT_EQ(small.exit_code, 3);
  EXPECT_TRUE(contains(small.out, "QTooSmall")) << small.out;
  EXPECT_TRUE(contains(small.out, "larger n")) << small.out;
  EXPECT_EQ(run("cycle '(1,1)'").exit_code, 1);
  // A smooth cubic violates the nodal hypothesis and the q = 1 prediction fails.
  EXPECT_EQ(run("verify --p 2 --h 'x^3+y^3+z^3' --gens 'x^2,y,z' --classify-n 3 --n-max 2").exit_code, 4);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
}

TEST(Cli, ClassifyCubicMonomialsP2) {
  const auto j = report("classify --problem " + problem("cubic_monomials_p2.txt") + " --n 3");
  EXPECT_EQ(j["schema"], "hknodal-report/1");
  const auto& res = j["result"];
  EXPECT_EQ(res["kernel_series"], json::parse("[[27,3],[28,12],[30,6]]"));
  EXPECT_EQ(res["classification"],
            json::parse(R"({"strands":[{"n":10,"r":5,"s":2,"B":null},{"n":11,"r":2,"s":-2,"B":null}]})"));
  EXPECT_EQ(res["coefficients"], json::parse(R"({"mu":"47/3","alpha":"-2/3","R":{"1":"4","2":"16/3"}})"));
  EXPECT_EQ(res["checks"]["rank_equals_s_minus_1"], true);
  EXPECT_EQ(res["checks"]["degree_equals_3_sum_d"], true);
}

TEST(Cli, ClassifyCubicMonomialsP3AndMaximalIdeal) {
  const auto j = report("classify --problem " + problem("cubic_monomials_p3.txt") + " --n 2");
  EXPECT_EQ(j["result"]["classification"]["strands"][0]["B"], 2);
  EXPECT_EQ(j["result"]["classification"]["strands"][1]["B"], 0);
  EXPECT_EQ(j["result"]["coefficients"]["R"], json::parse(R"({"0":"5"})"));
  const auto k = report("classify --problem " + problem("maximal_ideal_p2.txt") + " --n 4");
  EXPECT_EQ(k["result"]["coefficients"]["mu"], "7/3");
  EXPECT_EQ(k["result"]["coefficients"]["alpha"], "-1/3");
}

TEST(Cli, VerifyWorkflows) {
  for (const auto& args : {"--problem " + problem("cubic_monomials_p2.txt") + " --classify-n 3 --n-max 3",
                           "--problem " + problem("cubic_monomials_p3.txt") + " --classify-n 2 --n-max 2",
                           "--problem " + problem("maximal_ideal_p5.txt") + " --classify-n 2 --n-max 2"}) {
    const auto r = run("verify " + args);
    EXPECT_EQ(r.exit_code, 0) << r.out;
    EXPECT_FALSE(contains(r.out, "MISMATCH")) << r.out;
  }
  const auto j = report("verify --problem " + problem("cubic_monomials_p3.txt") + " --classify-n 2 --n-max 2");
  EXPECT_EQ(j["result"]["table"].size(), 2u);
}

TEST(Cli, PredictFromDataFile) {
  const auto r = run("predict --problem " + problem("cubic_monomials_p2.txt") + " --classify-n 3 --n 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.out, "992")) << r.out;
}

TEST(Cli, CycleAndPardue) {
  const auto c = report("cycle '(2,1)'");
  const auto& inv = c["result"];
  EXPECT_EQ(inv["gamma1"], 2);
  EXPECT_EQ(inv["gamma2"], 3);
  EXPECT_EQ(inv["gamma3"], 0);
  EXPECT_EQ(inv["gamma4"], 3);
  EXPECT_EQ(inv["theta"], 2);
  EXPECT_EQ(inv["series"]["P4"]["text"], "3 + 3*T");
  EXPECT_EQ(inv["series"]["P4"]["agree"], true);
  EXPECT_EQ(report("cycle '(0,-1)'")["result"]["gamma4"], 0);

  for (const auto& args : {"--p 2 --n-max 4", "--p 3 --n-max 2", "--p 7 --n-max 1"}) {
    const auto r = run(std::string("pardue ") + args);
    EXPECT_EQ(r.exit_code, 0) << r.out;
    EXPECT_FALSE(contains(r.out, "MISMATCH")) << r.out;
  }
  EXPECT_TRUE(contains(run("pardue --p 7 --n-max 1").out, "closed 111"));
  EXPECT_TRUE(contains(run("pardue --p 3 --n-max 1").out, "pipeline n/a"));
}

TEST(Cli, JsonAndTextProblemsAgree) {
  const auto a = report("series --problem " + problem("cubic_monomials_p2.txt") + " --n 2");
  const auto b = report("series --problem " + problem("cubic_monomials_p2.json") + " --n 2");
  EXPECT_EQ(a["result"], b["result"]);
  const auto c = report("series --p 2 --h 'x^3 + y^3 + x*y*z' --gens 'x^3,y^3,z^3,x^2*y,x^2*z,x*z^2,y^2*z,y*z^2' --n 2");
  EXPECT_EQ(a["result"], c["result"]);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const auto& args : {"classify --problem " + problem("cubic_monomials_p2.txt") + " --n 3",
                           "verify --problem " + problem("maximal_ideal_p3.txt") + " --classify-n 2 --n-max 2",
                           std::string("cycle '(3,0,0,-3)'")}) {
    const auto first = report(args).dump(), second = report(args).dump();
    EXPECT_EQ(first, second);
  }
  const auto threaded = report("series --problem " + problem("cubic_monomials_p2.txt") + " --n 3 --threads 3");
  auto single = report("series --problem " + problem("cubic_monomials_p2.txt") + " --n 3");
  EXPECT_EQ(threaded["result"], single["result"]);
}
