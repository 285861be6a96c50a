// Copyright 2026 The Model Transparency Kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "mtk/bench.h"
#include "mtk/cli.h"
#include "mtk/model_hash.h"
#include "test_util.h"

namespace mtk {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Mtk(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Mtk({}).code, kExitUsage);
  EXPECT_EQ(Mtk({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Mtk({"hash"}).code, kExitUsage);
  EXPECT_EQ(Mtk({"hash", ".", "--no-such-flag"}).code, kExitUsage);
  EXPECT_EQ(Mtk({"sign", "."}).code, kExitUsage);
  EXPECT_EQ(Mtk({"zks-prove", "--state", "s", "--out", "o"}).code, kExitUsage);
  EXPECT_EQ(Mtk({"zks-prove", "--state", "s", "--out", "o", "--element", "a", "--element-hex",
                 "00"})
                .code,
            kExitUsage);
  EXPECT_EQ(Mtk({"bench", "hash", "--sizes", "1K", "--runs", "2"}).code, kExitUsage);
  EXPECT_EQ(Mtk({"--help"}).code, kExitOk);
}

TEST(Cli, HashMatchesLibraryAndReportsErrors) {
  TempDir tmp;
  testing::WriteText(tmp / "m" / "a.bin", "abc");
  auto r = Mtk({"hash", (tmp / "m").string(), "--alg", "sha256", "--scheme", "chunked",
                "--chunk-size", "1K"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  HashOptions o{HashScheme::kChunked, 1024, HashAlg::kSha256, 1};
  EXPECT_EQ(r.out, HashModel(tmp / "m", o)->second.ToString() + "\n");
  auto j = Mtk({"--json", "hash", (tmp / "m").string(), "--scheme", "naive"});
  ASSERT_EQ(j.code, kExitOk);
  const json parsed = json::parse(j.out);
  EXPECT_EQ(parsed["files"][0]["path"], "a.bin");
  EXPECT_EQ(parsed["digest"].get<std::string>().rfind("sha256:naive:0:", 0), 0u);
  EXPECT_EQ(Mtk({"hash", (tmp / "missing").string()}).code, kExitError);
  EXPECT_EQ(Mtk({"hash", (tmp / "m").string(), "--alg", "md5"}).code, kExitUsage);
}

TEST(Cli, SignVerifyFlow) {
  TempDir tmp;
  SeededRng rng(1);
  testing::MakeRandomModel(tmp / "model", rng, 5, 4000);
  const std::string env = (tmp / "env").string();
  const std::string model = (tmp / "model").string();
  auto s = Mtk({"sign", model, "--identity", "alice@example.com", "--env", env,
                "--chunk-size", "1K"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_TRUE(fs::exists(tmp / "model" / "model.sig"));
  EXPECT_TRUE(fs::exists(tmp / "env" / "trust_roots.json"));
  const std::string roots = (tmp / "env" / "trust_roots.json").string();

  auto v = Mtk({"--json", "verify", model, "--trust-roots", roots, "--identity",
                "alice@example.com", "--log-mirror", (tmp / "env" / "log").string()});
  ASSERT_EQ(v.code, kExitOk) << v.out << v.err;
  EXPECT_TRUE(json::parse(v.out)["accepted"].get<bool>());

  auto wrong_id = Mtk({"--json", "verify", model, "--trust-roots", roots, "--identity", "bob"});
  EXPECT_EQ(wrong_id.code, kExitReject);
  EXPECT_EQ(json::parse(wrong_id.out)["reason"], "bad-certificate");

  std::string bytes = testing::ReadText(tmp / "model" / "w0.json");
  testing::WriteText(tmp / "model" / "w0.json", bytes + "!");
  auto mutated = Mtk({"--json", "verify", model, "--trust-roots", roots});
  EXPECT_EQ(mutated.code, kExitReject);
  EXPECT_EQ(json::parse(mutated.out)["reason"], "digest-mismatch");

  testing::WriteText(tmp / "model" / "model.sig", "{}");
  auto garbage = Mtk({"--json", "verify", model, "--trust-roots", roots});
  EXPECT_EQ(garbage.code, kExitReject);
  EXPECT_EQ(json::parse(garbage.out)["reason"], "malformed");

  EXPECT_EQ(Mtk({"verify", model, "--trust-roots", (tmp / "none.json").string()}).code,
            kExitError);

  // A second signature reuses the environment and extends the same log.
  auto s2 = Mtk({"--json", "sign", model, "--identity", "alice@example.com", "--env", env});
  ASSERT_EQ(s2.code, kExitOk) << s2.err;
  EXPECT_EQ(json::parse(s2.out)["log_index"], 1);
  EXPECT_EQ(Mtk({"log", "audit", "--log", (tmp / "env" / "log").string()}).code, kExitOk);
}

TEST(Cli, ZksFlow) {
  TempDir tmp;
  testing::WriteText(tmp / "data.txt", "alpha\nbeta\ngamma\n");
  const std::string state = (tmp / "state.bin").string();
  const std::string com = (tmp / "com.txt").string();
  const std::string proof = (tmp / "proof.bin").string();
  auto c = Mtk({"zks-commit", "--lines", (tmp / "data.txt").string(), "--state", state,
                "--commitment", com, "--lambda", "128"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_NE(testing::ReadText(com).find("\nn=3\n"), std::string::npos);

  ASSERT_EQ(Mtk({"zks-prove", "--state", state, "--element", "beta", "--out", proof}).code,
            kExitOk);
  auto member = Mtk({"--json", "zks-verify", "--commitment", com, "--element", "beta",
                     "--proof", proof});
  EXPECT_EQ(member.code, kExitOk);
  EXPECT_EQ(json::parse(member.out)["resp"], 1);
  EXPECT_EQ(Mtk({"zks-verify", "--commitment", com, "--element", "gamma", "--proof", proof}).code,
            kExitReject);

  ASSERT_EQ(Mtk({"zks-prove", "--state", state, "--element", "delta", "--out", proof}).code,
            kExitOk);
  auto non = Mtk({"--json", "zks-verify", "--commitment", com, "--element", "delta", "--proof",
                  proof});
  EXPECT_EQ(non.code, kExitOk);
  EXPECT_EQ(json::parse(non.out)["resp"], 0);

  // Directory datasets use the file digest as the element.
  testing::WriteText(tmp / "ds" / "a.csv", "1,2\n");
  testing::WriteText(tmp / "ds" / "b.csv", "3,4\n");
  ASSERT_EQ(Mtk({"zks-commit", "--dir", (tmp / "ds").string(), "--state", state, "--commitment",
                 com})
                .code,
            kExitOk);
  ASSERT_EQ(Mtk({"zks-prove", "--state", state, "--file", (tmp / "ds" / "b.csv").string(),
                 "--out", proof})
                .code,
            kExitOk);
  EXPECT_EQ(Mtk({"zks-verify", "--commitment", com, "--file", (tmp / "ds" / "b.csv").string(),
                 "--proof", proof})
                .code,
            kExitOk);
  testing::WriteText(tmp / "dup.txt", "x\ny\nx\n");
  EXPECT_EQ(Mtk({"zks-commit", "--lines", (tmp / "dup.txt").string(), "--state", state,
                 "--commitment", com})
                .code,
            kExitError);
}

TEST(Cli, LogVerbs) {
  TempDir tmp;
  const std::string log = (tmp / "log").string();
  ASSERT_EQ(Mtk({"log", "init", log}).code, kExitOk);
  EXPECT_EQ(Mtk({"log", "init", log}).code, kExitError);
  for (int i = 0; i < 5; ++i) {
    ASSERT_EQ(Mtk({"log", "append", "--log", log, "--data", "entry" + std::to_string(i)}).code,
              kExitOk);
  }
  auto p = Mtk({"--json", "log", "prove", "--log", log, "--index", "2", "--tree-size", "4"});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  const json j = json::parse(p.out);
  EXPECT_EQ(j["tree_size"], 4);
  EXPECT_EQ(j["path"].size(), 2u);
  EXPECT_EQ(Mtk({"log", "prove", "--log", log, "--index", "5", "--tree-size", "4"}).code,
            kExitError);
  EXPECT_EQ(Mtk({"log", "audit", "--log", log}).code, kExitOk);
  EXPECT_EQ(Mtk({"log"}).code, kExitUsage);
}

TEST(Cli, BenchWritesCsv) {
  TempDir tmp;
  const std::string csv = (tmp / "h.csv").string();
  auto r = Mtk({"bench", "hash", "--sizes", "1K,64K", "--runs", "5", "--out", csv,
                "--scratch", tmp.path().string(), "--chunk-size", "16K"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto records = ParseBenchCsv(testing::ReadText(csv));
  ASSERT_TRUE(records.ok());
  EXPECT_EQ(records->size(), 4u);
  auto z = Mtk({"bench", "zks", "--sizes", "10,20", "--runs", "10", "--queries", "2"});
  ASSERT_EQ(z.code, kExitOk) << z.err;
  auto zr = ParseBenchCsv(z.out);
  ASSERT_TRUE(zr.ok());
  EXPECT_EQ(zr->size(), 10u);
}

}  // namespace
}  // namespace mtk
