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

#include "mtk/model_hash.h"
#include "test_util.h"

namespace mtk {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;
using testing::WriteBytes;
using testing::WriteText;

const fs::path& Oracle() {
  static const fs::path p = testing::SourceDir() / "tools" / "oracle" / "model_hash_oracle.py";
  return p;
}

HashOptions Chunked(uint64_t chunk, unsigned workers = 1, HashAlg alg = HashAlg::kSha256) {
  return {HashScheme::kChunked, chunk, alg, workers};
}

HashOptions Naive(HashAlg alg = HashAlg::kSha256) { return {HashScheme::kNaive, 0, alg, 1}; }

TEST(ModelHash, ChunkedFormulaByHand) {
  TempDir tmp;
  const std::string content = "abcdefghij";  // chunks abcd efgh ij
  WriteText(tmp / "f", content);
  Hasher outer(HashAlg::kSha256);
  for (std::string_view c : {"abcd", "efgh", "ij"}) outer.Update(Sha256(c));
  EXPECT_EQ(HashFile(tmp / "f", Chunked(4))->digest, outer.Finish());
  EXPECT_EQ(HashFile(tmp / "f", Naive())->digest, Sha256(content));
}

TEST(ModelHash, EmptyFileIsOneEmptyChunk) {
  TempDir tmp;
  WriteText(tmp / "empty", "");
  const Digest inner = Sha256(std::string_view());
  EXPECT_EQ(HashFile(tmp / "empty", Chunked(1024))->digest, Sha256(ByteSpan(inner)));
}

TEST(ModelHash, ChunkBoundariesMatchOracle) {
  TempDir tmp;
  SeededRng rng(1);
  std::string requests;
  std::vector<std::pair<fs::path, uint64_t>> cases;
  int i = 0;
  for (uint64_t size : {0, 1, 1023, 1024, 1025, 4096, 4097, 100000}) {
    for (uint64_t chunk : {1, 1024, 4096, 1 << 20}) {
      const fs::path p = tmp / ("f" + std::to_string(i++));
      WriteBytes(p, rng.RandomBytes(size));
      cases.emplace_back(p, chunk);
      requests += "file\t" + p.string() + "\tsha256\t" + std::to_string(chunk) + "\n";
    }
  }
  const auto expected = testing::RunPython(Oracle(), requests);
  ASSERT_EQ(expected.size(), cases.size());
  for (size_t k = 0; k < cases.size(); ++k) {
    EXPECT_EQ(DigestHex(HashFile(cases[k].first, Chunked(cases[k].second, 3))->digest),
              expected[k]);
  }
}

TEST(ModelHash, WorkerCountDoesNotChangeDigest) {
  TempDir tmp;
  SeededRng rng(2);
  WriteBytes(tmp / "f", rng.RandomBytes(3'000'001));
  const Digest one = HashFile(tmp / "f", Chunked(65536, 1))->digest;
  for (unsigned w : {2u, 4u, 16u, 0u}) {
    EXPECT_EQ(HashFile(tmp / "f", Chunked(65536, w))->digest, one);
  }
}

TEST(ModelHash, DirectoryMatchesOracleBothAlgorithms) {
  TempDir tmp;
  SeededRng rng(3);
  testing::MakeRandomModel(tmp / "model", rng, 12, 50000);
  WriteText(tmp / "model" / "model.sig", "ignored");
  WriteText(tmp / "model" / "sub" / "nested.sig", "ignored");
  const std::string req = "dir\t" + (tmp / "model").string() + "\tsha256\t4096\n" + "dir\t" +
                          (tmp / "model").string() + "\tblake2b256\t0\n";
  const auto expected = testing::RunPython(Oracle(), req);
  ASSERT_EQ(expected.size(), 2u);
  auto chunked = HashModel(tmp / "model", Chunked(4096, 2));
  ASSERT_TRUE(chunked.ok());
  EXPECT_EQ(DigestHex(chunked->second.digest), expected[0]);
  EXPECT_EQ(chunked->first.entries.size(), 12u);
  auto naive = HashModel(tmp / "model", Naive(HashAlg::kBlake2b256));
  ASSERT_TRUE(naive.ok());
  EXPECT_EQ(DigestHex(naive->second.digest), expected[1]);
}

TEST(ModelHash, ManifestTextAndOrdering) {
  TempDir tmp;
  WriteText(tmp / "m" / "b.bin", "bb");
  WriteText(tmp / "m" / "a" / "z.json", "z");
  WriteText(tmp / "m" / "B.txt", "");
  auto res = HashModel(tmp / "m", Naive());
  ASSERT_TRUE(res.ok());
  const std::string text = res->first.Serialize(Naive());
  const std::string want = "mtk-manifest/v1\tsha256\tnaive\t0\n"
                           "B.txt\t0\t" + DigestHex(Sha256(std::string_view())) + "\n"
                           "a/z.json\t1\t" + DigestHex(Sha256(std::string_view("z"))) + "\n"
                           "b.bin\t2\t" + DigestHex(Sha256(std::string_view("bb"))) + "\n";
  EXPECT_EQ(text, want);
  EXPECT_EQ(res->second.digest, Sha256(want));
  EXPECT_EQ(ManifestDigest(res->first, Naive()), res->second.digest);
}

TEST(ModelHash, ContentAndPathChangesChangeDigest) {
  TempDir tmp;
  SeededRng rng(4);
  testing::MakeRandomModel(tmp / "m", rng, 6, 2000);
  const Digest base = HashModel(tmp / "m", Chunked(512))->second.digest;
  WriteText(tmp / "m" / "extra", "");
  const Digest with_extra = HashModel(tmp / "m", Chunked(512))->second.digest;
  EXPECT_NE(with_extra, base);
  fs::remove(tmp / "m" / "extra");
  EXPECT_EQ(HashModel(tmp / "m", Chunked(512))->second.digest, base);
  fs::rename(tmp / "m" / "w1.bin", tmp / "m" / "w1b.bin");
  EXPECT_NE(HashModel(tmp / "m", Chunked(512))->second.digest, base);
  // Different parameters give different digests over the same bytes.
  EXPECT_NE(HashModel(tmp / "m", Chunked(512))->second.digest,
            HashModel(tmp / "m", Chunked(1024))->second.digest);
}

TEST(ModelHash, SingleFileModel) {
  TempDir tmp;
  WriteText(tmp / "weights.bin", "xyz");
  auto res = HashModel(tmp / "weights.bin", Naive());
  ASSERT_TRUE(res.ok());
  ASSERT_EQ(res->first.entries.size(), 1u);
  EXPECT_EQ(res->first.entries[0].path, "weights.bin");
  EXPECT_EQ(res->first.entries[0].size, 3u);
  EXPECT_EQ(res->second.digest, Sha256(std::string_view("xyz")));
}

TEST(ModelHash, SymlinksInsideFollowedOutsideRejected) {
  TempDir tmp;
  WriteText(tmp / "m" / "real.bin", "data");
  fs::create_directory_symlink(tmp / "m", tmp / "m" / "loop");
  fs::create_symlink(tmp / "m" / "real.bin", tmp / "m" / "alias.bin");
  auto ok = HashModel(tmp / "m", Naive());
  ASSERT_TRUE(ok.ok()) << ok.status();
  ASSERT_EQ(ok->first.entries.size(), 2u);
  EXPECT_EQ(ok->first.entries[0].digest, ok->first.entries[1].digest);
  WriteText(tmp / "secret", "outside");
  fs::create_symlink(tmp / "secret", tmp / "m" / "escape");
  EXPECT_EQ(HashModel(tmp / "m", Naive()).status().code(), absl::StatusCode::kPermissionDenied);
}

TEST(ModelHash, RejectsTabsAndBadInputs) {
  TempDir tmp;
  WriteText(tmp / "m" / "a\tb", "x");
  EXPECT_EQ(HashModel(tmp / "m", Naive()).status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(HashModel(tmp / "missing", Naive()).ok());
  WriteText(tmp / "f", "x");
  EXPECT_FALSE(HashFile(tmp / "f", Chunked(0)).ok());
  EXPECT_FALSE(HashFile(tmp.path(), Naive()).ok());
}

TEST(ModelHash, DigestStringRoundTrip) {
  ModelDigest d{HashScheme::kChunked, 1 << 20, HashAlg::kBlake2b256, Sha256(std::string_view("a"))};
  const std::string s = d.ToString();
  EXPECT_EQ(s, "blake2b256:chunked:1048576:" + DigestHex(d.digest));
  EXPECT_EQ(*ModelDigest::FromString(s), d);
  EXPECT_FALSE(ModelDigest::FromString("sha256:naive:5:" + DigestHex(d.digest)).ok());
  EXPECT_FALSE(ModelDigest::FromString("sha256:chunked:0:" + DigestHex(d.digest)).ok());
  EXPECT_FALSE(ModelDigest::FromString("sha256:chunked:8:abcd").ok());
  EXPECT_EQ(*ParseHashScheme("naive"), HashScheme::kNaive);
  EXPECT_FALSE(ParseHashScheme("tree").ok());
}

}  // namespace
}  // namespace mtk
