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

#include "json.hpp"
#include "mtk/group.h"
#include "mtk/vrf.h"
#include "test_util.h"

namespace mtk {
namespace {

using json = nlohmann::json;
using testing::ReadText;
using testing::SourceDir;

const json& Vectors() {
  static const json v =
      json::parse(ReadText(SourceDir() / "tests/data/group_vrf_vectors_v1.json"));
  return v;
}

Bytes Hex(const json& j) { return *HexDecode(j.get<std::string>()); }

Scalar ScalarHex(const json& j) { return *Scalar::FromBytes(Hex(j)); }

// Double-and-add over the group law only; shares nothing with libsodium's
// scalar multiplication ladder.
GroupElement SlowMul(const GroupElement& p, const Scalar& k) {
  GroupElement acc;
  for (int i = 255; i >= 0; --i) {
    acc = acc + acc;
    if ((k.bytes()[i / 8] >> (i % 8)) & 1) acc = acc + p;
  }
  return acc;
}

TEST(ExpandMessageXmd, Rfc9380Sha512Vectors) {
  const std::string_view dst = "QUUX-V01-CS02-with-expander-SHA512-256";
  EXPECT_EQ(HexEncode(*ExpandMessageXmdSha512(AsBytes(""), dst, 0x20)),
            "6b9a7312411d92f921c6f68ca0b6380730a1a4d982c507211a90964c394179ba");
  EXPECT_EQ(HexEncode(*ExpandMessageXmdSha512(AsBytes("abc"), dst, 0x20)),
            "0da749f12fbe5483eb066a5f595055679b976e93abe9be6f0f6318bce7aca8dc");
}

TEST(ExpandMessageXmd, MatchesPythonOracle) {
  for (const json& v : Vectors()["expand_message_xmd_sha512"]) {
    auto out = ExpandMessageXmdSha512(Hex(v["msg_hex"]), v["dst"].get<std::string>(),
                                      v["len"].get<size_t>());
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(HexEncode(*out), v["out_hex"].get<std::string>());
  }
}

TEST(ExpandMessageXmd, RejectsBadParameters) {
  EXPECT_FALSE(ExpandMessageXmdSha512(AsBytes("x"), "", 32).ok());
  EXPECT_FALSE(ExpandMessageXmdSha512(AsBytes("x"), "d", 0).ok());
  EXPECT_FALSE(ExpandMessageXmdSha512(AsBytes("x"), "d", 255 * 64 + 1).ok());
  EXPECT_FALSE(ExpandMessageXmdSha512(AsBytes("x"), std::string(256, 'd'), 32).ok());
}

TEST(HashToGroup, MatchesPythonOracle) {
  for (const json& v : Vectors()["hash_to_group"]) {
    EXPECT_EQ(HexEncode(HashToGroup(Hex(v["msg_hex"])).bytes()),
              v["point_hex"].get<std::string>());
  }
}

TEST(HashToGroup, DeterministicDistinctCanonical) {
  const GroupElement a = HashToGroup(AsBytes("a"));
  EXPECT_EQ(a, HashToGroup(AsBytes("a")));
  EXPECT_NE(a.bytes(), HashToGroup(AsBytes("b")).bytes());
  const GroupElement x = HashToGroup(AsBytes("x"));
  EXPECT_EQ(GroupElement::FromBytes(x.bytes())->bytes(), x.bytes());
}

TEST(HashToScalar, MatchesPythonOracle) {
  for (const json& v : Vectors()["hash_to_scalar"]) {
    std::vector<Bytes> parts;
    for (const json& p : v["parts_hex"]) parts.push_back(Hex(p));
    std::vector<ByteSpan> spans(parts.begin(), parts.end());
    EXPECT_EQ(HexEncode(HashToScalar(spans).bytes()), v["scalar_hex"].get<std::string>());
  }
}

TEST(HashToScalar, FramingSeparatesPartBoundaries) {
  EXPECT_NE(HashToScalar({AsBytes("ab"), AsBytes("c")}),
            HashToScalar({AsBytes("a"), AsBytes("bc")}));
  EXPECT_NE(HashToScalar({AsBytes("a")}), HashToScalar({AsBytes("a"), AsBytes("")}));
}

TEST(Group, BaseMulMatchesPythonOracle) {
  for (const json& v : Vectors()["base_mul"]) {
    EXPECT_EQ(HexEncode(BaseMul(ScalarHex(v["k_hex"])).bytes()),
              v["point_hex"].get<std::string>());
  }
  EXPECT_EQ(HexEncode(GroupElement::Generator().bytes()),
            "e2f2ae0a6abc4e71a884a961c500515f58e30b6aa582dd8db6a65945e08d2d76");
}

TEST(Group, ScalarMulMatchesDoubleAndAdd) {
  SeededRng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Scalar k = Scalar::RandomNonzero(rng);
    const GroupElement p = HashToGroup(rng.RandomBytes(16));
    EXPECT_EQ(p * k, SlowMul(p, k));
    EXPECT_EQ(BaseMul(k), SlowMul(GroupElement::Generator(), k));
  }
}

TEST(Group, IdentityAndOrder) {
  const GroupElement g = GroupElement::Generator();
  EXPECT_TRUE((g * Scalar::Zero()).IsIdentity());
  EXPECT_TRUE((g - g).IsIdentity());
  EXPECT_EQ(g + GroupElement::Identity(), g);
  // (q - 1) * g + g = identity.
  EXPECT_TRUE((g * (-Scalar::One()) + g).IsIdentity());
}

TEST(Group, ScalarArithmetic) {
  const Scalar a = Scalar::FromU64(5), b = Scalar::FromU64(7);
  EXPECT_EQ(a + b, Scalar::FromU64(12));
  EXPECT_EQ(b - a, Scalar::FromU64(2));
  EXPECT_EQ(a * b, Scalar::FromU64(35));
  EXPECT_EQ(a - b + b, a);
  EXPECT_EQ(BaseMul(a + b), BaseMul(a) + BaseMul(b));
}

TEST(Group, RejectsNonCanonicalEncodings) {
  // q itself, little-endian.
  const Bytes q = *HexDecode("edd3f55c1a631258d69cf7a2def9de1400000000000000000000000000000010");
  EXPECT_FALSE(Scalar::FromBytes(q).ok());
  EXPECT_FALSE(Scalar::FromBytes(Bytes(31)).ok());
  Bytes bad(32, 0xff);
  EXPECT_FALSE(GroupElement::FromBytes(bad).ok());
  Bytes odd(32, 0);
  odd[0] = 1;  // negative field element
  EXPECT_FALSE(GroupElement::FromBytes(odd).ok());
  EXPECT_TRUE(GroupElement::FromBytes(Bytes(32, 0))->IsIdentity());
}

TEST(Vrf, MatchesPythonOracleVectors) {
  for (const json& v : Vectors()["vrf"]) {
    const Scalar sk = ScalarHex(v["sk_hex"]);
    const Bytes x = Hex(v["x_hex"]);
    auto kp = VrfKeypairFromSecret(sk);
    ASSERT_TRUE(kp.ok());
    EXPECT_EQ(HexEncode(kp->pk.bytes()), v["pk_hex"].get<std::string>());
    auto y = VrfEval(sk, x);
    ASSERT_TRUE(y.ok());
    EXPECT_EQ(HexEncode(y->bytes()), v["y_hex"].get<std::string>());
    auto proof = VrfProveWithNonce(sk, x, *y, ScalarHex(v["nonce_hex"]));
    ASSERT_TRUE(proof.ok());
    EXPECT_EQ(HexEncode(proof->Serialize()), v["proof_hex"].get<std::string>());
    EXPECT_EQ(VrfVerifyEncoded(Hex(v["pk_hex"]), x, Hex(v["y_hex"]), Hex(v["proof_hex"])),
              VrfVerdict::kAccept);
  }
}

TEST(Vrf, SecretKeyOneGivesHashToGroup) {
  auto y = VrfEval(Scalar::One(), AsBytes("x"));
  EXPECT_EQ(*y, HashToGroup(AsBytes("x")));
}

TEST(Vrf, HonestTriplesAccept) {
  SeededRng rng(1);
  const VrfKeypair kp = VrfKeygen(rng);
  for (int i = 0; i < 50; ++i) {
    const Bytes x = rng.RandomBytes(rng.Uniform(64));
    const GroupElement y = *VrfEval(kp.sk, x);
    const VrfProof pi = *VrfProve(kp.sk, x, y, rng);
    EXPECT_EQ(VrfVerify(kp.pk, x, y, pi), VrfVerdict::kAccept);
  }
}

TEST(Vrf, ProofsAreRandomizedOutputsAreNot) {
  SeededRng rng(2);
  const VrfKeypair kp = VrfKeygen(rng);
  const GroupElement y1 = *VrfEval(kp.sk, AsBytes("m"));
  EXPECT_EQ(y1, *VrfEval(kp.sk, AsBytes("m")));
  EXPECT_NE(*VrfProve(kp.sk, AsBytes("m"), y1, rng), *VrfProve(kp.sk, AsBytes("m"), y1, rng));
}

TEST(Vrf, TamperingRejects) {
  SeededRng rng(3);
  const VrfKeypair kp = VrfKeygen(rng);
  const std::string_view xs = "input";
  const ByteSpan x = AsBytes(xs);
  const GroupElement y = *VrfEval(kp.sk, x);
  const VrfProof pi = *VrfProve(kp.sk, x, y, rng);
  // Wrong output, wrong input, wrong key, swapped proof halves.
  EXPECT_NE(VrfVerify(kp.pk, x, y + GroupElement::Generator(), pi), VrfVerdict::kAccept);
  EXPECT_NE(VrfVerify(kp.pk, AsBytes("inpuT"), y, pi), VrfVerdict::kAccept);
  EXPECT_NE(VrfVerify(VrfKeygen(rng).pk, x, y, pi), VrfVerdict::kAccept);
  EXPECT_NE(VrfVerify(kp.pk, x, y, VrfProof{pi.t, pi.s}), VrfVerdict::kAccept);
  // Every single-bit flip of the encoded proof.
  const auto enc = pi.Serialize();
  for (size_t bit = 0; bit < enc.size() * 8; ++bit) {
    auto bad = enc;
    bad[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    EXPECT_NE(VrfVerifyEncoded(kp.pk.bytes(), x, y.bytes(), bad), VrfVerdict::kAccept) << bit;
  }
}

TEST(Vrf, MalformedInputs) {
  SeededRng rng(4);
  const VrfKeypair kp = VrfKeygen(rng);
  const GroupElement y = *VrfEval(kp.sk, AsBytes("x"));
  const VrfProof pi = *VrfProve(kp.sk, AsBytes("x"), y, rng);
  EXPECT_EQ(VrfVerify(GroupElement::Identity(), AsBytes("x"), y, pi), VrfVerdict::kMalformed);
  EXPECT_EQ(VrfVerify(kp.pk, AsBytes("x"), GroupElement::Identity(), pi),
            VrfVerdict::kMalformed);
  EXPECT_EQ(VrfVerifyEncoded(Bytes(31), AsBytes("x"), y.bytes(), pi.Serialize()),
            VrfVerdict::kMalformed);
  EXPECT_EQ(VrfVerifyEncoded(kp.pk.bytes(), AsBytes("x"), y.bytes(), Bytes(63)),
            VrfVerdict::kMalformed);
  EXPECT_FALSE(VrfEval(Scalar::Zero(), AsBytes("x")).ok());
  EXPECT_FALSE(VrfKeypairFromSecret(Scalar::Zero()).ok());
}

}  // namespace
}  // namespace mtk
