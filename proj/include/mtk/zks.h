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

// Zero-knowledge set over the VRF and the Patricia-Merkle accumulator.
//
// Commit places element D_i at trie key H(VRF.Eval(sk, D_i)) with leaf value
// H(D_i || r_i) for fresh lambda-bit randomness r_i, and publishes
// (pk, root, n). A query proves the VRF evaluation for D and then either the
// inclusion of the leaf at H(y) (member, with the opening r) or the
// non-inclusion of H(y) (non-member). Published leakage is the set size n.

#ifndef MTK_ZKS_H_
#define MTK_ZKS_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "mtk/accumulator.h"
#include "mtk/bytes.h"
#include "mtk/group.h"
#include "mtk/random.h"
#include "mtk/vrf.h"

namespace mtk {

inline constexpr std::string_view kZksScheme = "mtk-zks-v1";
inline constexpr size_t kZksMinLambdaBits = 128;
inline constexpr size_t kZksDefaultLambdaBits = 256;

// Trie key for a VRF output: SHA-256("mtk.zks.v1.key" || enc(y)).
TrieKey ZksTrieKey(const GroupElement& y);
// Hiding commitment stored at the leaf:
// SHA-256("mtk.zks.v1.commit" || u64-BE len(D) || D || r).
Digest ZksLeafValue(ByteSpan element, ByteSpan opening);
// Canonical element for a dataset file: SHA-256 of the file bytes.
Digest DatasetElement(ByteSpan file_bytes);

// Public part of a commitment. Its text form is the record embedded in an
// AI bill of materials:
//
//   scheme=mtk-zks-v1
//   group=ristretto255
//   hash=sha256
//   pk=<64 hex chars>
//   root=<64 hex chars>
//   n=<decimal set size>
struct ZksCommitment {
  GroupElement pk;
  TrieCommitment com;

  std::string ToText() const;
  static absl::StatusOr<ZksCommitment> FromText(std::string_view text);
  friend bool operator==(const ZksCommitment&, const ZksCommitment&) = default;
};

enum class ZksResponse : uint8_t { kNonMember = 0, kMember = 1 };

struct ZksQueryProof {
  ZksResponse resp = ZksResponse::kNonMember;
  GroupElement y;
  VrfProof vrf_proof;
  std::variant<InclusionProof, NonInclusionProof> acc_proof;
  Bytes opening;  // r; member proofs only

  // "MTKZ" | u8 version | framed group id | u8 resp | y | s || t
  //        | framed accumulator proof | [framed r]
  Bytes Serialize() const;
  static absl::StatusOr<ZksQueryProof> Parse(ByteSpan bytes);
};

enum class ZksVerdict {
  kAccept,
  kResponseMismatch,  // resp disagrees with the proof's kind
  kVrfFailed,
  kAccumulatorFailed,
  kMalformed,
};

std::string_view ZksVerdictName(ZksVerdict v);

class ZksState {
 public:
  // Elements must be pairwise distinct; the error names the duplicate by
  // index. lambda_bits >= 128 and a multiple of 8.
  static absl::StatusOr<std::pair<ZksState, ZksCommitment>> Commit(
      std::vector<Bytes> elements, size_t lambda_bits, Rng& rng, unsigned workers = 1);

  ZksCommitment commitment() const { return {keypair_.pk, trie_.commitment()}; }
  size_t size() const { return elements_.size(); }
  size_t lambda_bits() const { return lambda_bits_; }
  const PatriciaTrie& trie() const { return trie_; }
  // Accumulator key of the i-th committed element.
  const TrieKey& key(size_t i) const { return keys_[i]; }

  absl::StatusOr<ZksQueryProof> Query(ByteSpan element, Rng& rng) const;

  // Secret prover state (contains sk and all openings).
  Bytes Serialize() const;
  static absl::StatusOr<ZksState> Parse(ByteSpan bytes, unsigned workers = 1);

 private:
  ZksState() = default;
  absl::Status Index();

  VrfKeypair keypair_;
  size_t lambda_bits_ = kZksDefaultLambdaBits;
  std::vector<Bytes> elements_;
  std::vector<Bytes> openings_;
  std::vector<TrieKey> keys_;
  std::unordered_map<std::string, size_t> index_;
  PatriciaTrie trie_ = *PatriciaTrie::Build({});
};

ZksVerdict ZksVerify(const ZksCommitment& commitment, ByteSpan element,
                     ZksResponse resp, const ZksQueryProof& proof);

}  // namespace mtk

#endif  // MTK_ZKS_H_
