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

// DDH-based verifiable random function over the fixed prime-order group.
//
//   KeyGen:  sk <- F_q^*, pk = g^sk
//   Eval:    y = H1(x)^sk
//   Prove:   r <- F_q^*, s = H2(x, g^r, H1(x)^r), t = r - sk*s
//   Verify:  s == H2(x, g^t * pk^s, H1(x)^t * y^s)
//
// Proofs are randomized: every call to VrfProve draws a fresh r.

#ifndef MTK_VRF_H_
#define MTK_VRF_H_

#include <array>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"
#include "mtk/group.h"
#include "mtk/random.h"

namespace mtk {

struct VrfKeypair {
  Scalar sk;
  GroupElement pk;
};

inline constexpr size_t kVrfProofSize = 2 * kScalarSize;

struct VrfProof {
  Scalar s;
  Scalar t;

  // s || t, each 32-byte little-endian.
  std::array<uint8_t, kVrfProofSize> Serialize() const;
  static absl::StatusOr<VrfProof> Parse(ByteSpan bytes);

  friend bool operator==(const VrfProof&, const VrfProof&) = default;
};

enum class VrfVerdict {
  kAccept,
  kEquationFailed,
  // An input could not be decoded, or pk / y is the identity.
  kMalformed,
};

VrfKeypair VrfKeygen(Rng& rng);
absl::StatusOr<VrfKeypair> VrfKeypairFromSecret(const Scalar& sk);

absl::StatusOr<GroupElement> VrfEval(const Scalar& sk, ByteSpan x);

absl::StatusOr<VrfProof> VrfProve(const Scalar& sk, ByteSpan x,
                                  const GroupElement& y, Rng& rng);
// Fixed-nonce variant; exposed for reproducible test vectors only.
absl::StatusOr<VrfProof> VrfProveWithNonce(const Scalar& sk, ByteSpan x,
                                           const GroupElement& y,
                                           const Scalar& r);

VrfVerdict VrfVerify(const GroupElement& pk, ByteSpan x, const GroupElement& y,
                     const VrfProof& proof);
// Decodes pk, y and the proof first; any decoding failure is kMalformed.
VrfVerdict VrfVerifyEncoded(ByteSpan pk, ByteSpan x, ByteSpan y, ByteSpan proof);

}  // namespace mtk

#endif  // MTK_VRF_H_
