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

#include "mtk/vrf.h"

#include <sodium.h>

#include <algorithm>

#include "absl/status/status.h"

namespace mtk {
namespace {

Scalar Challenge(ByteSpan x, const GroupElement& u, const GroupElement& v) {
  return HashToScalar({x, ByteSpan(u.bytes()), ByteSpan(v.bytes())});
}

}  // namespace

std::array<uint8_t, kVrfProofSize> VrfProof::Serialize() const {
  std::array<uint8_t, kVrfProofSize> out;
  std::copy(s.bytes().begin(), s.bytes().end(), out.begin());
  std::copy(t.bytes().begin(), t.bytes().end(), out.begin() + kScalarSize);
  return out;
}

absl::StatusOr<VrfProof> VrfProof::Parse(ByteSpan bytes) {
  if (bytes.size() != kVrfProofSize) {
    return absl::InvalidArgumentError("VRF proof must be 64 bytes");
  }
  auto s = Scalar::FromBytes(bytes.first(kScalarSize));
  if (!s.ok()) return s.status();
  auto t = Scalar::FromBytes(bytes.last(kScalarSize));
  if (!t.ok()) return t.status();
  return VrfProof{*s, *t};
}

VrfKeypair VrfKeygen(Rng& rng) {
  Scalar sk = Scalar::RandomNonzero(rng);
  return VrfKeypair{sk, BaseMul(sk)};
}

absl::StatusOr<VrfKeypair> VrfKeypairFromSecret(const Scalar& sk) {
  if (sk.IsZero()) return absl::InvalidArgumentError("VRF secret key is zero");
  return VrfKeypair{sk, BaseMul(sk)};
}

absl::StatusOr<GroupElement> VrfEval(const Scalar& sk, ByteSpan x) {
  if (sk.IsZero()) return absl::InvalidArgumentError("VRF secret key is zero");
  return HashToGroup(x) * sk;
}

absl::StatusOr<VrfProof> VrfProveWithNonce(const Scalar& sk, ByteSpan x,
                                           const GroupElement& y,
                                           const Scalar& r) {
  (void)y;  // y is implied by (sk, x); the challenge does not hash it.
  if (sk.IsZero()) return absl::InvalidArgumentError("VRF secret key is zero");
  if (r.IsZero()) return absl::InvalidArgumentError("VRF nonce is zero");
  const GroupElement h = HashToGroup(x);
  const Scalar s = Challenge(x, BaseMul(r), h * r);
  const Scalar t = r - sk * s;
  return VrfProof{s, t};
}

absl::StatusOr<VrfProof> VrfProve(const Scalar& sk, ByteSpan x,
                                  const GroupElement& y, Rng& rng) {
  Scalar r = Scalar::RandomNonzero(rng);
  auto proof = VrfProveWithNonce(sk, x, y, r);
  sodium_memzero(&r, sizeof(r));
  return proof;
}

VrfVerdict VrfVerify(const GroupElement& pk, ByteSpan x, const GroupElement& y,
                     const VrfProof& proof) {
  if (pk.IsIdentity() || y.IsIdentity()) return VrfVerdict::kMalformed;
  const GroupElement h = HashToGroup(x);
  const GroupElement u = BaseMul(proof.t) + pk * proof.s;
  const GroupElement v = h * proof.t + y * proof.s;
  const Scalar expected = Challenge(x, u, v);
  if (sodium_memcmp(expected.bytes().data(), proof.s.bytes().data(), kScalarSize) != 0) {
    return VrfVerdict::kEquationFailed;
  }
  return VrfVerdict::kAccept;
}

VrfVerdict VrfVerifyEncoded(ByteSpan pk, ByteSpan x, ByteSpan y, ByteSpan proof) {
  auto pk_e = GroupElement::FromBytes(pk);
  auto y_e = GroupElement::FromBytes(y);
  auto pi = VrfProof::Parse(proof);
  if (!pk_e.ok() || !y_e.ok() || !pi.ok()) return VrfVerdict::kMalformed;
  return VrfVerify(*pk_e, x, *y_e, *pi);
}

}  // namespace mtk
