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

// Prime-order group used by the VRF and, through it, the zero-knowledge set.
//
// The group is ristretto255: a prime-order quotient of edwards25519 with
// order q = 2^252 + 27742317777372353535851937790883648493 and canonical
// 32-byte encodings. Every serialized artifact that contains group data
// carries kGroupId.
//
// Encodings:
//   Scalar        32 bytes, little-endian, fully reduced (value < q).
//   GroupElement  32-byte canonical ristretto255 encoding. The identity
//                 encodes as 32 zero bytes.

#ifndef MTK_GROUP_H_
#define MTK_GROUP_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"
#include "mtk/random.h"

namespace mtk {

inline constexpr std::string_view kGroupId = "ristretto255";

// Domain-separation tags for the two hash-to-domain functions. These bytes
// are part of the wire format; changing them changes every VRF output.
inline constexpr std::string_view kHashToGroupDst =
    "MTK-V01-CS01-with-ristretto255_XMD:SHA-512_R255MAP_RO_";
inline constexpr std::string_view kHashToScalarDst =
    "MTK-V01-CS02-with-ristretto255_XMD:SHA-512_SCALAR_RO_";

inline constexpr size_t kScalarSize = 32;
inline constexpr size_t kElementSize = 32;

class Scalar {
 public:
  Scalar() = default;  // zero

  static Scalar Zero() { return Scalar(); }
  static Scalar One();
  static Scalar FromU64(uint64_t v);
  // Uniform over [1, q).
  static Scalar RandomNonzero(Rng& rng);
  // Reduces 64 uniformly random bytes modulo q.
  static Scalar FromWideBytes(std::span<const uint8_t, 64> wide);
  // Rejects non-canonical encodings (value >= q) and wrong lengths.
  static absl::StatusOr<Scalar> FromBytes(ByteSpan bytes);

  const std::array<uint8_t, kScalarSize>& bytes() const { return bytes_; }
  bool IsZero() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) = default;

 private:
  std::array<uint8_t, kScalarSize> bytes_{};
};

class GroupElement {
 public:
  GroupElement() = default;  // identity

  static GroupElement Identity() { return GroupElement(); }
  static const GroupElement& Generator();
  // Accepts only canonical encodings of group elements.
  static absl::StatusOr<GroupElement> FromBytes(ByteSpan bytes);

  const std::array<uint8_t, kElementSize>& bytes() const { return enc_; }
  bool IsIdentity() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  // Scalar multiplication; constant time in the scalar.
  GroupElement operator*(const Scalar& k) const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) = default;

 private:
  std::array<uint8_t, kElementSize> enc_{};
};

// g^k for the fixed generator.
GroupElement BaseMul(const Scalar& k);

// expand_message_xmd with SHA-512 (RFC 9380, section 5.3.1).
// len_in_bytes must be in [1, 255*64]; dst must be 1..255 bytes.
absl::StatusOr<Bytes> ExpandMessageXmdSha512(ByteSpan msg, std::string_view dst,
                                             size_t len_in_bytes);

// H1: {0,1}* -> G. hash_to_ristretto255 (RFC 9380 random-oracle encoding
// into ristretto255 via the RFC 9496 one-way map) under kHashToGroupDst.
GroupElement HashToGroup(ByteSpan msg);

// H2: {0,1}* -> F_q. Each part is framed as u64-BE length || bytes, the
// framed parts are concatenated after a u32-BE part count, expanded to 64
// bytes under kHashToScalarDst and reduced modulo q.
Scalar HashToScalar(std::span<const ByteSpan> parts);
Scalar HashToScalar(std::initializer_list<ByteSpan> parts);

}  // namespace mtk

#endif  // MTK_GROUP_H_
