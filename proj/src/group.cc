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

#include "mtk/group.h"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mtk {

static_assert(crypto_core_ristretto255_SCALARBYTES == kScalarSize);
static_assert(crypto_core_ristretto255_BYTES == kElementSize);
static_assert(crypto_core_ristretto255_HASHBYTES == 64);

Scalar Scalar::One() { return FromU64(1); }

Scalar Scalar::FromU64(uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.bytes_[i] = static_cast<uint8_t>(v >> (8 * i));
  return s;
}

Scalar Scalar::RandomNonzero(Rng& rng) {
  InitCrypto();
  std::array<uint8_t, 64> wide;
  Scalar s;
  do {
    rng.Fill(wide);
    s = FromWideBytes(wide);
  } while (s.IsZero());
  sodium_memzero(wide.data(), wide.size());
  return s;
}

Scalar Scalar::FromWideBytes(std::span<const uint8_t, 64> wide) {
  InitCrypto();
  Scalar s;
  // scalar_reduce takes a non-const pointer but does not modify the input.
  std::array<uint8_t, 64> tmp;
  std::copy(wide.begin(), wide.end(), tmp.begin());
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), tmp.data());
  return s;
}

absl::StatusOr<Scalar> Scalar::FromBytes(ByteSpan bytes) {
  if (bytes.size() != kScalarSize) {
    return absl::InvalidArgumentError(
        absl::StrCat("scalar must be ", kScalarSize, " bytes, got ", bytes.size()));
  }
  std::array<uint8_t, 64> wide{};
  std::copy(bytes.begin(), bytes.end(), wide.begin());
  Scalar s = FromWideBytes(wide);
  if (!std::equal(bytes.begin(), bytes.end(), s.bytes_.begin())) {
    return absl::InvalidArgumentError("non-canonical scalar encoding");
  }
  return s;
}

bool Scalar::IsZero() const {
  return sodium_is_zero(bytes_.data(), bytes_.size()) == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_add(r.bytes_.data(), bytes_.data(), o.bytes_.data());
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_sub(r.bytes_.data(), bytes_.data(), o.bytes_.data());
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  crypto_core_ristretto255_scalar_mul(r.bytes_.data(), bytes_.data(), o.bytes_.data());
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  crypto_core_ristretto255_scalar_negate(r.bytes_.data(), bytes_.data());
  return r;
}

const GroupElement& GroupElement::Generator() {
  static const GroupElement g = BaseMul(Scalar::One());
  return g;
}

absl::StatusOr<GroupElement> GroupElement::FromBytes(ByteSpan bytes) {
  InitCrypto();
  if (bytes.size() != kElementSize) {
    return absl::InvalidArgumentError(absl::StrCat(
        "group element must be ", kElementSize, " bytes, got ", bytes.size()));
  }
  if (crypto_core_ristretto255_is_valid_point(bytes.data()) != 1) {
    return absl::InvalidArgumentError("invalid ristretto255 encoding");
  }
  GroupElement e;
  std::copy(bytes.begin(), bytes.end(), e.enc_.begin());
  return e;
}

bool GroupElement::IsIdentity() const {
  return sodium_is_zero(enc_.data(), enc_.size()) == 1;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  GroupElement r;
  crypto_core_ristretto255_add(r.enc_.data(), enc_.data(), o.enc_.data());
  return r;
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  GroupElement r;
  crypto_core_ristretto255_sub(r.enc_.data(), enc_.data(), o.enc_.data());
  return r;
}

GroupElement GroupElement::operator*(const Scalar& k) const {
  InitCrypto();
  GroupElement r;
  // libsodium signals an identity result with -1; the buffer is left
  // unspecified, so normalize to the identity encoding.
  if (crypto_scalarmult_ristretto255(r.enc_.data(), k.bytes().data(), enc_.data()) != 0) {
    r.enc_.fill(0);
  }
  return r;
}

GroupElement BaseMul(const Scalar& k) {
  InitCrypto();
  std::array<uint8_t, kElementSize> out{};
  if (crypto_scalarmult_ristretto255_base(out.data(), k.bytes().data()) != 0) {
    out.fill(0);
  }
  return *GroupElement::FromBytes(out);
}

absl::StatusOr<Bytes> ExpandMessageXmdSha512(ByteSpan msg, std::string_view dst,
                                             size_t len_in_bytes) {
  constexpr size_t kBInBytes = 64;   // SHA-512 output
  constexpr size_t kSInBytes = 128;  // SHA-512 block
  if (dst.empty() || dst.size() > 255) {
    return absl::InvalidArgumentError("DST must be 1..255 bytes");
  }
  const size_t ell = (len_in_bytes + kBInBytes - 1) / kBInBytes;
  if (len_in_bytes == 0 || ell > 255 || len_in_bytes > 65535) {
    return absl::InvalidArgumentError("requested output length out of range");
  }
  const uint8_t dst_len = static_cast<uint8_t>(dst.size());
  const std::array<uint8_t, 2> l_i_b = {static_cast<uint8_t>(len_in_bytes >> 8),
                                        static_cast<uint8_t>(len_in_bytes)};

  crypto_hash_sha512_state st;
  std::array<uint8_t, kBInBytes> b0;
  const std::array<uint8_t, kSInBytes> z_pad{};
  const uint8_t zero = 0;
  crypto_hash_sha512_init(&st);
  crypto_hash_sha512_update(&st, z_pad.data(), z_pad.size());
  crypto_hash_sha512_update(&st, msg.data(), msg.size());
  crypto_hash_sha512_update(&st, l_i_b.data(), l_i_b.size());
  crypto_hash_sha512_update(&st, &zero, 1);
  crypto_hash_sha512_update(&st, reinterpret_cast<const uint8_t*>(dst.data()), dst.size());
  crypto_hash_sha512_update(&st, &dst_len, 1);
  crypto_hash_sha512_final(&st, b0.data());

  Bytes out;
  out.reserve(ell * kBInBytes);
  std::array<uint8_t, kBInBytes> prev{};
  for (size_t i = 1; i <= ell; ++i) {
    // b_1 = H(b_0 || 1 || DST'), b_i = H((b_0 xor b_{i-1}) || i || DST').
    std::array<uint8_t, kBInBytes> input;
    for (size_t j = 0; j < kBInBytes; ++j) input[j] = b0[j] ^ prev[j];
    const uint8_t idx = static_cast<uint8_t>(i);
    crypto_hash_sha512_init(&st);
    crypto_hash_sha512_update(&st, input.data(), input.size());
    crypto_hash_sha512_update(&st, &idx, 1);
    crypto_hash_sha512_update(&st, reinterpret_cast<const uint8_t*>(dst.data()), dst.size());
    crypto_hash_sha512_update(&st, &dst_len, 1);
    crypto_hash_sha512_final(&st, prev.data());
    out.insert(out.end(), prev.begin(), prev.end());
  }
  out.resize(len_in_bytes);
  return out;
}

GroupElement HashToGroup(ByteSpan msg) {
  InitCrypto();
  Bytes uniform = *ExpandMessageXmdSha512(msg, kHashToGroupDst, 64);
  std::array<uint8_t, kElementSize> out;
  crypto_core_ristretto255_from_hash(out.data(), uniform.data());
  return *GroupElement::FromBytes(out);
}

Scalar HashToScalar(std::span<const ByteSpan> parts) {
  ByteWriter w;
  w.PutU32(static_cast<uint32_t>(parts.size()));
  for (ByteSpan p : parts) {
    w.PutU64(p.size());
    w.PutRaw(p);
  }
  Bytes uniform = *ExpandMessageXmdSha512(w.bytes(), kHashToScalarDst, 64);
  return Scalar::FromWideBytes(std::span<const uint8_t, 64>(uniform.data(), 64));
}

Scalar HashToScalar(std::initializer_list<ByteSpan> parts) {
  return HashToScalar(std::span<const ByteSpan>(parts.begin(), parts.size()));
}

}  // namespace mtk
