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

// Ed25519 signatures (deterministic nonces), used for checkpoints, identity
// tokens, certificates and artifact signatures.

#ifndef MTK_SIG_H_
#define MTK_SIG_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"
#include "mtk/random.h"

namespace mtk {

inline constexpr std::string_view kSignatureAlg = "ed25519";
inline constexpr size_t kPublicKeySize = 32;
inline constexpr size_t kSignatureSize = 64;

struct PublicKey {
  std::array<uint8_t, kPublicKeySize> bytes{};

  bool Verify(ByteSpan message, ByteSpan signature) const;
  std::string ToHex() const { return HexEncode(bytes); }
  static absl::StatusOr<PublicKey> FromBytes(ByteSpan b);
  static absl::StatusOr<PublicKey> FromHex(std::string_view hex);
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

// Secret key material is wiped on destruction.
class SigningKey {
 public:
  static SigningKey Generate(Rng& rng);
  static absl::StatusOr<SigningKey> FromSeed(ByteSpan seed);

  SigningKey(const SigningKey&) = default;
  SigningKey& operator=(const SigningKey&) = default;
  ~SigningKey();

  Bytes Sign(ByteSpan message) const;
  const PublicKey& public_key() const { return pk_; }
  // 32-byte seed; the only secret that needs persisting.
  Bytes Seed() const;

 private:
  SigningKey() = default;
  std::array<uint8_t, 64> sk_{};
  PublicKey pk_;
};

}  // namespace mtk

#endif  // MTK_SIG_H_
