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

#include "mtk/sig.h"

#include <sodium.h>

#include <algorithm>

#include "absl/status/status.h"

namespace mtk {

static_assert(crypto_sign_PUBLICKEYBYTES == kPublicKeySize);
static_assert(crypto_sign_BYTES == kSignatureSize);
static_assert(crypto_sign_SECRETKEYBYTES == 64);

bool PublicKey::Verify(ByteSpan message, ByteSpan signature) const {
  InitCrypto();
  if (signature.size() != kSignatureSize) return false;
  return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                     bytes.data()) == 0;
}

absl::StatusOr<PublicKey> PublicKey::FromBytes(ByteSpan b) {
  if (b.size() != kPublicKeySize) return absl::InvalidArgumentError("public key must be 32 bytes");
  PublicKey pk;
  std::copy(b.begin(), b.end(), pk.bytes.begin());
  return pk;
}

absl::StatusOr<PublicKey> PublicKey::FromHex(std::string_view hex) {
  auto b = HexDecode(hex);
  if (!b.ok()) return b.status();
  return FromBytes(*b);
}

SigningKey SigningKey::Generate(Rng& rng) {
  std::array<uint8_t, crypto_sign_SEEDBYTES> seed;
  rng.Fill(seed);
  SigningKey key = *FromSeed(seed);
  sodium_memzero(seed.data(), seed.size());
  return key;
}

absl::StatusOr<SigningKey> SigningKey::FromSeed(ByteSpan seed) {
  InitCrypto();
  if (seed.size() != crypto_sign_SEEDBYTES) {
    return absl::InvalidArgumentError("signing key seed must be 32 bytes");
  }
  SigningKey key;
  crypto_sign_seed_keypair(key.pk_.bytes.data(), key.sk_.data(), seed.data());
  return key;
}

SigningKey::~SigningKey() { sodium_memzero(sk_.data(), sk_.size()); }

Bytes SigningKey::Sign(ByteSpan message) const {
  Bytes sig(kSignatureSize);
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk_.data());
  return sig;
}

Bytes SigningKey::Seed() const {
  Bytes seed(crypto_sign_SEEDBYTES);
  crypto_sign_ed25519_sk_to_seed(seed.data(), sk_.data());
  return seed;
}

}  // namespace mtk
