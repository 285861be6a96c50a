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

#include "mtk/hash.h"

#include <openssl/evp.h>
#include <sodium.h>

#include <algorithm>
#include <cstdlib>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mtk/random.h"
#include "mtk/strings.h"

namespace mtk {

struct Hasher::State {
  EVP_MD_CTX* evp = nullptr;
  crypto_generichash_state blake;

  ~State() {
    if (evp != nullptr) EVP_MD_CTX_free(evp);
  }
};

std::string_view HashAlgName(HashAlg alg) {
  switch (alg) {
    case HashAlg::kSha256:
      return "sha256";
    case HashAlg::kBlake2b256:
      return "blake2b256";
  }
  return "unknown";
}

absl::StatusOr<HashAlg> ParseHashAlg(std::string_view name) {
  if (name == "sha256") return HashAlg::kSha256;
  if (name == "blake2b256") return HashAlg::kBlake2b256;
  return absl::InvalidArgumentError(absl::StrCat("unknown hash algorithm '", AV(name), "'"));
}

Hasher::Hasher(HashAlg alg) : alg_(alg), state_(std::make_unique<State>()) {
  if (alg_ == HashAlg::kSha256) {
    state_->evp = EVP_MD_CTX_new();
    if (state_->evp == nullptr ||
        EVP_DigestInit_ex(state_->evp, EVP_sha256(), nullptr) != 1) {
      std::abort();
    }
  } else {
    InitCrypto();
    crypto_generichash_init(&state_->blake, nullptr, 0, kDigestSize);
  }
}

Hasher::~Hasher() = default;
Hasher::Hasher(Hasher&&) noexcept = default;
Hasher& Hasher::operator=(Hasher&&) noexcept = default;

Hasher& Hasher::Update(ByteSpan data) {
  if (alg_ == HashAlg::kSha256) {
    EVP_DigestUpdate(state_->evp, data.data(), data.size());
  } else {
    crypto_generichash_update(&state_->blake, data.data(), data.size());
  }
  return *this;
}

Digest Hasher::Finish() {
  Digest out{};
  if (alg_ == HashAlg::kSha256) {
    unsigned int len = 0;
    EVP_DigestFinal_ex(state_->evp, out.data(), &len);
  } else {
    crypto_generichash_final(&state_->blake, out.data(), out.size());
  }
  return out;
}

Digest HashBytes(HashAlg alg, ByteSpan data) {
  return Hasher(alg).Update(data).Finish();
}

std::string DigestHex(const Digest& d) { return HexEncode(d); }

absl::StatusOr<Digest> DigestFromBytes(ByteSpan b) {
  if (b.size() != kDigestSize) {
    return absl::InvalidArgumentError(
        absl::StrCat("digest must be ", kDigestSize, " bytes, got ", b.size()));
  }
  Digest d;
  std::copy(b.begin(), b.end(), d.begin());
  return d;
}

absl::StatusOr<Digest> DigestFromHex(std::string_view hex) {
  auto bytes = HexDecode(hex);
  if (!bytes.ok()) return bytes.status();
  return DigestFromBytes(*bytes);
}

}  // namespace mtk
