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

#ifndef MTK_TESTS_SIGNING_ENV_H_
#define MTK_TESTS_SIGNING_ENV_H_

#include <memory>
#include <string>

#include "mtk/signing.h"
#include "test_util.h"

namespace mtk::testing {

inline constexpr std::string_view kTestIssuer = "https://idp.test";
inline constexpr std::string_view kTestIdentity = "alice@example.com";

// In-process signing infrastructure on a controllable clock.
struct SigningEnv {
  explicit SigningEnv(uint64_t seed = 1)
      : rng(seed),
        idp(std::string(kTestIssuer), SigningKey::Generate(rng), [this] { return now; }),
        ca(SigningKey::Generate(rng), [this] { return now; }) {
    ca.TrustProvider(idp.issuer(), idp.public_key());
    log = *TransparencyLog::Create(dir / "log", SigningKey::Generate(rng));
    services.idp = &idp;
    services.ca = &ca;
    services.log = log.get();
    services.clock = [this] { return now; };
    services.rng = &rng;
    roots.ca_key = ca.public_key();
    roots.providers[idp.issuer()] = idp.public_key();
    roots.log_key = log->public_key();
  }

  absl::StatusOr<SignResult> Sign(const std::filesystem::path& model,
                                  HashOptions hash = {HashScheme::kChunked, 1 << 16,
                                                      HashAlg::kSha256, 1}) {
    SignOptions options;
    options.hash = hash;
    options.identity = std::string(kTestIdentity);
    return SignModel(model, options, services);
  }

  TempDir dir;
  int64_t now = 1'760'000'000;
  SeededRng rng;
  IdentityProvider idp;
  CertificateAuthority ca;
  std::unique_ptr<TransparencyLog> log;
  SigningServices services;
  TrustRoots roots;
};

}  // namespace mtk::testing

#endif  // MTK_TESTS_SIGNING_ENV_H_
