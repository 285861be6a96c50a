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

// Keyless model signing.
//
// The signer obtains an identity token, generates an ephemeral Ed25519 key,
// proves possession of it to the certificate authority, signs the model
// digest, records the result in the transparency log and writes a bundle
// next to the model. The identity provider and CA run in-process.
//
// Signed payload (all strings u32-framed, integers big-endian):
//
//   "mtk-sign/v1" | hash_alg | scheme | u64 chunk_size | digest | manifest_hash
//
// Log entry payload:
//
//   "mtk-log-entry/v1" | signed payload | signature | certificate | i64 time

#ifndef MTK_SIGNING_H_
#define MTK_SIGNING_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "mtk/bytes.h"
#include "mtk/model_hash.h"
#include "mtk/random.h"
#include "mtk/sig.h"
#include "mtk/translog.h"

namespace mtk {

// Unix seconds.
using Clock = std::function<int64_t()>;
int64_t SystemClockNow();

inline constexpr int64_t kCertificateValiditySeconds = 600;
inline constexpr int64_t kTokenLifetimeSeconds = 300;

struct IdentityToken {
  std::string identity;
  std::string issuer;
  int64_t issued_at = 0;
  int64_t expiry = 0;  // exclusive
  Bytes signature;

  Bytes SignedMessage() const;
};

class IdentityProvider {
 public:
  IdentityProvider(std::string issuer, SigningKey key, Clock clock = SystemClockNow);

  IdentityToken IssueToken(std::string_view identity,
                           int64_t lifetime = kTokenLifetimeSeconds) const;
  const std::string& issuer() const { return issuer_; }
  const PublicKey& public_key() const { return key_.public_key(); }

 private:
  std::string issuer_;
  SigningKey key_;
  Clock clock_;
};

struct Certificate {
  std::string subject;
  std::string oidc_issuer;
  PublicKey public_key;
  int64_t not_before = 0;
  int64_t not_after = 0;  // inclusive
  Bytes signature;

  Bytes SignedMessage() const;
  // Canonical binary form, including the signature.
  Bytes Encode() const;
  bool Covers(int64_t t) const { return not_before <= t && t <= not_after; }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Signature over the exact identity bytes of the token.
struct PopSignature {
  Bytes signature;
};

PopSignature ProveKeyPossession(const SigningKey& ephemeral, const IdentityToken& token);

// Issue errors carry distinct status codes:
//   unknown issuer         NotFound
//   bad token signature    Unauthenticated
//   expired token          DeadlineExceeded
//   proof of possession    PermissionDenied
class CertificateAuthority {
 public:
  CertificateAuthority(SigningKey key, Clock clock = SystemClockNow,
                       int64_t validity = kCertificateValiditySeconds);

  void TrustProvider(const std::string& issuer, const PublicKey& key);
  absl::StatusOr<Certificate> Issue(const IdentityToken& token, const PublicKey& pk,
                                    const PopSignature& pop) const;
  const PublicKey& public_key() const { return key_.public_key(); }

 private:
  SigningKey key_;
  Clock clock_;
  int64_t validity_;
  std::map<std::string, PublicKey> providers_;
};

struct TrustRoots {
  PublicKey ca_key;
  std::map<std::string, PublicKey> providers;  // issuer -> key
  PublicKey log_key;

  std::string ToJson() const;
  static absl::StatusOr<TrustRoots> FromJson(std::string_view text);
};

struct SignatureBundle {
  ModelDigest digest;
  std::string manifest;  // serialized manifest text
  Digest manifest_hash{};
  Certificate certificate;
  int64_t signing_time = 0;
  Bytes signature;
  LogInclusionProof inclusion;
  LogCheckpoint checkpoint;

  Bytes SignedPayload() const;
  Bytes LogPayload() const;
  // Canonical JSON; FromJson rejects any text that does not re-serialize to
  // the same bytes.
  std::string ToJson() const;
  static absl::StatusOr<SignatureBundle> FromJson(std::string_view text);
};

// <file>.sig for a single file, <dir>/model.sig for a directory.
std::filesystem::path BundlePathFor(const std::filesystem::path& model);

struct SigningServices {
  const IdentityProvider* idp = nullptr;
  const CertificateAuthority* ca = nullptr;
  TransparencyLog* log = nullptr;
  Clock clock = SystemClockNow;
  Rng* rng = nullptr;  // ephemeral keys; SystemRng when null
};

struct SignOptions {
  HashOptions hash;
  std::string identity;
  bool write_bundle = true;
};

struct SignResult {
  SignatureBundle bundle;
  std::filesystem::path bundle_path;
  double hash_seconds = 0;
  double total_seconds = 0;
};

absl::StatusOr<SignResult> SignModel(const std::filesystem::path& model,
                                     const SignOptions& options, SigningServices& services);

enum class VerifyReason {
  kAccept,
  kDigestMismatch,  // (a)
  kBadSignature,    // (b)
  kBadCertificate,  // (c)
  kLogInclusion,    // (d)
  kMalformed,
};

std::string_view VerifyReasonName(VerifyReason r);

struct VerifyOptions {
  std::optional<std::string> expected_identity;
  // Local view of the log. When set, the bundle's checkpoint must be a
  // prefix of the mirror and the entry must still be present.
  const TransparencyLog* mirror = nullptr;
  unsigned workers = 0;
};

struct VerifyResult {
  VerifyReason reason = VerifyReason::kMalformed;
  std::string detail;
  double hash_seconds = 0;
  double total_seconds = 0;

  bool ok() const { return reason == VerifyReason::kAccept; }
};

VerifyResult VerifyModel(const std::filesystem::path& model, const SignatureBundle& bundle,
                         const TrustRoots& roots, const VerifyOptions& options = {});

// Checks (b)-(d) only, given an already recomputed digest and manifest.
VerifyResult VerifyBundleEvidence(const SignatureBundle& bundle, const TrustRoots& roots,
                                  const VerifyOptions& options = {});

}  // namespace mtk

#endif  // MTK_SIGNING_H_
