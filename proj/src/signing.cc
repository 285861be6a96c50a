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

#include "mtk/signing.h"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "mtk/effects.h"
#include "mtk/strings.h"

namespace mtk {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::string_view kBundleMediaType = "application/vnd.mtk.bundle.v1+json";
constexpr int kTrustRootsVersion = 1;

bool IsValidUtf8(const std::string& s) {
  try {
    (void)json(s).dump();
    return true;
  } catch (const json::type_error&) {
    return false;
  }
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void PutTime(ByteWriter& w, int64_t t) { w.PutU64(static_cast<uint64_t>(t)); }

// Every key present, no others.
absl::Status RequireKeys(const json& obj, std::initializer_list<std::string_view> keys,
                         std::string_view what) {
  if (!obj.is_object()) return absl::InvalidArgumentError(absl::StrCat(AV(what), " is not an object"));
  std::set<std::string, std::less<>> want(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!want.contains(k)) {
      return absl::InvalidArgumentError(absl::StrCat("unexpected field '", k, "' in ", AV(what)));
    }
  }
  for (std::string_view k : keys) {
    if (!obj.contains(k)) {
      return absl::InvalidArgumentError(absl::StrCat("missing field '", AV(k), "' in ", AV(what)));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Bytes> B64Field(const json& obj, const char* key) {
  if (!obj.at(key).is_string()) {
    return absl::InvalidArgumentError(absl::StrCat("field '", key, "' must be a string"));
  }
  return Base64Decode(obj.at(key).get<std::string>());
}

absl::StatusOr<int64_t> IntField(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    return absl::InvalidArgumentError(absl::StrCat("field '", key, "' must be an integer"));
  }
  return v.get<int64_t>();
}

absl::StatusOr<std::string> StringField(const json& obj, const char* key) {
  if (!obj.at(key).is_string()) {
    return absl::InvalidArgumentError(absl::StrCat("field '", key, "' must be a string"));
  }
  return obj.at(key).get<std::string>();
}

VerifyResult Reject(VerifyReason reason, std::string detail) {
  VerifyResult r;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

int64_t SystemClockNow() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Bytes IdentityToken::SignedMessage() const {
  ByteWriter w;
  w.PutFramed("mtk-idtoken/v1");
  w.PutFramed(identity);
  w.PutFramed(issuer);
  PutTime(w, issued_at);
  PutTime(w, expiry);
  return std::move(w).Take();
}

IdentityProvider::IdentityProvider(std::string issuer, SigningKey key, Clock clock)
    : issuer_(std::move(issuer)), key_(std::move(key)), clock_(std::move(clock)) {}

IdentityToken IdentityProvider::IssueToken(std::string_view identity, int64_t lifetime) const {
  Effects().network_calls.fetch_add(1);
  IdentityToken tok;
  tok.identity = std::string(identity);
  tok.issuer = issuer_;
  tok.issued_at = clock_();
  tok.expiry = tok.issued_at + lifetime;
  tok.signature = key_.Sign(tok.SignedMessage());
  return tok;
}

Bytes Certificate::SignedMessage() const {
  ByteWriter w;
  w.PutFramed("mtk-cert/v1");
  w.PutFramed(subject);
  w.PutFramed(oidc_issuer);
  w.PutRaw(public_key.bytes);
  PutTime(w, not_before);
  PutTime(w, not_after);
  return std::move(w).Take();
}

Bytes Certificate::Encode() const {
  ByteWriter w;
  w.PutRaw(SignedMessage());
  w.PutFramed(signature);
  return std::move(w).Take();
}

PopSignature ProveKeyPossession(const SigningKey& ephemeral, const IdentityToken& token) {
  return PopSignature{ephemeral.Sign(AsBytes(token.identity))};
}

CertificateAuthority::CertificateAuthority(SigningKey key, Clock clock, int64_t validity)
    : key_(std::move(key)), clock_(std::move(clock)), validity_(validity) {}

void CertificateAuthority::TrustProvider(const std::string& issuer, const PublicKey& key) {
  providers_[issuer] = key;
}

absl::StatusOr<Certificate> CertificateAuthority::Issue(const IdentityToken& token,
                                                        const PublicKey& pk,
                                                        const PopSignature& pop) const {
  Effects().network_calls.fetch_add(1);
  auto it = providers_.find(token.issuer);
  if (it == providers_.end()) {
    return absl::NotFoundError(absl::StrCat("unknown identity provider '", token.issuer, "'"));
  }
  if (!it->second.Verify(token.SignedMessage(), token.signature)) {
    return absl::UnauthenticatedError("identity token signature does not verify");
  }
  const int64_t now = clock_();
  if (now >= token.expiry) {
    return absl::DeadlineExceededError(
        absl::StrCat("identity token expired ", now - token.expiry + 1, " s ago"));
  }
  if (!pk.Verify(AsBytes(token.identity), pop.signature)) {
    return absl::PermissionDeniedError("proof of possession does not verify under the key");
  }
  Certificate cert;
  cert.subject = token.identity;
  cert.oidc_issuer = token.issuer;
  cert.public_key = pk;
  cert.not_before = now;
  cert.not_after = now + validity_;
  cert.signature = key_.Sign(cert.SignedMessage());
  return cert;
}

std::string TrustRoots::ToJson() const {
  json providers_json = json::object();
  for (const auto& [issuer, key] : providers) providers_json[issuer] = key.ToHex();
  json j = {
      {"version", kTrustRootsVersion},
      {"ca", {{"public_key", ca_key.ToHex()}}},
      {"identity_providers", providers_json},
      {"log", {{"public_key", log_key.ToHex()}}},
  };
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

absl::StatusOr<TrustRoots> TrustRoots::FromJson(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("trust roots are not valid JSON");
  if (auto s = RequireKeys(j, {"version", "ca", "identity_providers", "log"}, "trust roots");
      !s.ok()) {
    return s;
  }
  if (j["version"] != kTrustRootsVersion) {
    return absl::InvalidArgumentError("unsupported trust roots version");
  }
  auto key_of = [](const json& obj, std::string_view what) -> absl::StatusOr<PublicKey> {
    if (auto s = RequireKeys(obj, {"public_key"}, what); !s.ok()) return s;
    auto hex = StringField(obj, "public_key");
    if (!hex.ok()) return hex.status();
    return PublicKey::FromHex(*hex);
  };
  TrustRoots roots;
  auto ca = key_of(j["ca"], "ca");
  if (!ca.ok()) return ca.status();
  roots.ca_key = *ca;
  auto log = key_of(j["log"], "log");
  if (!log.ok()) return log.status();
  roots.log_key = *log;
  if (!j["identity_providers"].is_object()) {
    return absl::InvalidArgumentError("identity_providers must be an object");
  }
  for (const auto& [issuer, hex] : j["identity_providers"].items()) {
    if (!hex.is_string()) return absl::InvalidArgumentError("provider key must be a string");
    auto pk = PublicKey::FromHex(hex.get<std::string>());
    if (!pk.ok()) return pk.status();
    roots.providers[issuer] = *pk;
  }
  return roots;
}

Bytes SignatureBundle::SignedPayload() const {
  ByteWriter w;
  w.PutFramed("mtk-sign/v1");
  w.PutFramed(HashAlgName(digest.alg));
  w.PutFramed(HashSchemeName(digest.scheme));
  w.PutU64(digest.chunk_size);
  w.PutFramed(digest.digest);
  w.PutFramed(manifest_hash);
  return std::move(w).Take();
}

Bytes SignatureBundle::LogPayload() const {
  ByteWriter w;
  w.PutFramed("mtk-log-entry/v1");
  w.PutFramed(SignedPayload());
  w.PutFramed(signature);
  w.PutFramed(certificate.Encode());
  PutTime(w, signing_time);
  return std::move(w).Take();
}

std::string SignatureBundle::ToJson() const {
  json path = json::array();
  for (const Digest& d : inclusion.path) path.push_back(Base64Encode(d));
  json j = {
      {"media_type", kBundleMediaType},
      {"signature_alg", kSignatureAlg},
      {"model_digest", digest.ToString()},
      {"manifest", Base64Encode(AsBytes(manifest))},
      {"manifest_hash", DigestHex(manifest_hash)},
      {"certificate",
       {
           {"subject", certificate.subject},
           {"oidc_issuer", certificate.oidc_issuer},
           {"public_key", Base64Encode(certificate.public_key.bytes)},
           {"not_before", certificate.not_before},
           {"not_after", certificate.not_after},
           {"signature", Base64Encode(certificate.signature)},
       }},
      {"signing_time", signing_time},
      {"signature", Base64Encode(signature)},
      {"inclusion_proof",
       {
           {"index", inclusion.index},
           {"tree_size", inclusion.tree_size},
           {"path", path},
       }},
      {"checkpoint", checkpoint.ToText()},
  };
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

absl::StatusOr<SignatureBundle> SignatureBundle::FromJson(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("bundle is not valid JSON");
  if (auto s = RequireKeys(j,
                           {"media_type", "signature_alg", "model_digest", "manifest",
                            "manifest_hash", "certificate", "signing_time", "signature",
                            "inclusion_proof", "checkpoint"},
                           "bundle");
      !s.ok()) {
    return s;
  }
  if (j["media_type"] != kBundleMediaType) {
    return absl::InvalidArgumentError("unsupported bundle media type");
  }
  if (j["signature_alg"] != kSignatureAlg) {
    return absl::InvalidArgumentError("unsupported signature algorithm");
  }

  SignatureBundle b;
  auto digest_str = StringField(j, "model_digest");
  if (!digest_str.ok()) return digest_str.status();
  auto digest = ModelDigest::FromString(*digest_str);
  if (!digest.ok()) return digest.status();
  b.digest = *digest;
  auto manifest = B64Field(j, "manifest");
  if (!manifest.ok()) return manifest.status();
  b.manifest.assign(manifest->begin(), manifest->end());
  auto mh = StringField(j, "manifest_hash");
  if (!mh.ok()) return mh.status();
  auto mh_digest = DigestFromHex(*mh);
  if (!mh_digest.ok()) return mh_digest.status();
  b.manifest_hash = *mh_digest;

  const json& c = j["certificate"];
  if (auto s = RequireKeys(c,
                           {"subject", "oidc_issuer", "public_key", "not_before", "not_after",
                            "signature"},
                           "certificate");
      !s.ok()) {
    return s;
  }
  auto subject = StringField(c, "subject");
  auto issuer = StringField(c, "oidc_issuer");
  auto pk = B64Field(c, "public_key");
  auto nb = IntField(c, "not_before");
  auto na = IntField(c, "not_after");
  auto csig = B64Field(c, "signature");
  for (const absl::Status& s : {subject.status(), issuer.status(), pk.status(), nb.status(),
                                na.status(), csig.status()}) {
    if (!s.ok()) return s;
  }
  auto cert_pk = PublicKey::FromBytes(*pk);
  if (!cert_pk.ok()) return cert_pk.status();
  b.certificate = Certificate{*subject, *issuer, *cert_pk, *nb, *na, *csig};

  auto t = IntField(j, "signing_time");
  if (!t.ok()) return t.status();
  b.signing_time = *t;
  auto sig = B64Field(j, "signature");
  if (!sig.ok()) return sig.status();
  b.signature = std::move(*sig);

  const json& p = j["inclusion_proof"];
  if (auto s = RequireKeys(p, {"index", "tree_size", "path"}, "inclusion_proof"); !s.ok()) {
    return s;
  }
  if (!p["index"].is_number_unsigned() || !p["tree_size"].is_number_unsigned() ||
      !p["path"].is_array()) {
    return absl::InvalidArgumentError("malformed inclusion proof");
  }
  b.inclusion.index = p["index"].get<uint64_t>();
  b.inclusion.tree_size = p["tree_size"].get<uint64_t>();
  if (p["path"].size() > 64) return absl::InvalidArgumentError("inclusion path too long");
  for (const json& h : p["path"]) {
    if (!h.is_string()) return absl::InvalidArgumentError("path entries must be strings");
    auto raw = Base64Decode(h.get<std::string>());
    if (!raw.ok()) return raw.status();
    auto d = DigestFromBytes(*raw);
    if (!d.ok()) return d.status();
    b.inclusion.path.push_back(*d);
  }

  auto cp_text = StringField(j, "checkpoint");
  if (!cp_text.ok()) return cp_text.status();
  auto cp = LogCheckpoint::FromText(*cp_text);
  if (!cp.ok()) return cp.status();
  b.checkpoint = std::move(*cp);

  if (b.ToJson() != text) return absl::InvalidArgumentError("bundle is not in canonical form");
  return b;
}

fs::path BundlePathFor(const fs::path& model) {
  std::error_code ec;
  if (fs::is_directory(model, ec)) return model / "model.sig";
  fs::path p = model;
  p += ".sig";
  return p;
}

absl::StatusOr<SignResult> SignModel(const fs::path& model, const SignOptions& options,
                                     SigningServices& services) {
  if (services.idp == nullptr || services.ca == nullptr || services.log == nullptr) {
    return absl::FailedPreconditionError("signing services are not configured");
  }
  if (options.identity.empty()) return absl::InvalidArgumentError("identity is required");
  const auto start = std::chrono::steady_clock::now();
  SignResult result;

  auto hashed = HashModel(model, options.hash);
  if (!hashed.ok()) return hashed.status();
  result.hash_seconds = SecondsSince(start);
  const auto& [manifest, digest] = *hashed;

  for (const std::string& text : {manifest.Serialize(options.hash), options.identity}) {
    if (!IsValidUtf8(text)) {
      return absl::InvalidArgumentError("model paths and identity must be valid UTF-8");
    }
  }
  const IdentityToken token = services.idp->IssueToken(options.identity);
  SystemRng system_rng;
  Rng& rng = services.rng != nullptr ? *services.rng : system_rng;
  SignatureBundle& b = result.bundle;
  {
    const SigningKey ephemeral = SigningKey::Generate(rng);
    auto cert = services.ca->Issue(token, ephemeral.public_key(),
                                   ProveKeyPossession(ephemeral, token));
    if (!cert.ok()) return cert.status();

    b.digest = digest;
    b.manifest = manifest.Serialize(options.hash);
    b.manifest_hash = ManifestDigest(manifest, options.hash);
    b.certificate = std::move(*cert);
    b.signing_time = services.clock();
    b.signature = ephemeral.Sign(b.SignedPayload());
  }

  auto appended = services.log->Append(b.LogPayload());
  if (!appended.ok()) return appended.status();
  b.inclusion = std::move(appended->proof);
  b.checkpoint = std::move(appended->checkpoint);

  if (options.write_bundle) {
    result.bundle_path = BundlePathFor(model);
    // The temporary name also ends in .sig so a concurrent hash ignores it.
    fs::path tmp = result.bundle_path;
    tmp += ".tmp.sig";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << b.ToJson();
      out.close();
      if (!out) {
        std::error_code ec;
        fs::remove(tmp, ec);
        return absl::UnavailableError(absl::StrCat("cannot write ", tmp.string()));
      }
    }
    std::error_code ec;
    fs::rename(tmp, result.bundle_path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      return absl::UnavailableError(absl::StrCat("cannot write ", result.bundle_path.string()));
    }
  }
  result.total_seconds = SecondsSince(start);
  return result;
}

std::string_view VerifyReasonName(VerifyReason r) {
  switch (r) {
    case VerifyReason::kAccept:
      return "accept";
    case VerifyReason::kDigestMismatch:
      return "digest-mismatch";
    case VerifyReason::kBadSignature:
      return "bad-signature";
    case VerifyReason::kBadCertificate:
      return "bad-certificate";
    case VerifyReason::kLogInclusion:
      return "log-inclusion";
    case VerifyReason::kMalformed:
      return "malformed";
  }
  return "unknown";
}

VerifyResult VerifyBundleEvidence(const SignatureBundle& b, const TrustRoots& roots,
                                  const VerifyOptions& options) {
  const Certificate& cert = b.certificate;
  if (!cert.public_key.Verify(b.SignedPayload(), b.signature)) {
    return Reject(VerifyReason::kBadSignature, "signature does not verify under certificate key");
  }

  if (!roots.ca_key.Verify(cert.SignedMessage(), cert.signature)) {
    return Reject(VerifyReason::kBadCertificate, "certificate not signed by trusted CA");
  }
  if (!roots.providers.contains(cert.oidc_issuer)) {
    return Reject(VerifyReason::kBadCertificate,
                  absl::StrCat("untrusted identity provider '", cert.oidc_issuer, "'"));
  }
  if (!cert.Covers(b.signing_time)) {
    return Reject(VerifyReason::kBadCertificate, "certificate not valid at signing time");
  }
  if (options.expected_identity && *options.expected_identity != cert.subject) {
    return Reject(VerifyReason::kBadCertificate,
                  absl::StrCat("certificate subject is '", cert.subject, "'"));
  }

  const Digest leaf = LogLeafHash(b.LogPayload());
  const LogVerdict lv = LogVerifyInclusion(b.checkpoint, leaf, b.inclusion, roots.log_key);
  if (lv != LogVerdict::kAccept) {
    return Reject(VerifyReason::kLogInclusion,
                  absl::StrCat("log proof rejected: ", AV(LogVerdictName(lv))));
  }
  if (options.mirror != nullptr) {
    if (!(options.mirror->public_key() == roots.log_key)) {
      return Reject(VerifyReason::kLogInclusion, "mirror belongs to a different log");
    }
    auto root = options.mirror->RootAt(b.checkpoint.tree_size);
    if (!root.ok()) {
      return Reject(VerifyReason::kLogInclusion, "log is shorter than the bundle checkpoint");
    }
    if (*root != b.checkpoint.root) {
      return Reject(VerifyReason::kLogInclusion, "log history differs from the bundle checkpoint");
    }
  }

  VerifyResult ok;
  ok.reason = VerifyReason::kAccept;
  return ok;
}

VerifyResult VerifyModel(const fs::path& model, const SignatureBundle& bundle,
                         const TrustRoots& roots, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  HashOptions hash;
  hash.alg = bundle.digest.alg;
  hash.scheme = bundle.digest.scheme;
  hash.chunk_size = bundle.digest.chunk_size;
  hash.workers = options.workers;

  auto hashed = HashModel(model, hash);
  const double hash_seconds = SecondsSince(start);
  VerifyResult result;
  if (!hashed.ok()) {
    result = Reject(VerifyReason::kMalformed, std::string(hashed.status().message()));
  } else if (!(hashed->second == bundle.digest)) {
    result = Reject(VerifyReason::kDigestMismatch, "model digest differs from bundle");
  } else if (hashed->first.Serialize(hash) != bundle.manifest ||
             ManifestDigest(hashed->first, hash) != bundle.manifest_hash) {
    result = Reject(VerifyReason::kDigestMismatch, "manifest differs from bundle");
  } else {
    result = VerifyBundleEvidence(bundle, roots, options);
  }
  result.hash_seconds = hash_seconds;
  result.total_seconds = SecondsSince(start);
  return result;
}

}  // namespace mtk
