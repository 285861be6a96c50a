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

#include "mtk/zks.h"

#include <sodium.h>

#include <charconv>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "mtk/parallel.h"
#include "mtk/strings.h"

namespace mtk {
namespace {

constexpr std::string_view kKeyTag = "mtk.zks.v1.key";
constexpr std::string_view kCommitTag = "mtk.zks.v1.commit";
constexpr std::string_view kProofMagic = "MTKZ";
constexpr std::string_view kStateMagic = "MTKS";
constexpr uint8_t kProofVersion = 1;
constexpr uint8_t kStateVersion = 1;

std::string ElementKey(ByteSpan e) { return std::string(AsStringView(e)); }

absl::Status CheckLambda(size_t lambda_bits) {
  if (lambda_bits < kZksMinLambdaBits || lambda_bits % 8 != 0 || lambda_bits > 512) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda must be a multiple of 8 in [128, 512], got ", lambda_bits));
  }
  return absl::OkStatus();
}

}  // namespace

TrieKey ZksTrieKey(const GroupElement& y) {
  return Hasher(HashAlg::kSha256).Update(kKeyTag).Update(y.bytes()).Finish();
}

Digest ZksLeafValue(ByteSpan element, ByteSpan opening) {
  ByteWriter len;
  len.PutU64(element.size());
  return Hasher(HashAlg::kSha256)
      .Update(kCommitTag)
      .Update(len.bytes())
      .Update(element)
      .Update(opening)
      .Finish();
}

Digest DatasetElement(ByteSpan file_bytes) { return Sha256(file_bytes); }

std::string ZksCommitment::ToText() const {
  return absl::StrCat("scheme=", AV(kZksScheme), "\ngroup=", AV(kGroupId), "\nhash=sha256\npk=",
                      HexEncode(pk.bytes()), "\nroot=", DigestHex(com.root),
                      "\nn=", com.size, "\n");
}

absl::StatusOr<ZksCommitment> ZksCommitment::FromText(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  for (absl::string_view line : absl::StrSplit(AV(text), '\n', absl::SkipEmpty())) {
    std::pair<std::string, std::string> kv = absl::StrSplit(line, absl::MaxSplits('=', 1));
    if (!fields.emplace(std::string(kv.first), std::string(kv.second)).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate field '", kv.first, "'"));
    }
  }
  auto get = [&](std::string_view k) -> absl::StatusOr<std::string> {
    auto it = fields.find(k);
    if (it == fields.end()) return absl::InvalidArgumentError(absl::StrCat("missing field '", AV(k), "'"));
    return it->second;
  };
  auto scheme = get("scheme");
  auto group = get("group");
  auto hash = get("hash");
  auto pk_hex = get("pk");
  auto root_hex = get("root");
  auto n_str = get("n");
  for (const auto* f : {&scheme, &group, &hash, &pk_hex, &root_hex, &n_str}) {
    if (!f->ok()) return f->status();
  }
  if (fields.size() != 6) return absl::InvalidArgumentError("unexpected extra fields");
  if (*scheme != kZksScheme) return absl::InvalidArgumentError("unsupported ZKS scheme");
  if (*group != kGroupId) return absl::InvalidArgumentError("unsupported group");
  if (*hash != "sha256") return absl::InvalidArgumentError("unsupported hash");
  auto pk_bytes = HexDecode(*pk_hex);
  if (!pk_bytes.ok()) return pk_bytes.status();
  auto pk = GroupElement::FromBytes(*pk_bytes);
  if (!pk.ok()) return pk.status();
  auto root = DigestFromHex(*root_hex);
  if (!root.ok()) return root.status();
  uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(n_str->data(), n_str->data() + n_str->size(), n);
  if (ec != std::errc() || ptr != n_str->data() + n_str->size()) {
    return absl::InvalidArgumentError("invalid set size");
  }
  return ZksCommitment{*pk, TrieCommitment{*root, n}};
}

Bytes ZksQueryProof::Serialize() const {
  ByteWriter w;
  w.PutRaw(kProofMagic);
  w.PutU8(kProofVersion);
  w.PutFramed(kGroupId);
  w.PutU8(static_cast<uint8_t>(resp));
  w.PutRaw(y.bytes());
  w.PutRaw(vrf_proof.Serialize());
  std::visit([&](const auto& p) { w.PutFramed(p.Serialize()); }, acc_proof);
  if (resp == ZksResponse::kMember) w.PutFramed(opening);
  return std::move(w).Take();
}

absl::StatusOr<ZksQueryProof> ZksQueryProof::Parse(ByteSpan bytes) {
  ByteReader r(bytes);
  auto magic = r.GetRaw(kProofMagic.size());
  if (!magic.ok() || AsStringView(*magic) != kProofMagic) {
    return absl::InvalidArgumentError("not a ZKS query proof");
  }
  auto version = r.GetU8();
  if (!version.ok() || *version != kProofVersion) {
    return absl::InvalidArgumentError("unsupported ZKS proof version");
  }
  auto group = r.GetFramed(64);
  if (!group.ok() || AsStringView(*group) != kGroupId) {
    return absl::InvalidArgumentError("unsupported group in ZKS proof");
  }
  auto resp = r.GetU8();
  if (!resp.ok() || *resp > 1) return absl::InvalidArgumentError("invalid response byte");
  auto y_raw = r.GetRaw(kElementSize);
  if (!y_raw.ok()) return y_raw.status();
  auto y = GroupElement::FromBytes(*y_raw);
  if (!y.ok()) return y.status();
  auto pi_raw = r.GetRaw(kVrfProofSize);
  if (!pi_raw.ok()) return pi_raw.status();
  auto pi = VrfProof::Parse(*pi_raw);
  if (!pi.ok()) return pi.status();
  auto acc_raw = r.GetFramed();
  if (!acc_raw.ok()) return acc_raw.status();

  ZksQueryProof proof;
  proof.resp = static_cast<ZksResponse>(*resp);
  proof.y = *y;
  proof.vrf_proof = *pi;
  if (proof.resp == ZksResponse::kMember) {
    auto incl = InclusionProof::Parse(*acc_raw);
    if (!incl.ok()) return incl.status();
    proof.acc_proof = std::move(*incl);
    auto opening = r.GetFramed(64);
    if (!opening.ok()) return opening.status();
    proof.opening.assign(opening->begin(), opening->end());
  } else {
    auto nonincl = NonInclusionProof::Parse(*acc_raw);
    if (!nonincl.ok()) return nonincl.status();
    proof.acc_proof = std::move(*nonincl);
  }
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes after ZKS proof");
  return proof;
}

std::string_view ZksVerdictName(ZksVerdict v) {
  switch (v) {
    case ZksVerdict::kAccept:
      return "accept";
    case ZksVerdict::kResponseMismatch:
      return "response-mismatch";
    case ZksVerdict::kVrfFailed:
      return "vrf-failed";
    case ZksVerdict::kAccumulatorFailed:
      return "accumulator-failed";
    case ZksVerdict::kMalformed:
      return "malformed";
  }
  return "unknown";
}

absl::StatusOr<std::pair<ZksState, ZksCommitment>> ZksState::Commit(
    std::vector<Bytes> elements, size_t lambda_bits, Rng& rng, unsigned workers) {
  if (auto st = CheckLambda(lambda_bits); !st.ok()) return st;
  ZksState state;
  state.lambda_bits_ = lambda_bits;
  state.elements_ = std::move(elements);
  if (auto st = state.Index(); !st.ok()) return st;

  const size_t n = state.elements_.size();
  state.keypair_ = VrfKeygen(rng);
  state.openings_.resize(n);
  for (Bytes& r : state.openings_) r = rng.RandomBytes(lambda_bits / 8);

  state.keys_.resize(n);
  std::vector<TrieEntry> entries(n);
  ParallelFor(n, workers, [&](size_t i) {
    const GroupElement y = HashToGroup(state.elements_[i]) * state.keypair_.sk;
    state.keys_[i] = ZksTrieKey(y);
    entries[i] = TrieEntry{state.keys_[i], ZksLeafValue(state.elements_[i], state.openings_[i])};
  });
  auto trie = PatriciaTrie::Build(std::move(entries), workers);
  // Distinct elements colliding on a 256-bit key is a hash collision.
  if (!trie.ok()) return absl::InternalError(trie.status().message());
  state.trie_ = std::move(*trie);
  ZksCommitment commitment = state.commitment();
  return std::make_pair(std::move(state), commitment);
}

absl::Status ZksState::Index() {
  index_.clear();
  index_.reserve(elements_.size());
  for (size_t i = 0; i < elements_.size(); ++i) {
    auto [it, inserted] = index_.emplace(ElementKey(elements_[i]), i);
    if (!inserted) {
      return absl::InvalidArgumentError(absl::StrCat(
          "duplicate element at index ", i, " (first seen at index ", it->second, ")"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ZksQueryProof> ZksState::Query(ByteSpan element, Rng& rng) const {
  auto y = VrfEval(keypair_.sk, element);
  if (!y.ok()) return y.status();
  auto pi = VrfProve(keypair_.sk, element, *y, rng);
  if (!pi.ok()) return pi.status();
  const TrieKey key = ZksTrieKey(*y);

  ZksQueryProof proof;
  proof.y = *y;
  proof.vrf_proof = *pi;
  auto it = index_.find(ElementKey(element));
  if (it != index_.end()) {
    auto incl = trie_.ProveInclusion(key);
    if (!incl.ok()) return absl::InternalError("committed element missing from accumulator");
    proof.resp = ZksResponse::kMember;
    proof.acc_proof = std::move(*incl);
    proof.opening = openings_[it->second];
  } else {
    auto nonincl = trie_.ProveNonInclusion(key);
    if (!nonincl.ok()) return absl::InternalError("VRF key collision with a committed element");
    proof.resp = ZksResponse::kNonMember;
    proof.acc_proof = std::move(*nonincl);
  }
  return proof;
}

Bytes ZksState::Serialize() const {
  ByteWriter w;
  w.PutRaw(kStateMagic);
  w.PutU8(kStateVersion);
  w.PutFramed(kGroupId);
  w.PutRaw(keypair_.sk.bytes());
  w.PutU16(static_cast<uint16_t>(lambda_bits_));
  w.PutU64(elements_.size());
  for (size_t i = 0; i < elements_.size(); ++i) {
    w.PutFramed(elements_[i]);
    w.PutRaw(openings_[i]);
    w.PutRaw(keys_[i]);
  }
  return std::move(w).Take();
}

absl::StatusOr<ZksState> ZksState::Parse(ByteSpan bytes, unsigned workers) {
  ByteReader r(bytes);
  auto magic = r.GetRaw(kStateMagic.size());
  if (!magic.ok() || AsStringView(*magic) != kStateMagic) {
    return absl::InvalidArgumentError("not a ZKS state file");
  }
  auto version = r.GetU8();
  if (!version.ok() || *version != kStateVersion) {
    return absl::InvalidArgumentError("unsupported ZKS state version");
  }
  auto group = r.GetFramed(64);
  if (!group.ok() || AsStringView(*group) != kGroupId) {
    return absl::InvalidArgumentError("unsupported group in ZKS state");
  }
  auto sk_raw = r.GetRaw(kScalarSize);
  if (!sk_raw.ok()) return sk_raw.status();
  auto sk = Scalar::FromBytes(*sk_raw);
  if (!sk.ok()) return sk.status();
  auto kp = VrfKeypairFromSecret(*sk);
  if (!kp.ok()) return kp.status();
  auto lambda = r.GetU16();
  if (!lambda.ok()) return lambda.status();
  if (auto st = CheckLambda(*lambda); !st.ok()) return st;
  auto n = r.GetU64();
  if (!n.ok()) return n.status();

  ZksState state;
  state.keypair_ = *kp;
  state.lambda_bits_ = *lambda;
  std::vector<TrieEntry> entries;
  for (uint64_t i = 0; i < *n; ++i) {
    auto e = r.GetFramed();
    if (!e.ok()) return e.status();
    auto opening = r.GetRaw(*lambda / 8);
    if (!opening.ok()) return opening.status();
    auto key = r.GetRaw(kDigestSize);
    if (!key.ok()) return key.status();
    state.elements_.emplace_back(e->begin(), e->end());
    state.openings_.emplace_back(opening->begin(), opening->end());
    state.keys_.push_back(*DigestFromBytes(*key));
  }
  if (!r.done()) return absl::InvalidArgumentError("trailing bytes after ZKS state");
  if (auto st = state.Index(); !st.ok()) return st;
  entries.resize(state.elements_.size());
  ParallelFor(entries.size(), workers, [&](size_t i) {
    entries[i] = TrieEntry{state.keys_[i], ZksLeafValue(state.elements_[i], state.openings_[i])};
  });
  auto trie = PatriciaTrie::Build(std::move(entries), workers);
  if (!trie.ok()) return trie.status();
  state.trie_ = std::move(*trie);
  return state;
}

ZksVerdict ZksVerify(const ZksCommitment& commitment, ByteSpan element,
                     ZksResponse resp, const ZksQueryProof& proof) {
  if (proof.resp != resp) return ZksVerdict::kResponseMismatch;
  const bool member_proof = std::holds_alternative<InclusionProof>(proof.acc_proof);
  if (member_proof != (resp == ZksResponse::kMember)) return ZksVerdict::kResponseMismatch;

  switch (VrfVerify(commitment.pk, element, proof.y, proof.vrf_proof)) {
    case VrfVerdict::kAccept:
      break;
    case VrfVerdict::kMalformed:
      return ZksVerdict::kMalformed;
    case VrfVerdict::kEquationFailed:
      return ZksVerdict::kVrfFailed;
  }

  const TrieKey key = ZksTrieKey(proof.y);
  if (resp == ZksResponse::kMember) {
    if (proof.opening.size() < kZksMinLambdaBits / 8 || proof.opening.size() > 64) {
      return ZksVerdict::kMalformed;
    }
    const Digest value = ZksLeafValue(element, proof.opening);
    if (!AccVerifyInclusion(commitment.com, key, value, std::get<InclusionProof>(proof.acc_proof))) {
      return ZksVerdict::kAccumulatorFailed;
    }
  } else {
    if (!proof.opening.empty()) return ZksVerdict::kMalformed;
    if (!AccVerifyNonInclusion(commitment.com, key, std::get<NonInclusionProof>(proof.acc_proof))) {
      return ZksVerdict::kAccumulatorFailed;
    }
  }
  return ZksVerdict::kAccept;
}

}  // namespace mtk
