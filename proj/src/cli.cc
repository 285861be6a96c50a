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

#include "mtk/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "mtk/bench.h"
#include "mtk/model_hash.h"
#include "mtk/parallel.h"
#include "mtk/signing.h"
#include "mtk/strings.h"
#include "mtk/translog.h"
#include "mtk/zks.h"

namespace mtk {
namespace fs = std::filesystem;
using json = nlohmann::json;
constexpr auto kReplaceInvalid = json::error_handler_t::replace;

namespace {

constexpr char kEnvIssuer[] = "https://idp.mtk.local";

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

int Fail(Io& io, const absl::Status& s) {
  io.err << "error: " << s.message() << "\n";
  return kExitError;
}

absl::StatusOr<std::string> ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const fs::path& p, std::string_view data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", p.string()));
  return absl::OkStatus();
}

// "4096", "4K", "16M", "1G" with binary multipliers.
absl::StatusOr<uint64_t> ParseSize(std::string_view s) {
  if (s.empty()) return absl::InvalidArgumentError("empty size");
  uint64_t mult = 1;
  switch (s.back()) {
    case 'K':
    case 'k':
      mult = uint64_t{1} << 10;
      break;
    case 'M':
    case 'm':
      mult = uint64_t{1} << 20;
      break;
    case 'G':
    case 'g':
      mult = uint64_t{1} << 30;
      break;
    default:
      break;
  }
  if (mult != 1) s.remove_suffix(1);
  uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9' || v > UINT64_MAX / 10) {
      return absl::InvalidArgumentError(absl::StrCat("invalid size '", AV(s), "'"));
    }
    v = v * 10 + static_cast<uint64_t>(c - '0');
  }
  if (s.empty()) return absl::InvalidArgumentError("invalid size");
  return v * mult;
}

absl::StatusOr<std::vector<uint64_t>> ParseSizes(const std::string& list) {
  std::vector<uint64_t> out;
  for (absl::string_view part : absl::StrSplit(list, ',', absl::SkipEmpty())) {
    auto v = ParseSize(SV(part));
    if (!v.ok()) return v.status();
    out.push_back(*v);
  }
  if (out.empty()) return absl::InvalidArgumentError("no sizes given");
  return out;
}

// ---------------------------------------------------------------- hashing

struct HashArgs {
  std::string alg = "sha256";
  std::string scheme = "chunked";
  std::string chunk_size = "1G";
  unsigned workers = 0;
};

void AddHashFlags(CLI::App* cmd, HashArgs& a) {
  cmd->add_option("--alg", a.alg, "Hash algorithm")
      ->check(CLI::IsMember({"sha256", "blake2b256"}))
      ->capture_default_str();
  cmd->add_option("--scheme", a.scheme, "Hashing scheme")
      ->check(CLI::IsMember({"naive", "chunked"}))
      ->capture_default_str();
  cmd->add_option("--chunk-size", a.chunk_size, "Chunk size (K/M/G suffixes)")
      ->capture_default_str();
  cmd->add_option("--workers", a.workers, "Hashing threads (0 = all cores)");
}

absl::StatusOr<HashOptions> ToHashOptions(const HashArgs& a) {
  HashOptions o;
  auto alg = ParseHashAlg(a.alg);
  if (!alg.ok()) return alg.status();
  auto scheme = ParseHashScheme(a.scheme);
  if (!scheme.ok()) return scheme.status();
  auto chunk = ParseSize(a.chunk_size);
  if (!chunk.ok()) return chunk.status();
  o.alg = *alg;
  o.scheme = *scheme;
  o.chunk_size = o.scheme == HashScheme::kNaive ? 0 : *chunk;
  if (o.scheme == HashScheme::kChunked && o.chunk_size == 0) {
    return absl::InvalidArgumentError("chunk size must be positive");
  }
  o.workers = a.workers;
  return o;
}

int CmdHash(Io& io, const std::string& path, const HashArgs& a, bool show_manifest) {
  auto opts = ToHashOptions(a);
  if (!opts.ok()) return Fail(io, opts.status());
  auto r = HashModel(path, *opts);
  if (!r.ok()) return Fail(io, r.status());
  const auto& [manifest, digest] = *r;
  if (io.json) {
    json files = json::array();
    for (const ManifestEntry& e : manifest.entries) {
      files.push_back({{"path", e.path}, {"size", e.size}, {"digest", DigestHex(e.digest)}});
    }
    io.out << json{{"digest", digest.ToString()}, {"files", files}}.dump(-1, ' ', false, kReplaceInvalid) << "\n";
  } else {
    if (show_manifest) io.out << manifest.Serialize(*opts);
    io.out << digest.ToString() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- signing

// A directory holding the emulated identity provider, CA and log, created
// on first use.
struct SigningEnv {
  std::unique_ptr<IdentityProvider> idp;
  std::unique_ptr<CertificateAuthority> ca;
  std::unique_ptr<TransparencyLog> log;
  TrustRoots roots;
};

absl::StatusOr<SigningKey> LoadOrCreateKey(const fs::path& p) {
  if (!fs::exists(p)) {
    SystemRng rng;
    SigningKey key = SigningKey::Generate(rng);
    if (auto s = WriteFile(p, HexEncode(key.Seed()) + "\n"); !s.ok()) return s;
    std::error_code ec;
    fs::permissions(p, fs::perms::owner_read | fs::perms::owner_write,
                    fs::perm_options::replace, ec);
    return key;
  }
  auto text = ReadFile(p);
  if (!text.ok()) return text.status();
  std::string hex = *text;
  while (!hex.empty() && (hex.back() == '\n' || hex.back() == '\r')) hex.pop_back();
  auto seed = HexDecode(hex);
  if (!seed.ok()) return seed.status();
  return SigningKey::FromSeed(*seed);
}

absl::StatusOr<SigningEnv> OpenSigningEnv(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return absl::UnavailableError(ec.message());
  auto idp_key = LoadOrCreateKey(dir / "idp.key");
  if (!idp_key.ok()) return idp_key.status();
  auto ca_key = LoadOrCreateKey(dir / "ca.key");
  if (!ca_key.ok()) return ca_key.status();

  SigningEnv env;
  const fs::path log_dir = dir / "log";
  if (fs::exists(log_dir / "log.pub")) {
    auto log = TransparencyLog::Open(log_dir);
    if (!log.ok()) return log.status();
    env.log = std::move(*log);
  } else {
    SystemRng rng;
    auto log = TransparencyLog::Create(log_dir, SigningKey::Generate(rng));
    if (!log.ok()) return log.status();
    env.log = std::move(*log);
  }
  env.idp = std::make_unique<IdentityProvider>(kEnvIssuer, *idp_key);
  env.ca = std::make_unique<CertificateAuthority>(*ca_key);
  env.ca->TrustProvider(kEnvIssuer, env.idp->public_key());
  env.roots.ca_key = env.ca->public_key();
  env.roots.providers[kEnvIssuer] = env.idp->public_key();
  env.roots.log_key = env.log->public_key();
  if (auto s = WriteFile(dir / "trust_roots.json", env.roots.ToJson()); !s.ok()) return s;
  return env;
}

int CmdSign(Io& io, const std::string& model, const std::string& identity,
            const std::string& env_dir, const HashArgs& a) {
  auto opts = ToHashOptions(a);
  if (!opts.ok()) return Fail(io, opts.status());
  auto env = OpenSigningEnv(env_dir);
  if (!env.ok()) return Fail(io, env.status());
  SigningServices services;
  services.idp = env->idp.get();
  services.ca = env->ca.get();
  services.log = env->log.get();
  SignOptions so;
  so.hash = *opts;
  so.identity = identity;
  auto r = SignModel(model, so, services);
  if (!r.ok()) return Fail(io, r.status());
  if (io.json) {
    io.out << json{{"bundle", r->bundle_path.string()},
                   {"digest", r->bundle.digest.ToString()},
                   {"identity", identity},
                   {"log_index", r->bundle.inclusion.index},
                   {"hash_seconds", r->hash_seconds},
                   {"total_seconds", r->total_seconds}}
                  .dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else {
    io.out << "signed " << model << " as " << identity << "\n"
           << "digest: " << r->bundle.digest.ToString() << "\n"
           << "bundle: " << r->bundle_path.string() << "\n"
           << "log index: " << r->bundle.inclusion.index << "\n"
           << "trust roots: " << (fs::path(env_dir) / "trust_roots.json").string() << "\n";
  }
  return kExitOk;
}

int CmdVerify(Io& io, const std::string& model, const std::string& trust_roots,
              const std::string& bundle_path, const std::string& identity,
              const std::string& mirror_dir, unsigned workers) {
  auto roots_text = ReadFile(trust_roots);
  if (!roots_text.ok()) return Fail(io, roots_text.status());
  auto roots = TrustRoots::FromJson(*roots_text);
  if (!roots.ok()) return Fail(io, roots.status());
  const fs::path bp = bundle_path.empty() ? BundlePathFor(model) : fs::path(bundle_path);
  auto text = ReadFile(bp);
  if (!text.ok()) return Fail(io, text.status());

  VerifyResult result;
  auto bundle = SignatureBundle::FromJson(*text);
  std::unique_ptr<TransparencyLog> mirror;
  if (!bundle.ok()) {
    result.reason = VerifyReason::kMalformed;
    result.detail = std::string(bundle.status().message());
  } else {
    VerifyOptions vo;
    if (!identity.empty()) vo.expected_identity = identity;
    vo.workers = workers;
    if (!mirror_dir.empty()) {
      auto log = TransparencyLog::Open(mirror_dir, TransparencyLog::Mode::kReadOnly);
      if (!log.ok()) return Fail(io, log.status());
      mirror = std::move(*log);
      vo.mirror = mirror.get();
    }
    result = VerifyModel(model, *bundle, *roots, vo);
  }
  if (io.json) {
    io.out << json{{"accepted", result.ok()},
                   {"reason", std::string(VerifyReasonName(result.reason))},
                   {"detail", result.detail},
                   {"hash_seconds", result.hash_seconds},
                   {"total_seconds", result.total_seconds}}
                  .dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else if (result.ok()) {
    io.out << "accept: " << model << " signed by " << bundle->certificate.subject << "\n";
  } else {
    io.out << "reject: " << VerifyReasonName(result.reason) << ": " << result.detail << "\n";
  }
  return result.ok() ? kExitOk : kExitReject;
}

// ---------------------------------------------------------------- zks

struct ElementArgs {
  std::string file;
  std::string text;
  std::string hex;
};

void AddElementFlags(CLI::App* cmd, ElementArgs& e) {
  auto* g = cmd->add_option_group("element", "The queried element");
  g->add_option("--file", e.file, "Element is the SHA-256 of this file's bytes");
  g->add_option("--element", e.text, "Element given as a string");
  g->add_option("--element-hex", e.hex, "Element given in hex");
  g->require_option(1);
}

absl::StatusOr<Bytes> ResolveElement(const ElementArgs& e) {
  if (!e.file.empty()) {
    auto data = ReadFile(e.file);
    if (!data.ok()) return data.status();
    const Digest d = DatasetElement(AsBytes(*data));
    return Bytes(d.begin(), d.end());
  }
  if (!e.hex.empty()) return HexDecode(e.hex);
  return Bytes(e.text.begin(), e.text.end());
}

absl::StatusOr<std::vector<Bytes>> LoadDataset(const std::string& dir, const std::string& lines) {
  std::vector<Bytes> out;
  if (!dir.empty()) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::end(it);
         it.increment(ec)) {
      if (it->is_regular_file()) files.push_back(it->path());
    }
    if (ec) return absl::UnavailableError(ec.message());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      auto data = ReadFile(f);
      if (!data.ok()) return data.status();
      const Digest d = DatasetElement(AsBytes(*data));
      out.emplace_back(d.begin(), d.end());
    }
  } else {
    auto text = ReadFile(lines);
    if (!text.ok()) return text.status();
    for (absl::string_view line : absl::StrSplit(*text, '\n', absl::SkipEmpty())) {
      out.emplace_back(line.begin(), line.end());
    }
  }
  return out;
}

int CmdZksCommit(Io& io, const std::string& dir, const std::string& lines,
                 const std::string& state_path, const std::string& com_path, size_t lambda,
                 unsigned workers) {
  auto data = LoadDataset(dir, lines);
  if (!data.ok()) return Fail(io, data.status());
  const size_t n = data->size();
  SystemRng rng;
  auto committed = ZksState::Commit(std::move(*data), lambda, rng, ResolveWorkers(workers));
  if (!committed.ok()) return Fail(io, committed.status());
  const auto& [state, com] = *committed;
  if (auto s = WriteFile(state_path, AsStringView(state.Serialize())); !s.ok()) {
    return Fail(io, s);
  }
  fs::permissions(state_path, fs::perms::owner_read | fs::perms::owner_write,
                  fs::perm_options::replace);
  if (auto s = WriteFile(com_path, com.ToText()); !s.ok()) return Fail(io, s);
  if (io.json) {
    io.out << json{{"n", n}, {"root", DigestHex(com.com.root)}, {"pk", HexEncode(com.pk.bytes())}}
                  .dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else {
    io.out << "committed " << n << " elements\n" << com.ToText();
  }
  return kExitOk;
}

int CmdZksProve(Io& io, const std::string& state_path, const ElementArgs& e,
                const std::string& out_path) {
  auto raw = ReadFile(state_path);
  if (!raw.ok()) return Fail(io, raw.status());
  auto state = ZksState::Parse(AsBytes(*raw));
  if (!state.ok()) return Fail(io, state.status());
  auto element = ResolveElement(e);
  if (!element.ok()) return Fail(io, element.status());
  SystemRng rng;
  auto proof = state->Query(*element, rng);
  if (!proof.ok()) return Fail(io, proof.status());
  const Bytes bytes = proof->Serialize();
  if (auto s = WriteFile(out_path, AsStringView(bytes)); !s.ok()) return Fail(io, s);
  const int resp = static_cast<int>(proof->resp);
  if (io.json) {
    io.out << json{{"resp", resp}, {"proof", out_path}, {"proof_bytes", bytes.size()}}.dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else {
    io.out << "resp=" << resp << " (" << (resp ? "member" : "non-member") << ")\nproof: "
           << out_path << "\n";
  }
  return kExitOk;
}

int CmdZksVerify(Io& io, const std::string& com_path, const ElementArgs& e,
                 const std::string& proof_path) {
  auto com_text = ReadFile(com_path);
  if (!com_text.ok()) return Fail(io, com_text.status());
  auto com = ZksCommitment::FromText(*com_text);
  if (!com.ok()) return Fail(io, com.status());
  auto element = ResolveElement(e);
  if (!element.ok()) return Fail(io, element.status());
  auto raw = ReadFile(proof_path);
  if (!raw.ok()) return Fail(io, raw.status());
  ZksVerdict verdict = ZksVerdict::kMalformed;
  int resp = -1;
  auto proof = ZksQueryProof::Parse(AsBytes(*raw));
  if (proof.ok()) {
    resp = static_cast<int>(proof->resp);
    verdict = ZksVerify(*com, *element, proof->resp, *proof);
  }
  const bool ok = verdict == ZksVerdict::kAccept;
  if (io.json) {
    io.out << json{{"accepted", ok}, {"resp", resp},
                   {"verdict", std::string(ZksVerdictName(verdict))}}
                  .dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else if (ok) {
    io.out << "accept: resp=" << resp << " (" << (resp ? "member" : "non-member") << ")\n";
  } else {
    io.out << "reject: " << ZksVerdictName(verdict) << "\n";
  }
  return ok ? kExitOk : kExitReject;
}

// ---------------------------------------------------------------- log

json ProofJson(const LogInclusionProof& p) {
  json path = json::array();
  for (const Digest& d : p.path) path.push_back(DigestHex(d));
  return {{"index", p.index}, {"tree_size", p.tree_size}, {"path", path}};
}

int CmdLogInit(Io& io, const std::string& dir) {
  SystemRng rng;
  auto log = TransparencyLog::Create(dir, SigningKey::Generate(rng));
  if (!log.ok()) return Fail(io, log.status());
  if (io.json) {
    io.out << json{{"log", dir}, {"public_key", (*log)->public_key().ToHex()}}.dump(-1, ' ', false, kReplaceInvalid) << "\n";
  } else {
    io.out << "created log " << dir << "\npublic key: " << (*log)->public_key().ToHex() << "\n";
  }
  return kExitOk;
}

int CmdLogAppend(Io& io, const std::string& dir, const std::string& file,
                 const std::string& data) {
  auto log = TransparencyLog::Open(dir);
  if (!log.ok()) return Fail(io, log.status());
  std::string payload = data;
  if (!file.empty()) {
    auto contents = ReadFile(file);
    if (!contents.ok()) return Fail(io, contents.status());
    payload = std::move(*contents);
  }
  auto r = (*log)->Append(AsBytes(payload));
  if (!r.ok()) return Fail(io, r.status());
  if (io.json) {
    io.out << json{{"index", r->entry.index},
                   {"leaf_hash", DigestHex(r->entry.leaf_hash)},
                   {"proof", ProofJson(r->proof)},
                   {"checkpoint", r->checkpoint.ToText()}}
                  .dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else {
    io.out << "index: " << r->entry.index << "\nleaf: " << DigestHex(r->entry.leaf_hash)
           << "\ncheckpoint:\n"
           << r->checkpoint.ToText();
  }
  return kExitOk;
}

int CmdLogProve(Io& io, const std::string& dir, uint64_t index,
                std::optional<uint64_t> tree_size) {
  auto log = TransparencyLog::Open(dir, TransparencyLog::Mode::kReadOnly);
  if (!log.ok()) return Fail(io, log.status());
  const uint64_t size = tree_size.value_or((*log)->size());
  auto proof = (*log)->ProveInclusion(index, size);
  if (!proof.ok()) return Fail(io, proof.status());
  auto entry = (*log)->Entry(index);
  if (!entry.ok()) return Fail(io, entry.status());
  auto root = (*log)->RootAt(size);
  if (!root.ok()) return Fail(io, root.status());
  if (io.json) {
    json j = ProofJson(*proof);
    j["leaf_hash"] = DigestHex(entry->leaf_hash);
    j["root"] = DigestHex(*root);
    io.out << j.dump(-1, ' ', false, kReplaceInvalid) << "\n";
  } else {
    io.out << "index: " << index << "\ntree size: " << size
           << "\nleaf: " << DigestHex(entry->leaf_hash) << "\nroot: " << DigestHex(*root)
           << "\npath:\n";
    for (const Digest& d : proof->path) io.out << "  " << DigestHex(d) << "\n";
  }
  return kExitOk;
}

int CmdLogAudit(Io& io, const std::string& dir) {
  auto log = TransparencyLog::Open(dir, TransparencyLog::Mode::kReadOnly);
  if (!log.ok()) return Fail(io, log.status());
  const AuditReport report = (*log)->Audit();
  if (io.json) {
    io.out << json{{"ok", report.ok},
                   {"checkpoints_checked", report.checkpoints_checked},
                   {"size", (*log)->size()},
                   {"failure", report.failure}}
                  .dump(-1, ' ', false, kReplaceInvalid)
           << "\n";
  } else if (report.ok) {
    io.out << "audit ok: " << report.checkpoints_checked << " checkpoints, " << (*log)->size()
           << " entries\n";
  } else {
    io.out << "audit failed: " << report.failure << "\n";
  }
  return report.ok ? kExitOk : kExitReject;
}

// ---------------------------------------------------------------- bench

int WriteBench(Io& io, const absl::StatusOr<std::vector<BenchRecord>>& records,
               const std::string& out_path) {
  if (!records.ok()) return Fail(io, records.status());
  std::string csv = BenchCsvHeader();
  for (const BenchRecord& r : *records) csv += BenchCsvRow(r);
  if (out_path.empty() || out_path == "-") {
    io.out << csv;
  } else if (auto s = WriteFile(out_path, csv); !s.ok()) {
    return Fail(io, s);
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model transparency toolkit: hashing, signing, transparency log and ZKS.", "mtk"};
  app.require_subcommand(1);
  app.fallthrough();
  Io io{out, err};
  app.add_flag("--json", io.json, "Machine-readable JSON output");

  // hash
  std::string model;
  HashArgs hash_args;
  bool show_manifest = false;
  auto* hash = app.add_subcommand("hash", "Hash a model file or directory");
  hash->add_option("path", model, "Model file or directory")->required();
  AddHashFlags(hash, hash_args);
  hash->add_flag("--manifest", show_manifest, "Print the manifest before the digest");

  // sign
  std::string identity, env_dir = ".mtk";
  auto* sign = app.add_subcommand("sign", "Sign a model and record it in the log");
  sign->add_option("path", model, "Model file or directory")->required();
  sign->add_option("--identity", identity, "Signer identity")->required();
  sign->add_option("--env", env_dir, "Signing environment (IdP, CA, log)")
      ->capture_default_str();
  AddHashFlags(sign, hash_args);

  // verify
  std::string trust_roots, bundle_path, mirror_dir;
  unsigned verify_workers = 0;
  auto* verify = app.add_subcommand("verify", "Verify a model against its bundle");
  verify->add_option("path", model, "Model file or directory")->required();
  verify->add_option("--trust-roots", trust_roots, "Trust roots JSON")->required();
  verify->add_option("--bundle", bundle_path, "Bundle path (default: next to the model)");
  verify->add_option("--identity", identity, "Require this signer identity");
  verify->add_option("--log-mirror", mirror_dir, "Local log copy to check for rollback");
  verify->add_option("--workers", verify_workers, "Hashing threads (0 = all cores)");

  // zks
  std::string data_dir, lines_file, state_path, com_path, proof_path;
  size_t lambda = kZksDefaultLambdaBits;
  unsigned zks_workers = 0;
  auto* zcommit = app.add_subcommand("zks-commit", "Commit to a dataset");
  auto* src = zcommit->add_option_group("dataset", "Dataset source");
  src->add_option("--dir", data_dir, "Each regular file is one element (its SHA-256)");
  src->add_option("--lines", lines_file, "Each non-empty line is one element");
  src->require_option(1);
  zcommit->add_option("--state", state_path, "Output: secret prover state")->required();
  zcommit->add_option("--commitment", com_path, "Output: public commitment")->required();
  zcommit->add_option("--lambda", lambda, "Opening length in bits")->capture_default_str();
  zcommit->add_option("--workers", zks_workers, "Threads (0 = all cores)");

  ElementArgs element;
  auto* zprove = app.add_subcommand("zks-prove", "Prove (non-)membership of an element");
  zprove->add_option("--state", state_path, "Prover state")->required();
  zprove->add_option("--out", proof_path, "Output proof file")->required();
  AddElementFlags(zprove, element);

  auto* zverify = app.add_subcommand("zks-verify", "Verify a (non-)membership proof");
  zverify->add_option("--commitment", com_path, "Public commitment")->required();
  zverify->add_option("--proof", proof_path, "Proof file")->required();
  AddElementFlags(zverify, element);

  // log
  std::string log_dir, log_file, log_data;
  uint64_t log_index = 0;
  std::optional<uint64_t> log_tree_size;
  auto* logcmd = app.add_subcommand("log", "Transparency log operations");
  logcmd->require_subcommand(1);
  auto* linit = logcmd->add_subcommand("init", "Create a new log");
  linit->add_option("dir", log_dir, "Log directory")->required();
  auto* lappend = logcmd->add_subcommand("append", "Append an entry");
  lappend->add_option("--log", log_dir, "Log directory")->required();
  auto* payload = lappend->add_option_group("payload", "Entry payload");
  payload->add_option("--file", log_file, "Payload file");
  payload->add_option("--data", log_data, "Payload string");
  payload->require_option(1);
  auto* lprove = logcmd->add_subcommand("prove", "Print an inclusion proof");
  lprove->add_option("--log", log_dir, "Log directory")->required();
  lprove->add_option("--index", log_index, "Entry index")->required();
  lprove->add_option("--tree-size", log_tree_size, "Tree size (default: current)");
  auto* laudit = logcmd->add_subcommand("audit", "Replay and check all checkpoints");
  laudit->add_option("--log", log_dir, "Log directory")->required();

  // bench
  std::string sizes, bench_out, scratch;
  int runs = 0;
  unsigned bench_workers = 0;
  std::string bench_chunk = "8M";
  bool cold = false;
  int queries = 20;
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* bhash = bench->add_subcommand("hash", "Naive vs chunked hashing");
  bhash->add_option("--sizes", sizes, "Comma-separated file sizes (K/M/G)")->required();
  bhash->add_option("--out", bench_out, "CSV output (default stdout)");
  bhash->add_option("--runs", runs, "Runs per point (>= 5)")->check(CLI::Range(5, 1000));
  bhash->add_option("--workers", bench_workers, "Chunked-hash threads (0 = all cores)");
  bhash->add_option("--chunk-size", bench_chunk, "Chunk size")->capture_default_str();
  bhash->add_option("--scratch", scratch, "Directory for synthetic files");
  bhash->add_flag("--cold-cache", cold, "Evict files from the page cache before each pass");
  auto* bzks = bench->add_subcommand("zks", "ZKS commit/prove/verify scaling");
  bzks->add_option("--sizes", sizes, "Comma-separated set sizes")->required();
  bzks->add_option("--out", bench_out, "CSV output (default stdout)");
  bzks->add_option("--runs", runs, "Runs per point (>= 10)")->check(CLI::Range(10, 1000));
  bzks->add_option("--queries", queries, "Queries averaged per run")->check(CLI::Range(1, 100000));
  bzks->add_option("--workers", bench_workers, "Commit threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (*hash) return CmdHash(io, model, hash_args, show_manifest);
  if (*sign) return CmdSign(io, model, identity, env_dir, hash_args);
  if (*verify) {
    return CmdVerify(io, model, trust_roots, bundle_path, identity, mirror_dir, verify_workers);
  }
  if (*zcommit) {
    return CmdZksCommit(io, data_dir, lines_file, state_path, com_path, lambda, zks_workers);
  }
  if (*zprove) return CmdZksProve(io, state_path, element, proof_path);
  if (*zverify) return CmdZksVerify(io, com_path, element, proof_path);
  if (*linit) return CmdLogInit(io, log_dir);
  if (*lappend) return CmdLogAppend(io, log_dir, log_file, log_data);
  if (*lprove) return CmdLogProve(io, log_dir, log_index, log_tree_size);
  if (*laudit) return CmdLogAudit(io, log_dir);
  if (*bhash) {
    auto parsed = ParseSizes(sizes);
    if (!parsed.ok()) return Fail(io, parsed.status());
    auto chunk = ParseSize(bench_chunk);
    if (!chunk.ok()) return Fail(io, chunk.status());
    HashBenchOptions o;
    o.sizes = *parsed;
    o.runs = runs > 0 ? runs : 5;
    o.workers = bench_workers;
    o.chunk_size = *chunk;
    o.cold_cache = cold;
    if (!scratch.empty()) o.scratch_dir = scratch;
    o.on_record = [&](const BenchRecord& r) {
      err << r.operation << " size=" << r.param << " median=" << r.median_seconds << "s"
          << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
    };
    return WriteBench(io, BenchHash(o), bench_out);
  }
  if (*bzks) {
    auto parsed = ParseSizes(sizes);
    if (!parsed.ok()) return Fail(io, parsed.status());
    ZksBenchOptions o;
    o.sizes = *parsed;
    o.runs = runs > 0 ? runs : 10;
    o.queries_per_run = queries;
    o.workers = ResolveWorkers(bench_workers);
    o.on_record = [&](const BenchRecord& r) {
      err << r.operation << " n=" << r.param << " median=" << r.median_seconds << "s\n";
    };
    return WriteBench(io, BenchZks(o), bench_out);
  }
  return kExitUsage;
}

}  // namespace mtk
