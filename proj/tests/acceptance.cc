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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   acceptance [--criterion N]... [--out-dir DIR] [--scratch DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "mtk/accumulator.h"
#include "mtk/bench.h"
#include "mtk/model_hash.h"
#include "mtk/signing.h"
#include "mtk/translog.h"
#include "mtk/vrf.h"
#include "mtk/zks.h"
#include "signing_env.h"
#include "test_util.h"

namespace mtk {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct Outcome {
  bool pass = false;
  std::string summary;
};

struct Context {
  fs::path out_dir;      // bench CSVs are written here when non-empty
  fs::path scratch_dir;  // large synthetic files
};

using Steady = std::chrono::steady_clock;

double Since(Steady::time_point t0) {
  return std::chrono::duration<double>(Steady::now() - t0).count();
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t k = v.size();
  return k % 2 ? v[k / 2] : (v[k / 2 - 1] + v[k / 2]) / 2;
}

void SaveCsv(const Context& ctx, const std::string& name, const std::vector<BenchRecord>& rs) {
  if (ctx.out_dir.empty()) return;
  fs::create_directories(ctx.out_dir);
  std::string csv = BenchCsvHeader();
  for (const BenchRecord& r : rs) csv += BenchCsvRow(r);
  testing::WriteText(ctx.out_dir / name, csv);
}

// Log-uniform size in [lo, hi].
uint64_t LogUniform(Rng& rng, uint64_t lo, uint64_t hi) {
  const double u = static_cast<double>(rng.Uniform(1u << 30)) / (1u << 30);
  const double v = std::exp(std::log(double(lo)) + u * (std::log(double(hi)) - std::log(double(lo))));
  return std::clamp<uint64_t>(static_cast<uint64_t>(v), lo, hi);
}

// ---------------------------------------------------------------------------

Outcome ChunkedHashEquivalence(const Context& ctx) {
  const auto t0 = Steady::now();
  TempDir tmp(ctx.scratch_dir);
  SeededRng rng(101);
  std::vector<fs::path> files;
  std::string requests;
  for (int i = 0; i < 100; ++i) {
    const uint64_t size = i == 0 ? 1 : i == 1 ? (64u << 20) : LogUniform(rng, 1, 64u << 20);
    const fs::path p = tmp / ("f" + std::to_string(i));
    if (auto s = WriteSyntheticFile(p, size, 1000 + i); !s.ok()) return {false, s.ToString()};
    files.push_back(p);
    for (uint64_t chunk : {uint64_t{1} << 10, uint64_t{8} << 20}) {
      requests += "file\t" + p.string() + "\tsha256\t" + std::to_string(chunk) + "\n";
    }
  }
  const auto expected = testing::RunPython(
      testing::SourceDir() / "tools" / "oracle" / "model_hash_oracle.py", requests);
  if (expected.size() != 200) return {false, "oracle returned wrong number of digests"};
  int mismatches = 0;
  size_t k = 0;
  for (const fs::path& p : files) {
    for (uint64_t chunk : {uint64_t{1} << 10, uint64_t{8} << 20}) {
      auto d = HashFile(p, {HashScheme::kChunked, chunk, HashAlg::kSha256, 0});
      if (!d.ok() || DigestHex(d->digest) != expected[k]) ++mismatches;
      ++k;
    }
  }
  const double secs = Since(t0);
  return {mismatches == 0 && secs < 120,
          absl::StrCat("200 digests over 100 files (1 B to 64 MiB), ", mismatches,
                       " oracle mismatches, ", secs, " s (limit 120 s)")};
}

Outcome HashingShape(const Context& ctx) {
  HashBenchOptions o;
  o.sizes = {uint64_t{1} << 10,  uint64_t{16} << 10, uint64_t{256} << 10, uint64_t{4} << 20,
             uint64_t{64} << 20, uint64_t{256} << 20, uint64_t{1} << 30,  uint64_t{4} << 30};
  o.runs = 5;
  o.workers = 4;
  o.chunk_size = uint64_t{8} << 20;
  o.cold_cache = true;
  o.scratch_dir = ctx.scratch_dir;
  auto records = BenchHash(o);
  if (!records.ok()) return {false, records.status().ToString()};
  SaveCsv(ctx, "bench_hash.csv", *records);

  std::map<std::string, std::vector<std::pair<uint64_t, double>>> curves;
  for (const BenchRecord& r : *records) {
    if (r.note.rfind("skipped", 0) == 0) return {false, "skipped size " + std::to_string(r.param)};
    curves[r.operation].emplace_back(r.param, r.median_seconds);
  }
  bool monotone = true;
  for (auto& [op, pts] : curves) {
    for (size_t i = 1; i < pts.size(); ++i) monotone = monotone && pts[i].second >= pts[i - 1].second;
  }
  bool crossover = true;
  std::string ratios;
  const auto& naive = curves["hash-naive"];
  const auto& chunked = curves["hash-chunked"];
  for (size_t i = 0; i < naive.size(); ++i) {
    if (naive[i].first < (uint64_t{256} << 20)) continue;
    crossover = crossover && chunked[i].second <= naive[i].second;
    absl::StrAppend(&ratios, " ", naive[i].first >> 20, "MiB:", chunked[i].second / naive[i].second);
  }
  return {monotone && crossover,
          absl::StrCat("monotone=", monotone ? "yes" : "no",
                       ", chunked<=naive at >=256MiB=", crossover ? "yes" : "no",
                       " (chunked/naive", ratios, "; ", o.workers, " workers, ",
                       std::thread::hardware_concurrency(), " hw threads, cold cache)")};
}

Outcome SigningOverhead(const Context& ctx) {
  testing::SigningEnv env(301);
  TempDir tmp(ctx.scratch_dir);
  std::vector<double> overheads;
  double worst_verify = 0;
  std::string detail;
  for (uint64_t size : {uint64_t{1} << 20, uint64_t{16} << 20, uint64_t{256} << 20,
                        uint64_t{1} << 30}) {
    const fs::path model = tmp / ("model-" + std::to_string(size) + ".bin");
    if (auto s = WriteSyntheticFile(model, size, size); !s.ok()) return {false, s.ToString()};
    std::vector<double> sign_extra;
    std::vector<double> verify_extra;
    HashOptions ho;  // defaults: chunked, 1 GiB chunks
    for (int run = 0; run < 3; ++run) {
      auto res = env.Sign(model, ho);
      if (!res.ok()) return {false, res.status().ToString()};
      sign_extra.push_back(res->total_seconds - res->hash_seconds);
      const VerifyResult v = VerifyModel(model, res->bundle, env.roots);
      if (!v.ok()) return {false, "honest verify rejected: " + v.detail};
      verify_extra.push_back(v.total_seconds - v.hash_seconds);
    }
    overheads.push_back(Median(sign_extra));
    worst_verify = std::max(worst_verify, Median(verify_extra));
    absl::StrAppend(&detail, " ", size >> 20, "MiB:", overheads.back() * 1000, "ms");
    fs::remove(model);
  }
  const auto [lo, hi] = std::minmax_element(overheads.begin(), overheads.end());
  const double spread = *hi - *lo;
  return {spread < 0.25 && worst_verify < 0.1,
          absl::StrCat("sign-hash spread ", spread * 1000, " ms (limit 250;", detail,
                       "), offline verify beyond hashing ", worst_verify * 1000,
                       " ms (limit 100)")};
}

Outcome EndToEndIntegrity(const Context& ctx) {
  testing::SigningEnv env(401);
  TempDir tmp(ctx.scratch_dir);
  SeededRng rng(402);
  int accepted = 0;
  std::vector<fs::path> models;
  for (int i = 0; i < 100; ++i) {
    const fs::path root = tmp / ("m" + std::to_string(i));
    const int nfiles = 1 + static_cast<int>(rng.Uniform(50));
    for (int f = 0; f < nfiles; ++f) {
      const uint64_t size = rng.Uniform(8) == 0 ? 0 : LogUniform(rng, 1, 4u << 20);
      testing::WriteBytes(root / (f % 4 == 0 ? "shard" : "") / ("w" + std::to_string(f)),
                          rng.RandomBytes(size));
    }
    auto res = env.Sign(root, {HashScheme::kChunked, 1 << 20, HashAlg::kSha256, 0});
    if (!res.ok()) return {false, res.status().ToString()};
    auto bundle = SignatureBundle::FromJson(testing::ReadText(res->bundle_path));
    VerifyOptions vo;
    vo.expected_identity = std::string(testing::kTestIdentity);
    vo.mirror = env.log.get();
    if (bundle.ok() && VerifyModel(root, *bundle, env.roots, vo).ok()) ++accepted;
    models.push_back(root);
  }

  int rejected = 0;
  int mutations = 0;
  std::map<std::string, int> reasons;
  for (int i = 0; i < 200; ++i) {
    const fs::path& root = models[rng.Uniform(models.size())];
    const fs::path bundle_path = BundlePathFor(root);
    const std::string bundle_text = testing::ReadText(bundle_path);
    VerifyResult v;
    if (i % 2 == 0) {
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path() != bundle_path && fs::file_size(e.path()) > 0) {
          files.push_back(e.path());
        }
      }
      if (files.empty()) {
        --i;
        continue;
      }
      const fs::path& f = files[rng.Uniform(files.size())];
      std::string bytes = testing::ReadText(f);
      const size_t pos = rng.Uniform(bytes.size());
      const char orig = bytes[pos];
      bytes[pos] = static_cast<char>(orig ^ (1 + rng.Uniform(255)));
      testing::WriteText(f, bytes);
      v = VerifyModel(root, *SignatureBundle::FromJson(bundle_text), env.roots);
      bytes[pos] = orig;
      testing::WriteText(f, bytes);
    } else if (i % 4 == 1) {
      std::string bad = bundle_text;
      const size_t pos = rng.Uniform(bad.size());
      bad[pos] = static_cast<char>(bad[pos] ^ (1 + rng.Uniform(255)));
      auto parsed = SignatureBundle::FromJson(bad);
      if (parsed.ok()) {
        v = VerifyModel(root, *parsed, env.roots);
      } else {
        v.reason = VerifyReason::kMalformed;
      }
    } else {
      // One byte of one decoded field, re-serialized canonically.
      SignatureBundle b = *SignatureBundle::FromJson(bundle_text);
      std::vector<std::span<uint8_t>> fields = {
          b.digest.digest,        b.manifest_hash,          b.signature,
          b.certificate.signature, b.certificate.public_key.bytes, b.checkpoint.root,
          b.checkpoint.signature,
          {reinterpret_cast<uint8_t*>(b.manifest.data()), b.manifest.size()},
          {reinterpret_cast<uint8_t*>(b.certificate.subject.data()), b.certificate.subject.size()}};
      for (Digest& d : b.inclusion.path) fields.emplace_back(d);
      const std::span<uint8_t> field = fields[rng.Uniform(fields.size())];
      field[rng.Uniform(field.size())] ^= static_cast<uint8_t>(1 + rng.Uniform(255));
      auto reparsed = SignatureBundle::FromJson(b.ToJson());
      v = reparsed.ok() ? VerifyModel(root, *reparsed, env.roots) : VerifyResult{};
    }
    ++mutations;
    if (!v.ok()) ++rejected;
    ++reasons[std::string(VerifyReasonName(v.reason))];
  }
  std::string breakdown;
  for (const auto& [name, n] : reasons) absl::StrAppend(&breakdown, " ", name, "=", n);
  return {accepted == 100 && rejected == mutations,
          absl::StrCat(accepted, "/100 honest round trips accepted, ", rejected, "/", mutations,
                       " single-byte mutations rejected (", breakdown, " )")};
}

Outcome VrfCorrectness(const Context&) {
  SeededRng rng(501);
  int honest = 0;
  for (int i = 0; i < 1000; ++i) {
    const VrfKeypair kp = VrfKeygen(rng);
    const Bytes x = rng.RandomBytes(rng.Uniform(100));
    auto y = VrfEval(kp.sk, x);
      if (!y.ok()) continue;
    auto pi = VrfProve(kp.sk, x, *y, rng);
    if (pi.ok() && VrfVerify(kp.pk, x, *y, *pi) == VrfVerdict::kAccept) ++honest;
  }
  int tampered_rejected = 0;
  for (int i = 0; i < 100; ++i) {
    const VrfKeypair kp = VrfKeygen(rng);
    const Bytes x = rng.RandomBytes(32);
    const GroupElement y = *VrfEval(kp.sk, x);
    const VrfProof pi = *VrfProve(kp.sk, x, y, rng);
    std::array<uint8_t, 32> y_enc = y.bytes();
    auto pi_enc = pi.Serialize();
    // Round-robin over y, s and t; one random bit each.
    const size_t bit = rng.Uniform(256);
    const uint8_t mask = static_cast<uint8_t>(1u << (bit % 8));
    if (i % 3 == 0) {
      y_enc[bit / 8] ^= mask;
    } else {
      pi_enc[(i % 3 == 1 ? 0 : 32) + bit / 8] ^= mask;
    }
    if (VrfVerifyEncoded(kp.pk.bytes(), x, y_enc, pi_enc) != VrfVerdict::kAccept) {
      ++tampered_rejected;
    }
  }
  auto one = VrfKeypairFromSecret(Scalar::One());
  const std::string_view xs = "identity case";
  const bool identity_case =
      one.ok() && *VrfEval(one->sk, AsBytes(xs)) == HashToGroup(AsBytes(xs)) &&
      one->pk == GroupElement::Generator();
  return {honest == 1000 && tampered_rejected == 100 && identity_case,
          absl::StrCat(honest, "/1000 honest accepted, ", tampered_rejected,
                       "/100 tampered rejected, sk=1 gives y=H1(x): ",
                       identity_case ? "yes" : "no")};
}

Outcome AccumulatorOracle(const Context&) {
  const auto t0 = Steady::now();
  SeededRng rng(601);
  int disagreements = 0;
  int checks = 0;
  for (int set = 0; set < 20; ++set) {
    std::vector<int> universe(256);
    for (int i = 0; i < 256; ++i) universe[i] = i;
    for (int i = 0; i < 64; ++i) std::swap(universe[i], universe[i + rng.Uniform(256 - i)]);
    std::set<int> members(universe.begin(), universe.begin() + 64);
    std::vector<TrieEntry> entries;
    auto key_of = [](int k) {
      TrieKey key{};
      key[0] = static_cast<uint8_t>(k);
      return key;
    };
    for (int k : members) entries.push_back({key_of(k), Sha256(ByteSpan(key_of(k)))});
    auto trie = PatriciaTrie::Build(entries);
    if (!trie.ok()) return {false, trie.status().ToString()};
    const TrieCommitment com = trie->commitment();
    for (int k = 0; k < 256; ++k) {
      const TrieKey key = key_of(k);
      const bool member = members.contains(k);
      // Honest proofs, whichever kind the trie can produce.
      auto inc = trie->ProveInclusion(key);
      auto non = trie->ProveNonInclusion(key);
      const bool inc_ok =
          inc.ok() && AccVerifyInclusion(com, key, Sha256(ByteSpan(key)), *inc);
      const bool non_ok = non.ok() && AccVerifyNonInclusion(com, key, *non);
      // A non-inclusion proof for a neighbouring absent key must not transfer.
      bool transferred = false;
      if (member) {
        for (int d : {-1, 1}) {
          const int other = (k + d + 256) % 256;
          if (members.contains(other)) continue;
          auto foreign = trie->ProveNonInclusion(key_of(other));
          transferred = transferred || (foreign.ok() && AccVerifyNonInclusion(com, key, *foreign));
        }
      }
      checks += 2;
      if (inc_ok != member) ++disagreements;
      if (non_ok == member || transferred) ++disagreements;
    }
  }
  const double secs = Since(t0);
  return {disagreements == 0 && secs < 60,
          absl::StrCat(checks, " verification outcomes on 20 sets x 256 keys, ", disagreements,
                       " disagreements with the membership oracle, ", secs, " s")};
}

Outcome ZksSoundnessPrivacy(const Context&) {
  SeededRng rng(701);
  int wrong = 0;
  int queries = 0;
  int leaks = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Bytes> elements;
    for (int i = 0; i < 64; ++i) elements.push_back(rng.RandomBytes(8 + rng.Uniform(120)));
    auto committed = ZksState::Commit(elements, 256, rng);
    if (!committed.ok()) return {false, committed.status().ToString()};
    const auto& [state, com] = *committed;
    std::set<std::string> grams;
    for (const Bytes& e : elements) {
      for (size_t i = 0; i + 8 <= e.size(); ++i) {
        grams.emplace(reinterpret_cast<const char*>(e.data()) + i, 8);
      }
    }
    std::vector<std::pair<Bytes, bool>> qs;
    for (const Bytes& e : elements) qs.emplace_back(e, true);
    for (int i = 0; i < 64; ++i) qs.emplace_back(rng.RandomBytes(8 + rng.Uniform(120)), false);
    for (const auto& [d, member] : qs) {
      ++queries;
      auto proof = state.Query(d, rng);
      if (!proof.ok()) {
        ++wrong;
        continue;
      }
      const bool said_member = proof->resp == ZksResponse::kMember;
      const Bytes enc = proof->Serialize();
      auto parsed = ZksQueryProof::Parse(enc);
      const bool verifies =
          parsed.ok() && ZksVerify(com, d, parsed->resp, *parsed) == ZksVerdict::kAccept;
      if (said_member != member || !verifies) ++wrong;
      if (!member) {
        for (size_t i = 0; i + 8 <= enc.size(); ++i) {
          if (grams.contains(std::string(reinterpret_cast<const char*>(enc.data()) + i, 8))) {
            ++leaks;
            break;
          }
        }
      }
    }
  }
  std::vector<Bytes> fixed;
  for (int i = 0; i < 64; ++i) fixed.push_back(rng.RandomBytes(32));
  std::set<Digest> roots;
  for (int i = 0; i < 100; ++i) roots.insert(ZksState::Commit(fixed, 128, rng)->second.com.root);
  return {wrong == 0 && leaks == 0 && roots.size() == 100,
          absl::StrCat(queries - wrong, "/", queries,
                       " exhaustive queries correct and verifying, ", leaks,
                       " non-member proofs sharing an 8-byte substring with the set, ",
                       roots.size(), "/100 distinct roots for fresh commits")};
}

Outcome ZksScaling(const Context& ctx) {
  ZksBenchOptions o;
  o.sizes = {1000, 10000, 100000, 1000000};
  o.runs = 10;
  o.queries_per_run = 20;
  o.workers = 0;
  o.on_record = [](const BenchRecord& r) {
    std::cerr << "  zks " << r.operation << " n=" << r.param << " median=" << r.median_seconds
              << "s\n";
  };
  auto records = BenchZks(o);
  if (!records.ok()) return {false, records.status().ToString()};
  SaveCsv(ctx, "bench_zks.csv", *records);
  std::map<std::string, std::map<uint64_t, double>> t;
  for (const BenchRecord& r : *records) t[r.operation][r.param] = r.median_seconds;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(o.sizes.size());
  for (uint64_t n : o.sizes) {
    const double x = std::log10(static_cast<double>(n));
    const double y = std::log10(t["commit"][n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const uint64_t lo = o.sizes.front();
  const uint64_t hi = o.sizes.back();
  auto pv = [&](const char* kind, uint64_t n) {
    return t[absl::StrCat("prove-", kind)][n] + t[absl::StrCat("verify-", kind)][n];
  };
  const double growth = std::max(pv("incl", hi) / pv("incl", lo), pv("nonincl", hi) / pv("nonincl", lo));
  const double separation =
      std::min(t["commit"][hi] / t["prove-incl"][hi], t["commit"][hi] / t["prove-nonincl"][hi]);
  return {slope >= 0.8 && slope <= 1.3 && growth <= 5 && separation >= 100,
          absl::StrCat("commit log-log slope ", slope, " (0.8..1.3), prove+verify growth 1e3->1e6 ",
                       growth, "x (<=5), commit/prove at 1e6 ", separation, "x (>=100); commit ",
                       t["commit"][hi], " s, prove-incl ", t["prove-incl"][hi] * 1e3, " ms")};
}

Outcome LogAuditability(const Context&) {
  TempDir tmp;
  SeededRng rng(901);
  std::vector<Bytes> payloads;
  for (int i = 0; i < 64; ++i) payloads.push_back(rng.RandomBytes(1 + rng.Uniform(200)));
  auto build = [&](const fs::path& dir, const std::vector<Bytes>& ps, uint64_t seed) {
    SeededRng key_rng(seed);
    auto log = TransparencyLog::Create(dir, SigningKey::Generate(key_rng));
    for (const Bytes& p : ps) (void)(*log)->Append(p);
    return std::move(*log);
  };
  auto honest = build(tmp / "honest", payloads, 902);
  auto forked_payloads = payloads;
  forked_payloads[3][0] ^= 0xff;
  // The fork is served under the same log key: an equivocating log.
  auto fork = build(tmp / "fork", forked_payloads, 902);
  const PublicKey& pk = honest->public_key();
  const auto cps = *honest->RecordedCheckpoints();
  const auto fork_cps = *fork->RecordedCheckpoints();

  int inclusion_ok = 0;
  int inclusion_total = 0;
  for (uint64_t s = 1; s <= 64; ++s) {
    for (uint64_t i = 0; i < s; ++i) {
      ++inclusion_total;
      auto proof = honest->ProveInclusion(i, s);
      if (proof.ok() &&
          LogVerifyInclusion(cps[s - 1], LogLeafHash(payloads[i]), *proof, pk) ==
              LogVerdict::kAccept) {
        ++inclusion_ok;
      }
    }
  }
  int honest_consistent = 0;
  int honest_pairs = 0;
  int fork_rejected = 0;
  int fork_pairs = 0;
  for (uint64_t s1 = 1; s1 <= 64; ++s1) {
    for (uint64_t s2 = s1; s2 <= 64; ++s2) {
      ++honest_pairs;
      auto p = honest->ProveConsistency(s1, s2);
      if (p.ok() && LogVerifyConsistency(cps[s1 - 1], cps[s2 - 1], *p, pk) == LogVerdict::kAccept) {
        ++honest_consistent;
      }
      if (s1 <= 3) continue;  // both histories agree below entry 3
      ++fork_pairs;
      auto fp = fork->ProveConsistency(s1, s2);
      if (!fp.ok() ||
          LogVerifyConsistency(cps[s1 - 1], fork_cps[s2 - 1], *fp, pk) != LogVerdict::kAccept) {
        ++fork_rejected;
      }
    }
  }
  return {inclusion_ok == inclusion_total && honest_consistent == honest_pairs &&
              fork_rejected == fork_pairs,
          absl::StrCat(inclusion_ok, "/", inclusion_total, " inclusion proofs verify, ",
                       honest_consistent, "/", honest_pairs, " honest consistency proofs verify, ",
                       fork_rejected, "/", fork_pairs,
                       " fork consistency checks (entry 3 rewritten) rejected")};
}

}  // namespace
}  // namespace mtk

int main(int argc, char** argv) {
  using mtk::Context;
  using mtk::Outcome;
  CLI::App app{"Acceptance checks for the model transparency toolkit.", "acceptance"};
  std::vector<int> selected;
  std::string out_dir;
  std::string scratch = std::filesystem::temp_directory_path().string();
  app.add_option("--criterion", selected, "Run only these criteria (1-9)")
      ->check(CLI::Range(1, 9));
  app.add_option("--out-dir", out_dir, "Write benchmark CSVs here");
  app.add_option("--scratch", scratch, "Directory for large temporary files");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome(const Context&)>>> criteria = {
      {"chunked-hash formula equivalence", mtk::ChunkedHashEquivalence},
      {"hashing crossover/plateau shape", mtk::HashingShape},
      {"signing overhead bound", mtk::SigningOverhead},
      {"end-to-end integrity", mtk::EndToEndIntegrity},
      {"VRF correctness", mtk::VrfCorrectness},
      {"accumulator oracle equivalence", mtk::AccumulatorOracle},
      {"ZKS soundness and privacy surrogates", mtk::ZksSoundnessPrivacy},
      {"ZKS scaling shape", mtk::ZksScaling},
      {"transparency-log auditability", mtk::LogAuditability},
  };
  const Context ctx{out_dir, scratch};
  bool all_pass = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) {
      continue;
    }
    const auto t0 = mtk::Steady::now();
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first
              << "): " << o.summary << " [" << mtk::Since(t0) << " s]" << std::endl;
  }
  return all_pass ? 0 : 1;
}
