// Copyright 2026 The Chainforge Authors
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

#include "chainforge/ces.hpp"

#include <algorithm>
#include <iterator>

#include <boost/algorithm/hex.hpp>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include "chainforge/error.hpp"
#include "chainforge/metrics.hpp"

namespace chainforge {
namespace {

constexpr std::uint8_t kDomainF = 0x01;
constexpr std::uint8_t kDomainH = 0x02;

const EVP_MD* Digest(HashAlgorithm hash) {
  return hash == HashAlgorithm::kSha512 ? EVP_sha512() : EVP_sha256();
}

std::vector<std::uint8_t> HashParts(const EVP_MD* md,
                                    std::span<const std::uint8_t> a,
                                    std::span<const std::uint8_t> b) {
  std::vector<std::uint8_t> out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  const bool ok = ctx && EVP_DigestInit_ex(ctx, md, nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, a.data(), a.size()) == 1 &&
                  EVP_DigestUpdate(ctx, b.data(), b.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, out.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error(Errc::kInvalidParams, "digest computation failed");
  out.resize(len);
  return out;
}

SecretBytes DomainHash(const SchemeParams& params, std::uint8_t domain,
                       const SecretBytes& secret) {
  const std::uint8_t prefix[1] = {domain};
  auto digest = HashParts(Digest(params.hash), prefix, secret.view());
  SecretBytes out(std::vector<std::uint8_t>(
      digest.begin(), digest.begin() + params.secret_size()));
  OPENSSL_cleanse(digest.data(), digest.size());
  return out;
}

}  // namespace

SecretBytes& SecretBytes::operator=(const SecretBytes& other) {
  if (this != &other) {
    Wipe();
    bytes_ = other.bytes_;
  }
  return *this;
}

SecretBytes& SecretBytes::operator=(SecretBytes&& other) noexcept {
  if (this != &other) {
    Wipe();
    bytes_ = std::move(other.bytes_);
    other.bytes_.clear();
  }
  return *this;
}

SecretBytes::~SecretBytes() { Wipe(); }

void SecretBytes::Wipe() {
  if (!bytes_.empty()) OPENSSL_cleanse(bytes_.data(), bytes_.size());
}

std::string SecretBytes::Hex() const {
  std::string out;
  boost::algorithm::hex_lower(bytes_.begin(), bytes_.end(),
                              std::back_inserter(out));
  return out;
}

void SchemeParams::Validate() const {
  if (security_bits != 128 && security_bits != 256 && security_bits != 512) {
    throw Error(Errc::kInvalidParams,
                "security parameter must be 128, 256 or 512 bits");
  }
  if (secret_size() > static_cast<std::size_t>(EVP_MD_size(Digest(hash)))) {
    throw Error(Errc::kInvalidParams, "digest shorter than the secret size");
  }
}

std::string SchemeParams::FunctionId() const {
  return std::string(hash == HashAlgorithm::kSha512 ? "sha512" : "sha256") +
         "/F=01/H=02";
}

SecretBytes ApplyF(const SchemeParams& params, const SecretBytes& secret) {
  return DomainHash(params, kDomainF, secret);
}

SecretBytes ApplyH(const SchemeParams& params, const SecretBytes& secret) {
  return DomainHash(params, kDomainH, secret);
}

void SystemEntropy::Fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error(Errc::kEntropyFailure, "system entropy source failed");
  }
}

void SeededEntropy::Fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (pending_.empty()) {
      std::uint8_t block[8];
      for (int i = 0; i < 8; ++i) {
        block[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
      }
      ++counter_;
      pending_ = HashParts(EVP_sha256(), seed_.view(), block);
      std::reverse(pending_.begin(), pending_.end());
    }
    out[written++] = pending_.back();
    pending_.pop_back();
  }
}

KeyMaterial Setup(const Policy& policy, const ChainPartition& pi,
                  const SchemeParams& params, EntropySource& entropy) {
  params.Validate();
  pi.CheckAgainst(policy.poset());
  const std::size_t n = policy.poset().size();
  KeyMaterial m{params, pi, std::vector<SecretBytes>(n),
                std::vector<SecretBytes>(n)};
  for (const auto& chain : pi.chains()) {
    SecretBytes fresh(std::vector<std::uint8_t>(params.secret_size()));
    entropy.Fill(fresh.mutable_view());
    m.secrets[chain.front()] = std::move(fresh);
    for (std::size_t i = 1; i < chain.size(); ++i) {
      m.secrets[chain[i]] = ApplyF(params, m.secrets[chain[i - 1]]);
    }
  }
  for (ElementId x = 0; x < n; ++x) m.keys[x] = ApplyH(params, m.secrets[x]);
  return m;
}

UserBundle IssueBundle(const KeyMaterial& material, const Policy& policy,
                       ElementId x) {
  if (x >= policy.poset().size()) {
    throw Error(Errc::kUnknownLabel, "unknown element " + std::to_string(x));
  }
  UserBundle bundle{x, {}};
  for (ElementId z : Phi(policy, x, material.partition)) {
    bundle.secrets.emplace(z, material.secrets.at(z));
  }
  return bundle;
}

Derivation Derive(const Policy& policy, const ChainPartition& pi,
                  const SchemeParams& params, const UserBundle& bundle,
                  ElementId y) {
  const Poset& p = policy.poset();
  if (y >= p.size() || bundle.label >= p.size()) {
    throw Error(Errc::kUnknownLabel, "unknown element in derivation");
  }
  pi.CheckAgainst(p);
  if (!p.Leq(y, bundle.label)) {
    throw Error(Errc::kNotAuthorized, "'" + p.label(y) + "' is not below '" +
                                          p.label(bundle.label) + "'");
  }
  const std::size_t chain = pi.chain_of(y);
  auto entry = std::find_if(
      bundle.secrets.begin(), bundle.secrets.end(), [&](const auto& kv) {
        return kv.first < p.size() && pi.chain_of(kv.first) == chain &&
               p.Leq(y, kv.first);
      });
  if (entry == bundle.secrets.end()) {
    throw Error(Errc::kInvalidBundle,
                "bundle holds no secret above '" + p.label(y) + "'");
  }
  if (entry->second.size() != params.secret_size()) {
    throw Error(Errc::kInvalidBundle, "bundle secret has the wrong length");
  }

  Derivation d{SecretBytes(), entry->first, 0};
  SecretBytes secret = entry->second;
  for (ElementId at = entry->first; at != y; ++d.f_steps) {
    at = *pi.ChainChild(at);
    secret = ApplyF(params, secret);
  }
  d.key = ApplyH(params, secret);
  return d;
}

bool CorrectnessAudit(const Policy& policy, const ChainPartition& pi,
                      const KeyMaterial& material) {
  const Poset& p = policy.poset();
  const std::size_t n = p.size();
  if (!(material.partition == pi) || material.secrets.size() != n ||
      material.keys.size() != n) {
    return false;
  }
  for (const auto& chain : pi.chains()) {
    for (std::size_t i = 1; i < chain.size(); ++i) {
      if (!(material.secrets[chain[i]] ==
            ApplyF(material.params, material.secrets[chain[i - 1]]))) {
        return false;
      }
    }
  }
  for (ElementId x = 0; x < n; ++x) {
    if (!(material.keys[x] == ApplyH(material.params, material.secrets[x]))) {
      return false;
    }
  }
  for (ElementId x = 0; x < n; ++x) {
    const UserBundle bundle = IssueBundle(material, policy, x);
    for (ElementId y = 0; y < n; ++y) {
      try {
        const auto d = Derive(policy, pi, material.params, bundle, y);
        if (!p.Leq(y, x) || !(d.key == material.keys[y])) return false;
      } catch (const Error& e) {
        if (e.code() != Errc::kNotAuthorized || p.Leq(y, x)) return false;
      }
    }
  }
  return true;
}

std::vector<ElementId> ReachableSecrets(const ChainPartition& pi,
                                        const UserBundle& bundle) {
  std::vector<char> seen(pi.element_count());
  for (const auto& [z, secret] : bundle.secrets) {
    for (std::optional<ElementId> at = z; at && !seen[*at];
         at = pi.ChainChild(*at)) {
      seen[*at] = 1;
    }
  }
  std::vector<ElementId> out;
  for (ElementId x = 0; x < seen.size(); ++x) {
    if (seen[x]) out.push_back(x);
  }
  return out;
}

}  // namespace chainforge
