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

#ifndef CHAINFORGE_CES_HPP_
#define CHAINFORGE_CES_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chainforge/policy.hpp"

namespace chainforge {

// Byte string that is wiped when destroyed or overwritten.
class SecretBytes {
 public:
  SecretBytes() = default;
  explicit SecretBytes(std::vector<std::uint8_t> bytes)
      : bytes_(std::move(bytes)) {}
  SecretBytes(const SecretBytes&) = default;
  SecretBytes(SecretBytes&& other) noexcept : bytes_(std::move(other.bytes_)) {
    other.bytes_.clear();
  }
  SecretBytes& operator=(const SecretBytes& other);
  SecretBytes& operator=(SecretBytes&& other) noexcept;
  ~SecretBytes();

  std::span<const std::uint8_t> view() const { return bytes_; }
  std::span<std::uint8_t> mutable_view() { return bytes_; }
  std::size_t size() const { return bytes_.size(); }
  std::string Hex() const;

  bool operator==(const SecretBytes& other) const {
    return bytes_ == other.bytes_;
  }

 private:
  void Wipe();

  std::vector<std::uint8_t> bytes_;
};

enum class HashAlgorithm { kSha256, kSha512 };

// Security parameter and the hash behind the two one-way functions:
//   F(s) = Hash(0x01 || s)   next secret down a chain
//   H(s) = Hash(0x02 || s)   key from secret
// Outputs are truncated to security_bits / 8 bytes.
struct SchemeParams {
  unsigned security_bits = 256;
  HashAlgorithm hash = HashAlgorithm::kSha256;

  // security_bits must be 128, 256 or 512 and no wider than the digest.
  // Throws kInvalidParams.
  void Validate() const;
  std::size_t secret_size() const { return security_bits / 8; }
  // e.g. "sha256/F=01/H=02"
  std::string FunctionId() const;
};

SecretBytes ApplyF(const SchemeParams& params, const SecretBytes& secret);
SecretBytes ApplyH(const SchemeParams& params, const SecretBytes& secret);

class EntropySource {
 public:
  virtual ~EntropySource() = default;
  // Throws kEntropyFailure.
  virtual void Fill(std::span<std::uint8_t> out) = 0;
};

// Operating system randomness via OpenSSL's CSPRNG.
class SystemEntropy : public EntropySource {
 public:
  void Fill(std::span<std::uint8_t> out) override;
};

// Deterministic stream SHA-256(seed || counter) for reproducible runs and
// tests. Not for production keys.
class SeededEntropy : public EntropySource {
 public:
  explicit SeededEntropy(std::vector<std::uint8_t> seed)
      : seed_(std::move(seed)) {}
  void Fill(std::span<std::uint8_t> out) override;

 private:
  SecretBytes seed_;
  std::uint64_t counter_ = 0;
  std::vector<std::uint8_t> pending_;
};

// Output of setup. Chain-based schemes publish nothing, so there is no
// public information beyond the partition itself.
struct KeyMaterial {
  SchemeParams params;
  ChainPartition partition;
  std::vector<SecretBytes> secrets;  // sigma, by element
  std::vector<SecretBytes> keys;     // kappa, by element

  std::span<const std::uint8_t> public_info() const { return {}; }
};

// The secrets handed to every user at `label`.
struct UserBundle {
  ElementId label = 0;
  std::map<ElementId, SecretBytes> secrets;
};

// Draws one fresh secret per chain top (chains in partition order), derives
// the rest of each chain with F and every key with H. Throws
// kInvalidPartition, kInvalidParams or kEntropyFailure.
KeyMaterial Setup(const Policy& policy, const ChainPartition& pi,
                  const SchemeParams& params, EntropySource& entropy);

// Secrets of Phi(x). Throws kUnknownLabel.
UserBundle IssueBundle(const KeyMaterial& material, const Policy& policy,
                       ElementId x);

struct Derivation {
  SecretBytes key;
  ElementId source = 0;      // bundle entry the walk started from
  std::size_t f_steps = 0;   // F applications
};

// Key for y from the bundle of x: pick the bundle secret in y's chain, walk
// down the chain with F and finish with H. Throws kNotAuthorized unless
// y <= x, kUnknownLabel for an out of range y, kInvalidBundle when the
// bundle lacks the needed secret.
Derivation Derive(const Policy& policy, const ChainPartition& pi,
                  const SchemeParams& params, const UserBundle& bundle,
                  ElementId y);

// For every ordered pair (x, y): deriving y from x's bundle succeeds with
// material.keys[y] iff y <= x and fails with kNotAuthorized otherwise. Also
// rejects material whose chains or keys do not follow F and H.
bool CorrectnessAudit(const Policy& policy, const ChainPartition& pi,
                      const KeyMaterial& material);

// Elements whose secrets are computable from the bundle by following chain
// links downward (the only derivation edges the scheme creates). Sorted.
std::vector<ElementId> ReachableSecrets(const ChainPartition& pi,
                                        const UserBundle& bundle);

}  // namespace chainforge

#endif  // CHAINFORGE_CES_HPP_
