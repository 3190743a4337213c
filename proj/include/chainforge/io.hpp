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

#ifndef CHAINFORGE_IO_HPP_
#define CHAINFORGE_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "chainforge/ces.hpp"
#include "chainforge/policy.hpp"

namespace chainforge {

// Policy file: three sections, each introduced by a header at the start of
// a line and running until the next header. '#' starts a comment.
//
//   elements: a b c d        labels, declaration order is significant
//   covers: b>a c>a d>b d>c  parent>child
//   users: a=1 d=3           label=count, omitted labels have no users
//
// Errors carry the line number; structural problems (cycles, redundant
// covers) keep the code Poset::Build reports.
Policy ReadPolicy(std::istream& in);
void WritePolicy(std::ostream& out, const Policy& policy);

// Partition file: one chain per line, elements from top to bottom joined by
// '>'. Throws kParse, kUnknownLabel or kInvalidPartition.
ChainPartition ReadPartition(std::istream& in, const Poset& poset);
void WritePartition(std::ostream& out, const Poset& poset,
                    const ChainPartition& pi);

enum class SecretExport { kKeysOnly, kUnsafeIncludeSecrets };

// Key export: one "label kind hex" line per item, kind in {secret, key},
// lowercase hex of exactly 2 * security_bits / 8 digits. Labels follow
// declaration order; a label's secret line precedes its key line.
void WriteKeyMaterial(std::ostream& out, const Poset& poset,
                      const KeyMaterial& material, SecretExport mode);

struct KeyRecord {
  std::string label;
  std::string kind;
  std::string hex;
};
std::vector<KeyRecord> ReadKeyExport(std::istream& in);

// Bundle file: a "bundle <label>" header followed by the bundle's secrets in
// key-export form ("label secret hex").
void WriteBundle(std::ostream& out, const Poset& poset,
                 const UserBundle& bundle);
// Throws kParse, kUnknownLabel or kInvalidBundle.
UserBundle ReadBundle(std::istream& in, const Poset& poset,
                      const SchemeParams& params);

}  // namespace chainforge

#endif  // CHAINFORGE_IO_HPP_
