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

#include "chainforge/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/algorithm/hex.hpp>

#include "chainforge/error.hpp"

namespace chainforge {
namespace {

std::string StripComment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> Tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

Error LineError(Errc code, int line, const std::string& what) {
  return Error(code, "line " + std::to_string(line) + ": " + what);
}

bool IsLowerHex(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
}

}  // namespace

Policy ReadPolicy(std::istream& in) {
  struct Token {
    std::string text;
    int line;
  };
  std::map<std::string, std::vector<Token>> sections;
  std::string current;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = StripComment(line);
    const auto start = body.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    for (const char* header : {"elements:", "covers:", "users:"}) {
      const std::string h = header;
      if (body.compare(start, h.size(), h) == 0) {
        current = h.substr(0, h.size() - 1);
        if (sections.count(current)) {
          throw LineError(Errc::kParse, lineno,
                          "section '" + current + "' repeated");
        }
        sections[current];
        body = body.substr(start + h.size());
        break;
      }
    }
    auto toks = Tokens(body);
    if (current.empty() && !toks.empty()) {
      throw LineError(Errc::kParse, lineno,
                      "expected 'elements:', 'covers:' or 'users:'");
    }
    for (auto& t : toks) sections[current].push_back({std::move(t), lineno});
  }
  if (!sections.count("elements")) {
    throw Error(Errc::kParse, "policy has no 'elements:' section");
  }

  std::vector<std::string> labels;
  std::map<std::string, int> declared;
  for (const auto& t : sections["elements"]) {
    if (t.text.find_first_of(">=") != std::string::npos) {
      throw LineError(Errc::kInvalidLabel, t.line,
                      "invalid label '" + t.text + "'");
    }
    if (!declared.emplace(t.text, t.line).second) {
      throw LineError(Errc::kDuplicateLabel, t.line,
                      "duplicate label '" + t.text + "'");
    }
    labels.push_back(t.text);
  }
  if (labels.empty()) throw Error(Errc::kEmptyPoset, "policy has no elements");

  auto known = [&](const std::string& label, int lineno) {
    if (label.empty() || !declared.count(label)) {
      throw LineError(Errc::kUnknownLabel, lineno,
                      "unknown label '" + label + "'");
    }
  };

  std::vector<Cover> covers;
  for (const auto& t : sections["covers"]) {
    const auto gt = t.text.find('>');
    if (gt == std::string::npos || t.text.find('>', gt + 1) != std::string::npos) {
      throw LineError(Errc::kParse, t.line,
                      "cover '" + t.text + "' is not parent>child");
    }
    Cover c{t.text.substr(gt + 1), t.text.substr(0, gt)};
    known(c.parent, t.line);
    known(c.child, t.line);
    covers.push_back(std::move(c));
  }

  Poset poset = Poset::Build(labels, covers);
  std::vector<Count> counts(poset.size(), 0);
  std::set<std::string> counted;
  for (const auto& t : sections["users"]) {
    const auto eq = t.text.find('=');
    if (eq == std::string::npos) {
      throw LineError(Errc::kParse, t.line,
                      "user entry '" + t.text + "' is not label=count");
    }
    const std::string label = t.text.substr(0, eq);
    known(label, t.line);
    if (!counted.insert(label).second) {
      throw LineError(Errc::kParse, t.line,
                      "users for '" + label + "' given twice");
    }
    const std::string digits = t.text.substr(eq + 1);
    Count value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size() || value < 0) {
      throw LineError(ec == std::errc::result_out_of_range ? Errc::kOverflow
                                                           : Errc::kParse,
                      t.line, "bad user count '" + digits + "'");
    }
    counts[poset.id(label)] = value;
  }
  return Policy(std::move(poset), std::move(counts));
}

void WritePolicy(std::ostream& out, const Policy& policy) {
  const Poset& p = policy.poset();
  out << "elements:";
  for (const auto& label : p.labels()) out << ' ' << label;
  out << "\ncovers:";
  for (const auto& c : p.Covers()) out << ' ' << c.parent << '>' << c.child;
  out << "\nusers:";
  for (ElementId x = 0; x < p.size(); ++x) {
    out << ' ' << p.label(x) << '=' << policy.users(x);
  }
  out << '\n';
}

ChainPartition ReadPartition(std::istream& in, const Poset& poset) {
  std::vector<std::vector<ElementId>> blocks;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = Tokens(StripComment(line));
    if (toks.empty()) continue;
    if (toks.size() != 1) {
      throw LineError(Errc::kParse, lineno,
                      "chain must be labels joined by '>' without spaces");
    }
    auto& block = blocks.emplace_back();
    std::istringstream parts(toks[0]);
    for (std::string label; std::getline(parts, label, '>');) {
      if (label.empty() || !poset.find(label)) {
        throw LineError(Errc::kUnknownLabel, lineno,
                        "unknown label '" + label + "'");
      }
      const ElementId x = poset.id(label);
      if (!block.empty() && !poset.Less(x, block.back())) {
        throw LineError(Errc::kInvalidPartition, lineno,
                        "'" + label + "' is not below '" +
                            poset.label(block.back()) + "'");
      }
      block.push_back(x);
    }
    if (toks[0].back() == '>') {
      throw LineError(Errc::kParse, lineno, "dangling '>'");
    }
  }
  return ChainPartition::FromBlocks(poset, std::move(blocks));
}

void WritePartition(std::ostream& out, const Poset& poset,
                    const ChainPartition& pi) {
  for (const auto& chain : pi.chains()) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      out << (i ? ">" : "") << poset.label(chain[i]);
    }
    out << '\n';
  }
}

void WriteKeyMaterial(std::ostream& out, const Poset& poset,
                      const KeyMaterial& material, SecretExport mode) {
  for (ElementId x = 0; x < poset.size(); ++x) {
    if (mode == SecretExport::kUnsafeIncludeSecrets) {
      out << poset.label(x) << " secret " << material.secrets.at(x).Hex()
          << '\n';
    }
    out << poset.label(x) << " key " << material.keys.at(x).Hex() << '\n';
  }
}

std::vector<KeyRecord> ReadKeyExport(std::istream& in) {
  std::vector<KeyRecord> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    auto toks = Tokens(StripComment(line));
    if (toks.empty()) continue;
    if (toks.size() != 3 || (toks[1] != "secret" && toks[1] != "key") ||
        !IsLowerHex(toks[2])) {
      throw LineError(Errc::kParse, lineno, "expected 'label kind hex'");
    }
    out.push_back({toks[0], toks[1], toks[2]});
  }
  return out;
}

void WriteBundle(std::ostream& out, const Poset& poset,
                 const UserBundle& bundle) {
  out << "bundle " << poset.label(bundle.label) << '\n';
  for (const auto& [z, secret] : bundle.secrets) {
    out << poset.label(z) << " secret " << secret.Hex() << '\n';
  }
}

UserBundle ReadBundle(std::istream& in, const Poset& poset,
                      const SchemeParams& params) {
  std::string line;
  int lineno = 1;
  std::vector<std::string> header;
  for (; std::getline(in, line); ++lineno) {
    header = Tokens(StripComment(line));
    if (!header.empty()) break;
  }
  if (header.size() != 2 || header[0] != "bundle") {
    throw LineError(Errc::kParse, lineno, "expected 'bundle <label>'");
  }
  if (!poset.find(header[1])) {
    throw LineError(Errc::kUnknownLabel, lineno,
                    "unknown label '" + header[1] + "'");
  }
  UserBundle bundle{poset.id(header[1]), {}};
  auto records = ReadKeyExport(in);
  for (const auto& r : records) {
    if (r.kind != "secret") {
      throw Error(Errc::kInvalidBundle, "bundle lists a key, not a secret");
    }
    if (!poset.find(r.label)) {
      throw Error(Errc::kUnknownLabel, "unknown label '" + r.label + "'");
    }
    if (r.hex.size() != 2 * params.secret_size()) {
      throw Error(Errc::kInvalidBundle,
                  "secret for '" + r.label + "' has " +
                      std::to_string(r.hex.size()) + " hex digits, expected " +
                      std::to_string(2 * params.secret_size()));
    }
    std::vector<std::uint8_t> bytes;
    boost::algorithm::unhex(r.hex.begin(), r.hex.end(),
                            std::back_inserter(bytes));
    if (!bundle.secrets.emplace(poset.id(r.label), SecretBytes(std::move(bytes)))
             .second) {
      throw Error(Errc::kInvalidBundle, "secret for '" + r.label + "' repeated");
    }
  }
  return bundle;
}

}  // namespace chainforge
