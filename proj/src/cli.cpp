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

#include "chainforge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <boost/algorithm/hex.hpp>

#include "chainforge/brute_oracle.hpp"
#include "chainforge/ces.hpp"
#include "chainforge/error.hpp"
#include "chainforge/flow_network.hpp"
#include "chainforge/generate.hpp"
#include "chainforge/io.hpp"
#include "chainforge/metrics.hpp"
#include "chainforge/optimizer.hpp"

namespace chainforge::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

Policy LoadPolicy(const std::string& path) {
  auto in = OpenIn(path);
  try {
    return ReadPolicy(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

ChainPartition LoadPartition(const std::string& path, const Poset& poset) {
  auto in = OpenIn(path);
  try {
    return ReadPartition(in, poset);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string JoinLabels(const Poset& p, const std::vector<ElementId>& ids,
                       const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += p.label(ids[i]);
  }
  return out;
}

void PrintBottoms(std::ostream& out, const Policy& policy,
                  const ChainPartition& pi) {
  out << "bottoms:\n";
  Count total = 0;
  for (ElementId b : pi.Bottoms()) {
    const Count weight = UpSetWeight(policy, b);
    total += weight;
    out << "  " << policy.poset().label(b)
        << " up_set_size=" << policy.poset().UpSetSize(b)
        << " weight=" << weight << '\n';
  }
  out << "bottoms_total: " << total << '\n';
}

SchemeParams ParamsFrom(unsigned bits, const std::string& hash) {
  SchemeParams params;
  params.security_bits = bits;
  if (hash == "sha256") {
    params.hash = HashAlgorithm::kSha256;
  } else if (hash == "sha512") {
    params.hash = HashAlgorithm::kSha512;
  } else {
    throw UsageError("unknown hash '" + hash + "' (sha256, sha512)");
  }
  params.Validate();
  return params;
}

int Analyze(const std::string& policy_path, std::ostream& out) {
  const Policy policy = LoadPolicy(policy_path);
  const Poset& p = policy.poset();
  out << "elements: " << p.size() << '\n'
      << "covers: " << p.CoverCount() << '\n'
      << "width: " << p.Width() << '\n'
      << "maximal: " << JoinLabels(p, p.MaximalElements(), " ") << '\n'
      << "minimal: " << JoinLabels(p, p.MinimalElements(), " ") << '\n'
      << "synthetic maximum: " << (p.Maximum() ? "no" : "yes") << '\n';
  return kOk;
}

int Partition(const std::string& policy_path, const std::string& out_path,
              const std::string& dump_path, std::ostream& out) {
  const Policy policy = LoadPolicy(policy_path);
  const Poset& p = policy.poset();
  const OptimizationResult result = OptimalPartition(policy);
  if (!VerifyResult(policy, result)) {
    throw InvariantViolation("optimizer result failed cross-checks");
  }
  out << "width: " << result.width << '\n'
      << "chains: " << result.partition.chain_count() << '\n'
      << "khat: " << result.khat << '\n'
      << "K: " << TotalK(policy, result.partition) << '\n'
      << "kmax: " << result.kmax << '\n'
      << "flow cost: " << result.flow_cost << '\n'
      << "synthetic maximum: " << (result.synthetic_maximum ? "yes" : "no")
      << '\n';
  PrintBottoms(out, policy, result.partition);
  out << "partition:\n";
  WritePartition(out, p, result.partition);
  if (!out_path.empty()) {
    auto file = OpenOut(out_path);
    WritePartition(file, p, result.partition);
  }
  if (!dump_path.empty()) {
    const auto extended = policy.EnsureMaximum();
    auto file = OpenOut(dump_path);
    WriteNetwork(file, BuildChainRepresentation(extended.policy, result.width)
                           .network);
  }
  return kOk;
}

int Evaluate(const std::string& policy_path, const std::string& partition_path,
             const std::vector<std::string>& phi_labels, std::ostream& out) {
  const Policy policy = LoadPolicy(policy_path);
  const Poset& p = policy.poset();
  const ChainPartition pi = LoadPartition(partition_path, p);

  std::vector<ElementId> requested;
  for (const auto& label : phi_labels) requested.push_back(p.id(label));
  if (phi_labels.empty()) {
    for (ElementId x = 0; x < p.size(); ++x) requested.push_back(x);
  }
  for (ElementId x : requested) {
    out << "phi(" << p.label(x) << "): {"
        << JoinLabels(p, Phi(policy, x, pi), ",") << "}\n";
  }

  const auto extended = policy.EnsureMaximum();
  const Count direct = TotalKHat(policy, pi);
  const Count tree =
      KHatViaTree(extended.policy, ExtendPartition(extended, pi));
  const Count bottoms = KHatViaBottoms(policy, pi);
  out << "chains: " << pi.chain_count() << '\n'
      << "kmax: " << KMax(policy, pi) << '\n'
      << "K: " << TotalK(policy, pi) << '\n'
      << "khat: " << direct << '\n'
      << "khat_via_tree: " << tree << '\n'
      << "khat_via_bottoms: " << bottoms << '\n';
  PrintBottoms(out, policy, pi);
  if (direct != tree || direct != bottoms) {
    throw InvariantViolation("khat formulas disagree");
  }
  return kOk;
}

int SetupCmd(const std::string& policy_path, const std::string& partition_path,
             const std::optional<std::string>& seed_hex, bool allow_det,
             const std::string& export_path, bool unsafe_secrets,
             const std::string& bundle_dir, const SchemeParams& params,
             const Environment& env, std::ostream& out) {
  const Policy policy = LoadPolicy(policy_path);
  const Poset& p = policy.poset();
  const ChainPartition pi = LoadPartition(partition_path, p);

  std::unique_ptr<EntropySource> entropy;
  if (seed_hex) {
    if (!env.ci && !allow_det) {
      throw UsageError(
          "--seed produces predictable keys; pass --allow-deterministic or "
          "set CHAINFORGE_CI=1");
    }
    std::vector<std::uint8_t> seed;
    try {
      boost::algorithm::unhex(seed_hex->begin(), seed_hex->end(),
                              std::back_inserter(seed));
    } catch (const boost::algorithm::hex_decode_error&) {
      throw UsageError("--seed must be an even-length hex string");
    }
    if (seed.empty()) throw UsageError("--seed must not be empty");
    entropy = std::make_unique<SeededEntropy>(std::move(seed));
  } else {
    if (env.ci) throw UsageError("CHAINFORGE_CI=1 requires --seed");
    entropy = std::make_unique<SystemEntropy>();
  }

  const KeyMaterial material = Setup(policy, pi, params, *entropy);
  {
    auto file = OpenOut(export_path);
    WriteKeyMaterial(file, p, material,
                     unsafe_secrets ? SecretExport::kUnsafeIncludeSecrets
                                    : SecretExport::kKeysOnly);
  }
  std::size_t bundles = 0;
  for (ElementId x = 0; x < p.size(); ++x) {
    if (policy.users(x) == 0) continue;
    const UserBundle bundle = IssueBundle(material, policy, x);
    ++bundles;
    if (!bundle_dir.empty()) {
      std::filesystem::create_directories(bundle_dir);
      auto file = OpenOut(
          (std::filesystem::path(bundle_dir) / (p.label(x) + ".bundle"))
              .string());
      WriteBundle(file, p, bundle);
    }
  }
  out << "function: " << params.FunctionId() << '\n'
      << "security bits: " << params.security_bits << '\n'
      << "keys: " << material.keys.size() << '\n'
      << "fresh secrets: " << pi.chain_count() << '\n'
      << "bundles: " << bundles << '\n';
  return kOk;
}

int DeriveCmd(const std::string& policy_path, const std::string& partition_path,
              const std::string& bundle_path, const std::string& target,
              const SchemeParams& params, std::ostream& out) {
  const Policy policy = LoadPolicy(policy_path);
  const Poset& p = policy.poset();
  const ChainPartition pi = LoadPartition(partition_path, p);
  auto in = OpenIn(bundle_path);
  const UserBundle bundle = ReadBundle(in, p, params);
  const auto d = Derive(policy, pi, params, bundle, p.id(target));
  out << d.key.Hex() << '\n';
  return kOk;
}

int Oracle(const std::string& policy_path, std::size_t cap, std::ostream& out) {
  const Policy policy = LoadPolicy(policy_path);
  const Poset& p = policy.poset();
  const OracleReport report = MinKHatBrute(policy, cap);
  const OptimizationResult result = OptimalPartition(policy);
  out << "min_khat: " << report.min_khat << '\n'
      << "argmin:\n";
  WritePartition(out, p, report.argmin);
  out << "partitions examined: " << report.partitions_examined << '\n'
      << "min chains at min: " << report.min_chain_count_at_min << '\n'
      << "width: " << p.Width() << '\n'
      << "optimizer khat: " << result.khat << '\n';
  const bool pass = report.min_khat == result.khat &&
                    result.partition.chain_count() == p.Width();
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kInternal;
}

int Gen(std::size_t elements, double density, std::optional<std::uint64_t> seed,
        Count max_users, const Environment& env, std::ostream& out,
        std::ostream& err) {
  if (!seed) {
    if (env.ci) throw UsageError("CHAINFORGE_CI=1 requires --seed");
    seed = std::random_device{}();
    err << "seed: " << *seed << '\n';
  }
  WritePolicy(out, RandomPolicy(elements, density, *seed, max_users));
  return kOk;
}

int ExitCodeFor(Errc code) {
  switch (code) {
    case Errc::kNotAuthorized: return kNotAuthorized;
    case Errc::kTooLarge: return kTooLarge;
    case Errc::kInfeasible:
    case Errc::kMalformedFlow:
    case Errc::kNotAFeasibleFlow:
    case Errc::kWidthMismatch:
      return kInternal;
    default:
      return kUsage;
  }
}

}  // namespace

Environment EnvironmentFromProcess() {
  const char* ci = std::getenv("CHAINFORGE_CI");
  return {ci != nullptr && std::string(ci) == "1"};
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const Environment& env) {
  CLI::App app{"Chain partitions with the fewest secrets for chain-based "
               "key assignment over information flow policies"};
  app.name("chainforge");
  app.require_subcommand(1);

  std::string policy_path, partition_path, out_path, dump_path, export_path,
      bundle_dir, bundle_path, target, hash = "sha256";
  std::vector<std::string> phi_labels;
  std::optional<std::string> seed_hex;
  bool system_entropy = false, allow_det = false, unsafe_secrets = false;
  unsigned bits = 256;
  std::size_t cap = kDefaultOracleLimit;
  std::size_t elements = 0;
  double density = 0.0;
  std::optional<std::uint64_t> gen_seed;
  Count max_users = 5;

  auto* analyze = app.add_subcommand("analyze", "Summarise a policy poset");
  analyze->add_option("policy", policy_path, "Policy file")->required();

  auto* partition =
      app.add_subcommand("partition", "Compute a secret-minimal partition");
  partition->add_option("policy", policy_path, "Policy file")->required();
  partition->add_option("--out", out_path, "Write the partition file here");
  partition->add_option("--dump-network", dump_path,
                        "Write the flow network as a plain arc list");

  auto* evaluate =
      app.add_subcommand("evaluate", "Secret counts of a given partition");
  evaluate->add_option("policy", policy_path, "Policy file")->required();
  evaluate->add_option("partition", partition_path, "Partition file")
      ->required();
  evaluate->add_option("--phi", phi_labels,
                       "Labels to report bundles for (default: all)");

  auto* setup = app.add_subcommand("setup", "Generate keys and bundles");
  setup->add_option("policy", policy_path, "Policy file")->required();
  setup->add_option("partition", partition_path, "Partition file")->required();
  auto* seed_opt = setup->add_option("--seed", seed_hex, "Hex seed");
  auto* sys_opt = setup->add_flag("--system-entropy", system_entropy,
                                  "Draw chain-top secrets from the OS");
  seed_opt->excludes(sys_opt);
  setup->add_flag("--allow-deterministic", allow_det,
                  "Accept --seed outside CI");
  setup->add_option("--export", export_path, "Key export file")->required();
  setup->add_flag("--unsafe-export-secrets", unsafe_secrets,
                  "Also export every secret");
  setup->add_option("--bundle-dir", bundle_dir,
                    "Write <label>.bundle for each label with users");
  setup->add_option("--bits", bits, "Security parameter (128, 256, 512)");
  setup->add_option("--hash", hash, "sha256 or sha512");

  auto* derive = app.add_subcommand("derive", "Derive a key from a bundle");
  derive->add_option("policy", policy_path, "Policy file")->required();
  derive->add_option("partition", partition_path, "Partition file")->required();
  derive->add_option("bundle", bundle_path, "Bundle file")->required();
  derive->add_option("target", target, "Label whose key to derive")
      ->required();
  derive->add_option("--bits", bits, "Security parameter (128, 256, 512)");
  derive->add_option("--hash", hash, "sha256 or sha512");

  auto* oracle =
      app.add_subcommand("oracle", "Exhaustive check on a small policy");
  oracle->add_option("policy", policy_path, "Policy file")->required();
  oracle->add_option("--cap", cap, "Maximum number of elements");

  auto* gen = app.add_subcommand("gen", "Print a random policy");
  gen->add_option("--elements", elements, "Number of labels")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--density", density, "Relation probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--max-users", max_users, "Largest user count")
      ->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze->parsed()) return Analyze(policy_path, out);
    if (partition->parsed()) {
      return Partition(policy_path, out_path, dump_path, out);
    }
    if (evaluate->parsed()) {
      return Evaluate(policy_path, partition_path, phi_labels, out);
    }
    if (setup->parsed()) {
      if (!seed_hex && !system_entropy) {
        throw UsageError("setup needs --seed or --system-entropy");
      }
      return SetupCmd(policy_path, partition_path, seed_hex, allow_det,
                      export_path, unsafe_secrets, bundle_dir,
                      ParamsFrom(bits, hash), env, out);
    }
    if (derive->parsed()) {
      return DeriveCmd(policy_path, partition_path, bundle_path, target,
                       ParamsFrom(bits, hash), out);
    }
    if (oracle->parsed()) return Oracle(policy_path, cap, out);
    if (gen->parsed()) {
      return Gen(elements, density, gen_seed, max_users, env, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace chainforge::cli
