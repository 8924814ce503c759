#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mwc/expansion.hpp"
#include "mwc/graph.hpp"
#include "mwc/partitioner.hpp"
#include "mwc/spectral.hpp"

namespace mwc {

enum class Verdict { pass, fail, not_applicable };
enum class CheckCategory { exact, spectral };

std::string_view to_string(Verdict v);
std::string_view to_string(CheckCategory c);

/// Spectral comparisons allow this much slack.
inline constexpr double kSpectralTol = 1e-7;

struct CheckReport {
  std::string check;
  std::string graph;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json quantities = nlohmann::json::object();
  Verdict verdict = Verdict::pass;
  /// Counterexample for failures, extremal instance otherwise.
  nlohmann::json witness = nlohmann::json::object();
  CheckCategory category = CheckCategory::exact;
  bool must_pass = true;
  /// Unmet hypothesis (not-applicable) or what went wrong (fail).
  std::string reason;
};

nlohmann::json to_json(const CheckReport& r);

/// A graph plus memoized exact and spectral quantities. Copies the graph, so
/// a temporary built from a Graph is safe to pass to the check functions.
/// Not thread-safe; use one context per thread.
class GraphContext {
public:
  GraphContext(const Graph& g, std::string descriptor = {}, ExactCaps caps = {},
               SpectralOptions spectral = {});

  const Graph& graph() const noexcept { return g_; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  const ExactCaps& caps() const noexcept { return caps_; }
  const SpectralOptions& spectral_options() const noexcept { return spectral_; }

  const CutWitness& h() const;
  const KwayWitness& kway(int k) const;
  const Spectrum& spectrum() const;
  int components() const;
  /// Exact h of G[s] (infinite for |s| < 2); n <= 62.
  Ratio h_of(const VertexSet& s) const;
  double lambda2_of(const VertexSet& s) const;

private:
  Graph g_;
  std::string descriptor_;
  ExactCaps caps_;
  SpectralOptions spectral_;
  mutable std::vector<std::uint64_t> adj_;
  mutable std::optional<CutWitness> h_;
  mutable std::map<int, KwayWitness> kway_;
  mutable std::optional<Spectrum> spectrum_;
  mutable std::optional<int> components_;
  mutable std::unordered_map<std::uint64_t, Ratio> h_cache_;
  mutable std::unordered_map<std::uint64_t, double> lambda_cache_;
};

/// How many k-partitions a partition-quantified check visits.
struct EnumerationPolicy {
  /// Visit every k-partition when n <= this.
  int exhaustive_n = 8;
  /// Otherwise draw this many uniformly random labelings.
  int samples = 256;
  std::uint64_t seed = 1;
};

CheckReport check_lemma1(const GraphContext& ctx, int k, const EnumerationPolicy& policy = {});
CheckReport check_theorem2(const GraphContext& ctx, int k);
CheckReport check_cheeger(const GraphContext& ctx);
CheckReport check_lgt(const GraphContext& ctx, int k);
CheckReport check_components(const GraphContext& ctx);
CheckReport check_lemma2(const GraphContext& ctx, const KPartition& p);
/// check_lemma2 over every (or sampled) k-partition, aggregated.
CheckReport check_lemma2_all(const GraphContext& ctx, int k, const EnumerationPolicy& policy = {});
CheckReport check_corollary4(const GraphContext& ctx, int k, double c);

/// Splits every member with h_{k+1} >= threshold via the exact partitioner
/// and checks min_i h(G^i) >= threshold / 3^{k+1} where the dividing
/// hypothesis holds. No qualifying member means not-applicable.
CheckReport expander_split(const std::vector<const GraphContext*>& family, int k, Ratio threshold);

struct PairSpread {
  std::uint64_t count = 0;
  double fraction = 0.0;
};

/// Ordered pairs (x, y) in H^2 with d_G(x, y) > r; unreachable counts as far.
PairSpread pair_spread(const Graph& g, const VertexSet& h, double r);

CheckReport prop1_bound(const GraphContext& ctx, const VertexSet& h);

struct Prop2Quantities {
  VertexSet f;
  VertexSet w;         // with d_G
  VertexSet w_local;   // with d_{G[H]}
  std::optional<int> min_wz;
  std::optional<Vertex> min_wz_at;
  std::optional<double> r_formula;
  int local_degree = 0;
  std::uint64_t lower_bound = 0;
};

Prop2Quantities prop2_quantities(const Graph& g, const VertexSet& h, double r);
CheckReport check_prop2(const GraphContext& ctx, const VertexSet& h, double r);

/// Chains `block_count` copies of K_s for each s in `block_sizes` (anchors
/// drawn from `seed`) and checks lambda_{block_count/4} against the block
/// indicator bound, which must shrink strictly as s grows.
CheckReport remark_lambda_decay(int block_count, const std::vector<int>& block_sizes, std::uint64_t seed);

// ------------------------------------------------------------------ suites

struct CorpusEntry {
  std::string descriptor;
  Graph graph;
  /// Chain blocks when the graph was generated as a chain, else empty.
  std::vector<VertexSet> blocks;
};

CorpusEntry corpus_entry(const std::string& family_text);
std::vector<std::string> default_corpus_specs();
std::vector<CorpusEntry> default_corpus();

struct SuiteOptions {
  /// Empty means the per-suite default range.
  std::vector<int> ks;
  double c = 1.0;
  std::uint64_t seed = 1;
  ExactCaps caps;
  EnumerationPolicy lemma1_policy{8, 256, 1};
  EnumerationPolicy lemma2_policy{8, 64, 1};
  std::vector<int> remark_sizes{3, 6, 12};
  int remark_blocks = 8;
};

const std::vector<std::string>& suite_names();

/// Runs one suite (or "all") over the corpus. Reports come back sorted by
/// check id, graph descriptor, then serialized params, independent of the
/// thread count.
std::vector<CheckReport> run_suite(std::string_view suite, const std::vector<CorpusEntry>& corpus,
                                   const SuiteOptions& opts = {});

bool has_must_pass_failure(const std::vector<CheckReport>& reports);

} // namespace mwc
