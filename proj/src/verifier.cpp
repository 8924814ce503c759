#include "mwc/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mwc/error.hpp"
#include "mwc/families.hpp"
#include "mwc/parallel.hpp"

namespace mwc {

using nlohmann::json;

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "pass";
  case Verdict::fail: return "fail";
  case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

std::string_view to_string(CheckCategory c) { return c == CheckCategory::exact ? "exact" : "spectral"; }

json to_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["graph"] = r.graph;
  j["params"] = r.params;
  j["quantities"] = r.quantities;
  j["verdict"] = to_string(r.verdict);
  j["witness"] = r.witness;
  j["category"] = to_string(r.category);
  j["must_pass"] = r.must_pass;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

namespace {

void put_ratio(json& j, const std::string& key, const Ratio& r) {
  j[key] = r.to_string();
  if (r.is_infinite()) {
    j[key + "_decimal"] = nullptr;
  } else {
    j[key + "_decimal"] = r.to_double();
  }
}

json ratio_list(const std::vector<Ratio>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(r.to_string());
  return out;
}

json set_json(const VertexSet& s) { return s.members(); }

json blocks_json(const KPartition& p) {
  json out = json::array();
  for (const auto& b : p.blocks()) out.push_back(set_json(b));
  return out;
}

CheckReport base_report(const GraphContext& ctx, std::string check, CheckCategory category, bool must_pass) {
  CheckReport r;
  r.check = std::move(check);
  r.graph = ctx.descriptor();
  r.category = category;
  r.must_pass = must_pass;
  return r;
}

CheckReport not_applicable(CheckReport r, std::string reason) {
  r.verdict = Verdict::not_applicable;
  r.reason = std::move(reason);
  return r;
}

std::string describe(const Graph& g) {
  return "graph(n=" + std::to_string(g.n()) + ",m=" + std::to_string(g.edge_count()) + ")";
}

// Visits every labeling in restricted-growth order with exactly k labels.
void for_each_rgs(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (n - i < k - used) return;
    if (i == n) {
      visit(labels);
      return;
    }
    for (int c = 0; c < used; ++c) {
      labels[i] = c;
      rec(i + 1, used);
    }
    if (used < k) {
      labels[i] = used;
      rec(i + 1, used + 1);
    }
  };
  if (k >= 1 && k <= n) rec(0, 0);
}

// Uniform labeling conditioned on using all k labels, then canonicalized.
std::vector<int> random_labels(int n, int k, SplitMix64& rng) {
  std::vector<int> labels(n);
  for (;;) {
    std::vector<char> used(k, 0);
    for (int i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(k)));
      used[labels[i]] = 1;
    }
    if (std::all_of(used.begin(), used.end(), [](char u) { return u != 0; })) break;
  }
  std::vector<int> rename(k, -1);
  int next = 0;
  for (int& l : labels) {
    if (rename[l] < 0) rename[l] = next++;
    l = rename[l];
  }
  return labels;
}

// Drives `visit` over the partitions selected by the policy; returns whether
// the enumeration was exhaustive.
bool for_each_partition(int n, int k, const EnumerationPolicy& policy,
                        const std::function<void(const std::vector<int>&)>& visit) {
  if (n <= policy.exhaustive_n) {
    for_each_rgs(n, k, visit);
    return true;
  }
  SplitMix64 rng(policy.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k));
  for (int s = 0; s < policy.samples; ++s) visit(random_labels(n, k, rng));
  return false;
}

std::uint64_t ball_volume(std::uint64_t d, long long radius) {
  // sum_{i=0}^{radius} d^i, saturating
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0, term = 1;
  for (long long i = 0; i <= radius; ++i) {
    total = total > kMax - term ? kMax : total + term;
    term = (d != 0 && term > kMax / d) ? kMax : term * d;
  }
  return total;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

} // namespace

// ------------------------------------------------------------------ context

GraphContext::GraphContext(const Graph& g, std::string descriptor, ExactCaps caps, SpectralOptions spectral)
    : g_(g), descriptor_(descriptor.empty() ? describe(g) : std::move(descriptor)), caps_(caps),
      spectral_(spectral) {}

const CutWitness& GraphContext::h() const {
  if (!h_) h_ = expansion_exact(g_, caps_);
  return *h_;
}

const KwayWitness& GraphContext::kway(int k) const {
  auto it = kway_.find(k);
  if (it == kway_.end()) it = kway_.emplace(k, kway_expansion_exact(g_, k, caps_)).first;
  return it->second;
}

const Spectrum& GraphContext::spectrum() const {
  if (!spectrum_) spectrum_ = mwc::spectrum(g_, spectral_);
  return *spectrum_;
}

int GraphContext::components() const {
  if (!components_) components_ = static_cast<int>(connected_components(g_).size());
  return *components_;
}

Ratio GraphContext::h_of(const VertexSet& s) const {
  if (s.size() < 2) return Ratio::infinity();
  if (g_.n() > 62) throw CapExceeded("subset", caps_.subset_n, g_.n());
  if (adj_.empty()) adj_ = g_.adjacency_masks();
  const std::uint64_t m = s.mask();
  auto it = h_cache_.find(m);
  if (it == h_cache_.end()) it = h_cache_.emplace(m, min_cut_in_mask(adj_, m, caps_).ratio).first;
  return it->second;
}

double GraphContext::lambda2_of(const VertexSet& s) const {
  if (s.size() < 2) return 0.0;
  if (g_.n() > 64) return block_lambda2(g_, s, spectral_);
  const std::uint64_t m = s.mask();
  auto it = lambda_cache_.find(m);
  if (it == lambda_cache_.end()) it = lambda_cache_.emplace(m, block_lambda2(g_, s, spectral_)).first;
  return it->second;
}

// ------------------------------------------------------------------ checks

CheckReport check_lemma1(const GraphContext& ctx, int k, const EnumerationPolicy& policy) {
  const Graph& g = ctx.graph();
  const int n = g.n();
  CheckReport r = base_report(ctx, "lemma1", CheckCategory::exact, true);
  r.params["k"] = k;
  if (k < 1 || k + 1 > n) return not_applicable(std::move(r), "needs 1 <= k and k + 1 <= n");

  const Ratio hk1 = ctx.kway(k + 1).value;
  std::uint64_t visited = 0, failures = 0;
  std::optional<KPartition> tightest, first_failure;
  Ratio tight_value, fail_value;
  const bool exhaustive = for_each_partition(n, k, policy, [&](const std::vector<int>& labels) {
    ++visited;
    KPartition p = KPartition::from_labels(labels);
    Ratio lo = Ratio::infinity();
    for (const auto& b : p.blocks()) lo = std::min(lo, ctx.h_of(b));
    if (!tightest || lo > tight_value) {
      tightest = p;
      tight_value = lo;
    }
    if (hk1 < lo) {
      ++failures;
      if (!first_failure) {
        first_failure = p;
        fail_value = lo;
      }
    }
  });
  r.params["enumeration"] = exhaustive ? "exhaustive" : "sampled";
  put_ratio(r.quantities, "h_k1", hk1);
  r.quantities["partitions"] = visited;
  r.quantities["failures"] = failures;
  put_ratio(r.quantities, "max_min_block_h", tight_value);

  const KPartition& shown = first_failure ? *first_failure : *tightest;
  r.witness["blocks"] = blocks_json(shown);
  std::vector<Ratio> hs;
  for (const auto& b : shown.blocks()) hs.push_back(ctx.h_of(b));
  r.witness["block_h"] = ratio_list(hs);
  if (failures > 0) {
    r.verdict = Verdict::fail;
    r.reason = "min block h " + fail_value.to_string() + " exceeds h_{k+1} = " + hk1.to_string();
  }
  return r;
}

CheckReport check_theorem2(const GraphContext& ctx, int k) {
  const Graph& g = ctx.graph();
  const int n = g.n();
  CheckReport r = base_report(ctx, "theorem2", CheckCategory::exact, true);
  r.params["k"] = k;
  r.params["mode"] = "exact";
  if (k < 1 || k + 1 > n) return not_applicable(std::move(r), "needs 1 <= k and k + 1 <= n");

  std::optional<Ratio> exact_hk, exact_hk1;
  try {
    exact_hk = ctx.kway(k).value;
    exact_hk1 = ctx.kway(k + 1).value;
  } catch (const CapExceeded&) {
    // Past the partition cap the hypothesis can still be ruled out: any
    // (k+1)-partition bounds h_{k+1} from above, lambda_k / (2 deg) bounds
    // h_k from below.
    const int deg = max_degree(g);
    CutOracleMode sweep;
    sweep.mode = CutMode::sweep;
    sweep.spectral = ctx.spectral_options();
    const PartitionResult cover = theorem2_partition(g, k + 1, sweep);
    const Ratio upper_k1 = std::min(boundary_ratio_profile(g, cover.partition).max, Ratio(deg));
    const double pow3 = static_cast<double>(checked_pow(3, k + 1));
    bool refuted = false;
    if (exact_hk) {
      put_ratio(r.quantities, "h_k", *exact_hk);
      refuted = !(upper_k1 / checked_pow(3, k + 1) > *exact_hk);
    } else if (deg > 0) {
      const double lower_k = std::max(0.0, ctx.spectrum().lambda(k) / (2.0 * deg) - kSpectralTol);
      r.quantities["h_k_lower"] = lower_k;
      refuted = upper_k1.to_double() / pow3 <= lower_k;
    }
    put_ratio(r.quantities, "h_k1_upper", upper_k1);
    r.quantities["hypothesis"] = false;
    if (!refuted) throw;
    return not_applicable(std::move(r), "h_{k+1} / 3^{k+1} <= h_k by bounds; exact values exceed the partition cap");
  }
  const Ratio hk = *exact_hk;
  const Ratio hk1 = *exact_hk1;
  const Ratio lower = hk1 / checked_pow(3, k + 1);
  const Ratio upper = hk * checked_pow(3, k);
  put_ratio(r.quantities, "h_k", hk);
  put_ratio(r.quantities, "h_k1", hk1);
  put_ratio(r.quantities, "lower_target", lower);
  put_ratio(r.quantities, "upper_target", upper);
  r.quantities["hypothesis"] = lower > hk;
  if (!(lower > hk)) return not_applicable(std::move(r), "h_{k+1} / 3^{k+1} <= h_k");

  CutOracleMode mode;
  mode.caps = ctx.caps();
  const PartitionResult result = theorem2_partition(g, k, mode);
  const Theorem2Conclusion c = evaluate_theorem2(g, result, hk, hk1, ctx.caps());
  const auto claims = claim_check(g, result.trace);

  put_ratio(r.quantities, "min_block_h", c.min_block_h);
  put_ratio(r.quantities, "max_block_ratio", c.max_block_ratio);
  r.quantities["lower_ok"] = c.lower_ok;
  r.quantities["upper_ok"] = c.upper_ok;
  r.quantities["claims"] = claims.size();
  std::size_t claim_failures = 0;
  json failed = json::array();
  for (const auto& e : claims) {
    if (e.ok) continue;
    ++claim_failures;
    failed.push_back({{"node", result.trace.nodes[e.node].address},
                      {"p", e.p},
                      {"q", e.q},
                      {"s", e.s},
                      {"lhs", e.lhs},
                      {"rhs", e.rhs.to_string()}});
  }
  r.quantities["claim_failures"] = claim_failures;

  r.witness["blocks"] = blocks_json(result.partition);
  r.witness["block_h"] = ratio_list(c.block_h);
  r.witness["block_ratios"] = ratio_list(c.block_ratios);
  json divisions = json::array();
  for (int d : result.trace.divisions) divisions.push_back(result.trace.nodes[d].address);
  r.witness["divisions"] = divisions;
  if (claim_failures > 0) r.witness["failed_claims"] = failed;

  if (!c.lower_ok || !c.upper_ok || claim_failures > 0) {
    r.verdict = Verdict::fail;
    if (!c.lower_ok) r.reason = "min block h below h_{k+1} / 3^{k+1}";
    else if (!c.upper_ok) r.reason = "max block ratio above 3^k h_k";
    else r.reason = "claim inequality violated";
  }
  return r;
}

CheckReport check_cheeger(const GraphContext& ctx) {
  const Graph& g = ctx.graph();
  CheckReport r = base_report(ctx, "cheeger", CheckCategory::spectral, true);
  if (g.n() < 2) return not_applicable(std::move(r), "needs n >= 2");
  const CutWitness& h = ctx.h();
  const double lambda2 = ctx.spectrum().lambda(2);
  const int deg = max_degree(g);
  const double lower = lambda2 / 2.0;
  const double upper = std::sqrt(2.0 * deg * lambda2);
  put_ratio(r.quantities, "h", h.ratio);
  r.quantities["lambda_2"] = lambda2;
  r.quantities["deg"] = deg;
  r.quantities["lower"] = lower;
  r.quantities["upper"] = upper;
  r.witness["set"] = set_json(h.set);
  const double hv = h.ratio.to_double();
  if (!(lower - kSpectralTol <= hv && hv <= upper + kSpectralTol)) {
    r.verdict = Verdict::fail;
    r.reason = hv < lower - kSpectralTol ? "h below lambda_2 / 2" : "h above sqrt(2 deg lambda_2)";
  }
  return r;
}

CheckReport check_lgt(const GraphContext& ctx, int k) {
  const Graph& g = ctx.graph();
  CheckReport r = base_report(ctx, "lgt", CheckCategory::spectral, true);
  r.params["k"] = k;
  if (k < 1 || k > g.n()) return not_applicable(std::move(r), "needs 1 <= k <= n");
  if (ctx.components() != 1) return not_applicable(std::move(r), "graph is disconnected");
  const int deg = max_degree(g);
  if (deg == 0) return not_applicable(std::move(r), "graph has no edges");

  const KwayWitness& w = ctx.kway(k);
  const double lambda_k = ctx.spectrum().lambda(k);
  const double lower = lambda_k / (2.0 * deg);
  put_ratio(r.quantities, "h_k", w.value);
  r.quantities["lambda_k"] = lambda_k;
  r.quantities["deg"] = deg;
  r.quantities["lower"] = lower;
  if (lambda_k > kSpectralTol) {
    const double ratio = w.value.to_double() / (static_cast<double>(k) * k * deg * std::sqrt(lambda_k));
    r.quantities["upper_ratio"] = ratio;
    r.quantities["upper_ratio_finite"] = std::isfinite(ratio);
    if (!std::isfinite(ratio)) {
      r.verdict = Verdict::fail;
      r.reason = "upper-bound ratio is not finite";
    }
  } else {
    r.quantities["upper_ratio"] = nullptr;
  }
  r.witness["blocks"] = blocks_json(w.partition);
  if (lower > w.value.to_double() + kSpectralTol) {
    r.verdict = Verdict::fail;
    r.reason = "lambda_k / (2 deg) exceeds h_k";
  }
  return r;
}

CheckReport check_components(const GraphContext& ctx) {
  const Graph& g = ctx.graph();
  const int n = g.n();
  CheckReport r = base_report(ctx, "components", CheckCategory::exact, true);
  const int c = ctx.components();
  r.quantities["components"] = c;
  const Ratio hc = ctx.kway(c).value;
  put_ratio(r.quantities, "h_c", hc);
  std::vector<std::string> broken;
  if (!hc.is_zero()) broken.push_back("h_c is not 0");
  if (c + 1 <= n) {
    const KwayWitness& next = ctx.kway(c + 1);
    Ratio min_comp = Ratio::infinity();
    std::vector<Ratio> comp_h;
    for (const auto& comp : connected_components(g)) {
      comp_h.push_back(ctx.h_of(comp));
      min_comp = std::min(min_comp, comp_h.back());
    }
    put_ratio(r.quantities, "h_c1", next.value);
    put_ratio(r.quantities, "min_component_h", min_comp);
    r.witness["blocks"] = blocks_json(next.partition);
    r.witness["component_h"] = ratio_list(comp_h);
    if (next.value.is_zero()) broken.push_back("h_{c+1} is 0");
    if (next.value != min_comp) broken.push_back("h_{c+1} differs from the least component h");
  } else {
    r.quantities["h_c1"] = nullptr;
  }
  if (!broken.empty()) {
    r.verdict = Verdict::fail;
    r.reason = broken.front();
  }
  return r;
}

namespace {

struct Lemma2Eval {
  double lambda_k1 = 0.0;
  double lower = 0.0;
  bool orthogonal = false;
  std::vector<double> block_lambda2;
  bool ok() const { return orthogonal && lambda_k1 >= lower - kSpectralTol; }
};

Lemma2Eval eval_lemma2(const GraphContext& ctx, const KPartition& p) {
  const Lemma2Certificate cert = lemma2_certificate(ctx.graph(), p, ctx.spectral_options());
  Lemma2Eval e;
  e.lambda_k1 = ctx.spectrum().lambda(p.k() + 1);
  e.lower = cert.lower_bound;
  e.orthogonal = cert.orthogonal;
  e.block_lambda2 = cert.block_lambda2;
  return e;
}

} // namespace

CheckReport check_lemma2(const GraphContext& ctx, const KPartition& p) {
  CheckReport r = base_report(ctx, "lemma2", CheckCategory::spectral, true);
  r.params["k"] = p.k();
  r.params["partition"] = blocks_json(p);
  if (p.host_size() != ctx.graph().n()) {
    throw Error(ErrorKind::invalid_partition, "partition host size does not match graph");
  }
  if (p.k() + 1 > ctx.graph().n()) return not_applicable(std::move(r), "needs k + 1 <= n");
  const Lemma2Eval e = eval_lemma2(ctx, p);
  r.quantities["lambda_k1"] = e.lambda_k1;
  r.quantities["min_block_lambda_2"] = e.lower;
  r.quantities["orthogonal"] = e.orthogonal;
  r.witness["block_lambda_2"] = e.block_lambda2;
  if (!e.ok()) {
    r.verdict = Verdict::fail;
    r.reason = e.orthogonal ? "lambda_{k+1} below min block lambda_2" : "psi functions not orthogonal";
  }
  return r;
}

CheckReport check_lemma2_all(const GraphContext& ctx, int k, const EnumerationPolicy& policy) {
  const int n = ctx.graph().n();
  CheckReport r = base_report(ctx, "lemma2", CheckCategory::spectral, true);
  r.params["k"] = k;
  if (k < 1 || k + 1 > n) return not_applicable(std::move(r), "needs 1 <= k and k + 1 <= n");

  std::uint64_t visited = 0, failures = 0;
  std::optional<KPartition> shown;
  std::optional<Lemma2Eval> shown_eval;
  bool shown_is_failure = false;
  const bool exhaustive = for_each_partition(n, k, policy, [&](const std::vector<int>& labels) {
    ++visited;
    KPartition p = KPartition::from_labels(labels);
    const Lemma2Eval e = eval_lemma2(ctx, p);
    const bool ok = e.ok();
    if (!ok) ++failures;
    if (shown_is_failure) return;
    if (!ok || !shown || e.lambda_k1 - e.lower < shown_eval->lambda_k1 - shown_eval->lower) {
      shown = p;
      shown_eval = e;
      shown_is_failure = !ok;
    }
  });
  r.params["enumeration"] = exhaustive ? "exhaustive" : "sampled";
  r.quantities["lambda_k1"] = shown_eval->lambda_k1;
  r.quantities["partitions"] = visited;
  r.quantities["failures"] = failures;
  r.quantities["tightest_min_block_lambda_2"] = shown_eval->lower;
  r.witness["blocks"] = blocks_json(*shown);
  r.witness["block_lambda_2"] = shown_eval->block_lambda2;
  if (failures > 0) {
    r.verdict = Verdict::fail;
    r.reason = shown_eval->orthogonal ? "lambda_{k+1} below min block lambda_2" : "psi functions not orthogonal";
  }
  return r;
}

CheckReport check_corollary4(const GraphContext& ctx, int k, double c) {
  const Graph& g = ctx.graph();
  const int n = g.n();
  if (!(c > 0.0)) throw Error(ErrorKind::invalid_parameter, "C must be positive");
  CheckReport r = base_report(ctx, "corollary4", CheckCategory::spectral, false);
  r.params["k"] = k;
  r.params["C"] = c;
  if (k < 1 || k + 1 > n) return not_applicable(std::move(r), "needs 1 <= k and k + 1 <= n");

  const int deg = max_degree(g);
  const double lk = ctx.spectrum().lambda(k);
  const double lk1 = ctx.spectrum().lambda(k + 1);
  const double pow3 = static_cast<double>(checked_pow(3, k + 2));
  const double threshold = c * k * k * pow3 * deg * deg * std::sqrt(lk);
  r.quantities["lambda_k"] = lk;
  r.quantities["lambda_k1"] = lk1;
  r.quantities["deg"] = deg;
  r.quantities["hypothesis_threshold"] = threshold;
  r.quantities["hypothesis"] = lk1 >= threshold;
  if (!(lk1 >= threshold)) return not_applicable(std::move(r), "lambda_{k+1} below C k^2 3^{k+2} deg^2 sqrt(lambda_k)");

  CutOracleMode mode;
  mode.caps = ctx.caps();
  const PartitionResult result = theorem2_partition(g, k, mode);
  const RatioProfile profile = boundary_ratio_profile(g, result.partition);
  double min_l2 = std::numeric_limits<double>::infinity();
  std::vector<double> block_l2;
  for (const auto& b : result.partition.blocks()) {
    block_l2.push_back(ctx.lambda2_of(b));
    min_l2 = std::min(min_l2, block_l2.back());
  }
  const double ratio_cap = c * k * k * deg * std::sqrt(lk);
  const double lambda_cap = pow3 * std::pow(static_cast<double>(deg), 1.5) * std::sqrt(min_l2);
  const bool first_ok = profile.max.to_double() <= ratio_cap + kSpectralTol;
  const bool second_ok = lk1 <= lambda_cap + kSpectralTol;
  put_ratio(r.quantities, "max_block_ratio", profile.max);
  r.quantities["ratio_cap"] = ratio_cap;
  r.quantities["min_block_lambda_2"] = min_l2;
  r.quantities["lambda_cap"] = lambda_cap;
  r.quantities["ratio_ok"] = first_ok;
  r.quantities["lambda_ok"] = second_ok;
  r.witness["blocks"] = blocks_json(result.partition);
  r.witness["block_ratios"] = ratio_list(profile.block_ratios);
  r.witness["block_lambda_2"] = block_l2;
  if (!first_ok || !second_ok) {
    r.verdict = Verdict::fail;
    r.reason = !first_ok ? "max block ratio above C k^2 deg sqrt(lambda_k)"
                         : "lambda_{k+1} above 3^{k+2} deg^{3/2} sqrt(min lambda_2)";
  }
  return r;
}

CheckReport expander_split(const std::vector<const GraphContext*>& family, int k, Ratio threshold) {
  CheckReport r;
  r.check = "expander-split";
  r.category = CheckCategory::exact;
  r.must_pass = true;
  std::string names;
  for (const auto* ctx : family) names += (names.empty() ? "" : ",") + ctx->descriptor();
  r.graph = "family(" + names + ")";
  r.params["k"] = k;
  r.params["threshold"] = threshold.to_string();

  const Ratio target = threshold / checked_pow(3, k + 1);
  put_ratio(r.quantities, "target", target);
  json members = json::array();
  int qualifying = 0;
  std::string failure;
  for (const auto* ctx : family) {
    const Graph& g = ctx->graph();
    json m;
    m["graph"] = ctx->descriptor();
    if (k + 1 > g.n()) continue;
    Ratio hk1;
    try {
      hk1 = ctx->kway(k + 1).value;
    } catch (const CapExceeded&) {
      continue;
    }
    if (hk1 < threshold) continue;
    ++qualifying;
    const Ratio hk = ctx->kway(k).value;
    const bool hypothesis = hk1 / checked_pow(3, k + 1) > hk;
    CutOracleMode mode;
    mode.caps = ctx->caps();
    const PartitionResult result = theorem2_partition(g, k, mode);
    Ratio min_h = Ratio::infinity();
    std::vector<Ratio> block_h;
    json sizes = json::array();
    int min_size = g.n();
    for (const auto& b : result.partition.blocks()) {
      block_h.push_back(ctx->h_of(b));
      min_h = std::min(min_h, block_h.back());
      sizes.push_back(b.size());
      min_size = std::min(min_size, b.size());
    }
    put_ratio(m, "h_k", hk);
    put_ratio(m, "h_k1", hk1);
    put_ratio(m, "min_block_h", min_h);
    m["hypothesis"] = hypothesis;
    m["block_sizes"] = sizes;
    m["block_h"] = ratio_list(block_h);
    m["blocks"] = blocks_json(result.partition);
    const bool ok = !(min_h < target);
    m["asserted"] = hypothesis;
    m["ok"] = ok;
    if (hypothesis && !ok && failure.empty()) {
      failure = ctx->descriptor() + ": min block h " + min_h.to_string() + " below " + target.to_string();
    }
    // Growth observation: for connected members |V^i| >= 1 / (3^k h_k).
    if (k >= 2 && hypothesis && ctx->components() == 1 && !hk.is_zero()) {
      const unsigned __int128 lhs = static_cast<unsigned __int128>(min_size) * checked_pow(3, k) * hk.num();
      const bool growth_ok = lhs >= hk.den();
      m["growth_ok"] = growth_ok;
      if (!growth_ok && failure.empty()) failure = ctx->descriptor() + ": block smaller than 1 / (3^k h_k)";
    }
    members.push_back(m);
  }
  r.quantities["qualifying"] = qualifying;
  r.witness["members"] = members;
  if (qualifying == 0) return not_applicable(std::move(r), "no member has h_{k+1} >= threshold");
  if (!failure.empty()) {
    r.verdict = Verdict::fail;
    r.reason = failure;
  }
  return r;
}

PairSpread pair_spread(const Graph& g, const VertexSet& h, double r) {
  if (h.host_size() != g.n()) throw Error(ErrorKind::invalid_set, "set host size mismatch");
  if (h.empty()) throw Error(ErrorKind::invalid_set, "pair spread needs a nonempty set");
  PairSpread out;
  const auto members = h.members();
  for (Vertex x : members) {
    const auto dist = bfs_distances(g, x);
    for (Vertex y : members) {
      if (dist[y] == kUnreachable || static_cast<double>(dist[y]) > r) ++out.count;
    }
  }
  const double size = static_cast<double>(members.size());
  out.fraction = static_cast<double>(out.count) / (size * size);
  return out;
}

CheckReport prop1_bound(const GraphContext& ctx, const VertexSet& h) {
  const Graph& g = ctx.graph();
  CheckReport r = base_report(ctx, "prop1", CheckCategory::exact, true);
  const bool whole = h.size() == g.n();
  r.params["H"] = whole ? json("V") : set_json(h);
  if (h.empty()) return not_applicable(std::move(r), "H is empty");
  const Graph sub = induced_subgraph(g, h).graph;
  const int d_local = max_degree(sub);
  const int d = max_degree(g);
  const auto size = static_cast<std::uint64_t>(h.size());
  r.quantities["H_size"] = size;
  r.quantities["deg_H"] = d_local;
  r.quantities["deg_G"] = d;
  if (d_local < 2) return not_applicable(std::move(r), "deg(G[H]) < 2");

  const double rv = std::log(static_cast<double>(size)) / std::log(static_cast<double>(d_local)) / 2.0 - 1.0;
  // floor(r) exactly: the largest j with d^{2(j+1)} <= |H|.
  long long floor_r = -1;
  for (std::uint64_t p = sat_mul(d_local, d_local); p <= size; p = sat_mul(p, sat_mul(d_local, d_local))) {
    ++floor_r;
  }
  const PairSpread spread = pair_spread(g, h, static_cast<double>(floor_r) + 0.5);
  const std::uint64_t ball = ball_volume(d, floor_r);
  const std::uint64_t bound = ball >= size ? 0 : size * (size - ball);
  const std::uint64_t local_ball = ball_volume(d_local, floor_r);
  const std::uint64_t local_bound = local_ball >= size ? 0 : size * (size - local_ball);
  r.quantities["r"] = rv;
  r.quantities["floor_r"] = floor_r;
  r.quantities["count"] = spread.count;
  r.quantities["fraction"] = spread.fraction;
  r.quantities["ball_bound"] = bound;
  r.quantities["local_degree_bound"] = local_bound;
  r.quantities["local_degree_bound_holds"] = spread.count >= local_bound;
  r.quantities["at_least_half"] = 2 * spread.count >= size * size;
  if (spread.count < bound) {
    r.verdict = Verdict::fail;
    r.reason = "pair count " + std::to_string(spread.count) + " below ball-volume bound " + std::to_string(bound);
    r.witness["r"] = rv;
  }
  return r;
}

Prop2Quantities prop2_quantities(const Graph& g, const VertexSet& h, double r) {
  if (h.host_size() != g.n()) throw Error(ErrorKind::invalid_set, "set host size mismatch");
  if (h.empty() || h.size() == g.n()) throw Error(ErrorKind::invalid_set, "H must be a nonempty proper subset");
  Prop2Quantities q;
  q.f = VertexSet(g.n());
  for (Vertex x : h.members()) {
    for (Vertex y : g.neighbors(x)) {
      if (!h.contains(y)) {
        q.f.insert(x);
        break;
      }
    }
  }
  const InducedSubgraph sub = induced_subgraph(g, h);
  std::vector<int> local_index(g.n(), -1);
  for (std::size_t i = 0; i < sub.to_host.size(); ++i) local_index[sub.to_host[i]] = static_cast<int>(i);
  auto far = [&](int d) { return d == kUnreachable || static_cast<double>(d) > r; };

  q.w = h;
  q.w_local = h;
  for (Vertex y : q.f.members()) {
    const auto dg = bfs_distances(g, y);
    const auto dh = bfs_distances(sub.graph, local_index[y]);
    for (Vertex x : h.members()) {
      if (!far(dg[x])) q.w.erase(x);
      if (!far(dh[local_index[x]])) q.w_local.erase(x);
    }
  }
  for (Vertex z : q.w.members()) {
    const auto dz = bfs_distances(g, z);
    int count = 0;
    for (Vertex w : q.w.members()) count += far(dz[w]) ? 1 : 0;
    if (!q.min_wz || count < *q.min_wz) {
      q.min_wz = count;
      q.min_wz_at = z;
    }
  }
  q.local_degree = max_degree(sub.graph);
  if (q.local_degree >= 2) {
    const double ratio = (static_cast<double>(boundary_count(g, h)) + 1.0) / h.size();
    q.r_formula = -0.5 * std::log(ratio) / std::log(static_cast<double>(q.local_degree));
  }
  const auto radius = static_cast<long long>(std::floor(r));
  const std::uint64_t excluded = sat_mul(static_cast<std::uint64_t>(q.f.size()) + 1, ball_volume(q.local_degree, radius));
  const auto size = static_cast<std::uint64_t>(h.size());
  q.lower_bound = excluded >= size ? 0 : size - excluded;
  return q;
}

CheckReport check_prop2(const GraphContext& ctx, const VertexSet& h, double r) {
  const Graph& g = ctx.graph();
  CheckReport rep = base_report(ctx, "prop2", CheckCategory::exact, true);
  rep.params["H"] = set_json(h);
  rep.params["r"] = r;
  if (h.empty() || h.size() == g.n()) return not_applicable(std::move(rep), "H must be a nonempty proper subset");
  const Prop2Quantities q = prop2_quantities(g, h, r);
  rep.quantities["F"] = set_json(q.f);
  rep.quantities["W"] = set_json(q.w);
  rep.quantities["W_size"] = q.w.size();
  rep.quantities["deg_H"] = q.local_degree;
  rep.quantities["boundary"] = boundary_count(g, h);
  rep.quantities["min_W_z"] = q.min_wz ? json(*q.min_wz) : json(nullptr);
  rep.quantities["r_formula"] = q.r_formula ? json(*q.r_formula) : json(nullptr);
  rep.quantities["ball_bound"] = q.lower_bound;
  rep.quantities["identity"] = q.w == q.w_local;
  // The bound with a single power of the degree, reported only.
  const auto radius = static_cast<long long>(std::floor(r));
  std::uint64_t single = 0;
  if (radius >= 0) {
    std::uint64_t pw = 1;
    for (long long i = 0; i < radius; ++i) pw = sat_mul(pw, static_cast<std::uint64_t>(q.local_degree));
    const std::uint64_t ex = sat_mul(static_cast<std::uint64_t>(q.f.size()) + 1, pw);
    single = ex >= static_cast<std::uint64_t>(h.size()) ? 0 : h.size() - ex;
    rep.quantities["single_power_bound"] = single;
    rep.quantities["single_power_bound_holds"] = !q.min_wz || static_cast<std::uint64_t>(*q.min_wz) >= single;
  }
  if (q.min_wz_at) rep.witness["z"] = *q.min_wz_at;

  if (q.w != q.w_local) {
    rep.verdict = Verdict::fail;
    rep.reason = "W(r) differs between ambient and intrinsic distances";
    rep.witness["W_local"] = set_json(q.w_local);
  } else if (q.min_wz && static_cast<std::uint64_t>(*q.min_wz) < q.lower_bound) {
    rep.verdict = Verdict::fail;
    rep.reason = "|W(r, z)| below the ball-volume bound";
  }
  return rep;
}

CheckReport remark_lambda_decay(int block_count, const std::vector<int>& block_sizes, std::uint64_t seed) {
  CheckReport r;
  r.check = "remark";
  r.category = CheckCategory::spectral;
  r.must_pass = true;
  std::string names;
  for (int s : block_sizes) {
    names += (names.empty() ? "" : ";") + std::string("chain(k") + std::to_string(s) + "*" +
             std::to_string(block_count) + ",anchors=" + std::to_string(seed) + ")";
  }
  r.graph = names;
  r.params["blocks"] = block_count;
  r.params["seed"] = seed;
  if (block_count < 4 || block_count % 2 != 0) {
    throw Error(ErrorKind::invalid_parameter, "block count must be even and at least 4");
  }
  if (block_sizes.empty()) throw Error(ErrorKind::invalid_parameter, "no block sizes given");
  const int m_count = block_count / 4;
  r.params["m_count"] = m_count;

  json rows = json::array();
  std::string failure;
  std::optional<double> previous;
  for (int s : block_sizes) {
    const std::vector<Graph> hs(block_count, complete_graph(s));
    const ChainGraph cg = chain(hs, random_anchors(hs, seed));
    const RemarkBound b = remark_upper_bound(cg.graph, cg.blocks, m_count);
    const double lambda = spectrum(cg.graph).lambda(m_count);
    const double cap = *std::max_element(b.caps.begin(), b.caps.end());
    json row;
    row["block_size"] = s;
    row["n"] = cg.graph.n();
    row["lambda"] = lambda;
    row["bound"] = b.bound;
    row["cap"] = cap;
    row["energies"] = b.energies;
    row["orthonormal"] = b.orthonormal;
    row["within_caps"] = b.within_caps;
    rows.push_back(row);
    if (failure.empty()) {
      if (!b.orthonormal) failure = "test functions not orthonormal";
      else if (!b.within_caps) failure = "energy above 2 / |V_H|";
      else if (lambda > b.bound + kSpectralTol) failure = "lambda above the test-function bound";
      else if (lambda > cap + kSpectralTol) failure = "lambda above 2 / |V_H|";
      else if (previous && !(b.bound < *previous)) failure = "bound did not shrink with the block size";
    }
    previous = b.bound;
  }
  r.quantities["rows"] = rows;
  if (!failure.empty()) {
    r.verdict = Verdict::fail;
    r.reason = failure;
  }
  return r;
}

// ------------------------------------------------------------------ suites

CorpusEntry corpus_entry(const std::string& family_text) {
  const FamilySpec spec = parse_family(family_text);
  CorpusEntry e;
  e.descriptor = spec.text;
  const ChainGraph cg = generate_with_blocks(spec);
  e.graph = cg.graph;
  if (spec.kind == FamilySpec::Kind::chain) e.blocks = cg.blocks;
  return e;
}

std::vector<std::string> default_corpus_specs() {
  std::vector<std::string> out;
  for (int n = 2; n <= 6; ++n) out.push_back("p" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) out.push_back("c" + std::to_string(n));
  for (int n = 2; n <= 6; ++n) out.push_back("k" + std::to_string(n));
  for (int n = 2; n <= 4; ++n) out.push_back("e" + std::to_string(n));
  out.push_back("2k3");
  out.push_back("3k3");
  out.push_back("petersen");
  for (int n : {12, 16}) {
    for (int seed : {1, 2, 3}) {
      out.push_back("rr(n=" + std::to_string(n) + ",d=3,seed=" + std::to_string(seed) + ")");
    }
  }
  out.push_back("chain(k3*8)");
  out.push_back("apex(c8)");
  return out;
}

std::vector<CorpusEntry> default_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& s : default_corpus_specs()) out.push_back(corpus_entry(s));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1", "theorem2", "cheeger", "lgt",    "components", "lemma2",
                                              "corollary4", "expander-split", "prop1", "prop2", "remark", "all"};
  return names;
}

namespace {

std::vector<int> ks_or(const SuiteOptions& opts, std::vector<int> fallback) {
  return opts.ks.empty() ? fallback : opts.ks;
}

// Runs one check, turning cap overruns into not-applicable and any other
// error into a failure.
CheckReport guarded(const std::string& check, const std::string& graph, json params, CheckCategory category,
                    bool must_pass, const std::function<CheckReport()>& body) {
  try {
    return body();
  } catch (const CapExceeded& e) {
    CheckReport r;
    r.check = check;
    r.graph = graph;
    r.params = std::move(params);
    r.category = category;
    r.must_pass = must_pass;
    r.verdict = Verdict::not_applicable;
    r.reason = std::string(e.what());
    r.quantities["cap"] = e.cap();
    r.quantities["limit"] = e.limit();
    r.quantities["requested"] = e.requested();
    return r;
  } catch (const std::exception& e) {
    CheckReport r;
    r.check = check;
    r.graph = graph;
    r.params = std::move(params);
    r.category = category;
    r.must_pass = must_pass;
    r.verdict = Verdict::fail;
    r.reason = std::string("error: ") + e.what();
    r.witness["error"] = e.what();
    return r;
  }
}

bool wants(std::string_view suite, std::string_view name) { return suite == "all" || suite == name; }

std::vector<CheckReport> per_graph(std::string_view suite, const GraphContext& ctx, const CorpusEntry& entry,
                                   const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  const std::string& name = ctx.descriptor();
  const int n = ctx.graph().n();
  auto run = [&](const std::string& check, json params, CheckCategory cat, bool must,
                 const std::function<CheckReport()>& body) {
    out.push_back(guarded(check, name, std::move(params), cat, must, body));
  };
  const auto exact = CheckCategory::exact;
  const auto spectral = CheckCategory::spectral;

  if (wants(suite, "components")) run("components", json::object(), exact, true, [&] { return check_components(ctx); });
  if (wants(suite, "cheeger")) run("cheeger", json::object(), spectral, true, [&] { return check_cheeger(ctx); });
  if (wants(suite, "lemma1")) {
    for (int k : ks_or(opts, {1, 2, 3, 4})) {
      if (k + 1 > n) continue;
      run("lemma1", {{"k", k}}, exact, true, [&] { return check_lemma1(ctx, k, opts.lemma1_policy); });
    }
  }
  if (wants(suite, "theorem2")) {
    for (int k : ks_or(opts, {1, 2, 3})) {
      if (k + 1 > n) continue;
      run("theorem2", {{"k", k}, {"mode", "exact"}}, exact, true, [&] { return check_theorem2(ctx, k); });
    }
  }
  if (wants(suite, "lgt")) {
    for (int k : ks_or(opts, {1, 2, 3, 4})) {
      if (k > n) continue;
      run("lgt", {{"k", k}}, spectral, true, [&] { return check_lgt(ctx, k); });
    }
  }
  if (wants(suite, "lemma2")) {
    for (int k : ks_or(opts, {1, 2, 3})) {
      if (k + 1 > n) continue;
      run("lemma2", {{"k", k}}, spectral, true, [&] { return check_lemma2_all(ctx, k, opts.lemma2_policy); });
    }
  }
  if (wants(suite, "corollary4")) {
    for (int k : ks_or(opts, {1, 2, 3})) {
      if (k + 1 > n) continue;
      run("corollary4", {{"k", k}, {"C", opts.c}}, spectral, false,
          [&] { return check_corollary4(ctx, k, opts.c); });
    }
  }
  if (wants(suite, "prop1")) {
    run("prop1", {{"H", "V"}}, exact, true, [&] { return prop1_bound(ctx, VertexSet::full(n)); });
  }
  if (wants(suite, "prop2")) {
    std::vector<VertexSet> hs;
    if (!entry.blocks.empty()) {
      hs = entry.blocks;
    } else if (entry.descriptor.rfind("apex(", 0) == 0 && n >= 2) {
      VertexSet base = VertexSet::full(n);
      base.erase(n - 1);
      hs.push_back(base);
    } else if (n >= 2) {
      try {
        hs.push_back(ctx.h().set);
      } catch (const CapExceeded&) {
      }
    }
    for (const auto& h : hs) {
      std::vector<double> rs{0.0, 1.0};
      if (!h.empty() && h.size() < n) {
        const auto q = prop2_quantities(ctx.graph(), h, 0.0);
        if (q.r_formula && *q.r_formula >= 0.0) rs.push_back(*q.r_formula);
      }
      for (double rv : rs) {
        run("prop2", {{"H", h.members()}, {"r", rv}}, exact, true, [&] { return check_prop2(ctx, h, rv); });
      }
    }
  }
  return out;
}

} // namespace

std::vector<CheckReport> run_suite(std::string_view suite, const std::vector<CorpusEntry>& corpus,
                                   const SuiteOptions& opts) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw Error(ErrorKind::invalid_parameter, "unknown suite '" + std::string(suite) + "'");
  }
  std::vector<GraphContext> contexts;
  contexts.reserve(corpus.size());
  for (const auto& e : corpus) contexts.emplace_back(e.graph, e.descriptor, opts.caps);

  std::vector<std::vector<CheckReport>> slots(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { slots[i] = per_graph(suite, contexts[i], corpus[i], opts); });
  std::vector<CheckReport> out;
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }

  if (wants(suite, "expander-split")) {
    std::vector<const GraphContext*> family;
    for (const auto& c : contexts) family.push_back(&c);
    for (int k : ks_or(opts, {1, 2})) {
      Ratio threshold = Ratio::infinity();
      for (const auto* c : family) {
        if (k + 1 > c->graph().n()) continue;
        try {
          const Ratio v = c->kway(k + 1).value;
          if (!v.is_zero()) threshold = std::min(threshold, v);
        } catch (const CapExceeded&) {
        }
      }
      out.push_back(guarded("expander-split", "corpus", {{"k", k}}, CheckCategory::exact, true, [&] {
        if (threshold.is_infinite()) {
          CheckReport r;
          r.check = "expander-split";
          r.graph = "corpus";
          r.params["k"] = k;
          return not_applicable(std::move(r), "no member has positive h_{k+1}");
        }
        return expander_split(family, k, threshold);
      }));
    }
  }
  if (wants(suite, "remark")) {
    out.push_back(guarded("remark", "chain", {{"blocks", opts.remark_blocks}}, CheckCategory::spectral, true,
                          [&] { return remark_lambda_decay(opts.remark_blocks, opts.remark_sizes, opts.seed); }));
  }

  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < out.size(); ++i) {
    keys.emplace_back(out[i].check + '\x1f' + out[i].graph + '\x1f' + out[i].params.dump(), i);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CheckReport> sorted;
  sorted.reserve(out.size());
  for (const auto& [key, i] : keys) sorted.push_back(std::move(out[i]));
  return sorted;
}

bool has_must_pass_failure(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.must_pass && r.verdict == Verdict::fail; });
}

} // namespace mwc
