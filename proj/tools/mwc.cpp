// mwc: generate graphs, compute expansion constants and spectra, run the
// recursive partitioner, and execute verification suites.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwc/error.hpp"
#include "mwc/expansion.hpp"
#include "mwc/families.hpp"
#include "mwc/graph.hpp"
#include "mwc/partitioner.hpp"
#include "mwc/spectral.hpp"
#include "mwc/verifier.hpp"

using nlohmann::json;

namespace {

struct Source {
  std::string input;
  std::string family;
};

struct Loaded {
  std::string descriptor;
  mwc::Graph graph;
};

Loaded load(const Source& src) {
  if (!src.input.empty()) {
    std::ifstream in(src.input);
    if (!in) throw mwc::Error(mwc::ErrorKind::parse_error, "cannot open '" + src.input + "'");
    return {src.input, mwc::read_edge_list(in)};
  }
  if (src.family.empty()) throw mwc::Error(mwc::ErrorKind::invalid_parameter, "one of --input or --family is required");
  const auto spec = mwc::parse_family(src.family);
  return {spec.text, mwc::generate(spec)};
}

void put_ratio(json& j, const std::string& key, const mwc::Ratio& r) {
  j[key] = r.to_string();
  j[key + "_decimal"] = r.is_infinite() ? json(nullptr) : json(r.to_double());
}

json blocks_json(const mwc::KPartition& p) {
  json out = json::array();
  for (const auto& b : p.blocks()) out.push_back(b.members());
  return out;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw mwc::Error(mwc::ErrorKind::invalid_parameter, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Flat documents print as key,value rows; nested values stay JSON.
void emit_document(std::ostream& os, const json& doc, const std::string& format) {
  if (format == "json") {
    os << doc.dump() << '\n';
  } else if (format == "csv") {
    os << "key,value\n";
    for (const auto& [key, value] : doc.items()) {
      os << csv_field(key) << ',' << csv_field(value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  } else {
    os << doc.dump(2) << '\n';
  }
}

int cmd_generate(const std::string& spec_text, const std::string& out_path) {
  const auto spec = mwc::parse_family(spec_text);
  const mwc::ChainGraph cg = mwc::generate_with_blocks(spec);
  const auto comps = mwc::connected_components(cg.graph).size();
  std::ostream* summary = &std::cout;
  if (out_path.empty()) {
    mwc::write_edge_list(std::cout, cg.graph);
    summary = &std::cerr;
  } else {
    std::ofstream out(out_path);
    if (!out) throw mwc::Error(mwc::ErrorKind::invalid_parameter, "cannot write '" + out_path + "'");
    mwc::write_edge_list(out, cg.graph);
  }
  *summary << "n " << cg.graph.n() << " m " << cg.graph.edge_count() << " components " << comps << '\n';
  return 0;
}

struct AnalyzeFlags {
  bool h = false;
  std::vector<int> hk;
  bool spectrum = false;
  bool sweep = false;
};

int cmd_analyze(const Source& src, const AnalyzeFlags& flags, const mwc::ExactCaps& caps, const std::string& format,
                const std::string& out_path) {
  const Loaded g = load(src);
  json doc;
  doc["graph"] = g.descriptor;
  doc["n"] = g.graph.n();
  doc["m"] = g.graph.edge_count();
  doc["components"] = mwc::connected_components(g.graph).size();
  const bool any = flags.h || !flags.hk.empty() || flags.spectrum || flags.sweep;
  if (flags.h || !any) {
    const auto w = mwc::expansion_exact(g.graph, caps);
    put_ratio(doc, "h", w.ratio);
    doc["h_witness"] = w.set.members();
  }
  for (int k : flags.hk) {
    const auto w = mwc::kway_expansion_exact(g.graph, k, caps);
    const std::string key = "h_" + std::to_string(k);
    put_ratio(doc, key, w.value);
    doc[key + "_witness"] = blocks_json(w.partition);
  }
  if (flags.spectrum) doc["spectrum"] = mwc::spectrum(g.graph).eigenvalues;
  if (flags.sweep) {
    const auto w = mwc::sweep_cut(g.graph);
    put_ratio(doc, "sweep", w.ratio);
    doc["sweep_witness"] = w.set.members();
  }
  Output out(out_path);
  emit_document(out.stream(), doc, format);
  return 0;
}

int cmd_partition(const Source& src, int k, const std::string& mode_text, const mwc::ExactCaps& caps,
                  const std::string& format, const std::string& out_path) {
  const Loaded g = load(src);
  mwc::CutOracleMode mode;
  mode.mode = mwc::parse_cut_mode(mode_text);
  mode.caps = caps;
  const auto result = mwc::theorem2_partition(g.graph, k, mode);

  json doc;
  doc["graph"] = g.descriptor;
  doc["k"] = k;
  doc["mode"] = std::string(mwc::to_string(mode.mode));
  doc["blocks"] = blocks_json(result.partition);
  json nodes = json::array();
  for (const auto& node : result.trace.nodes) {
    json j;
    j["address"] = node.address;
    j["vertices"] = node.vertices.members();
    j["parent"] = node.parent < 0 ? json(nullptr) : json(result.trace.nodes[node.parent].address);
    j["division"] = node.divided() ? json(node.division + 1) : json(nullptr);
    if (node.vertices.size() >= 2 && !node.cut.set.empty()) {
      j["cut"] = node.cut.set.members();
      put_ratio(j, "key", node.key());
    }
    nodes.push_back(j);
  }
  doc["trace"] = nodes;
  json divisions = json::array();
  for (int d : result.trace.divisions) divisions.push_back(result.trace.nodes[d].address);
  doc["divisions"] = divisions;

  if (mode.mode == mwc::CutMode::exact) {
    json c;
    try {
      const auto t = mwc::evaluate_theorem2(g.graph, result, caps);
      put_ratio(c, "h_k", t.h_k);
      put_ratio(c, "h_k1", t.h_k1);
      c["hypothesis"] = t.hypothesis;
      put_ratio(c, "min_block_h", t.min_block_h);
      put_ratio(c, "max_block_ratio", t.max_block_ratio);
      put_ratio(c, "lower_target", t.lower_target);
      put_ratio(c, "upper_target", t.upper_target);
      c["lower_ok"] = t.lower_ok;
      c["upper_ok"] = t.upper_ok;
      std::size_t bad = 0;
      const auto claims = mwc::claim_check(g.graph, result.trace);
      for (const auto& e : claims) bad += e.ok ? 0 : 1;
      c["claims"] = claims.size();
      c["claim_failures"] = bad;
    } catch (const mwc::Error& e) {
      c["unavailable"] = e.what();
    }
    doc["conclusion"] = c;
  } else {
    json ratios = json::array();
    for (int leaf : result.trace.leaves) ratios.push_back(result.trace.nodes[leaf].key().to_string());
    doc["leaf_sweep_ratios"] = ratios;
  }
  Output out(out_path);
  emit_document(out.stream(), doc, format);
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::vector<std::string> families;
  std::vector<std::string> inputs;
  std::vector<int> ks;
  double c = 1.0;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& args, const mwc::ExactCaps& caps, const std::string& format,
               const std::string& out_path) {
  std::vector<mwc::CorpusEntry> corpus;
  for (const auto& f : args.families) corpus.push_back(mwc::corpus_entry(f));
  for (const auto& path : args.inputs) {
    const Loaded g = load(Source{path, {}});
    corpus.push_back(mwc::CorpusEntry{g.descriptor, g.graph, {}});
  }
  if (corpus.empty()) corpus = mwc::default_corpus();

  mwc::SuiteOptions opts;
  opts.ks = args.ks;
  opts.c = args.c;
  opts.seed = args.seed;
  opts.caps = caps;
  opts.lemma1_policy.seed = args.seed;
  opts.lemma2_policy.seed = args.seed;
  const auto reports = mwc::run_suite(args.suite, corpus, opts);

  Output out(out_path);
  std::ostream& os = out.stream();
  if (format == "json") {
    for (const auto& r : reports) os << mwc::to_json(r).dump() << '\n';
  } else if (format == "csv") {
    os << "check,graph,params,verdict,category,must_pass,reason\n";
    for (const auto& r : reports) {
      os << csv_field(r.check) << ',' << csv_field(r.graph) << ',' << csv_field(r.params.dump()) << ','
         << mwc::to_string(r.verdict) << ',' << mwc::to_string(r.category) << ',' << (r.must_pass ? "true" : "false")
         << ',' << csv_field(r.reason) << '\n';
    }
  } else {
    std::size_t pass = 0, fail = 0, na = 0;
    for (const auto& r : reports) {
      os << mwc::to_string(r.verdict) << "  " << r.check << "  " << r.graph << "  " << r.params.dump();
      if (!r.reason.empty()) os << "  (" << r.reason << ")";
      os << '\n';
      if (r.verdict == mwc::Verdict::pass) ++pass;
      else if (r.verdict == mwc::Verdict::fail) ++fail;
      else ++na;
    }
    os << pass << " passed, " << fail << " failed, " << na << " not applicable\n";
  }
  return mwc::has_must_pass_failure(reports) ? 1 : 0;
}

void report_error(const mwc::Error& e) {
  json err;
  err["kind"] = std::string(mwc::to_string(e.kind()));
  err["message"] = e.what();
  if (const auto* cap = dynamic_cast<const mwc::CapExceeded*>(&e)) {
    err["cap"] = cap->cap();
    err["limit"] = cap->limit();
    err["n"] = cap->requested();
  }
  std::cerr << json{{"error", err}}.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-way expansion toolkit"};
  app.require_subcommand(1);
  // "-h" would collide with analyze --h.
  app.set_help_flag("--help", "Print this help message and exit");

  std::string format = "json";
  std::string out_path;
  int cap_subset = mwc::ExactCaps{}.subset_n;
  int cap_partition = mwc::ExactCaps{}.partition_n;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", out_path, "Output file (default stdout)");
    cmd->add_option("--cap-subset", cap_subset, "Largest n for subset enumeration")->check(CLI::PositiveNumber);
    cmd->add_option("--cap-partition", cap_partition, "Largest n for unconditional partition enumeration")
        ->check(CLI::PositiveNumber);
  };
  auto add_source = [](CLI::App* cmd, Source& src) {
    auto* in = cmd->add_option("--input", src.input, "Edge-list file");
    auto* fam = cmd->add_option("--family", src.family, "Family spec, e.g. \"chain(k3*8)\"");
    in->excludes(fam);
    fam->excludes(in);
  };

  std::string gen_spec;
  auto* gen = app.add_subcommand("generate", "Write a family member as an edge list");
  gen->add_option("spec", gen_spec, "Family spec")->required();
  gen->add_option("--out", out_path, "Output file (default stdout)");

  Source analyze_src;
  AnalyzeFlags flags;
  auto* analyze = app.add_subcommand("analyze", "Expansion constants, spectrum, sweep cut");
  add_source(analyze, analyze_src);
  add_common(analyze);
  analyze->add_flag("--h", flags.h, "Exact h(G)");
  analyze->add_option("--hk", flags.hk, "Exact h_k(G) (repeatable)");
  analyze->add_flag("--spectrum", flags.spectrum, "Laplacian eigenvalues");
  analyze->add_flag("--sweep", flags.sweep, "Fiedler sweep cut");

  Source part_src;
  int part_k = 2;
  std::string mode = "exact";
  auto* partition = app.add_subcommand("partition", "Recursive division into k pieces");
  add_source(partition, part_src);
  add_common(partition);
  partition->add_option("--k", part_k, "Number of pieces")->required();
  partition->add_option("--mode", mode, "exact or sweep")->check(CLI::IsMember({"exact", "sweep"}));

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Run a verification suite over a corpus");
  add_common(verify);
  std::string suites;
  for (const auto& s : mwc::suite_names()) suites += (suites.empty() ? "" : ", ") + s;
  verify->add_option("suite", vargs.suite, "One of: " + suites)->required()->check(CLI::IsMember(mwc::suite_names()));
  verify->add_option("--family", vargs.families, "Corpus member spec (repeatable; default corpus if none)");
  verify->add_option("--input", vargs.inputs, "Corpus member edge-list file (repeatable)");
  verify->add_option("--k", vargs.ks, "k values (comma separated)")->delimiter(',');
  verify->add_option("--C", vargs.c, "Constant for the corollary4 suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vargs.seed, "Seed for sampled partitions and chain anchors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  mwc::ExactCaps caps;
  caps.subset_n = cap_subset;
  caps.partition_n = cap_partition;
  try {
    if (*gen) return cmd_generate(gen_spec, out_path);
    if (*analyze) return cmd_analyze(analyze_src, flags, caps, format, out_path);
    if (*partition) return cmd_partition(part_src, part_k, mode, caps, format, out_path);
    if (*verify) return cmd_verify(vargs, caps, format, out_path);
  } catch (const mwc::Error& e) {
    report_error(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  }
  return 2;
}
