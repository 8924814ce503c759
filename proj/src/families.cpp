#include "mwc/families.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mwc/error.hpp"

namespace mwc {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::invalid_parameter, "uniform bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::invalid_parameter, msg);
}

} // namespace

Graph cycle_graph(int n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, edges);
}

Graph path_graph(int n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, edges);
}

Graph complete_graph(int n) {
  require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph(n, edges);
}

Graph edgeless_graph(int n) {
  require(n >= 1, "edgeless graph needs n >= 1");
  return Graph(n);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph(10, edges);
}

Graph disjoint_union(const std::vector<Graph>& parts) {
  require(!parts.empty(), "disjoint union needs at least one part");
  std::vector<Edge> edges;
  int offset = 0;
  for (const auto& g : parts) {
    for (const auto& e : g.edges()) edges.push_back({e.u + offset, e.v + offset});
    offset += g.n();
  }
  return Graph(offset, edges);
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  require(n >= 1, "random regular graph needs n >= 1");
  require(d >= 0 && d < n, "random regular graph needs 0 <= d < n");
  require((static_cast<long long>(n) * d) % 2 == 0, "random regular graph needs n*d even");
  SplitMix64 rng(seed);
  const std::size_t points = static_cast<std::size_t>(n) * d;
  std::vector<Vertex> pts(points);
  for (std::size_t p = 0; p < points; ++p) pts[p] = static_cast<Vertex>(p / d);
  constexpr int kAttempts = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    for (std::size_t i = points; i > 1; --i) {
      std::swap(pts[i - 1], pts[rng.uniform(i)]);
    }
    std::vector<Edge> edges;
    std::set<std::pair<Vertex, Vertex>> seen;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < points && simple; i += 2) {
      const Vertex a = std::min(pts[i], pts[i + 1]);
      const Vertex b = std::max(pts[i], pts[i + 1]);
      simple = a != b && seen.insert({a, b}).second;
      edges.push_back({a, b});
    }
    if (simple) return Graph(n, edges);
  }
  throw Error(ErrorKind::invalid_parameter, "no simple pairing found in 1000 attempts");
}

Graph apex(const Graph& h) {
  require(h.n() >= 1, "apex needs a nonempty graph");
  std::vector<Edge> edges = h.edges();
  for (Vertex v = 0; v < h.n(); ++v) edges.push_back({v, h.n()});
  return Graph(h.n() + 1, edges);
}

ChainGraph chain(const std::vector<Graph>& hs, const std::vector<ChainAnchor>& anchors) {
  require(!hs.empty(), "chain needs at least one graph");
  require(anchors.empty() || anchors.size() == hs.size(), "chain needs one anchor pair per graph");
  std::vector<int> offset(hs.size(), 0);
  for (std::size_t m = 1; m < hs.size(); ++m) offset[m] = offset[m - 1] + hs[m - 1].n();
  const int total = offset.back() + hs.back().n();

  ChainGraph out;
  std::vector<Edge> edges;
  for (std::size_t m = 0; m < hs.size(); ++m) {
    require(hs[m].n() >= 1, "chain blocks must be nonempty");
    for (const auto& e : hs[m].edges()) edges.push_back({e.u + offset[m], e.v + offset[m]});
    VertexSet block(total);
    for (Vertex v = 0; v < hs[m].n(); ++v) block.insert(v + offset[m]);
    out.blocks.push_back(std::move(block));
  }
  for (std::size_t m = 0; m < hs.size(); ++m) {
    const ChainAnchor a = anchors.empty() ? ChainAnchor{} : anchors[m];
    if (a.x < 0 || a.x >= hs[m].n() || a.y < 0 || a.y >= hs[m].n()) {
      throw Error(ErrorKind::invalid_set, "chain anchor out of range in block " + std::to_string(m));
    }
  }
  for (std::size_t m = 1; m < hs.size(); ++m) {
    const Vertex x = (anchors.empty() ? 0 : anchors[m].x) + offset[m];
    const Vertex y = (anchors.empty() ? 0 : anchors[m - 1].y) + offset[m - 1];
    out.bridges.push_back({std::min(x, y), std::max(x, y)});
    edges.push_back(out.bridges.back());
  }
  out.graph = Graph(total, edges);
  return out;
}

std::vector<ChainAnchor> random_anchors(const std::vector<Graph>& hs, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<ChainAnchor> out;
  for (const auto& h : hs) {
    require(h.n() >= 1, "chain blocks must be nonempty");
    ChainAnchor a;
    a.x = static_cast<Vertex>(rng.uniform(h.n()));
    a.y = static_cast<Vertex>(rng.uniform(h.n()));
    out.push_back(a);
  }
  return out;
}

ConnectedDraw connected_random_regular(int n, int d, std::uint64_t seed, int max_retries) {
  for (int retry = 0; retry <= max_retries; ++retry) {
    Graph g = random_regular(n, d, seed + retry);
    if (is_connected(g)) return ConnectedDraw{std::move(g), seed + retry, retry};
  }
  throw Error(ErrorKind::invalid_parameter, "no connected draw within retry budget");
}

// ------------------------------------------------------------------ parsing

namespace {

struct Arg {
  std::optional<std::string> key;
  std::optional<long long> integer;
  std::optional<FamilySpec> spec;
  int repeat = 1;
};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  FamilySpec parse_all() {
    FamilySpec spec = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return spec;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error,
                "family spec '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long long parse_int() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 18) fail("integer too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  std::string parse_ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a family name");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  FamilySpec parse_spec() {
    skip_ws();
    const std::size_t start = pos_;
    long long count = 1;
    if (at_digit()) {
      count = parse_int();
      if (count < 1) fail("count must be positive");
    }
    FamilySpec base = parse_named();
    if (count > 1) {
      FamilySpec u;
      u.kind = FamilySpec::Kind::disjoint_union;
      u.parts.assign(static_cast<std::size_t>(count), base);
      base = std::move(u);
    }
    base.text = trimmed(start, pos_);
    return base;
  }

  std::string trimmed(std::size_t a, std::size_t b) const {
    std::string out;
    for (std::size_t i = a; i < b; ++i) {
      if (!std::isspace(static_cast<unsigned char>(text_[i]))) out.push_back(text_[i]);
    }
    return out;
  }

  Arg parse_arg() {
    Arg arg;
    skip_ws();
    const std::size_t save = pos_;
    if (at_digit()) {
      const long long v = parse_int();
      skip_ws();
      const bool letter_follows = pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]));
      if (!letter_follows) {
        arg.integer = v;
        return arg;
      }
      pos_ = save;
    } else {
      const std::string ident = parse_ident();
      if (peek('=')) {
        ++pos_;
        arg.key = ident;
        arg.integer = parse_int();
        return arg;
      }
      pos_ = save;
    }
    arg.spec = parse_spec();
    if (peek('*')) {
      ++pos_;
      const long long r = parse_int();
      if (r < 1 || r > 100000) fail("repeat count out of range");
      arg.repeat = static_cast<int>(r);
    }
    return arg;
  }

  std::vector<Arg> parse_args() {
    std::vector<Arg> args;
    if (!peek('(')) return args;
    ++pos_;
    if (peek(')')) {
      ++pos_;
      return args;
    }
    args.push_back(parse_arg());
    while (peek(',')) {
      ++pos_;
      args.push_back(parse_arg());
    }
    expect(')');
    return args;
  }

  FamilySpec parse_named() {
    std::string name = parse_ident();
    std::optional<long long> shorthand;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      shorthand = parse_int();
    }
    const auto args = parse_args();

    FamilySpec spec;
    auto int_param = [&](std::size_t position, const char* key) -> std::optional<long long> {
      std::size_t seen_positional = 0;
      for (const auto& a : args) {
        if (a.key && *a.key == key) return a.integer;
        if (!a.key && a.integer) {
          if (seen_positional == position) return a.integer;
          ++seen_positional;
        }
      }
      return std::nullopt;
    };
    auto size_param = [&]() -> int {
      auto v = shorthand ? shorthand : int_param(0, "n");
      if (!v) fail("'" + name + "' needs a vertex count");
      if (*v < 1 || *v > 100000) fail("vertex count out of range");
      return static_cast<int>(*v);
    };
    auto spec_args = [&]() {
      std::vector<FamilySpec> parts;
      for (const auto& a : args) {
        if (!a.spec) continue;
        for (int r = 0; r < a.repeat; ++r) parts.push_back(*a.spec);
      }
      return parts;
    };

    if (name == "k" || name == "complete") {
      spec.kind = FamilySpec::Kind::complete;
      spec.n = size_param();
    } else if (name == "c" || name == "cycle") {
      spec.kind = FamilySpec::Kind::cycle;
      spec.n = size_param();
    } else if (name == "p" || name == "path") {
      spec.kind = FamilySpec::Kind::path;
      spec.n = size_param();
    } else if (name == "e" || name == "edgeless") {
      spec.kind = FamilySpec::Kind::edgeless;
      spec.n = size_param();
    } else if (name == "petersen") {
      spec.kind = FamilySpec::Kind::petersen;
      spec.n = 10;
    } else if (name == "rr" || name == "random_regular") {
      spec.kind = FamilySpec::Kind::random_regular;
      auto n = int_param(0, "n");
      auto d = int_param(1, "d");
      auto seed = int_param(2, "seed");
      if (!n || !d) fail("rr needs n and d");
      if (*n < 1 || *n > 100000 || *d < 0) fail("rr parameters out of range");
      spec.n = static_cast<int>(*n);
      spec.d = static_cast<int>(*d);
      spec.seed = seed ? static_cast<std::uint64_t>(*seed) : 0;
    } else if (name == "apex") {
      spec.kind = FamilySpec::Kind::apex;
      spec.parts = spec_args();
      if (spec.parts.size() != 1) fail("apex takes exactly one graph");
    } else if (name == "union") {
      spec.kind = FamilySpec::Kind::disjoint_union;
      spec.parts = spec_args();
      if (spec.parts.empty()) fail("union needs at least one graph");
    } else if (name == "chain") {
      spec.kind = FamilySpec::Kind::chain;
      spec.parts = spec_args();
      if (spec.parts.empty()) fail("chain needs at least one graph");
      if (auto a = int_param(99, "anchors")) spec.anchor_seed = static_cast<std::uint64_t>(*a);
    } else {
      fail("unknown family '" + name + "'");
    }
    if (shorthand && !(name == "k" || name == "c" || name == "p" || name == "e")) {
      fail("shorthand size only applies to k, c, p, e");
    }
    return spec;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

FamilySpec parse_family(std::string_view text) { return Parser(text).parse_all(); }

ChainGraph generate_with_blocks(const FamilySpec& spec) {
  if (spec.kind == FamilySpec::Kind::chain) {
    std::vector<Graph> hs;
    for (const auto& part : spec.parts) hs.push_back(generate(part));
    const auto anchors = spec.anchor_seed ? random_anchors(hs, *spec.anchor_seed) : std::vector<ChainAnchor>{};
    return chain(hs, anchors);
  }
  ChainGraph out;
  out.graph = generate(spec);
  out.blocks.push_back(VertexSet::full(out.graph.n()));
  return out;
}

Graph generate(const FamilySpec& spec) {
  using Kind = FamilySpec::Kind;
  switch (spec.kind) {
  case Kind::cycle: return cycle_graph(spec.n);
  case Kind::path: return path_graph(spec.n);
  case Kind::complete: return complete_graph(spec.n);
  case Kind::edgeless: return edgeless_graph(spec.n);
  case Kind::petersen: return petersen_graph();
  case Kind::random_regular: return random_regular(spec.n, spec.d, spec.seed);
  case Kind::apex:
    require(spec.parts.size() == 1, "apex takes exactly one graph");
    return apex(generate(spec.parts.front()));
  case Kind::disjoint_union: {
    std::vector<Graph> parts;
    for (const auto& p : spec.parts) parts.push_back(generate(p));
    return disjoint_union(parts);
  }
  case Kind::chain: return generate_with_blocks(spec).graph;
  }
  throw Error(ErrorKind::invalid_parameter, "unknown family kind");
}

} // namespace mwc
