#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace euler_entropy {

enum class GeneratorKind { cycle, complete, hypercube, torus, circulant, random_regular, product };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::cycle;
  std::vector<std::int64_t> parameters;
  std::optional<std::uint64_t> seed;   // random_regular only
  std::vector<GeneratorSpec> factors;  // product only
};

struct GeneratorOptions {
  // Pairing-model attempts before random_regular gives up.
  std::uint64_t max_attempts = 100000;
};

namespace detail {

inline std::vector<std::int64_t> parse_int_list(std::string_view text, char sep,
                                                std::string_view context) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(sep, pos), text.size());
    const std::string item(text.substr(pos, end - pos));
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw InputError("generator '" + std::string(context) + "': bad integer '" + item + "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_top_level(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth < 0) throw InputError("generator: unbalanced parentheses");
    if (text[i] == sep && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw InputError("generator: unbalanced parentheses");
  parts.push_back(text.substr(start));
  return parts;
}

}  // namespace detail

// Parses the generator DSL: "cycle:5", "complete:5", "hypercube:4",
// "torus:3x3x3", "circulant:11:1,2", "rr:20:4:seed" (seed optional),
// "product:(cycle:5),(cycle:5)".
inline GeneratorSpec parse_generator(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("generator '" + std::string(text) + "': expected kind:parameters");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  GeneratorSpec spec;
  if (kind == "cycle" || kind == "complete" || kind == "hypercube") {
    spec.kind = kind == "cycle"      ? GeneratorKind::cycle
                : kind == "complete" ? GeneratorKind::complete
                                     : GeneratorKind::hypercube;
    spec.parameters = detail::parse_int_list(rest, ',', text);
    if (spec.parameters.size() != 1) throw InputError("generator '" + std::string(text) + "': one parameter expected");
  } else if (kind == "torus") {
    spec.kind = GeneratorKind::torus;
    spec.parameters = detail::parse_int_list(rest, 'x', text);
  } else if (kind == "circulant") {
    spec.kind = GeneratorKind::circulant;
    const auto parts = detail::split_top_level(rest, ':');
    if (parts.size() != 2) throw InputError("generator '" + std::string(text) + "': circulant:n:o1,o2,...");
    spec.parameters = detail::parse_int_list(parts[0], ',', text);
    auto offsets = detail::parse_int_list(parts[1], ',', text);
    spec.parameters.insert(spec.parameters.end(), offsets.begin(), offsets.end());
  } else if (kind == "rr") {
    spec.kind = GeneratorKind::random_regular;
    auto values = detail::parse_int_list(rest, ':', text);
    if (values.size() != 2 && values.size() != 3) {
      throw InputError("generator '" + std::string(text) + "': rr:n:d[:seed]");
    }
    if (values.size() == 3) {
      if (values[2] < 0) throw InputError("generator '" + std::string(text) + "': negative seed");
      spec.seed = static_cast<std::uint64_t>(values[2]);
      values.pop_back();
    }
    spec.parameters = values;
  } else if (kind == "product") {
    spec.kind = GeneratorKind::product;
    for (auto part : detail::split_top_level(rest, ',')) {
      if (part.size() < 2 || part.front() != '(' || part.back() != ')') {
        throw InputError("generator '" + std::string(text) + "': product factors must be parenthesised");
      }
      spec.factors.push_back(parse_generator(part.substr(1, part.size() - 2)));
    }
    if (spec.factors.size() < 2) throw InputError("generator '" + std::string(text) + "': product needs two or more factors");
  } else {
    throw InputError("unknown generator kind '" + std::string(kind) + "'");
  }
  return spec;
}

inline MultiGraph make_cycle(int n) {
  if (n < 3) throw InputError("cycle length must be at least 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return MultiGraph::from_edges(n, edges);
}

inline MultiGraph make_complete(int n) {
  if (n < 1) throw InputError("complete graph needs at least one vertex");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return MultiGraph::from_edges(n, edges);
}

inline MultiGraph make_hypercube(int dim) {
  if (dim < 1 || dim > 20) throw InputError("hypercube dimension must be in [1, 20]");
  const int n = 1 << dim;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b)
      if (const int w = v ^ (1 << b); v < w) edges.push_back({v, w});
  return MultiGraph::from_edges(n, edges);
}

// Product of cycles C_{s0} x C_{s1} x ...; vertex ids are mixed radix with
// the last side varying fastest.
inline MultiGraph make_torus(std::span<const std::int64_t> sides) {
  if (sides.empty()) throw InputError("torus needs at least one side");
  std::int64_t n = 1;
  for (auto s : sides) {
    if (s < 3) throw InputError("torus sides must be at least 3");
    n *= s;
    if (n > (1 << 24)) throw InputError("torus too large");
  }
  std::vector<std::int64_t> stride(sides.size(), 1);
  for (std::size_t i = sides.size() - 1; i > 0; --i) stride[i - 1] = stride[i] * sides[i];
  std::vector<Edge> edges;
  for (std::int64_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < sides.size(); ++i) {
      const std::int64_t coord = (v / stride[i]) % sides[i];
      const std::int64_t w = v + ((coord + 1) % sides[i] - coord) * stride[i];
      edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>(w)});
    }
  }
  return MultiGraph::from_edges(static_cast<int>(n), edges);
}

inline MultiGraph make_circulant(int n, std::span<const std::int64_t> offsets) {
  if (n < 3) throw InputError("circulant needs n >= 3");
  if (offsets.empty()) throw InputError("circulant needs at least one offset");
  std::set<std::int64_t> seen;
  for (auto s : offsets) {
    if (s < 1 || s > n / 2) throw InputError("circulant offsets must lie in [1, n/2]");
    if (!seen.insert(s).second) throw InputError("circulant offsets must be distinct");
  }
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    for (auto s : offsets) {
      if (2 * s == n && v >= n / 2) continue;  // antipodal chord listed once
      edges.push_back({v, static_cast<VertexId>((v + s) % n)});
    }
  }
  return MultiGraph::from_edges(n, edges);
}

// Uniform simple d-regular graph by the pairing (configuration) model with
// rejection of loops and multi-edges. Attempt i draws from stream i of the
// seed, so the result is a pure function of (n, d, seed).
inline MultiGraph make_random_regular(int n, int d, std::uint64_t seed,
                                      const GeneratorOptions& options = {}) {
  if (n < 1 || d < 0 || d >= n) throw InputError("random regular graph needs 0 <= d < n");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0) throw InputError("random regular graph needs n*d even");
  std::vector<VertexId> points;
  points.reserve(static_cast<std::size_t>(n) * d);
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::uint64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    StreamRng rng(seed, attempt);
    points.clear();
    for (VertexId v = 0; v < n; ++v) points.insert(points.end(), d, v);
    for (std::size_t i = points.size(); i > 1; --i) {
      std::swap(points[i - 1], points[uniform_below(rng, i)]);
    }
    edges.clear();
    seen.clear();
    bool ok = true;
    for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
      const VertexId u = points[i], v = points[i + 1];
      if (u == v || !seen.insert({std::min(u, v), std::max(u, v)}).second) {
        ok = false;
        break;
      }
      edges.push_back({u, v});
    }
    if (ok) return MultiGraph::from_edges(n, edges);
  }
  throw BudgetExceeded("random regular graph: rejection budget of " +
                       std::to_string(options.max_attempts) +
                       " attempts exhausted; retry with a new seed");
}

inline MultiGraph generate(const GeneratorSpec& spec, const GeneratorOptions& options = {}) {
  auto single = [&](const char* name) {
    if (spec.parameters.size() != 1) throw InputError(std::string(name) + ": one parameter expected");
    const auto p = spec.parameters[0];
    if (p < 0 || p > (1 << 20)) throw InputError(std::string(name) + ": parameter out of range");
    return static_cast<int>(p);
  };
  switch (spec.kind) {
    case GeneratorKind::cycle:
      return make_cycle(single("cycle"));
    case GeneratorKind::complete:
      return make_complete(single("complete"));
    case GeneratorKind::hypercube:
      return make_hypercube(single("hypercube"));
    case GeneratorKind::torus:
      return make_torus(spec.parameters);
    case GeneratorKind::circulant: {
      if (spec.parameters.size() < 2) throw InputError("circulant: n and offsets expected");
      const auto n = spec.parameters[0];
      if (n < 3 || n > (1 << 20)) throw InputError("circulant: n out of range");
      return make_circulant(static_cast<int>(n), std::span(spec.parameters).subspan(1));
    }
    case GeneratorKind::random_regular: {
      if (spec.parameters.size() != 2) throw InputError("rr: n and d expected");
      const auto n = spec.parameters[0], d = spec.parameters[1];
      if (n < 1 || n > (1 << 20) || d < 0 || d >= n) throw InputError("rr: needs 0 <= d < n");
      return make_random_regular(static_cast<int>(n), static_cast<int>(d), spec.seed.value_or(0),
                                 options);
    }
    case GeneratorKind::product: {
      if (spec.factors.empty()) throw InputError("product: no factors");
      MultiGraph g = generate(spec.factors.front(), options);
      for (std::size_t i = 1; i < spec.factors.size(); ++i) {
        g = cartesian_product(g, generate(spec.factors[i], options));
      }
      return g;
    }
  }
  throw InputError("unknown generator kind");
}

inline MultiGraph generate(std::string_view dsl, const GeneratorOptions& options = {}) {
  return generate(parse_generator(dsl), options);
}

}  // namespace euler_entropy
