#include "moddenoise/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "moddenoise/errors.hpp"

namespace moddenoise {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::connectivity: return "connectivity";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::range: return "range";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "unknown";
}

std::string_view to_string(GraphFamily family) noexcept {
  switch (family) {
    case GraphFamily::path: return "path";
    case GraphFamily::complete: return "complete";
    case GraphFamily::star: return "star";
    case GraphFamily::custom: return "custom";
  }
  return "custom";
}

GraphFamily parse_graph_family(std::string_view name) {
  if (name == "path") return GraphFamily::path;
  if (name == "complete") return GraphFamily::complete;
  if (name == "star") return GraphFamily::star;
  if (name == "custom") return GraphFamily::custom;
  throw Error(ErrorKind::validation, "unknown graph family '" + std::string(name) + "'");
}

Graph Graph::make(GraphFamily family, int n) {
  if (n < 2) {
    throw Error(ErrorKind::validation,
                "invalid graph size n=" + std::to_string(n) + " (need n >= 2)");
  }
  std::vector<Edge> edges;
  switch (family) {
    case GraphFamily::path:
      edges.reserve(n - 1);
      for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
      break;
    case GraphFamily::complete:
      edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) edges.push_back({i, j});
      break;
    case GraphFamily::star:
      edges.reserve(n - 1);
      for (int j = 2; j <= n; ++j) edges.push_back({1, j});
      break;
    case GraphFamily::custom:
      throw Error(ErrorKind::unsupported, "custom graphs need an explicit edge list");
  }
  return Graph(n, std::move(edges), family);
}

Graph Graph::custom(int n, std::vector<Edge> edges) {
  if (n < 2) {
    throw Error(ErrorKind::validation,
                "invalid graph size n=" + std::to_string(n) + " (need n >= 2)");
  }
  std::set<Edge> seen;
  for (auto& e : edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
      throw Error(ErrorKind::validation, "edge {" + std::to_string(e.u) + "," +
                                             std::to_string(e.v) + "} has a vertex outside 1.." +
                                             std::to_string(n));
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::validation, "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(e).second) {
      throw Error(ErrorKind::validation, "duplicate edge {" + std::to_string(e.u) + "," +
                                             std::to_string(e.v) + "}");
    }
  }
  return Graph(n, std::move(edges), GraphFamily::custom);
}

Graph::Graph(int n, std::vector<Edge> edges, GraphFamily family)
    : n_(n), edges_(std::move(edges)), degrees_(n, 0), family_(family) {
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& e : edges_) {
    ++degrees_[e.u - 1];
    ++degrees_[e.v - 1];
    adjacency[e.u - 1].push_back(e.v - 1);
    adjacency[e.v - 1].push_back(e.u - 1);
  }
  max_degree_ = n > 0 ? *std::max_element(degrees_.begin(), degrees_.end()) : 0;

  // Label components by BFS; report one representative vertex per component.
  std::vector<int> component(n, -1);
  std::vector<int> representatives;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    const int label = static_cast<int>(representatives.size());
    representatives.push_back(start + 1);
    std::queue<int> frontier;
    frontier.push(start);
    component[start] = label;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : adjacency[v]) {
        if (component[w] < 0) {
          component[w] = label;
          frontier.push(w);
        }
      }
    }
  }
  if (representatives.size() > 1) {
    std::ostringstream msg;
    msg << "graph not connected: " << representatives.size()
        << " components, e.g. vertices";
    for (std::size_t c = 0; c < representatives.size() && c < 8; ++c) {
      msg << (c == 0 ? " " : ", ") << representatives[c];
    }
    if (representatives.size() > 8) msg << ", ...";
    msg << " lie in different components";
    throw Error(ErrorKind::connectivity, msg.str());
  }
}

Eigen::MatrixXd Graph::laplacian() const {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& e : edges_) {
    const int i = e.u - 1;
    const int j = e.v - 1;
    lap(i, i) += 1.0;
    lap(j, j) += 1.0;
    lap(i, j) -= 1.0;
    lap(j, i) -= 1.0;
  }
  return lap;
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<int> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      int value = 0;
      if (!(fields >> value)) {
        throw Error(ErrorKind::validation,
                    "edge list line " + std::to_string(line_no) + ": expected vertex count");
      }
      n = value;
      continue;
    }
    Edge e;
    std::string rest;
    if (!(fields >> e.u >> e.v) || (fields >> rest)) {
      throw Error(ErrorKind::validation,
                  "edge list line " + std::to_string(line_no) + ": expected 'i j'");
    }
    edges.push_back(e);
  }
  if (!n) throw Error(ErrorKind::validation, "edge list is empty");
  return Graph::custom(*n, std::move(edges));
}

Graph read_edge_list(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::validation, "cannot open edge list '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_edge_list(buffer.str());
}

}  // namespace moddenoise
