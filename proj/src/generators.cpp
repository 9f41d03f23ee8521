#include "interpolse/generators.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "interpolse/errors.hpp"

namespace interpolse::gen {

namespace {

void validate(const AdjMatrix& m) {
  if (m.n < 2) throw InvalidMatrix("need at least 2 nodes");
  for (int i = 1; i < m.n; ++i) {
    bool any = false;
    for (int j = i + 1; j <= m.n; ++j) {
      auto w = m.edge(i, j);
      if (!w) continue;
      if (*w <= 0) throw InvalidMatrix("edge weights must be positive");
      any = true;
    }
    if (!any)
      throw InvalidMatrix("node " + std::to_string(i) + " has no outgoing edge");
  }
}

}  // namespace

AdjMatrix parse_matrix(int n, const std::string& text) {
  AdjMatrix m;
  m.n = n;
  m.w.assign(static_cast<std::size_t>(n) + 1,
             std::vector<std::optional<long long>>(static_cast<std::size_t>(n) + 1));
  std::stringstream rows(text);
  std::string row;
  int i = 0;
  while (std::getline(rows, row, ';')) {
    ++i;
    if (i >= n) throw InvalidMatrix("too many rows");
    std::stringstream cells(row);
    std::string cell;
    int j = i;
    while (std::getline(cells, cell, ',')) {
      ++j;
      if (j > n) throw InvalidMatrix("too many entries in row " + std::to_string(i));
      cell.erase(std::remove(cell.begin(), cell.end(), ' '), cell.end());
      if (cell.empty() || cell == "-" || cell == "x") continue;
      try {
        m.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::stoll(cell);
      } catch (const std::exception&) {
        throw InvalidMatrix("bad weight '" + cell + "'");
      }
    }
    if (j != n) throw InvalidMatrix("row " + std::to_string(i) + " has too few entries");
  }
  if (i != n - 1) throw InvalidMatrix("expected " + std::to_string(n - 1) + " rows");
  validate(m);
  return m;
}

AdjMatrix layered_random(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidMatrix("need at least 2 nodes");
  AdjMatrix m;
  m.n = n;
  m.w.assign(static_cast<std::size_t>(n) + 1,
             std::vector<std::optional<long long>>(static_cast<std::size_t>(n) + 1));
  std::mt19937_64 rng(seed);
  auto weight = [&]() { return static_cast<long long>(10 + rng() % 90); };
  for (int i = 1; i < n; ++i) {
    m.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) + 1] = weight();
    for (int j = i + 2; j <= n; ++j)
      if (rng() % 2 == 0) m.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = weight();
  }
  validate(m);
  return m;
}

AdjMatrix example_matrix() { return parse_matrix(4, "20,35,110;40,90;60"); }

std::string gen_shortest_path(const AdjMatrix& m, std::optional<long long> bound) {
  validate(m);
  int n = m.n;
  std::ostringstream os;
  os << "// shortest-path walk over a " << n << "-node DAG\n";
  for (int i = 1; i < n; ++i) {
    std::vector<int> succ;
    for (int j = i + 1; j <= n; ++j)
      if (m.edge(i, j)) succ.push_back(j);
    if (succ.size() > 1)
      os << "sym c" << i << " in [" << succ.front() << ", " << succ.back() << "];\n";
  }
  os << "var node = 1;\n";
  os << "var d = 0;\n";
  for (int i = 1; i < n; ++i) {
    std::vector<int> succ;
    for (int j = i + 1; j <= n; ++j)
      if (m.edge(i, j)) succ.push_back(j);
    os << "if (node == " << i << ") {\n";
    std::string indent = "  ";
    for (std::size_t k = 0; k + 1 < succ.size(); ++k) {
      os << indent << "if (c" << i << " == " << succ[k] << ") {\n";
      os << indent << "  d = d + " << *m.edge(i, succ[k]) << ";\n";
      os << indent << "  node = " << succ[k] << ";\n";
      os << indent << "} else {\n";
      indent += "  ";
    }
    os << indent << "d = d + " << *m.edge(i, succ.back()) << ";\n";
    os << indent << "node = " << succ.back() << ";\n";
    for (std::size_t k = succ.size(); k-- > 1;) {
      indent.resize(indent.size() - 2);
      os << indent << "}\n";
    }
    os << "}\n";
  }
  os << "assert(d >= " << (bound ? std::to_string(*bound) : std::string("BOUND")) << ");\n";
  os << "halt;\n";
  return os.str();
}

std::string gen_bitsum(int n) {
  if (n < 1) throw InvalidMatrix("bit count must be positive");
  std::ostringstream os;
  os << "// bit-vector sum, " << n << " independent sign choices\n";
  for (int i = 1; i <= n; ++i) os << "sym b" << i << " in [0, 1];\n";
  for (int i = 1; i <= n; ++i) os << "var k" << i << " = 0;\n";
  for (int i = 1; i <= n; ++i)
    os << "if (b" << i << " == 1) { k" << i << " = 1; } else { k" << i << " = -1; }\n";
  std::ostringstream sum;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) sum << " + ";
    sum << "k" << i;
  }
  os << "assert(" << sum.str() << " >= -" << n << ");\n";
  os << "assert(" << sum.str() << " <= " << n << ");\n";
  os << "halt;\n";
  return os.str();
}

long long count_monotone_paths(const AdjMatrix& m) {
  std::vector<long long> paths(static_cast<std::size_t>(m.n) + 1, 0);
  paths[static_cast<std::size_t>(m.n)] = 1;
  for (int i = m.n - 1; i >= 1; --i)
    for (int j = i + 1; j <= m.n; ++j)
      if (m.edge(i, j)) paths[static_cast<std::size_t>(i)] += paths[static_cast<std::size_t>(j)];
  return paths[1];
}

std::optional<long long> shortest_distance(const AdjMatrix& m) {
  const long long inf = -1;
  std::vector<long long> dist(static_cast<std::size_t>(m.n) + 1, inf);
  dist[static_cast<std::size_t>(m.n)] = 0;
  for (int i = m.n - 1; i >= 1; --i) {
    for (int j = i + 1; j <= m.n; ++j) {
      auto w = m.edge(i, j);
      if (!w || dist[static_cast<std::size_t>(j)] == inf) continue;
      long long d = *w + dist[static_cast<std::size_t>(j)];
      if (dist[static_cast<std::size_t>(i)] == inf || d < dist[static_cast<std::size_t>(i)])
        dist[static_cast<std::size_t>(i)] = d;
    }
  }
  if (dist[1] == inf) return std::nullopt;
  return dist[1];
}

}  // namespace interpolse::gen
