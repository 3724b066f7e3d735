#include "timm/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "timm/errors.hpp"

namespace timm {

namespace {

[[noreturn]] void fail_at(int line, int column, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                   ": " + what);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  return out;
}

std::vector<long> parse_ints(const std::string& text, int line) {
  std::istringstream ss(text);
  std::vector<long> out;
  long v;
  while (ss >> v) out.push_back(v);
  std::string rest;
  if (ss.clear(), ss >> rest) fail_line(line, "unexpected token '" + rest + "'");
  return out;
}

}  // namespace

Tournament read_tournament(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail_line(1, "missing vertex count");
  long n;
  {
    std::istringstream ss(header);
    std::string rest;
    if (!(ss >> n) || (ss >> rest)) fail_line(1, "vertex count must be a single integer");
  }
  if (n < 0) fail_line(1, "vertex count must be non-negative");

  std::vector<std::string> rows(static_cast<std::size_t>(n));
  for (long u = 0; u < n; ++u) {
    int line = static_cast<int>(u) + 2;
    if (!std::getline(in, rows[static_cast<std::size_t>(u)]))
      fail_line(line, "missing matrix row");
    const std::string& row = rows[static_cast<std::size_t>(u)];
    if (static_cast<long>(row.size()) != n)
      fail_line(line, "row has " + std::to_string(row.size()) + " columns, expected " +
                          std::to_string(n));
    for (long v = 0; v < n; ++v) {
      char c = row[static_cast<std::size_t>(v)];
      if (c != '0' && c != '1')
        fail_at(line, static_cast<int>(v) + 1, std::string("invalid character '") + c + "'");
      if (u == v && c != '0') fail_at(line, static_cast<int>(v) + 1, "self loop");
    }
  }
  for (long u = 0; u < n; ++u)
    for (long v = u + 1; v < n; ++v) {
      bool uv = rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == '1';
      bool vu = rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] == '1';
      if (uv == vu)
        fail_at(static_cast<int>(u) + 2, static_cast<int>(v) + 1,
                uv ? "pair oriented in both directions" : "pair left unoriented");
    }
  return Tournament::build(static_cast<int>(n), [&](int u, int v) {
    return rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] == '1';
  });
}

void write_tournament(std::ostream& out, const Tournament& t) {
  int n = t.size();
  out << n << '\n';
  for (int u = 0; u < n; ++u) {
    std::string row(static_cast<std::size_t>(n), '0');
    for (int v = 0; v < n; ++v)
      if (t.edge(u, v)) row[static_cast<std::size_t>(v)] = '1';
    out << row << '\n';
  }
}

Tournament read_tournament_file(const std::string& path) {
  auto in = open_input(path);
  return read_tournament(in);
}

void write_tournament_file(const std::string& path, const Tournament& t) {
  auto out = open_output(path);
  write_tournament(out, t);
}

Immersion read_certificate(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail_line(1, "missing certificate header");
  Immersion im;
  long k;
  {
    std::istringstream ss(line);
    std::string tag, rest;
    if (!(ss >> tag >> k) || (ss >> rest)) fail_line(1, "expected '<tag> <k>'");
    if (tag == "tt")
      im.pattern = PatternKind::transitive_tournament;
    else if (tag == "kd")
      im.pattern = PatternKind::complete_digraph;
    else
      fail_line(1, "unknown pattern tag '" + tag + "'");
    if (k < 1) fail_line(1, "k must be positive");
    im.k = static_cast<int>(k);
  }
  if (!std::getline(in, line)) fail_line(2, "missing branch list");
  {
    std::vector<long> ids = parse_ints(line, 2);
    if (static_cast<long>(ids.size()) != k)
      fail_line(2, "expected " + std::to_string(k) + " branch vertices, got " +
                       std::to_string(ids.size()));
    for (long v : ids) {
      if (v < 0) fail_line(2, "negative vertex id");
      im.branches.push_back(static_cast<int>(v));
    }
  }
  int lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail_line(lineno, "missing ':' separator");
    std::vector<long> head = parse_ints(line.substr(0, colon), lineno);
    std::vector<long> tail = parse_ints(line.substr(colon + 1), lineno);
    if (head.size() != 2) fail_line(lineno, "expected 'u w' before ':'");
    if (tail.size() < 2) fail_line(lineno, "path needs at least two vertices");
    for (long v : head)
      if (v < 0) fail_line(lineno, "negative vertex id");
    for (long v : tail)
      if (v < 0) fail_line(lineno, "negative vertex id");
    if (tail.front() != head[0] || tail.back() != head[1])
      fail_line(lineno, "path endpoints disagree with the pair");
    std::pair<int, int> key{static_cast<int>(head[0]), static_cast<int>(head[1])};
    if (im.paths.count(key)) fail_line(lineno, "duplicate pair");
    std::vector<int> path;
    for (long v : tail) path.push_back(static_cast<int>(v));
    im.paths.emplace(key, std::move(path));
  }
  return im;
}

void write_certificate(std::ostream& out, const Immersion& im) {
  out << (im.pattern == PatternKind::transitive_tournament ? "tt" : "kd") << ' ' << im.k
      << '\n';
  for (std::size_t i = 0; i < im.branches.size(); ++i)
    out << im.branches[i] << (i + 1 < im.branches.size() ? ' ' : '\n');
  if (im.branches.empty()) out << '\n';
  auto emit = [&](const std::pair<int, int>& key, const std::vector<int>& path) {
    out << key.first << ' ' << key.second << " :";
    for (int v : path) out << ' ' << v;
    out << '\n';
  };
  // Pattern order first, then anything else a hand-written file may hold.
  auto pairs = required_pairs(im.pattern, im.branches);
  std::map<std::pair<int, int>, std::vector<int>> rest = im.paths;
  for (const auto& key : pairs) {
    auto it = rest.find(key);
    if (it != rest.end()) {
      emit(key, it->second);
      rest.erase(it);
    }
  }
  for (const auto& [key, path] : rest) emit(key, path);
}

Immersion read_certificate_file(const std::string& path) {
  auto in = open_input(path);
  return read_certificate(in);
}

void write_certificate_file(const std::string& path, const Immersion& im) {
  auto out = open_output(path);
  write_certificate(out, im);
}

}  // namespace timm
