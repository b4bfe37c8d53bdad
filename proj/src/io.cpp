#include "switchgraph/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "switchgraph/error.hpp"

namespace switchgraph::io {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

bool blank_or_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

DegreeSequence read_degree_sequence(std::istream& in) {
  std::vector<int> degrees;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ls(line);
    long long d = 0;
    std::string trailing;
    if (!(ls >> d) || (ls >> trailing) || d < 1 || d > 1'000'000'000) {
      throw FormatError("degree file line " + std::to_string(line_no) + ": expected one positive integer");
    }
    degrees.push_back(static_cast<int>(d));
  }
  return DegreeSequence(std::move(degrees));
}

DegreeSequence read_degree_sequence(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_degree_sequence(in);
}

void write_degree_sequence(std::ostream& out, const DegreeSequence& seq) {
  for (int d : seq) out << d << '\n';
}

void write_degree_sequence(const std::filesystem::path& path, const DegreeSequence& seq) {
  auto out = open_out(path);
  write_degree_sequence(out, seq);
}

SimpleGraph read_edge_list(std::istream& in, std::optional<std::size_t> n) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  Vertex max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ls(line);
    long long a = -1, b = -1;
    std::string trailing;
    if (!(ls >> a >> b) || (ls >> trailing) || a < 0 || b < 0 || a > 0xFFFFFFFELL || b > 0xFFFFFFFELL) {
      throw FormatError("edge list line " + std::to_string(line_no) + ": expected two vertex ids");
    }
    edges.push_back(Edge{static_cast<Vertex>(a), static_cast<Vertex>(b)});
    max_id = std::max({max_id, edges.back().u, edges.back().v});
  }
  const std::size_t vertices = n.value_or(edges.empty() ? 0 : std::size_t{max_id} + 1);
  return SimpleGraph::from_edges(vertices, edges);
}

SimpleGraph read_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n) {
  auto in = open_in(path);
  return read_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  for (const Edge& e : g.sorted_edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const SimpleGraph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

TriangleHistogram read_histogram_csv(std::istream& in) {
  TriangleHistogram h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line) || line.rfind("value", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long value = 0;
    long long count = -1;
    if (!(ls >> value >> count) || count < 0) {
      throw FormatError("histogram line " + std::to_string(line_no) + ": expected value,count");
    }
    h.add(value, static_cast<std::uint64_t>(count));
  }
  return h;
}

TriangleHistogram read_histogram_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_histogram_csv(in);
}

void write_histogram_csv(std::ostream& out, const TriangleHistogram& h) {
  out << "value,count\n";
  for (auto [value, count] : h.counts()) out << value << ',' << count << '\n';
}

void write_histogram_csv(const std::filesystem::path& path, const TriangleHistogram& h) {
  auto out = open_out(path);
  write_histogram_csv(out, h);
}

nlohmann::json to_json(const FitResult& fit) {
  return {{"a", fit.a}, {"b", fit.b}, {"rss", fit.rss}, {"stderr_a", fit.stderr_a}};
}

FitResult fit_from_json(const nlohmann::json& j) {
  try {
    return FitResult{j.at("a").get<double>(), j.at("b").get<double>(), j.at("rss").get<double>(),
                     j.at("stderr_a").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("fit JSON: ") + e.what());
  }
}

}  // namespace switchgraph::io
