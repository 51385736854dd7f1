#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperpin/csv.hpp"
#include "hyperpin/errors.hpp"
#include "hyperpin/hypergraph.hpp"

namespace hyperpin {

namespace {

struct ParsedList {
  std::vector<NodeId> ids;
  std::vector<double> weights;
  bool has_weights = false;
};

double parse_number(const std::string& text, int line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
}

NodeId parse_id(const std::string& text, int line_no) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used == text.size()) return static_cast<NodeId>(v);
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line_no) + ": bad node id '" + text + "'");
}

ParsedList parse_list(const std::string& token, int line_no) {
  ParsedList list;
  if (token == "-") return list;
  std::stringstream items(token);
  std::string item;
  int with = 0, without = 0;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      list.ids.push_back(parse_id(item, line_no));
      ++without;
    } else {
      list.ids.push_back(parse_id(item.substr(0, colon), line_no));
      list.weights.push_back(parse_number(item.substr(colon + 1), line_no));
      ++with;
    }
  }
  if (with && without) {
    throw ParseError("line " + std::to_string(line_no) + ": mixed weighted and unweighted entries");
  }
  list.has_weights = with > 0;
  return list;
}

void write_list(std::ostream& out, const std::vector<NodeId>& ids, const std::vector<double>& w) {
  if (ids.empty()) {
    out << '-';
    return;
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (k) out << ',';
    out << ids[k] << ':' << format_double(w[k]);
  }
}

}  // namespace

DirectedHypergraph read_hypergraph(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n_nodes = -1;
  bool multi = false;
  std::vector<DirectedHyperedge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (tok[0] == "N") {
      if (n_nodes >= 0) throw ParseError("line " + std::to_string(line_no) + ": duplicate N header");
      if (tok.size() < 2 || tok.size() > 3) throw ParseError("line " + std::to_string(line_no) + ": expected 'N <n> [multi]'");
      n_nodes = parse_id(tok[1], line_no);
      if (tok.size() == 3) {
        if (tok[2] != "multi") throw ParseError("line " + std::to_string(line_no) + ": unknown flag '" + tok[2] + "'");
        multi = true;
      }
      continue;
    }
    if (tok[0] != "E") throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + tok[0] + "'");
    if (n_nodes < 0) throw ParseError("line " + std::to_string(line_no) + ": hyperedge before N header");
    const bool hom = tok.size() == 7 && tok[6] == "hom";
    if (!(tok.size() == 6 || hom) || tok[1].rfind("sigma=", 0) != 0 || tok[2] != "T" || tok[4] != "H") {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'E sigma=<s> T <list> H <list> [hom]'");
    }
    DirectedHyperedge e;
    e.sigma = parse_number(tok[1].substr(6), line_no);
    auto tails = parse_list(tok[3], line_no);
    auto heads = parse_list(tok[5], line_no);
    e.tails = tails.ids;
    e.heads = heads.ids;
    if (hom) {
      if (tails.has_weights || heads.has_weights) {
        throw ParseError("line " + std::to_string(line_no) + ": 'hom' edges must not list weights");
      }
      e = homogeneous_weights(std::move(e));
    } else {
      if ((!tails.ids.empty() && !tails.has_weights) || (!heads.ids.empty() && !heads.has_weights)) {
        throw ParseError("line " + std::to_string(line_no) + ": weights missing (use 'hom' for homogeneous)");
      }
      e.alpha = tails.weights;
      e.beta = heads.weights;
    }
    edges.push_back(std::move(e));
  }
  if (n_nodes < 0) throw ParseError("missing N header");
  return DirectedHypergraph::build(n_nodes, std::move(edges), multi);
}

DirectedHypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open hypergraph file '" + path + "'");
  return read_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const DirectedHypergraph& graph) {
  out << "N " << graph.size();
  if (graph.allows_multi_edges()) out << " multi";
  out << '\n';
  for (const auto& e : graph.edges()) {
    out << "E sigma=" << format_double(e.sigma) << " T ";
    write_list(out, e.tails, e.alpha);
    out << " H ";
    write_list(out, e.heads, e.beta);
    out << '\n';
  }
}

}  // namespace hyperpin
