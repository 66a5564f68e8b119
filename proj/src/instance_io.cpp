#include "otsp/instance_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "otsp/error.hpp"

namespace otsp {

using nlohmann::json;

namespace {

bool is_power_of_ten(std::int64_t s) {
  if (s < 1) return false;
  while (s % 10 == 0) s /= 10;
  return s == 1;
}

Cost scaled_from_double(double v, std::int64_t scale, const std::string& where) {
  double x = v * static_cast<double>(scale);
  double r = std::round(x);
  if (!std::isfinite(x) || std::fabs(x - r) > 1e-9 * std::max(1.0, std::fabs(x))) {
    if (scale == 1) throw ParseError(where + ": non-integer cost without a declared scale");
    throw ParseError(where + ": cost is not a multiple of 1/" + std::to_string(scale));
  }
  if (r < 0) throw ParseError(where + ": negative cost");
  if (r > 9.0e15) throw ParseError(where + ": cost too large");
  return static_cast<Cost>(r);
}

// Exact decimal-string scaling for the text format ("12.5" with scale 10 -> 125).
Cost scaled_from_decimal(const std::string& tok, std::int64_t scale, const std::string& where) {
  std::size_t dot = tok.find('.');
  std::string ip = tok.substr(0, dot), fp = dot == std::string::npos ? "" : tok.substr(dot + 1);
  auto digits = [](const std::string& s) {
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (tok.empty() || (ip.empty() && fp.empty()) || !digits(ip) || !digits(fp)) {
    if (!tok.empty() && tok[0] == '-') throw ParseError(where + ": negative cost '" + tok + "'");
    throw ParseError(where + ": not a number '" + tok + "'");
  }
  while (!fp.empty() && fp.back() == '0') fp.pop_back();
  int places = 0;
  for (std::int64_t s = scale; s > 1; s /= 10) ++places;
  if (static_cast<int>(fp.size()) > places) {
    if (scale == 1) throw ParseError(where + ": non-integer cost '" + tok + "' without a declared scale");
    throw ParseError(where + ": cost '" + tok + "' has more decimals than SCALE allows");
  }
  fp.append(static_cast<std::size_t>(places) - fp.size(), '0');
  std::string all = ip + fp;
  std::size_t nz = all.find_first_not_of('0');
  all = nz == std::string::npos ? "0" : all.substr(nz);
  if (all.size() > 16) throw ParseError(where + ": cost too large");
  return std::stoll(all);
}

std::string format_cost(Cost c, std::int64_t scale) {
  if (scale == 1 || c % scale == 0) return std::to_string(c / scale);
  // shortest round-tripping representation
  return json(static_cast<double>(c) / static_cast<double>(scale)).dump();
}

std::vector<Vertex> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      throw ParseError(where + "[" + std::to_string(i) + "]: expected an integer vertex index");
    auto v = j[i].get<std::int64_t>();
    if (v < 0 || v > std::numeric_limits<int>::max())
      throw ParseError(where + "[" + std::to_string(i) + "]: vertex index out of range");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

void check_order(const std::vector<Vertex>& order, int n, const std::string& where) {
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= n)
      throw ParseError(where + "[" + std::to_string(i) + "]: vertex " + std::to_string(order[i]) +
                       " out of range for n = " + std::to_string(n));
    if (!seen.insert(order[i]).second)
      throw ParseError(where + "[" + std::to_string(i) + "]: duplicate order vertex " +
                       std::to_string(order[i]));
  }
}

void check_chains(const std::vector<std::vector<Vertex>>& chains, int n, const std::string& where) {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t j = 0; j < chains.size(); ++j) {
    std::string w = where + "[" + std::to_string(j) + "]";
    if (chains[j].empty()) throw ParseError(w + ": empty chain");
    for (std::size_t i = 0; i < chains[j].size(); ++i) {
      Vertex v = chains[j][i];
      if (v >= n) throw ParseError(w + "[" + std::to_string(i) + "]: vertex out of range");
      if (owner[v] >= 0)
        throw ParseError(w + "[" + std::to_string(i) + "]: vertex " + std::to_string(v) +
                         " already in chain " + std::to_string(owner[v]) + " (chains must be disjoint)");
      owner[v] = static_cast<int>(j);
    }
  }
}

CostMatrix build_matrix(const std::vector<std::vector<Cost>>& rows, std::int64_t scale) {
  try {
    return CostMatrix(rows, scale);
  } catch (const ParameterError& e) {
    throw ParseError(std::string("costs: ") + e.what());
  }
}

}  // namespace

Instance InstanceDocument::instance(bool apply_closure) const {
  if (!order) throw ParameterError("document has no order constraint");
  return Instance(apply_closure ? metric_closure(costs) : costs, *order);
}

ChainInstance InstanceDocument::chain_instance(bool apply_closure) const {
  CostMatrix c = apply_closure ? metric_closure(costs) : costs;
  if (chains) return ChainInstance(std::move(c), *chains);
  if (order) return ChainInstance(std::move(c), {*order});
  throw ParameterError("document has neither order nor chains");
}

InstanceDocument parse_instance_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON syntax error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected an object");
  std::int64_t scale = 1;
  if (j.contains("scale")) {
    if (!j["scale"].is_number_integer()) throw ParseError("scale: expected an integer");
    scale = j["scale"].get<std::int64_t>();
    if (!is_power_of_ten(scale)) throw ParseError("scale: must be a positive power of ten");
  }
  if (!j.contains("costs")) throw ParseError("costs: missing");
  const json& jc = j["costs"];
  if (!jc.is_array()) throw ParseError("costs: expected an array of rows");
  std::vector<std::vector<Cost>> rows;
  for (std::size_t u = 0; u < jc.size(); ++u) {
    std::string wr = "costs[" + std::to_string(u) + "]";
    if (!jc[u].is_array()) throw ParseError(wr + ": expected an array");
    if (jc[u].size() != jc.size())
      throw ParseError(wr + ": has " + std::to_string(jc[u].size()) + " entries, expected " +
                       std::to_string(jc.size()));
    std::vector<Cost> row;
    for (std::size_t v = 0; v < jc[u].size(); ++v) {
      const json& e = jc[u][v];
      std::string w = wr + "[" + std::to_string(v) + "]";
      if (e.is_number_integer()) {
        auto c = e.get<std::int64_t>();
        if (c < 0) throw ParseError(w + ": negative cost");
        if (c > 9000000000000000LL / scale) throw ParseError(w + ": cost too large");
        row.push_back(c * scale);
      } else if (e.is_number_float()) {
        row.push_back(scaled_from_double(e.get<double>(), scale, w));
      } else {
        throw ParseError(w + ": expected a number");
      }
    }
    rows.push_back(std::move(row));
  }
  InstanceDocument doc{build_matrix(rows, scale), std::nullopt, std::nullopt};
  const int n = doc.costs.size();
  if (j.contains("order") && j.contains("chains")) throw ParseError("top level: both order and chains given");
  if (j.contains("order")) {
    doc.order = int_list(j["order"], "order");
    check_order(*doc.order, n, "order");
  } else if (j.contains("chains")) {
    const json& jch = j["chains"];
    if (!jch.is_array()) throw ParseError("chains: expected an array of arrays");
    std::vector<std::vector<Vertex>> chains;
    for (std::size_t c = 0; c < jch.size(); ++c)
      chains.push_back(int_list(jch[c], "chains[" + std::to_string(c) + "]"));
    check_chains(chains, n, "chains");
    doc.chains = std::move(chains);
  } else {
    throw ParseError("top level: need an order or chains field");
  }
  return doc;
}

InstanceDocument parse_instance_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int dim = -1;
  std::int64_t scale = 1;
  std::vector<std::vector<Cost>> rows;
  std::optional<std::vector<Vertex>> order;
  std::optional<std::vector<std::vector<Vertex>>> chains;
  bool have_matrix = false;

  auto loc = [&]() { return "line " + std::to_string(lineno); };
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto is_keyword = [](const std::string& s) {
    return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) != 0);
  };
  auto parse_index = [&](const std::string& tok) -> Vertex {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      if (v < -1 || v >= std::max(dim, 0)) throw ParseError(loc() + ": vertex index " + tok + " out of range");
      return static_cast<Vertex>(v);
    } catch (const std::logic_error&) {
      throw ParseError(loc() + ": not an integer '" + tok + "'");
    }
  };

  std::string pending;  // keyword line read ahead by a section
  auto next_line = [&](std::string& out) -> bool {
    if (!pending.empty()) {
      out = pending;
      pending.clear();
      return true;
    }
    while (std::getline(in, out)) {
      ++lineno;
      out = trim(out);
      if (!out.empty()) return true;
    }
    return false;
  };

  while (next_line(line)) {
    std::string key = line, value;
    auto colon = line.find(':');
    if (colon != std::string::npos) {
      key = trim(line.substr(0, colon));
      value = trim(line.substr(colon + 1));
    }
    if (key == "EOF") break;
    if (key == "NAME" || key == "COMMENT" || key == "TYPE") continue;
    if (key == "DIMENSION") {
      try {
        dim = std::stoi(value);
      } catch (const std::logic_error&) {
        throw ParseError(loc() + ": bad DIMENSION '" + value + "'");
      }
      if (dim < 1) throw ParseError(loc() + ": DIMENSION must be positive");
    } else if (key == "SCALE") {
      try {
        scale = std::stoll(value);
      } catch (const std::logic_error&) {
        throw ParseError(loc() + ": bad SCALE '" + value + "'");
      }
      if (!is_power_of_ten(scale)) throw ParseError(loc() + ": SCALE must be a positive power of ten");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value != "EXPLICIT") throw ParseError(loc() + ": only EDGE_WEIGHT_TYPE EXPLICIT is supported");
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      if (value != "FULL_MATRIX") throw ParseError(loc() + ": only FULL_MATRIX is supported");
    } else if (key == "EDGE_WEIGHT_SECTION") {
      if (dim < 0) throw ParseError(loc() + ": EDGE_WEIGHT_SECTION before DIMENSION");
      std::vector<Cost> flat;
      const std::size_t need = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
      while (flat.size() < need) {
        if (!next_line(line)) throw ParseError(loc() + ": EDGE_WEIGHT_SECTION ended early");
        if (is_keyword(line)) throw ParseError(loc() + ": EDGE_WEIGHT_SECTION ended early");
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
          if (flat.size() == need) throw ParseError(loc() + ": too many matrix entries");
          std::size_t idx = flat.size();
          flat.push_back(scaled_from_decimal(
              tok, scale,
              loc() + " (entry " + std::to_string(idx / dim) + "," + std::to_string(idx % dim) + ")"));
        }
      }
      rows.assign(static_cast<std::size_t>(dim), {});
      for (int u = 0; u < dim; ++u)
        rows[u].assign(flat.begin() + static_cast<std::ptrdiff_t>(u) * dim,
                       flat.begin() + static_cast<std::ptrdiff_t>(u + 1) * dim);
      have_matrix = true;
    } else if (key == "ORDER_SECTION") {
      if (dim < 0) throw ParseError(loc() + ": ORDER_SECTION before DIMENSION");
      std::vector<Vertex> ord;
      bool done = false;
      while (!done && next_line(line)) {
        if (is_keyword(line)) {
          pending = line;
          break;
        }
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
          Vertex v = parse_index(tok);
          if (v == -1) {
            done = true;
            break;
          }
          ord.push_back(v);
        }
      }
      std::set<Vertex> seen;
      for (Vertex v : ord)
        if (!seen.insert(v).second)
          throw ParseError("ORDER_SECTION: duplicate order vertex " + std::to_string(v));
      order = std::move(ord);
    } else if (key == "CHAIN_SECTION") {
      if (dim < 0) throw ParseError(loc() + ": CHAIN_SECTION before DIMENSION");
      std::vector<std::vector<Vertex>> chs;
      while (next_line(line)) {
        if (is_keyword(line)) {
          pending = line;
          break;
        }
        std::istringstream ls(line);
        std::string tok;
        std::vector<Vertex> ch;
        bool terminated = false;
        while (ls >> tok) {
          if (terminated) throw ParseError(loc() + ": entries after the -1 terminator");
          Vertex v = parse_index(tok);
          if (v == -1)
            terminated = true;
          else
            ch.push_back(v);
        }
        if (!terminated) throw ParseError(loc() + ": chain line not terminated by -1");
        chs.push_back(std::move(ch));
      }
      try {
        check_chains(chs, dim, "CHAIN_SECTION");
      } catch (const ParseError& e) {
        throw ParseError(e.what());
      }
      chains = std::move(chs);
    } else {
      throw ParseError(loc() + ": unknown keyword '" + key + "'");
    }
  }
  if (!have_matrix) throw ParseError("missing EDGE_WEIGHT_SECTION");
  if (order && chains) throw ParseError("both ORDER_SECTION and CHAIN_SECTION given");
  if (!order && !chains) throw ParseError("need ORDER_SECTION or CHAIN_SECTION");
  return InstanceDocument{build_matrix(rows, scale), std::move(order), std::move(chains)};
}

InstanceDocument parse_instance(std::string_view text) {
  auto p = text.find_first_not_of(" \t\r\n");
  if (p != std::string_view::npos && text[p] == '{') return parse_instance_json(text);
  return parse_instance_text(text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << contents;
}

InstanceDocument load_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string to_json(const InstanceDocument& doc) {
  std::ostringstream o;
  const int n = doc.costs.size();
  o << "{\n  \"scale\": " << doc.costs.scale() << ",\n  \"costs\": [";
  for (int u = 0; u < n; ++u) {
    o << (u ? ",\n    [" : "\n    [");
    for (int v = 0; v < n; ++v) o << (v ? ", " : "") << format_cost(doc.costs(u, v), doc.costs.scale());
    o << "]";
  }
  o << "\n  ],\n";
  auto list = [&](const std::vector<Vertex>& xs) {
    o << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) o << (i ? ", " : "") << xs[i];
    o << "]";
  };
  if (doc.chains) {
    o << "  \"chains\": [";
    for (std::size_t j = 0; j < doc.chains->size(); ++j) {
      o << (j ? ", " : "");
      list((*doc.chains)[j]);
    }
    o << "]\n";
  } else {
    o << "  \"order\": ";
    list(doc.order.value_or(std::vector<Vertex>{}));
    o << "\n";
  }
  o << "}\n";
  return o.str();
}

std::string to_text(const InstanceDocument& doc) {
  std::ostringstream o;
  const int n = doc.costs.size();
  o << "TYPE: " << (doc.chains ? "TSPPC" : "OTSP") << "\n";
  o << "DIMENSION: " << n << "\n";
  if (doc.costs.scale() != 1) o << "SCALE: " << doc.costs.scale() << "\n";
  o << "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
  auto dec = [&](Cost c) {
    std::int64_t s = doc.costs.scale();
    if (s == 1) return std::to_string(c);
    int places = 0;
    for (std::int64_t t = s; t > 1; t /= 10) ++places;
    std::string frac = std::to_string(c % s);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    return std::to_string(c / s) + "." + frac;
  };
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) o << (v ? " " : "") << dec(doc.costs(u, v));
    o << "\n";
  }
  if (doc.chains) {
    o << "CHAIN_SECTION\n";
    for (const auto& ch : *doc.chains) {
      for (Vertex v : ch) o << v << " ";
      o << "-1\n";
    }
  } else {
    o << "ORDER_SECTION\n";
    const auto& ord = doc.order.value_or(std::vector<Vertex>{});
    for (std::size_t i = 0; i < ord.size(); ++i) o << (i ? " " : "") << ord[i];
    o << "\n-1\n";
  }
  o << "EOF\n";
  return o.str();
}

InstanceDocument document(const Instance& inst) { return {inst.costs(), inst.order(), std::nullopt}; }
InstanceDocument document(const ChainInstance& inst) { return {inst.costs(), std::nullopt, inst.chains()}; }

}  // namespace otsp
