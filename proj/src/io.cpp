#include "phip/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phip/error.hpp"

#ifndef PHIP_VERSION
#define PHIP_VERSION "0.0.0"
#endif

namespace phip {

using ojson = nlohmann::ordered_json;

InputFormat parse_input_format(std::string_view name) {
  if (name == "edge-tsv") return InputFormat::EdgeTsv;
  if (name == "dense-matrix") return InputFormat::DenseMatrix;
  throw Error(ErrorCode::InvalidArgument, "unknown input format '" + std::string(name) + "'");
}

std::string_view to_string(InputFormat format) {
  return format == InputFormat::EdgeTsv ? "edge-tsv" : "dense-matrix";
}

MarkovChain ParsedInput::to_chain() const {
  if (const auto* g = std::get_if<WeightedGraph>(&data))
    return g->directed ? chain_from_directed(*g) : chain_from_undirected(*g);
  return MarkovChain::from_transition(std::get<Matrix>(data), ChainOrigin::RawMatrix);
}

namespace {

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& what) {
  throw Error(code, "line " + std::to_string(line) + ": " + what);
}

std::string strip_comment(const std::string& line) {
  auto s = line.substr(0, line.find('#'));
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) fail(ErrorCode::ParseError, line, "expected a number, got '" + tok + "'");
  if (!std::isfinite(x)) fail(ErrorCode::ParseError, line, "non-finite value '" + tok + "'");
  return x;
}

std::size_t parse_id(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::ParseError, line, "expected a positive vertex id, got '" + tok + "'");
  std::size_t id = 0;
  try {
    id = std::stoull(tok);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, line, "vertex id out of range: '" + tok + "'");
  }
  if (id == 0) fail(ErrorCode::ParseError, line, "vertex ids are 1-based");
  return id;
}

ParsedInput parse_edge_tsv(std::istream& in) {
  WeightedGraph g;
  bool have_header = false;
  std::optional<std::size_t> declared_n;
  std::size_t max_id = 0;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = strip_comment(raw);
    if (s.empty()) continue;
    const auto tok = split_ws(s);
    if (!have_header) {
      if (tok[0] != "directed" && tok[0] != "undirected")
        fail(ErrorCode::ParseError, line, "first line must be 'directed' or 'undirected'");
      if (tok.size() > 2) fail(ErrorCode::ParseError, line, "header has trailing fields");
      g.directed = tok[0] == "directed";
      if (tok.size() == 2) declared_n = parse_id(tok[1], line);
      have_header = true;
      continue;
    }
    if (tok.size() != 3)
      fail(ErrorCode::ParseError, line, "expected 'u v w', got " + std::to_string(tok.size()) +
                                            " fields");
    std::size_t u = parse_id(tok[0], line), v = parse_id(tok[1], line);
    const double w = parse_real(tok[2], line);
    if (w < 0.0) fail(ErrorCode::NegativeWeight, line, "negative weight " + tok[2]);
    if (declared_n && (u > *declared_n || v > *declared_n))
      fail(ErrorCode::InconsistentHeader, line,
           "vertex id exceeds declared count " + std::to_string(*declared_n));
    max_id = std::max({max_id, u, v});
    --u;
    --v;
    if (!g.directed && u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second)
      fail(ErrorCode::ParseError, line,
           "duplicate edge (" + tok[0] + ", " + tok[1] + ")" +
               (g.directed ? "" : "; undirected edges are listed once"));
    if (u == v) g.allow_self_loops = true;
    g.edges.push_back({u, v, w});
  }
  if (!have_header) fail(ErrorCode::ParseError, line, "missing 'directed'/'undirected' header");
  g.n = declared_n.value_or(max_id);
  if (g.n == 0) fail(ErrorCode::ParseError, line, "graph has no vertices");
  g.validate();
  return {std::move(g)};
}

ParsedInput parse_dense(std::istream& in) {
  enum class Kind { Transition, Weight };
  std::optional<Kind> kind;
  bool directed = false;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_line;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = strip_comment(raw);
    if (s.empty()) continue;
    const auto tok = split_ws(s);
    if (!kind) {
      if (tok[0] != "matrix-kind" || tok.size() < 2)
        fail(ErrorCode::ParseError, line, "first line must be 'matrix-kind transition|weight'");
      if (tok[1] == "transition") {
        kind = Kind::Transition;
        if (tok.size() > 2)
          fail(ErrorCode::InconsistentHeader, line, "transition matrices take no orientation");
      } else if (tok[1] == "weight") {
        kind = Kind::Weight;
        if (tok.size() > 3) fail(ErrorCode::ParseError, line, "header has trailing fields");
        if (tok.size() == 3) {
          if (tok[2] != "directed" && tok[2] != "undirected")
            fail(ErrorCode::ParseError, line, "orientation must be 'directed' or 'undirected'");
          directed = tok[2] == "directed";
        }
      } else {
        fail(ErrorCode::ParseError, line, "unknown matrix kind '" + tok[1] + "'");
      }
      continue;
    }
    std::vector<double> row;
    for (const auto& t : tok) row.push_back(parse_real(t, line));
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorCode::ParseError, line, "row has " + std::to_string(row.size()) +
                                            " entries, expected " +
                                            std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
    row_line.push_back(line);
  }
  if (!kind) fail(ErrorCode::ParseError, line, "missing 'matrix-kind' header");
  const std::size_t n = rows.size();
  if (n == 0) fail(ErrorCode::ParseError, line, "matrix has no rows");
  if (rows.front().size() != n)
    fail(ErrorCode::ParseError, line, "matrix is " + std::to_string(n) + " x " +
                                          std::to_string(rows.front().size()) + ", not square");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = rows[i][j];
      if (*kind == Kind::Weight && m(i, j) < 0.0)
        fail(ErrorCode::NegativeWeight, row_line[i], "negative weight in column " + std::to_string(j + 1));
    }
  if (*kind == Kind::Transition) return {std::move(m)};

  WeightedGraph g{n, {}, directed, false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = directed ? 0 : i; j < n; ++j) {
      if (!directed && m(i, j) != m(j, i))
        throw Error(ErrorCode::InconsistentHeader,
                    "undirected weight matrix is not symmetric at (" + std::to_string(i + 1) +
                        ", " + std::to_string(j + 1) + ")");
      if (m(i, j) == 0.0) continue;
      if (i == j) g.allow_self_loops = true;
      g.edges.push_back({i, j, m(i, j)});
    }
  g.validate();
  return {std::move(g)};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  return out;
}

}  // namespace

ParsedInput parse_graph(std::istream& in, InputFormat format) {
  return format == InputFormat::EdgeTsv ? parse_edge_tsv(in) : parse_dense(in);
}

ParsedInput parse_graph(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_graph(in, format);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_graph_tsv(const WeightedGraph& g, std::ostream& out) {
  out << (g.directed ? "directed" : "undirected") << '\t' << g.n << '\n';
  for (const auto& e : g.edges)
    out << e.u + 1 << '\t' << e.v + 1 << '\t' << format_double(e.w) << '\n';
}

void write_graph_tsv(const WeightedGraph& g, const std::string& path) {
  auto out = open_out(path);
  write_graph_tsv(g, out);
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

void write_transition_matrix(const Matrix& P, std::ostream& out) {
  out << "matrix-kind transition\n";
  for (std::size_t i = 0; i < P.rows(); ++i) {
    for (std::size_t j = 0; j < P.cols(); ++j) out << (j ? " " : "") << format_double(P(i, j));
    out << '\n';
  }
}

void write_text_file(const std::string& path, std::string_view content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

std::string tool_version() { return PHIP_VERSION; }

CutRequest parse_cut_request(std::string_view name) {
  if (name == "exact") return CutRequest::Exact;
  if (name == "sweep") return CutRequest::Sweep;
  if (name == "both") return CutRequest::Both;
  throw Error(ErrorCode::InvalidArgument, "method must be exact, sweep or both");
}

AnalysisReport analyze_chain(const MarkovChain& c, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.chain.n = c.n();
  r.chain.origin = std::string(to_string(c.origin()));
  r.chain.reversible = is_reversible(c);
  r.chain.lazy = is_lazy(c);
  r.provenance.tool_version = tool_version();

  std::optional<SpectralCertificate> rev, dir;
  if (r.chain.reversible) rev = lambda2_reversible(c);
  if (options.directed_spectral || !r.chain.reversible) dir = lambda2_directed(c);
  if (rev) r.spectral.push_back({std::string(to_string(rev->kind)), rev->lambda2, rev->residual});
  if (dir) r.spectral.push_back({std::string(to_string(dir->kind)), dir->lambda2, dir->residual});
  const SpectralCertificate& sweep_cert = rev ? *rev : *dir;

  const bool exact = options.method != CutRequest::Sweep;
  const bool sweep = options.method != CutRequest::Exact;
  for (double p : options.p_values) {
    if (exact) r.cuts.push_back(phi_p_exact(c, p, options.exact));
    if (sweep) r.cuts.push_back(sweep_cut(c, p, sweep_cert));
  }

  BoundOptions bo;
  bo.exact = options.exact;
  bo.source = exact ? PhiSource::Exact : PhiSource::Sweep;
  if (rev) {
    auto [easy, hard] = check_cheeger(c, bo);
    r.bounds.push_back(std::move(easy));
    r.bounds.push_back(std::move(hard));
    for (double p : options.p_values)
      if (p > 0.5 && p <= 1.0) r.bounds.push_back(check_main_theorem(c, p, false, bo));
    r.bounds.push_back(check_morris_peres(c, false, bo));
  }
  if (dir) {
    auto [lower, upper] = check_chung(c, bo);
    r.bounds.push_back(std::move(lower));
    r.bounds.push_back(std::move(upper));
    for (double p : options.p_values)
      if (p > 0.5 && p <= 1.0) r.bounds.push_back(check_main_theorem(c, p, true, bo));
  }
  return r;
}

// ---- JSON ----

namespace {

void dump(const ojson& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + ojson(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ojson::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

double get_real(const ojson& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ojson subset_json(const Subset& s) {
  auto a = ojson::array();
  for (auto v : s) a.push_back(v + 1);
  return a;
}

ojson cut_json(const CutResult& c) {
  ojson j;
  j["method"] = std::string(to_string(c.method));
  j["p"] = c.p;
  j["subset"] = subset_json(c.subset);
  j["numerator"] = c.numerator;
  j["pi_mass"] = c.pi_mass;
  j["phi"] = c.phi;
  return j;
}

CutMethod cut_method_from(const std::string& s) {
  if (s == "exact") return CutMethod::Exact;
  if (s == "sweep") return CutMethod::Sweep;
  if (s == "given-set") return CutMethod::GivenSet;
  throw Error(ErrorCode::ParseError, "unknown cut method '" + s + "'");
}

SpectralKind spectral_kind_from(const std::string& s) {
  if (s == "reversible-normalized") return SpectralKind::ReversibleNormalized;
  if (s == "chung-directed") return SpectralKind::ChungDirected;
  throw Error(ErrorCode::ParseError, "unknown spectral kind '" + s + "'");
}

CutResult cut_from(const ojson& j) {
  CutResult c;
  c.method = cut_method_from(j.at("method").get<std::string>());
  c.p = get_real(j.at("p"));
  for (const auto& v : j.at("subset")) c.subset.push_back(v.get<std::size_t>() - 1);
  c.numerator = get_real(j.at("numerator"));
  c.pi_mass = get_real(j.at("pi_mass"));
  c.phi = get_real(j.at("phi"));
  return c;
}

ojson bound_json(const BoundReport& b) {
  ojson j;
  j["name"] = b.name;
  j["lhs"] = b.lhs;
  j["rhs"] = b.rhs;
  j["slack"] = b.slack;
  j["tol"] = b.tol;
  j["holds"] = b.holds;
  j["lambda2"] = b.lambda2 ? ojson(*b.lambda2) : ojson();
  j["lambda2_kind"] = b.lambda2_kind ? ojson(std::string(to_string(*b.lambda2_kind))) : ojson();
  j["cut"] = b.cut ? cut_json(*b.cut) : ojson();
  j["notes"] = b.notes;
  return j;
}

BoundReport bound_from(const ojson& j) {
  BoundReport b;
  b.name = j.at("name").get<std::string>();
  b.lhs = get_real(j.at("lhs"));
  b.rhs = get_real(j.at("rhs"));
  b.slack = get_real(j.at("slack"));
  b.tol = get_real(j.at("tol"));
  b.holds = j.at("holds").get<bool>();
  if (!j.at("lambda2").is_null()) b.lambda2 = get_real(j.at("lambda2"));
  if (!j.at("lambda2_kind").is_null())
    b.lambda2_kind = spectral_kind_from(j.at("lambda2_kind").get<std::string>());
  if (!j.at("cut").is_null()) b.cut = cut_from(j.at("cut"));
  b.notes = j.at("notes").get<std::vector<std::string>>();
  return b;
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
  ojson j;
  j["chain"] = {{"n", r.chain.n},
                {"origin", r.chain.origin},
                {"reversible", r.chain.reversible},
                {"lazy", r.chain.lazy}};
  auto spectral = ojson::array();
  for (const auto& s : r.spectral)
    spectral.push_back({{"kind", s.kind}, {"lambda2", s.lambda2}, {"residual", s.residual}});
  j["spectral"] = spectral;
  auto cuts = ojson::array();
  for (const auto& c : r.cuts) cuts.push_back(cut_json(c));
  j["cuts"] = cuts;
  auto bounds = ojson::array();
  for (const auto& b : r.bounds) bounds.push_back(bound_json(b));
  j["bounds"] = bounds;
  j["provenance"] = {{"input", r.provenance.input},
                     {"generator", r.provenance.generator},
                     {"seed", r.provenance.seed ? ojson(*r.provenance.seed) : ojson()},
                     {"tool_version", r.provenance.tool_version}};
  std::string out;
  dump(j, out, 0);
  out += '\n';
  return out;
}

AnalysisReport report_from_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid report json: ") + e.what());
  }
  try {
    AnalysisReport r;
    const auto& c = j.at("chain");
    r.chain.n = c.at("n").get<std::size_t>();
    r.chain.origin = c.at("origin").get<std::string>();
    r.chain.reversible = c.at("reversible").get<bool>();
    r.chain.lazy = c.at("lazy").get<bool>();
    for (const auto& s : j.at("spectral"))
      r.spectral.push_back({s.at("kind").get<std::string>(), get_real(s.at("lambda2")),
                            get_real(s.at("residual"))});
    for (const auto& cut : j.at("cuts")) r.cuts.push_back(cut_from(cut));
    for (const auto& b : j.at("bounds")) r.bounds.push_back(bound_from(b));
    const auto& p = j.at("provenance");
    r.provenance.input = p.at("input").get<std::string>();
    r.provenance.generator = p.at("generator").get<std::string>();
    if (!p.at("seed").is_null()) r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.tool_version = p.at("tool_version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

// ---- text ----

std::string bounds_table(const std::vector<BoundReport>& bounds) {
  std::vector<std::vector<std::string>> cells{{"name", "lhs", "rhs", "slack", "verdict"}};
  for (const auto& b : bounds)
    cells.push_back({b.name, format_double(b.lhs), format_double(b.rhs), format_double(b.slack),
                     b.holds ? "holds" : "FAILS"});
  std::vector<std::size_t> width(5, 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      if (i + 1 == row.size())
        os << row[i];
      else
        os << std::left << std::setw(static_cast<int>(width[i])) << row[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string report_to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "chain: n = " << r.chain.n << ", origin = " << r.chain.origin
     << ", reversible = " << (r.chain.reversible ? "yes" : "no")
     << ", lazy = " << (r.chain.lazy ? "yes" : "no") << '\n';
  for (const auto& s : r.spectral)
    os << "lambda2 (" << s.kind << ") = " << format_double(s.lambda2)
       << "  residual = " << format_double(s.residual) << '\n';
  for (const auto& c : r.cuts) {
    os << "phi_" << format_double(c.p) << " (" << to_string(c.method)
       << ") = " << format_double(c.phi) << "  S = {";
    for (std::size_t i = 0; i < c.subset.size(); ++i) os << (i ? "," : "") << c.subset[i] + 1;
    os << "}  pi(S) = " << format_double(c.pi_mass) << '\n';
  }
  if (!r.bounds.empty()) os << '\n' << bounds_table(r.bounds);
  return os.str();
}

void emit_report(const AnalysisReport& r, std::ostream& out, ReportFormat format) {
  out << (format == ReportFormat::Json ? report_to_json(r) : report_to_text(r));
  if (!out) throw Error(ErrorCode::IoError, "report write failed");
}

void emit_report(const AnalysisReport& r, const std::string& path, ReportFormat format) {
  write_text_file(path, format == ReportFormat::Json ? report_to_json(r) : report_to_text(r));
}

}  // namespace phip
