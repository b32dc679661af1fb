#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phip/bounds.hpp"
#include "phip/chain.hpp"
#include "phip/isoperimetry.hpp"
#include "phip/matrix.hpp"
#include "phip/spectral.hpp"

namespace phip {

enum class InputFormat { EdgeTsv, DenseMatrix };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat format);

/// A parsed input file: a graph, or a raw transition matrix.
struct ParsedInput {
  std::variant<WeightedGraph, Matrix> data;

  bool is_graph() const { return std::holds_alternative<WeightedGraph>(data); }
  MarkovChain to_chain() const;
};

/// edge-tsv: first line `directed` or `undirected`, optionally followed by the
/// vertex count; then `u<TAB>v<TAB>w` with 1-based ids. `#` starts a comment.
///
/// dense-matrix: first line `matrix-kind transition` or
/// `matrix-kind weight [directed|undirected]` (undirected by default), then n
/// rows of n reals.
///
/// Errors carry the 1-based line number.
ParsedInput parse_graph(std::istream& in, InputFormat format);
ParsedInput parse_graph(const std::string& path, InputFormat format);

void write_graph_tsv(const WeightedGraph& g, std::ostream& out);
void write_graph_tsv(const WeightedGraph& g, const std::string& path);
void write_transition_matrix(const Matrix& P, std::ostream& out);

// ---- analysis report ----

struct ChainSummary {
  std::size_t n = 0;
  std::string origin;
  bool reversible = false;
  bool lazy = false;
};

struct SpectralEntry {
  std::string kind;
  double lambda2 = 0.0;
  double residual = 0.0;
};

struct Provenance {
  std::string input;      // path, or empty
  std::string generator;  // generator spec, or empty
  std::optional<std::uint64_t> seed;
  std::string tool_version;
};

struct AnalysisReport {
  ChainSummary chain;
  std::vector<SpectralEntry> spectral;
  std::vector<CutResult> cuts;
  std::vector<BoundReport> bounds;
  Provenance provenance;
};

enum class CutRequest { Exact, Sweep, Both };

CutRequest parse_cut_request(std::string_view name);

struct AnalyzeOptions {
  std::vector<double> p_values{0.5, 1.0};
  CutRequest method = CutRequest::Both;
  bool directed_spectral = false;
  ExactOptions exact{};
};

/// Spectral data, cuts for every requested p and method, and every bound that
/// applies to the chain.
AnalysisReport analyze_chain(const MarkovChain& c, const AnalyzeOptions& options);

std::string tool_version();

enum class ReportFormat { Json, Text };

/// Doubles are written with 17 significant digits and keys in a fixed order,
/// so json -> parse -> json is byte-identical.
std::string report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(std::string_view text);
/// Chain summary, spectral lines, cuts, then the table
/// `name  lhs  rhs  slack  verdict`.
std::string report_to_text(const AnalysisReport& r);

void emit_report(const AnalysisReport& r, std::ostream& out, ReportFormat format);
void emit_report(const AnalysisReport& r, const std::string& path, ReportFormat format);

/// Bound table alone, one aligned row per report.
std::string bounds_table(const std::vector<BoundReport>& bounds);

/// "%.17g"; non-finite values as "nan", "inf", "-inf".
std::string format_double(double x);

void write_text_file(const std::string& path, std::string_view content);

}  // namespace phip
