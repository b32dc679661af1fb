#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

#include "phip/bounds.hpp"
#include "phip/chain.hpp"
#include "phip/error.hpp"
#include "phip/families.hpp"
#include "phip/io.hpp"
#include "phip/isoperimetry.hpp"
#include "phip/spectral.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using Rows = std::vector<std::vector<double>>;
using EdgeList = std::vector<std::tuple<std::size_t, std::size_t, double>>;

phip::Matrix to_matrix(const Rows& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n ? rows.front().size() : 0;
  phip::Matrix a(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m) throw phip::Error(phip::ErrorCode::NonSquare, "ragged matrix rows");
    for (std::size_t j = 0; j < m; ++j) a(i, j) = rows[i][j];
  }
  return a;
}

Rows to_rows(const phip::Matrix& a) {
  Rows rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i].assign(a.row(i).begin(), a.row(i).end());
  return rows;
}

phip::WeightedGraph to_graph(std::size_t n, const EdgeList& edges, bool directed) {
  phip::WeightedGraph g{n, {}, directed, false};
  for (auto [u, v, w] : edges) {
    if (!directed && u > v) std::swap(u, v);
    if (u == v) g.allow_self_loops = true;
    g.edges.push_back({u, v, w});
  }
  return g;
}

phip::BoundOptions bound_options(const std::string& source, std::size_t max_n) {
  phip::BoundOptions o;
  if (source == "auto") o.source = phip::PhiSource::Auto;
  else if (source == "exact") o.source = phip::PhiSource::Exact;
  else if (source == "sweep") o.source = phip::PhiSource::Sweep;
  else throw phip::Error(phip::ErrorCode::InvalidArgument, "source must be auto, exact or sweep");
  o.exact.max_n = max_n;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "phi_p isoperimetry, spectral gaps and the bounds relating them";
  m.attr("__version__") = PHIP_VERSION;

  py::register_exception<phip::Error>(m, "PhipError", PyExc_ValueError);

  py::enum_<phip::ChainOrigin>(m, "ChainOrigin")
      .value("UndirectedGraph", phip::ChainOrigin::UndirectedGraph)
      .value("DirectedGraph", phip::ChainOrigin::DirectedGraph)
      .value("RawMatrix", phip::ChainOrigin::RawMatrix);

  py::class_<phip::MarkovChain>(m, "MarkovChain")
      .def_static(
          "from_transition", [](const Rows& P) { return phip::MarkovChain::from_transition(to_matrix(P)); },
          "P"_a)
      .def_property_readonly("n", &phip::MarkovChain::n)
      .def_property_readonly("P", [](const phip::MarkovChain& c) { return to_rows(c.P()); })
      .def_property_readonly("pi", [](const phip::MarkovChain& c) {
        return std::vector<double>(c.pi().begin(), c.pi().end());
      })
      .def_property_readonly("origin", &phip::MarkovChain::origin)
      .def("__repr__", [](const phip::MarkovChain& c) {
        return "<MarkovChain n=" + std::to_string(c.n()) + " origin=" +
               std::string(phip::to_string(c.origin())) + ">";
      });

  m.def("chain_from_undirected",
        [](std::size_t n, const EdgeList& e) { return phip::chain_from_undirected(to_graph(n, e, false)); },
        "n"_a, "edges"_a, "Chain of the random walk on an undirected weighted graph (0-based ids).");
  m.def("chain_from_directed",
        [](std::size_t n, const EdgeList& e) { return phip::chain_from_directed(to_graph(n, e, true)); },
        "n"_a, "edges"_a);
  m.def("stationary_distribution", [](const Rows& P) { return phip::stationary_distribution(to_matrix(P)); });
  m.def("is_reversible", [](const phip::MarkovChain& c) { return phip::is_reversible(c); });
  m.def("is_lazy", &phip::is_lazy);
  m.def("lazy_transform", &phip::lazy_transform, "chain"_a, "delta"_a);

  py::class_<phip::SpectralCertificate>(m, "SpectralCertificate")
      .def_readonly("lambda2", &phip::SpectralCertificate::lambda2)
      .def_readonly("f2", &phip::SpectralCertificate::f2)
      .def_readonly("v2", &phip::SpectralCertificate::v2)
      .def_readonly("residual", &phip::SpectralCertificate::residual)
      .def_property_readonly("kind", [](const phip::SpectralCertificate& c) {
        return std::string(phip::to_string(c.kind));
      });
  m.def("lambda2_reversible", &phip::lambda2_reversible);
  m.def("lambda2_directed", &phip::lambda2_directed);
  m.def("truncated_eigenvector", &phip::truncated_eigenvector, "cert"_a, "chain"_a);
  m.def("eigenvalues", [](const Rows& M) { return phip::symmetric_eigensolve(to_matrix(M)).values; });

  py::class_<phip::CutResult>(m, "CutResult")
      .def_readonly("subset", &phip::CutResult::subset)
      .def_readonly("p", &phip::CutResult::p)
      .def_readonly("numerator", &phip::CutResult::numerator)
      .def_readonly("pi_mass", &phip::CutResult::pi_mass)
      .def_readonly("phi", &phip::CutResult::phi)
      .def_property_readonly("method", [](const phip::CutResult& c) {
        return std::string(phip::to_string(c.method));
      });
  m.def("phi_p_of_set", &phip::phi_p_of_set, "chain"_a, "subset"_a, "p"_a);
  m.def(
      "phi_p_exact",
      [](const phip::MarkovChain& c, double p, std::size_t max_n, unsigned threads) {
        return phip::phi_p_exact(c, p, {max_n, threads});
      },
      "chain"_a, "p"_a, "max_n"_a = phip::kDefaultMaxExactN, "threads"_a = 0);
  m.def("sweep_cut", &phip::sweep_cut, "chain"_a, "p"_a, "cert"_a);
  m.def("sweep_guarantee", &phip::sweep_guarantee, "p"_a, "lambda2"_a);

  py::class_<phip::BoundReport>(m, "BoundReport")
      .def_readonly("name", &phip::BoundReport::name)
      .def_readonly("lhs", &phip::BoundReport::lhs)
      .def_readonly("rhs", &phip::BoundReport::rhs)
      .def_readonly("slack", &phip::BoundReport::slack)
      .def_readonly("holds", &phip::BoundReport::holds)
      .def_readonly("cut", &phip::BoundReport::cut)
      .def_readonly("lambda2", &phip::BoundReport::lambda2)
      .def_readonly("notes", &phip::BoundReport::notes);
  m.def(
      "check_main_theorem",
      [](const phip::MarkovChain& c, double p, bool directed, const std::string& source,
         std::size_t max_n) { return phip::check_main_theorem(c, p, directed, bound_options(source, max_n)); },
      "chain"_a, "p"_a, "directed"_a = false, "source"_a = "auto",
      "max_n"_a = phip::kDefaultMaxExactN);
  m.def(
      "check_morris_peres",
      [](const phip::MarkovChain& c, bool directed, const std::string& source, std::size_t max_n) {
        return phip::check_morris_peres(c, directed, bound_options(source, max_n));
      },
      "chain"_a, "directed"_a = false, "source"_a = "auto", "max_n"_a = phip::kDefaultMaxExactN);
  m.def(
      "check_cheeger",
      [](const phip::MarkovChain& c, const std::string& source, std::size_t max_n) {
        return phip::check_cheeger(c, bound_options(source, max_n));
      },
      "chain"_a, "source"_a = "auto", "max_n"_a = phip::kDefaultMaxExactN);
  m.def(
      "check_chung",
      [](const phip::MarkovChain& c, const std::string& source, std::size_t max_n) {
        return phip::check_chung(c, bound_options(source, max_n));
      },
      "chain"_a, "source"_a = "auto", "max_n"_a = phip::kDefaultMaxExactN);
  m.def("conjecture_ratio", &phip::conjecture_ratio, "phi_half"_a, "lambda2"_a);
  m.def(
      "gadget_C_sum", [](double p, const std::vector<double>& a) { return phip::gadget_C_sum(p, a); },
      "p"_a, "sequence"_a);
  m.def("gadget_C_supremum", &phip::gadget_C_supremum, "p"_a, "trials"_a, "seed"_a);
  m.def("gadget_log_chain", &phip::gadget_log_chain, "b0"_a, "m"_a);

  m.def("gen_cycle", &phip::gen_cycle, "n"_a);
  m.def("gen_hypercube", &phip::gen_hypercube, "d"_a);
  m.def("gen_dumbbell", &phip::gen_dumbbell, "m"_a);
  m.def("gen_random_reversible", &phip::gen_random_reversible, "n"_a, "density"_a, "seed"_a);
  m.def("gen_random_directed", &phip::gen_random_directed, "n"_a, "density"_a, "seed"_a);
  m.def(
      "gen_ht_counterexample",
      [](std::size_t n) {
        auto g = phip::gen_ht_counterexample(n);
        return py::make_tuple(g.chain, g.meta.C);
      },
      "n"_a, "Returns (chain, C).");
  m.def("ht_first_row_laplacian", &phip::ht_first_row_laplacian, "n"_a);
  m.def(
      "circulant_lambda2_analytic",
      [](const std::vector<double>& row) { return phip::circulant_lambda2_analytic(row); }, "first_row"_a);
  m.def("ht_lambda2_closed_form", &phip::ht_lambda2_closed_form, "n"_a);
  m.def("arc_phi_half", &phip::arc_phi_half, "n"_a, "l"_a);
  m.def(
      "arc_min_phi_half",
      [](std::size_t n) {
        auto a = phip::arc_min_phi_half(n);
        return py::make_tuple(a.l, a.phi);
      },
      "n"_a, "Returns (l, phi).");
  m.def(
      "hypercube_quantities",
      [](std::size_t d, const phip::Subset& s) {
        auto q = phip::hypercube_quantities(d, s);
        py::dict out;
        out["poincare_num"] = q.poincare_num;
        out["talagrand_num"] = q.talagrand_num;
        out["vertex_boundary"] = q.vertex_boundary;
        out["mass"] = q.mass;
        return out;
      },
      "d"_a, "subset"_a);
  m.def("f_sqrt_crossweight", &phip::f_sqrt_crossweight, "chain"_a, "a"_a, "b"_a);
  m.def(
      "blocks_h", [](const std::vector<std::size_t>& sizes) { return phip::blocks_h({sizes}); },
      "sizes"_a);
  m.def(
      "merge_zero_block",
      [](const std::vector<std::size_t>& sizes) { return phip::merge_zero_block({sizes}).sizes; },
      "sizes"_a);
  m.def(
      "blocks_merge_check",
      [](const std::vector<std::size_t>& sizes) { return phip::blocks_merge_check({sizes}); }, "sizes"_a);
  m.def(
      "lower_bound_fab_check",
      [](const phip::MarkovChain& c, const std::vector<std::size_t>& sizes) {
        return phip::lower_bound_fab_check(c, {sizes});
      },
      "chain"_a, "sizes"_a);

  py::class_<phip::ScanRow>(m, "ScanRow")
      .def_readonly("n", &phip::ScanRow::n)
      .def_readonly("lambda2", &phip::ScanRow::lambda2)
      .def_readonly("phi_half_arc", &phip::ScanRow::phi_half_arc)
      .def_readonly("rho", &phip::ScanRow::rho)
      .def_readonly("lambda2_scaled", &phip::ScanRow::lambda2_scaled)
      .def_readonly("phi_scaled", &phip::ScanRow::phi_scaled);
  m.def("scaling_scan", &phip::scaling_scan, "n_list"_a, "threads"_a = 0,
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "analyze",
      [](const phip::MarkovChain& c, const std::vector<double>& p_values, const std::string& method,
         bool directed_spectral) {
        phip::AnalyzeOptions o;
        o.p_values = p_values;
        o.method = phip::parse_cut_request(method);
        o.directed_spectral = directed_spectral;
        return phip::report_to_json(phip::analyze_chain(c, o));
      },
      "chain"_a, "p_values"_a = std::vector<double>{0.5, 1.0}, "method"_a = "both",
      "directed_spectral"_a = false, "Full analysis report as a JSON string.");
}
