#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <bit>
#include <stdexcept>

#include "walsh/corpus.hpp"
#include "walsh/counterexample.hpp"
#include "walsh/dyadic.hpp"
#include "walsh/hardy.hpp"
#include "walsh/identities.hpp"
#include "walsh/strong.hpp"
#include "walsh/transform.hpp"

namespace py = pybind11;
using namespace walsh;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Resolution resolution_of(std::size_t side) {
  if (side == 0 || !std::has_single_bit(side)) throw std::invalid_argument("side length must be a power of two");
  return Resolution(std::countr_zero(side));
}

bool is_2d(const Array& a) {
  if (a.ndim() == 1) return false;
  if (a.ndim() == 2 && a.shape(0) == a.shape(1)) return true;
  throw std::invalid_argument("expected a 1D array or a square 2D array");
}

std::vector<double> flat(const Array& a) { return std::vector<double>(a.data(), a.data() + a.size()); }

Grid1D grid1d(const Array& a) {
  if (is_2d(a)) throw std::invalid_argument("expected a 1D array");
  return Grid1D(resolution_of(a.shape(0)), flat(a));
}

Grid2D grid2d(const Array& a) {
  if (!is_2d(a)) throw std::invalid_argument("expected a square 2D array");
  return Grid2D(resolution_of(a.shape(0)), flat(a));
}

py::array_t<double> to_numpy(std::span<const double> v, std::size_t side, bool two_d) {
  py::array_t<double> out = two_d ? py::array_t<double>({side, side}) : py::array_t<double>(side);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_numpy(const Grid1D& g) { return to_numpy(g.values(), g.size(), false); }
py::array_t<double> to_numpy(const Grid2D& g) { return to_numpy(g.values(), g.side(), true); }

py::dict report_dict(const SweepReport& r) {
  std::vector<std::uint64_t> n;
  std::vector<double> strong, weak, term, cumulative;
  for (const auto& row : r.rows) {
    n.push_back(row.n);
    strong.push_back(row.strong_norm);
    weak.push_back(row.weak_norm);
    term.push_back(row.term);
    cumulative.push_back(row.cumulative);
  }
  py::dict d;
  d["functional"] = r.functional;
  d["p"] = r.p;
  d["n"] = py::array(py::cast(n));
  d["strong_norm"] = py::array(py::cast(strong));
  d["weak_norm"] = py::array(py::cast(weak));
  d["term"] = py::array(py::cast(term));
  d["cumulative"] = py::array(py::cast(cumulative));
  d["hp_norm"] = r.hp_norm ? py::cast(*r.hp_norm) : py::none();
  d["tail"] = r.tail ? py::cast(*r.tail) : py::none();
  d["ratio"] = r.ratio() ? py::cast(*r.ratio()) : py::none();
  return d;
}

py::dict atom_dict(const Atom2D& a) {
  py::dict d;
  d["grid"] = to_numpy(a.grid);
  d["p"] = a.p;
  d["support_level"] = a.support_level;
  d["support_base"] = py::make_tuple(a.support_base[0], a.support_base[1]);
  d["saturation"] = a.saturation();
  return d;
}

CounterexampleMartingale counterexample_of(std::vector<int> alphas, int resolution, double p, const std::string& phi) {
  return build_counterexample(select_alphas(WeightFn::parse(phi), p, std::move(alphas)), resolution);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Walsh-Paley analysis on the dyadic group";

  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("walsh_function", [](std::uint64_t n, int bits) { return to_numpy(walsh_function(n, Resolution(bits))); },
        py::arg("n"), py::arg("resolution"));
  m.def(
      "dirichlet_kernel",
      [](std::uint64_t n, int bits, bool direct) {
        return to_numpy(dirichlet_kernel(n, Resolution(bits), direct ? KernelMode::direct : KernelMode::closed));
      },
      py::arg("n"), py::arg("resolution"), py::arg("direct") = false);

  m.def(
      "forward",
      [](const Array& a) {
        if (is_2d(a)) {
          const Spectrum2D s = forward(grid2d(a));
          return to_numpy(s.coeffs, s.side(), true);
        }
        const Spectrum1D s = forward(grid1d(a));
        return to_numpy(s.coeffs, s.coeffs.size(), false);
      },
      "Walsh-Paley coefficients f^(i) or f^(i, j).");
  m.def("inverse", [](const Array& a) {
    if (is_2d(a)) return to_numpy(inverse(Spectrum2D{resolution_of(a.shape(0)), flat(a)}));
    return to_numpy(inverse(Spectrum1D{resolution_of(a.shape(0)), flat(a)}));
  });
  m.def("partial_sum", [](const Array& a, std::uint64_t m) { return to_numpy(partial_sum(grid1d(a), m)); });
  m.def("partial_sum_rect", [](const Array& a, std::uint64_t m, std::uint64_t n) {
    return to_numpy(partial_sum_rect(grid2d(a), m, n));
  });

  m.def("integrate", [](const Array& a) { return is_2d(a) ? integrate(grid2d(a)) : integrate(grid1d(a)); });
  m.def("lp_quasinorm", [](const Array& a, double p) {
    return is_2d(a) ? lp_quasinorm(grid2d(a), p) : lp_quasinorm(grid1d(a), p);
  });
  m.def("weak_lp_quasinorm", [](const Array& a, double p) {
    return is_2d(a) ? weak_lp_quasinorm(grid2d(a), p) : weak_lp_quasinorm(grid1d(a), p);
  });

  m.def("conditional_expectation",
        [](const Array& a, int level) { return to_numpy(conditional_expectation(grid2d(a), level)); });
  m.def("maximal_function", [](const Array& a) { return to_numpy(maximal_function(grid2d(a))); });
  m.def("hp_quasinorm", [](const Array& a, double p) { return hp_quasinorm(grid2d(a), p); });

  m.def(
      "random_atom",
      [](int bits, double p, int level, std::uint64_t seed, int detail_depth) {
        return atom_dict(random_atom(Resolution(bits), p, level, seed, RandomAtomOptions{detail_depth}));
      },
      py::arg("resolution"), py::arg("p"), py::arg("support_level"), py::arg("seed"), py::arg("detail_depth") = 3);
  m.def("diagonal_average", [](const Array& a, double p, int level, std::uint64_t base_x, std::uint64_t base_y) {
    Atom2D atom{grid2d(a), p, level, {base_x, base_y}};
    return to_numpy(diagonal_average(atom));
  });

  m.def(
      "theorem1_sum",
      [](const Array& a, double p, std::uint64_t n_max, unsigned threads) {
        return report_dict(theorem1_sum(grid2d(a), p, n_max, FunctionalOptions{threads, true}));
      },
      py::arg("grid"), py::arg("p"), py::arg("n_max"), py::arg("threads") = 1);
  m.def(
      "simon_1d_sum",
      [](const Array& a, double p, std::uint64_t k_max) { return report_dict(simon_1d_sum(grid1d(a), p, k_max)); },
      py::arg("grid"), py::arg("p"), py::arg("k_max"));
  m.def(
      "theoremG_sum", [](const Array& a, std::uint64_t n_max) { return report_dict(theoremG_sum(grid2d(a), n_max)); },
      py::arg("grid"), py::arg("n_max"));

  m.def(
      "select_alphas",
      [](double p, int count, int max_level, const std::string& phi) {
        const AlphaSequence s = select_alphas(WeightFn::parse(phi), p, count, max_level);
        py::dict d;
        d["alphas"] = s.alphas;
        d["summability_witness"] = s.summability_witness;
        d["clipped"] = s.clipped;
        d["warnings"] = s.warnings;
        return d;
      },
      py::arg("p"), py::arg("count"), py::arg("max_level"), py::arg("phi") = "linear");
  m.def(
      "counterexample",
      [](std::vector<int> alphas, int bits, double p, const std::string& phi) {
        const CounterexampleMartingale cm = counterexample_of(std::move(alphas), bits, p, phi);
        std::vector<double> blocks;
        for (std::size_t k = 0; k < cm.realized.size(); ++k) blocks.push_back(cm.block_value(k));
        py::dict d;
        d["grid"] = to_numpy(cm.grid);
        d["realized"] = cm.realized;
        d["lambdas"] = cm.lambdas;
        d["block_values"] = blocks;
        d["warnings"] = cm.warnings;
        return d;
      },
      py::arg("alphas"), py::arg("resolution"), py::arg("p") = 0.5, py::arg("phi") = "linear");
  m.def(
      "divergence_experiment",
      [](std::vector<int> alphas, int bits, std::uint64_t n_max, double p, const std::string& phi, unsigned threads) {
        const DivergenceReport r = divergence_experiment(counterexample_of(std::move(alphas), bits, p, phi), n_max, threads);
        py::list cps;
        for (const auto& c : r.checkpoints) {
          py::dict d;
          d["k"] = c.k;
          d["alpha"] = c.alpha;
          d["n"] = c.n;
          d["partial_sum"] = c.partial_sum;
          d["floor_13"] = c.floor_13;
          d["floor_full"] = c.floor_full;
          d["min_weak_norm"] = c.min_weak_norm;
          cps.append(d);
        }
        py::dict d;
        d["checkpoints"] = cps;
        d["monotone"] = r.monotone;
        d["floors_met"] = r.floors_met;
        d["sweep"] = report_dict(r.sweep);
        return d;
      },
      py::arg("alphas"), py::arg("resolution"), py::arg("n_max"), py::arg("p") = 0.5, py::arg("phi") = "linear",
      py::arg("threads") = 1);

  m.def(
      "kernel_identities",
      [](int bits) {
        py::dict d;
        for (const auto& r : kernel_identities(Resolution(bits))) d[py::str(r.name)] = py::make_tuple(r.checked, r.failures);
        return d;
      },
      py::arg("resolution"), "Identity name -> (checked, failures).");
}
