// Python bindings for the qcspectra core library.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>
#include <string>

#include "qcspectra/bounds.hpp"
#include "qcspectra/nested.hpp"
#include "qcspectra/qc.hpp"
#include "qcspectra/report.hpp"

namespace py = pybind11;
using namespace qcspectra;

namespace pybind11::detail {

// Exact integers cross the boundary as decimal strings so arbitrarily large
// values survive the trip in both directions.
template <>
struct type_caster<BigInt> {
    PYBIND11_TYPE_CASTER(BigInt, const_name("int"));

    bool load(handle src, bool) {
        PyObject* index = PyNumber_Index(src.ptr());
        if (!index) {
            PyErr_Clear();
            return false;
        }
        const object as_str = reinterpret_steal<object>(PyObject_Str(index));
        Py_DECREF(index);
        if (!as_str) {
            PyErr_Clear();
            return false;
        }
        value = BigInt(as_str.cast<std::string>());
        return true;
    }

    static handle cast(const BigInt& src, return_value_policy, handle) {
        const std::string s = src.str();
        return PyLong_FromString(s.c_str(), nullptr, 10);
    }
};

}  // namespace pybind11::detail

namespace {

RealMatrix matrix_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("RealMatrix: expected a 2-D array");
    RealMatrix out(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::memcpy(out.data.data(), a.data(), sizeof(double) * out.data.size());
    return out;
}

py::array_t<double> matrix_to_array(const RealMatrix& m) {
    py::array_t<double> a({static_cast<py::ssize_t>(m.rows), static_cast<py::ssize_t>(m.cols)});
    std::memcpy(a.mutable_data(), m.data.data(), sizeof(double) * m.data.size());
    return a;
}

}  // namespace

PYBIND11_MODULE(_qcspectra, m) {
    m.doc() = "Gram spectra, pseudo-weight and minimum-distance bounds for quasi-cyclic and "
              "nested-circulant parity-check matrices";

    // ---- exact polynomials -------------------------------------------------
    py::class_<IntPoly>(m, "IntPoly")
        .def(py::init<>())
        .def(py::init<std::vector<BigInt>>(), py::arg("coeffs"))
        .def_static("monomial", &IntPoly::monomial, py::arg("exponent"),
                    py::arg("coefficient") = BigInt(1))
        .def_static("all_ones", &IntPoly::all_ones, py::arg("n"))
        .def_static("from_string",
                    [](const std::string& text) { return IntPoly::from_string(text); },
                    py::arg("text"))
        .def_property_readonly("coeffs", &IntPoly::coeffs)
        .def("coeff", &IntPoly::coeff, py::arg("exponent"))
        .def_property_readonly("degree", &IntPoly::degree)
        .def_property_readonly("trailing_degree", &IntPoly::trailing_degree)
        .def_property_readonly("is_zero", &IntPoly::is_zero)
        .def_property_readonly("is_binary", &IntPoly::is_binary)
        .def_property_readonly("support_size", &IntPoly::support_size)
        .def("coeff_sum", &IntPoly::coeff_sum)
        .def("shifted_down", &IntPoly::shifted_down, py::arg("s"))
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("__str__", &IntPoly::to_string)
        .def("__repr__",
             [](const IntPoly& p) { return "IntPoly('" + p.to_string() + "')"; });

    py::class_<DivisionResult>(m, "DivisionResult")
        .def_readonly("quotient", &DivisionResult::quotient)
        .def_readonly("remainder", &DivisionResult::remainder)
        .def_readonly("exact", &DivisionResult::exact);

    m.def("cyclic_mul", &cyclic_mul, py::arg("a"), py::arg("b"), py::arg("n"),
          "a*b with exponents folded modulo x^n - 1");
    m.def("reciprocal", &reciprocal, py::arg("w"), py::arg("k"),
          "x^k * w(1/x); requires k >= degree(w)");
    m.def("cyclic_autocorrelation", &cyclic_autocorrelation, py::arg("w"), py::arg("n"));
    m.def("divide", &divide, py::arg("num"), py::arg("den"),
          "integer long division; stops early at a non-integer quotient step");
    m.def("exact_divide", &exact_divide, py::arg("num"), py::arg("den"));
    m.def("eval_at_root", &eval_at_root, py::arg("p"), py::arg("s"), py::arg("j"),
          "p evaluated at exp(2*pi*i*j/s)");

    // ---- dense matrices and spectra ---------------------------------------
    py::class_<RealMatrix>(m, "RealMatrix", py::buffer_protocol())
        .def(py::init(&matrix_from_array), py::arg("array"))
        .def_readonly("rows", &RealMatrix::rows)
        .def_readonly("cols", &RealMatrix::cols)
        .def("at", [](const RealMatrix& mat, std::size_t i, std::size_t j) {
            if (i >= mat.rows || j >= mat.cols) throw py::index_error();
            return mat.at(i, j);
        })
        .def("numpy", &matrix_to_array)
        .def_static("identity", &RealMatrix::identity, py::arg("n"))
        .def(py::self == py::self)
        .def_buffer([](RealMatrix& mat) {
            return py::buffer_info(mat.data.data(), sizeof(double),
                                   py::format_descriptor<double>::format(), 2,
                                   {mat.rows, mat.cols}, {sizeof(double) * mat.cols,
                                   sizeof(double)});
        });
    py::implicitly_convertible<py::array, RealMatrix>();

    auto spectrum =
        py::class_<Spectrum>(m, "Spectrum")
            .def_static("from_values", &Spectrum::from_values, py::arg("values"),
                        py::arg("cluster_tol") = std::nullopt)
            .def_property_readonly("values", &Spectrum::values)
            .def_property_readonly("clusters", &Spectrum::clusters)
            .def_property_readonly("cluster_tol", &Spectrum::cluster_tol)
            .def("sum", &Spectrum::sum)
            .def("__len__", &Spectrum::size)
            .def("__repr__", [](const Spectrum& s) {
                std::ostringstream ss;
                ss << "Spectrum(n=" << s.size() << ", clusters=[";
                for (std::size_t i = 0; i < s.clusters().size(); ++i) {
                    if (i) ss << ", ";
                    ss << s.clusters()[i].value << " x " << s.clusters()[i].multiplicity;
                }
                ss << "])";
                return ss.str();
            });
    py::class_<Spectrum::Cluster>(spectrum, "Cluster")
        .def_readonly("value", &Spectrum::Cluster::value)
        .def_readonly("multiplicity", &Spectrum::Cluster::multiplicity)
        .def("__repr__", [](const Spectrum::Cluster& c) {
            std::ostringstream ss;
            ss << "Cluster(value=" << c.value << ", multiplicity=" << c.multiplicity << ")";
            return ss.str();
        });

    m.def("sym_eig", &sym_eig, py::arg("s"), py::arg("tol") = kDefaultEigTol,
          py::arg("cluster_tol") = std::nullopt,
          "eigenvalues of a symmetric matrix (cyclic Jacobi)");
    m.def("gram", &gram, py::arg("h"), "H^T * H, exactly symmetric");

    // ---- polynomial parity-check matrices ----------------------------------
    py::enum_<Layout>(m, "Layout")
        .value("BLOCK_OF_CIRCULANTS", Layout::BlockOfCirculants)
        .value("CIRCULANT_OF_BLOCKS", Layout::CirculantOfBlocks);

    py::class_<PolyMatrix>(m, "PolyMatrix")
        .def(py::init<std::size_t, std::size_t, std::size_t, std::vector<IntPoly>>(),
             py::arg("block_rows"), py::arg("block_cols"), py::arg("r"), py::arg("entries"))
        .def_readonly("block_rows", &PolyMatrix::block_rows)
        .def_readonly("block_cols", &PolyMatrix::block_cols)
        .def_readonly("r", &PolyMatrix::r)
        .def("entry",
             [](const PolyMatrix& p, std::size_t i, std::size_t j) {
                 if (i >= p.block_rows || j >= p.block_cols) throw py::index_error();
                 return p.entry(i, j);
             },
             py::arg("i"), py::arg("j"))
        .def(py::self == py::self)
        .def("to_text", &to_qc_text)
        .def("to_json_text",
             [](const PolyMatrix& p) {
                 nlohmann::json j = p;
                 return j.dump(2);
             })
        .def("__repr__", [](const PolyMatrix& p) {
            return "PolyMatrix(" + std::to_string(p.block_rows) + "x" +
                   std::to_string(p.block_cols) + ", r=" + std::to_string(p.r) + ")";
        });

    py::class_<ScalarMatrix>(m, "ScalarMatrix")
        .def_readonly("layout", &ScalarMatrix::layout)
        .def_readonly("block_rows", &ScalarMatrix::block_rows)
        .def_readonly("block_cols", &ScalarMatrix::block_cols)
        .def_readonly("r", &ScalarMatrix::r)
        .def_readonly("matrix", &ScalarMatrix::matrix);

    py::class_<CodeProfile>(m, "CodeProfile")
        .def_readonly("n", &CodeProfile::n)
        .def_readonly("c", &CodeProfile::c)
        .def_readonly("d", &CodeProfile::d)
        .def_readonly("regular", &CodeProfile::regular)
        .def_readonly("has_zero_col", &CodeProfile::has_zero_col)
        .def_readonly("has_zero_row", &CodeProfile::has_zero_row)
        .def_readonly("col_weights", &CodeProfile::col_weights)
        .def_readonly("row_weights", &CodeProfile::row_weights);

    m.def("parse_poly_matrix",
          [](const std::string& text) { return parse_poly_matrix(text); }, py::arg("text"),
          "parse the bracketed text form or the JSON form");
    m.def("expand_scalar", &expand_scalar, py::arg("p"), py::arg("layout"));
    m.def("profile", &profile, py::arg("scalar_matrix"));
    m.def("gram_spectrum_reduced", &gram_spectrum_reduced, py::arg("p"),
          py::arg("tol") = kDefaultEigTol, py::arg("cluster_tol") = std::nullopt,
          "Gram spectrum via L x L eigenproblems at the r-th roots of unity");
    m.def("gram_spectrum_dense", &gram_spectrum_dense, py::arg("p"),
          py::arg("tol") = kDefaultEigTol, py::arg("cluster_tol") = std::nullopt,
          "Gram spectrum via the dense expansion (oracle path)");
    m.def("circulant_spectrum", &circulant_spectrum, py::arg("w"), py::arg("n"),
          py::arg("cluster_tol") = std::nullopt,
          "spectrum of C^T * C for the circulant with first column w");

    // ---- bounds, equality condition, cone ----------------------------------
    py::class_<SpectrumSummary>(m, "SpectrumSummary")
        .def_readonly("lambda1", &SpectrumSummary::lambda1)
        .def_readonly("lambda1_multiplicity", &SpectrumSummary::lambda1_multiplicity)
        .def_readonly("lambda2", &SpectrumSummary::lambda2)
        .def_readonly("gap", &SpectrumSummary::gap)
        .def_readonly("distinct_count", &SpectrumSummary::distinct_count);

    py::class_<EqualityReport>(m, "EqualityReport")
        .def_readonly("holds", &EqualityReport::holds)
        .def_readonly("d", &EqualityReport::d)
        .def_readonly("lambda1", &EqualityReport::lambda1)
        .def_readonly("mu_defined", &EqualityReport::mu_defined)
        .def_readonly("mu", &EqualityReport::mu)
        .def_readonly("lambda2", &EqualityReport::lambda2)
        .def_readonly("r_poly", &EqualityReport::r_poly)
        .def_readonly("residual", &EqualityReport::residual)
        .def_readonly("reason", &EqualityReport::reason)
        .def_readonly("autocorrelation", &EqualityReport::autocorrelation);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("n", &BoundReport::n)
        .def_readonly("c", &BoundReport::c)
        .def_readonly("d", &BoundReport::d)
        .def_readonly("lambda1", &BoundReport::lambda1)
        .def_readonly("lambda1_multiplicity", &BoundReport::lambda1_multiplicity)
        .def_readonly("lambda2", &BoundReport::lambda2)
        .def_readonly("pw_bound", &BoundReport::pw_bound)
        .def_readonly("dmin_bound", &BoundReport::dmin_bound)
        .def_readonly("informative", &BoundReport::informative)
        .def_readonly("necessary_condition", &BoundReport::necessary_condition);

    auto violation = py::class_<ConeViolation>(m, "ConeViolation")
                         .def_readonly("kind", &ConeViolation::kind)
                         .def_readonly("row", &ConeViolation::row)
                         .def_readonly("col", &ConeViolation::col);
    py::enum_<ConeViolation::Kind>(violation, "Kind")
        .value("NONNEGATIVITY", ConeViolation::Kind::Nonnegativity)
        .value("CHECK_DOMINATION", ConeViolation::Kind::CheckDomination);

    py::class_<ConeCheck>(m, "ConeCheck")
        .def_readonly("member", &ConeCheck::member)
        .def_readonly("violation", &ConeCheck::violation);

    m.def("summarize", &summarize, py::arg("spectrum"),
          "largest and second-largest eigenvalue clusters");
    m.def("awgnc_pw_bound", &awgnc_pw_bound, py::arg("n"), py::arg("c"), py::arg("summary"),
          "n * (2c - lambda2) / (lambda1 - lambda2)");
    m.def("tanner_dmin_bound", &tanner_dmin_bound, py::arg("n"), py::arg("c"), py::arg("d"),
          py::arg("summary"), "n * (2/d) * (2c + d - 2 - lambda2) / (lambda1 - lambda2)");
    m.def("check_necessary_condition", &check_necessary_condition, py::arg("spectrum"),
          py::arg("n"), "exactly two clusters with multiplicities 1 and n-1");
    m.def("check_equality_condition", &check_equality_condition, py::arg("w"), py::arg("n"),
          "exact two-eigenvalue test for a binary circulant row polynomial");
    m.def("make_bound_report", &make_bound_report, py::arg("profile"), py::arg("spectrum"));
    m.def("cone_membership", &cone_membership, py::arg("h"), py::arg("omega"),
          py::arg("tol") = 1e-9, "fundamental-cone membership for a 0/1 matrix");
    m.def("pseudo_weight", &pseudo_weight, py::arg("omega"),
          "(sum |w_i|)^2 / (sum w_i^2)");
    m.def("parse_real_vector",
          [](const std::string& text) { return parse_real_vector(text); }, py::arg("text"));

    // ---- nested circulants --------------------------------------------------
    py::class_<NestedCirculant>(m, "NestedCirculant")
        .def(py::init<std::vector<std::size_t>, std::vector<double>>(), py::arg("dims"),
             py::arg("coeffs"))
        .def_readonly("dims", &NestedCirculant::dims)
        .def_readonly("coeffs", &NestedCirculant::coeffs)
        .def_property_readonly("levels", &NestedCirculant::levels)
        .def("__len__", &NestedCirculant::size)
        .def("to_json_text",
             [](const NestedCirculant& nc) {
                 nlohmann::json j = nc;
                 return j.dump(2);
             })
        .def("__repr__", [](const NestedCirculant& nc) {
            std::ostringstream ss;
            ss << "NestedCirculant(dims=[";
            for (std::size_t i = 0; i < nc.dims.size(); ++i) {
                if (i) ss << ", ";
                ss << nc.dims[i];
            }
            ss << "], n=" << nc.size() << ")";
            return ss.str();
        });

    m.def("parse_nested", [](const std::string& text) { return parse_nested(text); },
          py::arg("text"));
    m.def("parse_dense_matrix",
          [](const std::string& text) { return parse_dense_matrix(text); }, py::arg("text"));
    m.def("nested_expand", &nested_expand, py::arg("nc"));
    m.def("nested_is_symmetric", &nested_is_symmetric, py::arg("nc"));
    m.def("nested_eval",
          [](const NestedCirculant& nc, const std::vector<std::size_t>& indices) {
              return nested_eval(nc, RootTuple{indices});
          },
          py::arg("nc"), py::arg("indices"),
          "coefficient polynomial at the root-of-unity tuple picked by `indices`");
    m.def("nested_eigenvalues", &nested_eigenvalues, py::arg("nc"));
    m.def("nested_spectrum", &nested_spectrum, py::arg("nc"),
          py::arg("cluster_tol") = std::nullopt);
    m.def("nested_detect", &nested_detect, py::arg("matrix"), py::arg("dims"));
    m.def("nested_gram", &nested_gram, py::arg("nc"));

    m.attr("DEFAULT_EIG_TOL") = kDefaultEigTol;
    m.attr("__version__") = "0.1.0";
}
