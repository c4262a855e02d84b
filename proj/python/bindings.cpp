#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sievelab/characters.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/exp_sums.hpp"
#include "sievelab/runner.hpp"
#include "sievelab/sequence.hpp"
#include "sievelab/sieve.hpp"

namespace py = pybind11;
using namespace sievelab;

namespace {

CoefficientSequence to_sequence(const std::vector<std::complex<double>>& values, i64 M) { return {M, values}; }

py::object angle_or_none(const CharacterValue& v) {
  if (v.zero) return py::none();
  return py::make_tuple(v.angle.num(), v.angle.den());
}

py::dict report_dict(const SumReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["bound"] = r.bound;
  d["passed"] = r.passed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sievelab, m) {
  m.doc() = "Large-sieve experiments for special characters modulo prime squares";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NotInvertible>(m, "NotInvertible", base.ptr());
  py::register_exception<NotAUnit>(m, "NotAUnit", base.ptr());
  py::register_exception<ModulusOverflow>(m, "ModulusOverflow", base.ptr());
  py::register_exception<NotDistinct>(m, "NotDistinct", base.ptr());
  py::register_exception<RangeTooLong>(m, "RangeTooLong", base.ptr());
  py::register_exception<SizeCap>(m, "SizeCap", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<LengthMismatch>(m, "LengthMismatch", base.ptr());

  // modular
  m.def("is_prime", [](u64 n) { return is_prime(n); }, py::arg("n"));
  m.def("primes_in", &primes_in, py::arg("lo"), py::arg("hi"));
  m.def("inv_mod", &inv_mod, py::arg("x"), py::arg("m"));
  m.def("euler_phi", &euler_phi, py::arg("n"));
  m.def("mobius", &mobius, py::arg("n"));
  m.def("divisor_count", &divisor_count, py::arg("n"));
  m.def("primitive_root", &primitive_root, py::arg("p"), py::arg("power") = 1);
  m.def("discrete_log", &discrete_log, py::arg("g"), py::arg("x"), py::arg("m"), py::arg("order"));

  // characters
  m.def(
      "teichmuller_split",
      [](i64 x, i64 p) {
        const auto d = teichmuller_split(x, p);
        return py::make_tuple(d.t, d.h);
      },
      py::arg("x"), py::arg("p"), "(t, h) with x = t*h mod p^2, t^(p-1) = 1 and h = 1 mod p");
  m.def(
      "xi_eval", [](i64 p, i64 a, i64 j, i64 x) { return angle_or_none(SpecialCharacter(p, a, j)(x)); },
      py::arg("p"), py::arg("a"), py::arg("j"), py::arg("x"),
      "Angle (num, den) of the character value, or None where it vanishes");
  m.def(
      "character_table",
      [](i64 p, i64 a) {
        std::vector<std::vector<py::object>> rows;
        for (const auto& chi : enumerate_G_a(p, a)) {
          std::vector<py::object> row;
          for (i64 x = 0; x < chi.modulus(); ++x) row.push_back(angle_or_none(chi(x)));
          rows.push_back(std::move(row));
        }
        return rows;
      },
      py::arg("p"), py::arg("a"), "Values of every member of G_a on 0..p^2-1");

  // exponential sums
  m.def("kloosterman", &kloosterman, py::arg("m"), py::arg("n"), py::arg("c"));
  m.def("ramanujan", &ramanujan, py::arg("l"), py::arg("q"));
  m.def("weil_check", [](i64 mm, i64 n, i64 c) { return report_dict(weil_check(mm, n, c)); }, py::arg("m"),
        py::arg("n"), py::arg("c"));
  m.def(
      "gcd_sum",
      [](i64 q) {
        const auto g = gcd_sum(q);
        return py::make_tuple(g.value, g.bound);
      },
      py::arg("q"));

  py::class_<AmplitudeSpec>(m, "AmplitudeSpec")
      .def(py::init([](i64 q, i64 q1, i64 q2, i64 l, i64 l1, i64 l2) { return AmplitudeSpec{q, q1, q2, l, l1, l2}; }),
           py::arg("q"), py::arg("q1"), py::arg("q2"), py::arg("l") = 0, py::arg("l1") = 0, py::arg("l2") = 0)
      .def_readwrite("q", &AmplitudeSpec::q)
      .def_readwrite("q1", &AmplitudeSpec::q1)
      .def_readwrite("q2", &AmplitudeSpec::q2)
      .def_readwrite("l", &AmplitudeSpec::l)
      .def_readwrite("l1", &AmplitudeSpec::l1)
      .def_readwrite("l2", &AmplitudeSpec::l2)
      .def_property_readonly("modulus", &AmplitudeSpec::modulus)
      .def("__repr__", [](const AmplitudeSpec& s) {
        std::ostringstream os;
        os << "AmplitudeSpec(q=" << s.q << ", q1=" << s.q1 << ", q2=" << s.q2 << ", l=" << s.l << ", l1=" << s.l1
           << ", l2=" << s.l2 << ")";
        return os.str();
      });
  m.def("amplitude_sum", [](const AmplitudeSpec& s, i64 a) { return amplitude_sum(s, a).value; }, py::arg("spec"),
        py::arg("a"));
  m.def("factorization_check", [](const AmplitudeSpec& s) { return report_dict(factorization_check(s)); },
        py::arg("spec"));
  m.def("complete_incomplete", &complete_incomplete, py::arg("spec"), py::arg("n0"), py::arg("n1"));
  m.def("incomplete_direct", &incomplete_direct, py::arg("spec"), py::arg("n0"), py::arg("n1"));

  // sieve
  m.def(
      "load_sequence",
      [](const std::string& source, i64 M, i64 N, std::optional<u64> seed) {
        return load_sequence(SequenceSource::parse(source), M, N, seed).values();
      },
      py::arg("source"), py::arg("M"), py::arg("N"), py::arg("seed") = py::none());
  m.def(
      "lhs_character_side",
      [](i64 Q, const std::vector<std::complex<double>>& v, i64 M, i64 a) {
        return lhs_character_side(Q, to_sequence(v, M), a);
      },
      py::arg("Q"), py::arg("values"), py::arg("M") = 0, py::arg("a") = 1);
  m.def(
      "lhs_congruence_side",
      [](i64 Q, const std::vector<std::complex<double>>& v, i64 M) { return lhs_congruence_side(Q, to_sequence(v, M)); },
      py::arg("Q"), py::arg("values"), py::arg("M") = 0);
  m.def(
      "identity_check",
      [](i64 Q, const std::vector<std::complex<double>>& v, i64 M) { return identity_check(Q, to_sequence(v, M)); },
      py::arg("Q"), py::arg("values"), py::arg("M") = 0);
  m.def(
      "classical_mult_lhs",
      [](i64 Q, const std::vector<std::complex<double>>& v, i64 M) { return classical_mult_lhs(Q, to_sequence(v, M)); },
      py::arg("Q"), py::arg("values"), py::arg("M") = 0);
  m.def(
      "extremal_delta",
      [](i64 Q, i64 N, i64 M) {
        ExtremalResult r;
        {
          py::gil_scoped_release release;
          r = extremal_delta(Q, N, M);
        }
        py::dict d;
        d["lambda_max"] = r.lambda_max;
        d["witness"] = r.witness;
        d["residual"] = r.residual;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("Q"), py::arg("N"), py::arg("M") = 0);
  m.def("trivial_envelope", &trivial_envelope, py::arg("Q"), py::arg("N"));
  m.def("theorem_envelope", &theorem_envelope, py::arg("Q"), py::arg("N"));
  m.def("classify_regime", [](i64 Q, i64 N) { return to_string(classify_regime(Q, N)); }, py::arg("Q"), py::arg("N"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = parse_and_dispatch(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI verb in-process; returns (exit_code, stdout, stderr)");
}
