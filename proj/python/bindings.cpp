#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nullseries/cantor.hpp"
#include "nullseries/config.hpp"
#include "nullseries/errors.hpp"
#include "nullseries/harmonic.hpp"
#include "nullseries/pla.hpp"
#include "nullseries/profile.hpp"
#include "nullseries/uniqueness.hpp"
#include "nullseries/weights.hpp"

namespace py = pybind11;
using namespace nullseries;

namespace {

WeightSpec weight_from(const std::string& kind, double p) {
    if (kind == "power") return WeightSpec::power(p);
    if (kind == "t_log") return WeightSpec::t_log(p > 0 ? p : 2.0);
    if (kind == "t_log_pow") return WeightSpec::t_log_pow(p);
    fail(ErrorKind::config, "unknown weight kind '" + kind + "'");
}

SpectralSeries series_from(const std::vector<cplx>& fft_order) {
    SpectralSeries s;
    s.coeffs = fft_order;
    return s;
}

py::dict schedule_dict(const ThicknessSchedule& s) {
    py::dict d;
    d["phi"] = s.phi;
    d["sigma"] = s.sigma;
    d["tau"] = s.tau;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "null-series construction and uniqueness checks";
    m.attr("__version__") = code_version();

    py::register_exception<Error>(m, "NullSeriesError");

    m.def("eval_weight", [](const std::string& kind, double p, double t) { return eval_weight(weight_from(kind, p), t); },
          py::arg("kind"), py::arg("p"), py::arg("t"));

    m.def(
        "schedule",
        [](const std::string& kind, double p, int n_max) {
            WeightSpec w = weight_from(kind, p);
            return schedule_dict(build_schedule(w, derive_omega2(w), n_max));
        },
        py::arg("kind") = "t_log", py::arg("p") = 2.0, py::arg("n_max") = 10);

    m.def(
        "cantor_endpoints",
        [](int n_max, std::uint64_t seed) {
            WeightSpec w = WeightSpec::t_log();
            CantorSet c = generate(build_schedule(w, derive_omega2(w), n_max), n_max, seed);
            py::dict d;
            d["left"] = c.a;
            d["sigma"] = c.schedule.sigma;
            return d;
        },
        py::arg("n_max"), py::arg("seed") = 0);

    m.def("analyze", [](const std::vector<cplx>& v) {
        GridFunction g;
        g.values = v;
        return analyze(g).coeffs;
    });
    m.def("synthesize", [](const std::vector<cplx>& c, std::size_t N) { return synthesize(series_from(c), N).values; });
    m.def("conjugate", [](const std::vector<double>& v) { return conjugate(GridFunction::from_real(v)).real(); });
    m.def("poisson", [](const std::vector<cplx>& c, cplx z) {
        return poisson_eval(series_from(c), z, PoissonMode::harmonic_extension);
    });

    m.def(
        "harmonic_measure",
        [](const std::string& domain, double inner, cplx z, const std::string& target, double lo, double hi, long paths,
           std::uint64_t seed) {
            Domain d = domain == "annulus" ? Domain::annulus(inner) : Domain::unit_disk();
            Target t = target == "inner" ? Target::inner_circle()
                       : target == "arc" ? Target::outer_arc(lo, hi)
                       : target == "all" ? Target::everything()
                                         : Target::outer_circle();
            HarmonicMeasureEstimate e = harmonic_measure(d, z, t, paths, seed);
            return py::make_tuple(e.value, e.stderr_);
        },
        py::arg("domain") = "disk", py::arg("inner") = 0.0, py::arg("z") = cplx(0, 0), py::arg("target") = "outer",
        py::arg("lo") = 0.0, py::arg("hi") = 0.0, py::arg("paths") = 10000, py::arg("seed") = 0);

    m.def(
        "truncation",
        [](const std::vector<double>& L, const std::vector<double>& mu, double A, double B, double D) {
            TruncationResult r = truncation_lemma(L, mu, A, B, D);
            return py::make_tuple(r.lhs, r.rhs, r.holds);
        },
        py::arg("L"), py::arg("mu"), py::arg("A"), py::arg("B"), py::arg("D"));

    m.def(
        "audit_synthetic",
        [](double p, std::vector<double> deltas, int k_max) {
            WeightSpec w = WeightSpec::power(p);
            SpectralSeries c = synthetic_tail(w, 1L << 10);
            std::vector<UniquenessAudit> audits;
            for (double d : deltas) audits.push_back(audit_uniqueness(c, w, d, k_max));
            ChainFit f = fit_chain(audits);
            py::dict out;
            out["recursion_pass"] = f.recursion_pass;
            out["laurent_holds"] = f.laurent_holds;
            out["c_values"] = f.c_values;
            out["c_fit"] = f.c_fit;
            return out;
        },
        py::arg("p") = 2.0, py::arg("deltas") = std::vector<double>{1.0 / 16, 1.0 / 64, 1.0 / 256},
        py::arg("k_max") = 8);
}
