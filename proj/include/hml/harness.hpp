#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hml/grid.hpp"
#include "hml/measure.hpp"

namespace hml {

using ordered_json = nlohmann::ordered_json;

// Everything an experiment decided and measured. payload() is the
// deterministic part; duration_ms stays outside it so reruns byte-match.
struct ExperimentReport {
    std::string name;
    ordered_json parameters = ordered_json::object();
    ordered_json steps = ordered_json::array();
    ordered_json assertions = ordered_json::array();
    bool pass = true;
    double duration_ms = 0.0;

    void assert_that(const std::string& assertion, bool ok, const std::string& detail);
    ordered_json payload() const;
};

// Samples |w| <= 0.99 and compares the derivative form of the sweep series
// against the direct series evaluation; the two sides share no code path.
ExperimentReport run_identity_check(const MomentSequence& m, int sample_count,
                                    std::uint64_t seed);

// The lacunary family at size K: closed vs quadrature conjugate moments,
// Bloch growth, lacunary profile, q1 growth, and condition-2 boundedness.
ExperimentReport run_counterexample(int K, const DiskGrid& grid, const QuadratureScheme& quad);

// All eight criteria across the (1-t)^s family, each on a three-point
// refinement ladder; verdicts must come out plateau for s >= 0 and grow for
// s < 0, never mixed.
ExperimentReport run_power_family_scan(const std::vector<double>& s_list, long N,
                                       const DiskGrid& grid, const QuadratureScheme& quad,
                                       int depth);

// Operator norms of the arc-length sections: strictly increasing in N,
// capped by pi, with the N = 1, 2 values pinned to closed forms.
ExperimentReport run_hilbert_convergence(const std::vector<long>& N_list, double tol);

// Random polynomials f: |pairing(f^2)| / |f|_{H2}^2 never beats the
// quadratic form constant of the matching section. The H1 ratio
// |pairing(f^2)| / |f^2|_{H1} is recorded without an assertion.
ExperimentReport run_pairing_probe(const RadialMeasure& mu, int degree, int trials,
                                   std::uint64_t seed);

}  // namespace hml
