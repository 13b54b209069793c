#ifndef MATCHLET_SUITE_HPP
#define MATCHLET_SUITE_HPP

#include <string>

#include "matchlet/matched_riesz.hpp"
#include "matchlet/meyer.hpp"
#include "matchlet/verification.hpp"

namespace matchlet {

/// Thresholds of the invariant batteries. Defaults are the documented acceptance levels.
struct SuiteOptions {
    // half-integer lattice
    long interpolation_span = 20;
    double interpolation_tolerance = 1e-8;
    double series_agreement_tolerance = 1e-9;
    int frame_grid = 4096;
    double frame_identity_tolerance = 1e-10;
    double bounds_consistency_tolerance = 1e-9;
    int gram_shifts = 32;
    double gram_slack = 1e-6;
    double structure_tolerance = 1e-12;
    int reconstruction_width = 16;
    double roundoff_floor = 1e-13;  // residuals below this count as converged

    // Meyer lattice
    long lattice_count = 8;
    double lattice_tolerance = 1e-8;
    double lattice_agreement_tolerance = 1e-10;
    double recurrence_tolerance = 1e-12;
    double identity_tolerance = 1e-10;
    double derivative_tolerance = 1e-10;
    double bound_tolerance = 1e-12;
    double partition_tolerance = 1e-10;
    int orthonormality_shifts = 8;
    double orthonormality_tolerance = 1e-7;
    int symmetry_samples = 20;
};

/// Suite names: "default" runs every check, "quick" skips Gram, orthonormality and reconstruction.
bool is_known_suite(const std::string& suite);

VerificationReport run_suite(const MatchedWavelet& psi, const std::string& suite = "default",
                             const SuiteOptions& options = {});
VerificationReport run_suite(const MeyerDesign& design, const std::string& suite = "default",
                             const SuiteOptions& options = {});

/// Designs and runs the suite; a rejected design becomes a failing "design" check.
VerificationReport verify_matched(const DataSequence& gamma, const MatchedOptions& design_options = {},
                                  const std::string& suite = "default", const SuiteOptions& options = {});
VerificationReport verify_meyer(const DataSequence& gamma, const MeyerDesignOptions& design_options = {},
                                const std::string& suite = "default", const SuiteOptions& options = {});

}  // namespace matchlet

#endif  // MATCHLET_SUITE_HPP
