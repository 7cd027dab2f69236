#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmclab/measure.hpp"

namespace cmclab {

enum class CheckStatus { Pass, Fail, Skip };

const char* to_string(CheckStatus status);

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Fail;
};

struct VerificationReport {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<CheckRecord> checks;

  bool passed() const;
  /// Throws InvalidInput for unknown names.
  const CheckRecord& check(const std::string& name) const;

  /// Human-readable block.
  std::string to_text() const;
  /// '#'-prefixed metadata lines, then one "name value tolerance status" line
  /// per check, values with 17 significant digits.
  std::string to_machine() const;
  /// Inverse of to_machine. Throws Configuration on malformed lines.
  static VerificationReport from_machine(const std::string& text);
};

using Tolerances = std::map<std::string, double>;

/// Every check name, in report order.
const std::vector<std::string>& check_registry();

/// Frozen defaults, one per registry entry.
const Tolerances& default_tolerances();

/// Defaults with overrides applied. Throws Configuration for unknown names
/// or negative values.
Tolerances merge_tolerances(const Tolerances& overrides);

/// Everything the verification checks need, computed upstream.
struct TheoremEvidence {
  double gauss_residual_max = 0.0;
  double det_drift = 0.0;
  double two_path = 0.0;
  std::optional<double> oracle_error;  ///< cylinder only
  ParallelResidual parallel;
  double equidistance_max_deviation = 0.0;
  NormalDefects normal_primary, normal_shifted;
  double normal_crosscheck_primary = 0.0;
  double normal_crosscheck_shifted = 0.0;
};

/// Compares measured data of F F^* and F D (F D)^* with their closed forms,
/// checks the Lawson matches of both against the homotheties of f^d and f,
/// and folds in the exact-identity evidence.
VerificationReport verify_theorem(const SurfaceData& data, const SpectralParam& lambda,
                                  const MeasuredData& primary, const MeasuredData& shifted,
                                  const TheoremEvidence& evidence, const Tolerances& tolerances);

/// Statistics of measured-vs-closed-form agreement on interior points.
struct SurfaceAgreement {
  double conformality = 0.0;       ///< max |Fc| / E
  double isothermic = 0.0;         ///< max |E - G| / E
  double metric_rel = 0.0;         ///< max |E - metric| / metric
  double hopf_modulus_rel = 0.0;   ///< max ||Qm| - |hopf|| / |hopf|
  double hopf_signed_rel = 0.0;    ///< max |Qm - hopf| / |hopf|
  double hopf_phase_spread = 0.0;  ///< max deviation of arg Qm, mod pi
  double hopf_modulus_std = 0.0;
  double mean_rel = 0.0;           ///< max ||Hm| - |mean|| / |mean|
  double mean_sign_mismatch = 0.0; ///< fraction of points with sign(Hm) != sign(mean)
  double mean_std = 0.0;
};

SurfaceAgreement compare_with_closed_form(const MeasuredData& measured,
                                          const Grid<ClosedFormData>& closed);

/// max relative difference of the three fields; with `ignore_mean_sign` the
/// means are compared in modulus.
double closed_form_distance(const ClosedFormData& a, const ClosedFormData& b,
                            bool ignore_mean_sign = false);

}  // namespace cmclab
