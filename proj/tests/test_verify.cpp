#include <set>

#include "doctest.h"
#include "helpers.hpp"

#include "cmclab/error.hpp"
#include "cmclab/verify.hpp"

using namespace cmclab;

namespace {

VerificationReport cylinder_report(const Tolerances& tol = {}) {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 101, 101);
  const SurfaceData data = cylinder_data(g);
  const SpectralParam lambda(0.5, 0.1);
  const ExtendedFrame f = integrate_frame(data, lambda);
  const ExtendedFrame s = shift_frame(f);
  const H3SurfaceGrid sp = surface_primary(f), ss = surface_primary(s);
  const NormalField np = normal_field(f), ns = normal_field(s);

  TheoremEvidence ev;
  ev.gauss_residual_max = max_abs_interior(gauss_residual(data));
  ev.det_drift = det_drift(f).value;
  ev.oracle_error = cylinder_oracle_error(f);
  ev.parallel = parallel_identity_residual(f);
  ev.normal_primary = normal_defects(np, sp);
  ev.normal_shifted = normal_defects(ns, ss);
  ev.normal_crosscheck_primary = normal_agreement(reconstruct_normal(sp), np);
  ev.normal_crosscheck_shifted = normal_agreement(reconstruct_normal(ss), ns);
  return verify_theorem(data, lambda, measure(sp, np), measure(ss, ns), ev, tol);
}

}  // namespace

TEST_CASE("registry and default tolerances cover each other") {
  const auto& names = check_registry();
  const std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == names.size());
  CHECK(default_tolerances().size() == names.size());
  for (const auto& n : names) CHECK(default_tolerances().contains(n));
}

TEST_CASE("tolerance overrides") {
  const Tolerances t = merge_tolerances({{"frame_two_path", 1e-7}});
  CHECK(t.at("frame_two_path") == 1e-7);
  CHECK(t.at("frame_det_drift") == 1e-8);
  CHECK_THROWS_AS(merge_tolerances({{"no_such_check", 1.0}}), Error);
  CHECK_THROWS_AS(merge_tolerances({{"frame_two_path", -1.0}}), Error);
}

TEST_CASE("cylinder report passes and lists every registered check once") {
  const VerificationReport r = cylinder_report();
  std::vector<std::string> names;
  for (const auto& c : r.checks) names.push_back(c.name);
  CHECK(names == check_registry());
  for (const auto& c : r.checks) {
    INFO(c.name << " = " << c.value << " (tol " << c.tolerance << ")");
    CHECK(c.status == CheckStatus::Pass);
  }
  CHECK(r.passed());
  CHECK(r.check("primary_mean_sign_mismatch").value == 0.0);
  CHECK(r.check("shifted_mean_sign_mismatch").value == 0.0);
  CHECK(r.check("primary_hopf_signed_rel").value <= 5e-3);
  CHECK(r.check("shifted_hopf_signed_rel").value <= 5e-3);
  CHECK_THROWS_AS(r.check("bogus"), Error);
}

TEST_CASE("a tightened tolerance turns into a failure") {
  const VerificationReport r = cylinder_report({{"primary_mean_rel", 1e-12}});
  CHECK_FALSE(r.passed());
  CHECK(r.check("primary_mean_rel").status == CheckStatus::Fail);
}

TEST_CASE("missing oracle is a skip, not a failure") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 21, 21);
  const SurfaceData data = cylinder_data(g);
  const SpectralParam lambda(0.5, 0.1);
  const ExtendedFrame f = integrate_frame(data, lambda);
  const ExtendedFrame s = shift_frame(f);
  TheoremEvidence ev;
  const VerificationReport r =
      verify_theorem(data, lambda, measure(surface_primary(f), normal_field(f)),
                     measure(surface_primary(s), normal_field(s)), ev, {});
  CHECK(r.check("frame_oracle_error").status == CheckStatus::Skip);
}

TEST_CASE("NaN evidence fails its check") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 21, 21);
  const SurfaceData data = cylinder_data(g);
  const SpectralParam lambda(0.5, 0.1);
  const ExtendedFrame f = integrate_frame(data, lambda);
  TheoremEvidence ev;
  ev.two_path = std::nan("");
  const MeasuredData m = measure(surface_primary(f), normal_field(f));
  const VerificationReport r = verify_theorem(data, lambda, m, m, ev, {});
  CHECK(r.check("frame_two_path").status == CheckStatus::Fail);
}

TEST_CASE("mismatched grids are a precondition violation") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 21, 21);
  const GridSpec h(-1.0, 1.0, -1.0, 1.0, 23, 21);
  const SpectralParam lambda(0.5, 0.1);
  const ExtendedFrame f = integrate_frame(cylinder_data(h), lambda);
  const MeasuredData m = measure(surface_primary(f), normal_field(f));
  CHECK_THROWS_AS(verify_theorem(cylinder_data(g), lambda, m, m, {}, {}), Error);
}

TEST_CASE("machine report round trip") {
  const VerificationReport r = cylinder_report();
  const std::string text = r.to_machine();
  const VerificationReport back = VerificationReport::from_machine(text);
  CHECK(back.to_machine() == text);
  CHECK(back.checks.size() == r.checks.size());
  CHECK(back.metadata == r.metadata);
  CHECK_THROWS_AS(VerificationReport::from_machine("name 1 2 maybe\n"), Error);
  CHECK(r.to_text().find("overall: PASS") != std::string::npos);
}
