#include "cmclab/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

const char* const kSides[] = {"primary", "shifted"};

const char* const kSurfaceChecks[] = {
    "conformality",     "isothermic",         "metric_rel",   "hopf_modulus_rel",
    "hopf_signed_rel",  "hopf_phase_spread",  "hopf_modulus_std", "mean_rel",
    "mean_sign_mismatch", "mean_std",         "normal_crosscheck",
};

std::string side_check(const char* side, const char* check) {
  return std::string(side) + "_" + check;
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Wrap an angle into [-pi/2, pi/2).
double wrap_half_turn(double a) {
  const double pi = std::numbers::pi;
  a = std::fmod(a + 0.5 * pi, pi);
  if (a < 0.0) a += pi;
  return a - 0.5 * pi;
}

struct Stats {
  double n = 0.0, sum = 0.0, sum_sq = 0.0;
  void add(double v) {
    n += 1.0;
    sum += v;
    sum_sq += v * v;
  }
  double std_dev() const {
    if (n < 2.0) return 0.0;
    const double mean = sum / n;
    return std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
  }
};

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "fail";
}

const std::vector<std::string>& check_registry() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {
        "gauss_residual_max",     "frame_det_drift",           "frame_two_path",
        "frame_oracle_error",     "parallel_identity_residual", "equidistance_max_deviation",
        "normal_unit_primary",    "normal_orthogonal_primary", "normal_unit_shifted",
        "normal_orthogonal_shifted",
    };
    for (const char* side : kSides) {
      for (const char* check : kSurfaceChecks) n.push_back(side_check(side, check));
    }
    n.push_back("lawson_primary_vs_dual_homothety");
    n.push_back("lawson_shifted_vs_surface_homothety");
    return n;
  }();
  return names;
}

const Tolerances& default_tolerances() {
  static const Tolerances tol = [] {
    Tolerances t = {
        {"gauss_residual_max", 1e-3},
        {"frame_det_drift", 1e-8},
        {"frame_two_path", 1e-6},
        {"frame_oracle_error", 1e-6},
        {"parallel_identity_residual", 1e-11},
        {"equidistance_max_deviation", 1e-9},
        {"normal_unit_primary", 1e-9},
        {"normal_orthogonal_primary", 1e-9},
        {"normal_unit_shifted", 1e-9},
        {"normal_orthogonal_shifted", 1e-9},
        {"lawson_primary_vs_dual_homothety", 1e-12},
        {"lawson_shifted_vs_surface_homothety", 1e-12},
    };
    for (const char* side : kSides) {
      for (const char* check : kSurfaceChecks) t[side_check(side, check)] = 5e-3;
      t[side_check(side, "mean_sign_mismatch")] = 0.0;
    }
    return t;
  }();
  return tol;
}

Tolerances merge_tolerances(const Tolerances& overrides) {
  Tolerances t = default_tolerances();
  for (const auto& [name, value] : overrides) {
    if (!t.contains(name)) throw Error(ErrorKind::Configuration, "unknown tolerance '" + name + "'");
    if (!(value >= 0.0)) {
      throw Error(ErrorKind::Configuration, "tolerance '" + name + "' must be non-negative");
    }
    t[name] = value;
  }
  return t;
}

bool VerificationReport::passed() const {
  for (const CheckRecord& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

const CheckRecord& VerificationReport::check(const std::string& name) const {
  for (const CheckRecord& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::InvalidInput, "report has no check named '" + name + "'");
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "CMC surfaces in H^3: verification report\n";
  for (const auto& [key, value] : metadata) out << "  " << key << ": " << value << '\n';
  out << '\n';
  std::size_t width = 0;
  for (const CheckRecord& c : checks) width = std::max(width, c.name.size());
  for (const CheckRecord& c : checks) {
    out << "  [" << (c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIP")
        << "] " << c.name << std::string(width - c.name.size() + 2, ' ');
    out.precision(6);
    out << std::scientific << c.value << "  (tolerance " << c.tolerance << ")\n";
    out << std::defaultfloat;
  }
  out << "\noverall: " << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string VerificationReport::to_machine() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << '\n';
  for (const CheckRecord& c : checks) {
    out << c.name << ' ' << c.value << ' ' << c.tolerance << ' ' << to_string(c.status) << '\n';
  }
  return out.str();
}

VerificationReport VerificationReport::from_machine(const std::string& text) {
  VerificationReport r;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos || eq < 2) {
        throw Error(ErrorKind::Configuration, "malformed report metadata: " + line);
      }
      r.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    std::istringstream ls(line);
    CheckRecord c;
    std::string value, tolerance, status;
    if (!(ls >> c.name >> value >> tolerance >> status)) {
      throw Error(ErrorKind::Configuration, "malformed report line: " + line);
    }
    c.value = std::stod(value);
    c.tolerance = std::stod(tolerance);
    if (status == "pass") {
      c.status = CheckStatus::Pass;
    } else if (status == "fail") {
      c.status = CheckStatus::Fail;
    } else if (status == "skip") {
      c.status = CheckStatus::Skip;
    } else {
      throw Error(ErrorKind::Configuration, "unknown check status: " + status);
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

double closed_form_distance(const ClosedFormData& a, const ClosedFormData& b,
                            bool ignore_mean_sign) {
  const double mean = ignore_mean_sign ? relative(std::abs(a.mean), std::abs(b.mean))
                                       : relative(a.mean, b.mean);
  return std::max({relative(a.metric_factor, b.metric_factor), relative(a.hopf, b.hopf), mean});
}

SurfaceAgreement compare_with_closed_form(const MeasuredData& m,
                                          const Grid<ClosedFormData>& closed) {
  if (!(m.grid() == closed.spec())) {
    throw Error(ErrorKind::InvalidInput, "compare_with_closed_form: grids differ");
  }
  const GridSpec& g = m.grid();
  SurfaceAgreement a;
  Stats hm, qm;
  double mismatches = 0.0, count = 0.0;
  double phase_ref = 0.0;
  bool have_ref = false;
  auto worst = [](double& slot, double v) {
    if (!(v <= slot)) slot = v;
  };
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const ClosedFormData& c = closed(i, j);
      const double E = m.E(i, j), G = m.G(i, j);
      const Complex Q = m.Qm(i, j);
      const double H = m.Hm(i, j);
      worst(a.conformality, std::abs(m.Fc(i, j)) / E);
      worst(a.isothermic, std::abs(E - G) / E);
      worst(a.metric_rel, std::abs(E - c.metric_factor) / c.metric_factor);
      worst(a.hopf_modulus_rel, std::abs(std::abs(Q) - std::abs(c.hopf)) / std::abs(c.hopf));
      worst(a.hopf_signed_rel, std::abs(Q - c.hopf) / std::abs(c.hopf));
      const double phase = std::arg(Q);
      if (!have_ref) {
        phase_ref = phase;
        have_ref = true;
      }
      worst(a.hopf_phase_spread, std::abs(wrap_half_turn(phase - phase_ref)));
      worst(a.mean_rel, std::abs(std::abs(H) - std::abs(c.mean)) / std::abs(c.mean));
      if ((H > 0.0) != (c.mean > 0.0)) mismatches += 1.0;
      count += 1.0;
      hm.add(H);
      qm.add(std::abs(Q));
    }
  }
  a.mean_sign_mismatch = count > 0.0 ? mismatches / count : 0.0;
  a.mean_std = hm.std_dev();
  a.hopf_modulus_std = qm.std_dev();
  return a;
}

VerificationReport verify_theorem(const SurfaceData& data, const SpectralParam& lambda,
                                  const MeasuredData& primary, const MeasuredData& shifted,
                                  const TheoremEvidence& ev, const Tolerances& tolerances) {
  if (!(primary.grid() == data.grid()) || !(shifted.grid() == data.grid())) {
    throw Error(ErrorKind::InvalidInput, "verify_theorem: inputs live on different grids");
  }
  const Tolerances tol = merge_tolerances(tolerances);
  const double lam = lambda.lambda();

  VerificationReport report;
  auto add = [&](const std::string& name, double value) {
    const double t = tol.at(name);
    report.checks.push_back({name, value, t, value <= t ? CheckStatus::Pass : CheckStatus::Fail});
  };

  add("gauss_residual_max", ev.gauss_residual_max);
  add("frame_det_drift", ev.det_drift);
  add("frame_two_path", ev.two_path);
  if (ev.oracle_error) {
    add("frame_oracle_error", *ev.oracle_error);
  } else {
    report.checks.push_back({"frame_oracle_error", 0.0, tol.at("frame_oracle_error"), CheckStatus::Skip});
  }
  add("parallel_identity_residual", ev.parallel.relative());
  add("equidistance_max_deviation", ev.equidistance_max_deviation);
  add("normal_unit_primary", ev.normal_primary.unit);
  add("normal_orthogonal_primary", ev.normal_primary.orthogonal);
  add("normal_unit_shifted", ev.normal_shifted.unit);
  add("normal_orthogonal_shifted", ev.normal_shifted.orthogonal);

  const SurfaceAgreement sides[] = {
      compare_with_closed_form(primary, closed_form_primary(data, lam)),
      compare_with_closed_form(shifted, closed_form_shifted(data, lam)),
  };
  const double crosscheck[] = {ev.normal_crosscheck_primary, ev.normal_crosscheck_shifted};
  for (int k = 0; k < 2; ++k) {
    const SurfaceAgreement& a = sides[k];
    const char* side = kSides[k];
    add(side_check(side, "conformality"), a.conformality);
    add(side_check(side, "isothermic"), a.isothermic);
    add(side_check(side, "metric_rel"), a.metric_rel);
    add(side_check(side, "hopf_modulus_rel"), a.hopf_modulus_rel);
    add(side_check(side, "hopf_signed_rel"), a.hopf_signed_rel);
    add(side_check(side, "hopf_phase_spread"), a.hopf_phase_spread);
    add(side_check(side, "hopf_modulus_std"), a.hopf_modulus_std);
    add(side_check(side, "mean_rel"), a.mean_rel);
    add(side_check(side, "mean_sign_mismatch"), a.mean_sign_mismatch);
    add(side_check(side, "mean_std"), a.mean_std);
    add(side_check(side, "normal_crosscheck"), crosscheck[k]);
  }

  // Closed-form Lawson matches on every grid value of u.
  const double s = homothety_scale(data.H(), lam);
  const double s_shifted = homothety_scale_shifted(data.H(), lam);
  double item1 = 0.0, item2 = 0.0;
  for (double u : data.u().values()) {
    const ClosedFormData p = closed_form_primary(u, data.Q(), data.H(), lam);
    const ClosedFormData d = closed_form_shifted(u, data.Q(), data.H(), lam);
    item1 = std::max(item1, closed_form_distance(p, lawson_data(u, data.Q(), data.H(), s, LawsonOf::Dual)));
    item2 = std::max(item2, closed_form_distance(d, lawson_data(u, data.Q(), data.H(), s_shifted, LawsonOf::Surface), true));
  }
  add("lawson_primary_vs_dual_homothety", item1);
  add("lawson_shifted_vs_surface_homothety", item2);

  std::ostringstream num;
  num.precision(17);
  auto meta = [&](const std::string& key, double v) {
    num.str("");
    num << v;
    report.metadata.emplace_back(key, num.str());
  };
  meta("lambda", lam);
  meta("r", lambda.r());
  meta("q", lambda.q());
  meta("H", data.H());
  meta("Q", data.Q());
  meta("homothety_scale", s);
  meta("hx", data.grid().hx());
  meta("hy", data.grid().hy());
  report.metadata.emplace_back("grid", std::to_string(data.grid().nx()) + "x" +
                                           std::to_string(data.grid().ny()));
  if (primary.nonconformal || shifted.nonconformal) {
    report.metadata.emplace_back("warning", "measured metric is non-conformal (|Fc|/E > 0.05)");
  }
  return report;
}

}  // namespace cmclab
