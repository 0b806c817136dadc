#include "twoml/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "twoml/analysis.hpp"
#include "twoml/coeff_file.hpp"
#include "twoml/error.hpp"
#include "twoml/frontier.hpp"
#include "twoml/kernel.hpp"
#include "twoml/lvs.hpp"
#include "twoml/meyer.hpp"
#include "twoml/numeric.hpp"
#include "twoml/synthesis.hpp"
#include "twoml/wavelet.hpp"

namespace twoml::cli {

namespace {

struct SynthArgs {
  std::string frontier;
  std::string scheme = "unit";
  double x0 = 0.0;
  int jmax = 0;
  std::string off_index = "equal";
  std::string out;
};

struct EstimateArgs {
  std::string coeffs;
  std::string sigma;
  std::optional<int> j0;
  std::optional<int> jmax;
  std::string out;
};

struct CheckArgs {
  std::string coeffs;
  double alpha = 0.0;
  double gamma = 0.0;
};

struct ReconstructArgs {
  std::string coeffs;
  std::string range;
  std::size_t n = 0;
  std::string out;
  double scale = 1.0;
  std::size_t table_points = 65536;
  double half_width = 32.0;
};

struct ExponentArgs {
  std::string frontier;
  std::string coeffs;
  std::string sigma = "-4:4:0.25";
  std::optional<int> j0;
  std::optional<int> jmax;
};

std::vector<double> split_numbers(const std::string& spec, std::size_t count, const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    const auto v = parse_double(spec.substr(start, colon - start));
    if (!v || !std::isfinite(*v)) {
      throw Error(Errc::BadGrid, std::string("cannot parse ") + what + " '" + spec + "'");
    }
    values.push_back(*v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (values.size() != count) {
    throw Error(Errc::BadGrid, std::string(what) + " must have " + std::to_string(count) +
                                   " colon-separated numbers, got '" + spec + "'");
  }
  return values;
}

std::vector<double> sigma_grid(const std::string& spec) {
  const auto v = split_numbers(spec, 3, "sigma grid lo:hi:step");
  return uniform_grid(v[0], v[1], v[2]);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  return out;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::IncompatibleCurve:
    case Errc::LinearCurveRejected:
      return kIncompatible;
    default:
      return kUsage;
  }
}

int do_synth(const SynthArgs& a, std::ostream& out) {
  const FrontierCurve curve = FrontierCurve::parse(a.frontier);
  if (a.off_index != "equal" && a.off_index != "zero") {
    throw Error(Errc::InvalidArgument, "--off-index must be 'equal' or 'zero'");
  }
  const OffIndexPolicy policy =
      a.off_index == "zero" ? OffIndexPolicy::ZeroOffIndex : OffIndexPolicy::EqualityEverywhere;

  std::optional<CoefficientField> field;
  std::ostringstream diag;
  if (a.scheme == "unit") {
    field = curve.is_linear()
                ? synth_linear(curve.alpha(), curve.gamma(), WeightScheme::unit(), a.x0, a.jmax)
                : synth_general(curve, WeightScheme::unit(), a.x0, a.jmax, policy);
    const ConditionReport rep = condition_check(WeightScheme::unit(), curve, a.x0, a.jmax);
    diag << "condition_check=" << (rep.pass ? "PASS" : "FAIL") << "\n";
  } else if (a.scheme == "meyer") {
    field = synth_meyer(curve, a.x0, a.jmax);
    const ConditionReport rep = condition_check(meyer_scheme(curve, a.x0), curve, a.x0, a.jmax);
    diag << "condition_check=" << (rep.pass ? "PASS" : "FAIL") << "\n";
    diag << "condition_i_terminal=" << format_double(rep.cond_i_terminal) << "\n";
    diag << "index_trajectory_terminal=" << format_double(rep.index_terminal) << "\n";
  } else if (a.scheme == "lvs") {
    if (curve.is_linear()) {
      throw Error(Errc::IncompatibleCurve, "the lvs scheme needs a strictly concave curve");
    }
    if (a.x0 != 0.0) throw Error(Errc::IncompatibleCurve, "the lvs scheme is defined at x0 = 0");
    LVSFrontier gf = g_from_curve(curve);
    field = synth_lvs(gf, a.jmax);
    if (a.jmax >= 1) {
      const CalibrationReport cal = calibrate_convention(gf, std::min(a.jmax, 6));
      diag << "legendre_convention="
           << (cal.chosen == LegendreConvention::InfLinearMinusG ? "inf" : "sup") << "\n";
      diag << "consistency_error=" << format_double(cal.default_error) << "\n";
    }
  } else {
    throw Error(Errc::InvalidArgument, "--scheme must be unit, meyer or lvs");
  }

  std::ofstream file = open_out(a.out);
  write_field(file, *field);
  if (!file) throw Error(Errc::Io, "write to '" + a.out + "' failed");
  out << "entries=" << field->size() << "\n";
  out << "scheme=" << field->scheme_tag() << "\n";
  out << diag.str();
  return kOk;
}

int do_estimate(const EstimateArgs& a, std::ostream&) {
  const CoefficientField field = read_field_file(a.coeffs);
  const std::vector<double> grid = sigma_grid(a.sigma);
  const int j1 = a.jmax.value_or(field.j_max());
  const int j0 = a.j0.value_or(std::max(1, j1 / 2));
  const EstimatedFrontier ef = estimate_frontier(field, grid, j0, j1);

  std::ofstream file = open_out(a.out);
  file << "sigma,s_hat,raw_s_hat,argmin_j,argmin_k\n";
  for (const FrontierPoint& p : ef.points) {
    file << format_double(p.sigma) << ',' << format_double(p.s_hat) << ','
         << format_double(p.raw) << ',';
    if (p.argmin_j >= 0) file << p.argmin_j << ',' << p.argmin_k;
    else file << ',';
    file << '\n';
  }
  if (!file) throw Error(Errc::Io, "write to '" + a.out + "' failed");
  return kOk;
}

int do_check(const CheckArgs& a, std::ostream& out) {
  const CoefficientField field = read_field_file(a.coeffs);
  const LinearCheckReport rep = check_linear(field, a.alpha, a.gamma);
  out << "alpha=" << format_double(rep.alpha) << "\n";
  out << "gamma=" << format_double(rep.gamma) << "\n";
  out << "support_violations=" << rep.support_violations << "\n";
  out << "cond_i_surrogate=" << format_double(rep.cond_i_surrogate) << "\n";
  for (const TrajectoryPoint& p : rep.cond_ii_best_trajectory) {
    out << "trajectory j=" << p.j << " k=" << p.k
        << " log2c_over_j=" << format_double(p.log2c_over_j)
        << " log2lambda_over_j=" << format_double(p.log2lambda_over_j) << "\n";
  }
  for (const std::string& r : rep.reasons) out << "reason=" << r << "\n";
  out << "verdict=" << (rep.pass ? "PASS" : "FAIL") << "\n";
  return rep.pass ? kOk : kFail;
}

int do_reconstruct(const ReconstructArgs& a, std::ostream&) {
  const CoefficientField loaded = read_field_file(a.coeffs);
  const auto range = split_numbers(a.range, 2, "range lo:hi");
  if (!std::isfinite(a.scale) || a.scale == 0.0) {
    throw Error(Errc::InvalidArgument, "--scale must be finite and nonzero");
  }
  CoefficientField field(loaded.x0(), loaded.j_max());
  const double shift = std::log2(std::fabs(a.scale));
  const int flip = a.scale < 0.0 ? -1 : 1;
  loaded.for_each([&](const Coefficient& c) {
    field.set(c.j, c.k, c.log2_magnitude + shift, c.sign * flip);
  });

  const WaveletTable table = build_meyer_table(a.table_points, a.half_width);
  const SignalSamples s = reconstruct(field, table, range[0], range[1], a.n);
  std::ofstream file = open_out(a.out);
  file << "x,f\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    file << format_double(s.x[i]) << ',' << format_double(s.f[i]) << '\n';
  }
  if (!file) throw Error(Errc::Io, "write to '" + a.out + "' failed");
  return kOk;
}

int do_exponents(const ExponentArgs& a, std::ostream& out) {
  if (a.frontier.empty() == a.coeffs.empty()) {
    throw Error(Errc::InvalidArgument, "give exactly one of --frontier or --coeffs");
  }
  RegularityExponents e;
  if (!a.frontier.empty()) {
    e = exponents(FrontierCurve::parse(a.frontier));
  } else {
    const CoefficientField field = read_field_file(a.coeffs);
    const int j1 = a.jmax.value_or(field.j_max());
    const int j0 = a.j0.value_or(std::max(1, j1 / 2));
    e = estimate_exponents(estimate_frontier(field, sigma_grid(a.sigma), j0, j1));
  }
  out << "pointwise_holder=" << format_double(e.pointwise_holder) << "\n";
  out << "local_holder=" << format_double(e.local_holder) << "\n";
  out << "chirp=" << format_double(e.chirp) << "\n";
  out << "oscillation=" << format_double(e.oscillation) << "\n";
  out << "weak_scaling=" << format_double(e.weak_scaling) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesis and estimation of 2-microlocal frontiers"};
  app.name("twoml");
  app.require_subcommand(1);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "synthesize a coefficient field");
  c_synth->add_option("--frontier", synth.frontier, "curve descriptor")->required();
  c_synth->add_option("--scheme", synth.scheme, "unit | meyer | lvs");
  c_synth->add_option("--x0", synth.x0, "point of the prescribed frontier");
  c_synth->add_option("--jmax", synth.jmax, "finest level")->required();
  c_synth->add_option("--off-index", synth.off_index, "equal | zero");
  c_synth->add_option("--out", synth.out, "coefficient file to write")->required();

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "estimate the frontier of a coefficient field");
  c_est->add_option("--coeffs", est.coeffs)->required();
  c_est->add_option("--sigma", est.sigma, "lo:hi:step")->required();
  c_est->add_option("--j0", est.j0);
  c_est->add_option("--jmax", est.jmax);
  c_est->add_option("--out", est.out, "CSV to write")->required();

  CheckArgs chk;
  auto* c_chk = app.add_subcommand("check-linear", "check a field against a linear frontier");
  c_chk->add_option("--coeffs", chk.coeffs)->required();
  c_chk->add_option("--alpha", chk.alpha)->required();
  c_chk->add_option("--gamma", chk.gamma)->required();

  ReconstructArgs rec;
  auto* c_rec = app.add_subcommand("reconstruct", "sample the wavelet expansion of a field");
  c_rec->add_option("--coeffs", rec.coeffs)->required();
  c_rec->add_option("--range", rec.range, "lo:hi")->required();
  c_rec->add_option("--n", rec.n, "number of samples")->required();
  c_rec->add_option("--out", rec.out, "CSV to write")->required();
  c_rec->add_option("--scale", rec.scale, "multiply all coefficients");
  c_rec->add_option("--table-points", rec.table_points);
  c_rec->add_option("--half-width", rec.half_width);

  ExponentArgs exps;
  auto* c_exp = app.add_subcommand("exponents", "regularity exponents, analytic or estimated");
  c_exp->add_option("--frontier", exps.frontier);
  c_exp->add_option("--coeffs", exps.coeffs);
  c_exp->add_option("--sigma", exps.sigma, "lo:hi:step for estimated exponents");
  c_exp->add_option("--j0", exps.j0);
  c_exp->add_option("--jmax", exps.jmax);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (c_synth->parsed()) return do_synth(synth, out);
    if (c_est->parsed()) return do_estimate(est, out);
    if (c_chk->parsed()) return do_check(chk, out);
    if (c_rec->parsed()) return do_reconstruct(rec, out);
    if (c_exp->parsed()) return do_exponents(exps, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return kUsage;
}

}  // namespace twoml::cli
