// Copyright 2026 The gupcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "gup/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "gup/cli/acceptance.hpp"
#include "gup/cli/table.hpp"
#include "gup/dualbound.hpp"
#include "gup/error.hpp"
#include "gup/extremizer.hpp"
#include "gup/kernel.hpp"
#include "gup/oracle.hpp"

#ifndef GUP_VERSION
#define GUP_VERSION "unknown"
#endif

namespace gup::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
  double alpha = 0.5;
  double p = 2.0;
  double q = 2.0;
  int d = 1;
  double m = 0.0;
  double n = -1.0;  // negative: derived from m, p, q
  int m0 = 10;
  double delta = 1.0;
  double shift = 0.0;
  double center = 1.0;
  std::string y = "4:8:0.5";
  std::string x = "-1:1:0.125";
  std::string xi = "0:10:0.5";
  double lambda = 0.0;
  double c = 0.0;
  double k = 0.0;
  int N = 0;
  int nmax = 0;
  double tol = 1e-6;
  double ratio = 0.9;
  double D = 50.0;
  double a = 0.5;
  double M = 0.0;
  std::string coeffs = "1";
  std::string regime = "gaussian";
  std::string format;
  std::string out;
  int only = 0;
};

std::vector<double> parseList(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("bad coefficient '" + item + "'");
    }
  }
  if (v.empty()) throw InvalidArgument("empty coefficient list");
  return v;
}

Table baseTable(const std::string& command, const Options& o) {
  Table t;
  t.metadata = {{"command", command}, {"version", std::string(GUP_VERSION)}, {"alpha", o.alpha},
                {"p", o.p},           {"q", o.q},                            {"d", static_cast<long long>(o.d)}};
  return t;
}

double lambdaFor(const Options& o) {
  return o.lambda > 0.0 ? o.lambda : calibrateLambda(o.alpha, o.p, o.q, o.c > 0.0 ? o.c : kDefaultExtremizerC);
}

Table kernelCommand(const Options& o) {
  const WeightSpec w{o.m, o.shift, o.p, 1};
  const KernelSpec k = minNormPolynomial(w, o.m0, o.p, std::min(o.tol, 1e-10));
  Table t = baseTable("kernel", o);
  t.metadata.insert(t.metadata.end(), {{"m", o.m},
                                       {"shift", o.shift},
                                       {"m0", static_cast<long long>(o.m0)},
                                       {"pstar_norm", k.pstarNorm},
                                       {"kernel_norm", k.kernelNorm},
                                       {"duality_gap", k.dualityGap},
                                       {"iterations", static_cast<long long>(k.iterations)}});
  t.columns = {"x", "pstar", "kernel"};
  for (double x : parseGrid(o.x)) t.rows.push_back({x, k.pstar(x), k.kernel(x)});
  return t;
}

Table phiCommand(const Options& o) {
  const PhiSpec phi = buildPhi(o.delta, o.m, o.m0, o.p, o.d, o.center);
  Table t = baseTable("phi", o);
  t.metadata.insert(t.metadata.end(), {{"m", o.m},
                                       {"m0", static_cast<long long>(o.m0)},
                                       {"delta", o.delta},
                                       {"center", o.center},
                                       {"integral", phiIntegral(phi)}});
  t.columns = {"xi", "phi_hat_re", "phi_hat_im", "log_abs_one_minus_phi_hat"};
  std::vector<double> point(o.d, 0.0);
  for (double xi : parseGrid(o.xi)) {
    point[0] = xi;
    const auto v = phiHat(phi, point);
    t.rows.push_back({xi, v.real(), v.imag(), oneMinusPhiHat(phi, point).logAbs()});
  }
  return t;
}

Table upperCommand(const Options& o) {
  Table t = baseTable("upper", o);
  t.metadata.emplace_back("regime", o.regime);
  if (o.regime == "gaussian") {
    const bool fixed = o.k > 0.0 || o.N > 0;
    const auto params = makeGaussianParams(o.alpha, o.ratio, o.k > 0.0 ? o.k : 0.05, o.N > 0 ? o.N : 40);
    t.metadata.insert(t.metadata.end(), {{"ratio", o.ratio}, {"knobs", std::string(fixed ? "fixed" : "optimized")}});
    t.columns = {"y", "bound", "term_I", "term_II", "fallback_bound", "fallback", "m", "k", "N", "m0", "delta"};
    for (double y : parseGrid(o.y)) {
      const auto r = fixed ? dualityUpperBoundGaussian(y, params, o.p, o.q, o.d)
                           : optimizedUpperBoundGaussian(y, o.alpha, o.p, o.q, o.d, o.ratio);
      t.rows.push_back({y, r.bound, r.termI, r.termII, r.fallbackBound, r.fallback, r.m, r.k,
                        static_cast<long long>(r.N), static_cast<long long>(r.m0), r.delta});
    }
    return t;
  }
  MomentRegime regime;
  if (o.regime == "pointwise") {
    regime = MomentRegime::Pointwise;
  } else if (o.regime == "factorial") {
    regime = MomentRegime::Factorial;
  } else {
    throw InvalidArgument("--regime must be gaussian, pointwise or factorial");
  }
  const MomentParams params = o.n < 0.0 ? makeMomentParams(o.m, o.p, o.q, o.d)
                                         : MomentParams{o.m, o.n, o.p, o.q, o.d, 1e-9};
  params.validate();
  t.metadata.insert(t.metadata.end(), {{"m", params.m}, {"n", params.n}});
  t.columns = {"y", "bound", "term_I", "term_II", "delta", "lambda", "m0"};
  for (double y : parseGrid(o.y)) {
    const auto r = momentUpperBound(y, params, regime);
    t.rows.push_back({y, r.bound, r.termI, r.termII, r.delta, r.lambda, static_cast<long long>(r.m0)});
  }
  return t;
}

Table lowerCommand(const Options& o) {
  const double lambda = lambdaFor(o);
  const double c = o.c > 0.0 ? o.c : kDefaultExtremizerC;
  Table t = baseTable("lower", o);
  t.metadata.insert(t.metadata.end(), {{"lambda", lambda}, {"c", c}});
  t.columns = {"y", "lower", "asymptote", "ratio_lower", "N", "D"};
  for (double y : parseGrid(o.y)) {
    const double asym = std::pow(1.0 + std::abs(y), o.d / o.p) * std::exp(-kPi * o.alpha * y * y);
    if (o.d == 1) {
      const auto spec = buildExtremizer(y, o.alpha, lambda, c);
      const double v = extremizerLowerBound(spec, o.p, o.q);
      t.rows.push_back({y, v, asym, v / asym, static_cast<long long>(spec.N), spec.D});
    } else {
      const double v = tensorLowerBound(o.d, y, o.alpha, lambda, c, o.p, o.q);
      t.rows.push_back({y, v, asym, v / asym, 0LL, std::nan("")});
    }
  }
  return t;
}

Table oracleCommand(const Options& o) {
  Table t = baseTable("oracle", o);
  t.metadata.emplace_back("tol", o.tol);
  t.columns = {"y", "value", "previous", "n_max", "converged"};
  const auto ys = parseGrid(o.y);
  if (o.nmax > 0) {
    const GramOracle g = buildGram(o.alpha, o.nmax);
    t.metadata.insert(t.metadata.end(), {{"n_max", static_cast<long long>(o.nmax)},
                                         {"condition_estimate", g.conditionEstimate()},
                                         {"jitter", g.jitter()}});
    for (double y : ys) t.rows.push_back({y, g.sharpConstant(y), std::nan(""), static_cast<long long>(o.nmax), false});
    return t;
  }
  OracleSolver solver(o.alpha, 16, o.tol);
  for (double y : ys) {
    const auto r = solver(y);
    t.rows.push_back({y, r.value, r.previous, static_cast<long long>(r.nMax), r.converged});
  }
  return t;
}

Table sweepCommand(const Options& o) {
  SweepOptions so;
  so.lambda = o.lambda;
  so.c = o.c;
  so.tol = o.tol;
  so.ratio = o.ratio;
  Table t = baseTable("sweep", o);
  t.metadata.insert(t.metadata.end(), {{"lambda", o.lambda}, {"c", o.c}, {"tol", o.tol}, {"ratio", o.ratio}});
  t.columns = {"y",           "lower",       "oracle",       "upper",       "asymptote", "ratio_lower",
               "ratio_oracle", "ratio_upper", "oracle_n_max", "oracle_converged", "error"};
  for (const auto& r : asymptoticSweep(o.alpha, parseGrid(o.y), o.p, o.q, o.d, so))
    t.rows.push_back({r.y, r.lower, r.oracle, r.upper, r.asymptote, r.ratioLower, r.ratioOracle, r.ratioUpper,
                      static_cast<long long>(r.oracleNMax), r.oracleConverged, r.error});
  return t;
}

Table approxCommand(const Options& o) {
  const int N = o.N > 0 ? o.N : static_cast<int>(std::floor(0.05 * o.D));
  const double e = bestApproxErrorCos(o.D, N);
  const double norm = std::sqrt(cosNormSquared(o.D));
  Table t = baseTable("approx", o);
  t.metadata.insert(t.metadata.end(), {{"D", o.D}, {"N", static_cast<long long>(N)}});
  t.columns = {"E_N", "norm", "ratio"};
  t.rows.push_back({e, norm, e / norm});
  return t;
}

Table vemuriCommand(const Options& o) {
  const auto coeffs = parseList(o.coeffs);
  const auto r = vemuriNormIdentity(coeffs, o.a, o.alpha);
  Table t = baseTable("vemuri", o);
  t.metadata.insert(t.metadata.end(), {{"a", o.a}, {"coeffs", o.coeffs}});
  t.columns = {"lhs", "rhs", "relative_difference", "terms"};
  t.rows.push_back({r.lhs, r.rhs, r.lhs / r.rhs - 1.0, static_cast<long long>(r.terms)});
  return t;
}

Table radialCommand(const Options& o) {
  const int d = o.d == 1 ? 3 : o.d;
  Options shown = o;
  shown.d = d;
  Table t = baseTable("radial", shown);
  const auto ys = parseGrid(o.y);
  if (o.M > 0.0) {
    const int N = std::max(o.N, 0);
    t.metadata.insert(t.metadata.end(), {{"M", o.M}, {"N", static_cast<long long>(N)}});
    t.columns = {"y", "best_approx"};
    for (double y : ys) t.rows.push_back({y, radialBestApprox(RadialProblem{d, y, o.M, N})});
    return t;
  }
  const double lambda = o.lambda > 0.0 ? o.lambda : 1.0;
  const double c = o.c > 0.0 ? o.c : kDefaultExtremizerC;
  t.metadata.insert(t.metadata.end(), {{"lambda", lambda}, {"c", c}});
  t.columns = {"y", "ratio", "scaled", "best_approx", "M", "N"};
  for (double y : ys) {
    const auto w = radialWitness(d, y, o.alpha, lambda, c);
    const double scaled = w.ratio * std::exp(kPi * o.alpha * y * y) / std::pow(1.0 + y, d / 2.0 - 1.0);
    t.rows.push_back({y, w.ratio, scaled, w.bestApprox, w.M, static_cast<long long>(w.N)});
  }
  return t;
}

int verifyCommand(const Options& o, std::ostream& out) {
  acceptance::Suite suite;
  bool all = true;
  if (o.only != 0) {
    const auto r = suite.run(o.only);
    out << acceptance::formatLine(r) << '\n';
    return r.passed ? kExitOk : kExitVerify;
  }
  for (const auto& r : suite.runAll(&out)) all = all && r.passed;
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical certification of Gaussian uncertainty bounds", "gupcert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GUP_VERSION));
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--alpha", o.alpha, "Gaussian weight exponent alpha > 0");
    s->add_option("--p", o.p, "Lebesgue exponent on f");
    s->add_option("--q", o.q, "Lebesgue exponent on f-hat");
    s->add_option("--d", o.d, "Dimension");
    s->add_option("--format", o.format, "csv or json");
    s->add_option("--out", o.out, "Output path (stdout when omitted)");
  };
  auto grid = [&](CLI::App* s) { s->add_option("--y", o.y, "Scalar or a:b:step grid of |y|"); };
  auto extremizer = [&](CLI::App* s) {
    s->add_option("--lambda", o.lambda, "Extremizer scale (0: calibrate)");
    s->add_option("--c", o.c, "Degree window constant (0: default)");
  };

  auto* kernel = app.add_subcommand("kernel", "Weighted minimal-norm polynomial and reproducing kernel");
  common(kernel);
  kernel->add_option("--m", o.m, "Weight exponent: |x - shift|^{p m}");
  kernel->add_option("--shift", o.shift, "Weight center");
  kernel->add_option("--m0", o.m0, "Polynomial degree");
  kernel->add_option("--x", o.x, "Evaluation grid on [-1, 1]");
  kernel->add_option("--tol", o.tol, "Solver tolerance");

  auto* phi = app.add_subcommand("phi", "Dual test function and its transform");
  common(phi);
  phi->add_option("--m", o.m, "Weight exponent");
  phi->add_option("--m0", o.m0, "Kernel degree");
  phi->add_option("--delta", o.delta, "Support half-width");
  phi->add_option("--center", o.center, "Weight center");
  phi->add_option("--xi", o.xi, "Frequency grid");

  auto* upper = app.add_subcommand("upper", "Duality upper bound");
  common(upper);
  grid(upper);
  upper->add_option("--regime", o.regime, "gaussian, pointwise or factorial");
  upper->add_option("--k", o.k, "Scheme constant k (fixes the knobs)");
  upper->add_option("--N", o.N, "Scheme constant N (fixes the knobs)");
  upper->add_option("--ratio", o.ratio, "A / alpha in (0, 1)");
  upper->add_option("--m", o.m, "Moment exponent on f");
  upper->add_option("--n", o.n, "Moment exponent on f-hat (derived when omitted)");

  auto* lower = app.add_subcommand("lower", "Extremizer lower bound");
  common(lower);
  grid(lower);
  extremizer(lower);

  auto* oracle = app.add_subcommand("oracle", "Hermite Gram oracle for the sharp constant");
  common(oracle);
  grid(oracle);
  oracle->add_option("--nmax", o.nmax, "Fixed truncation degree (0: iterate to --tol)");
  oracle->add_option("--tol", o.tol, "Relative convergence tolerance");

  auto* sweep = app.add_subcommand("sweep", "Lower bound, oracle and upper bound against the asymptote");
  common(sweep);
  grid(sweep);
  extremizer(sweep);
  sweep->add_option("--tol", o.tol, "Oracle tolerance");
  sweep->add_option("--ratio", o.ratio, "A / alpha for the upper bound");

  auto* approx = app.add_subcommand("approx", "Best L2 approximation of cos(D x) by low-degree polynomials");
  common(approx);
  approx->add_option("--D", o.D, "Frequency");
  approx->add_option("--N", o.N, "Degree parameter (0: floor(0.05 D))");

  auto* vemuri = app.add_subcommand("vemuri", "Hermite-expansion norm identity");
  common(vemuri);
  vemuri->add_option("--a", o.a, "Support half-width");
  vemuri->add_option("--coeffs", o.coeffs, "Comma-separated Legendre coefficients of g");

  auto* radial = app.add_subcommand("radial", "Radial witness in d = 2, 3");
  common(radial);
  grid(radial);
  extremizer(radial);
  radial->add_option("--M", o.M, "Radius: report only the best-approximation error");
  radial->add_option("--N", o.N, "Degree for --M");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--only", o.only, "Single criterion id");
  verify->add_option("--out", o.out, "Output path (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitInvalid;
  }

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "gupcert: cannot open " << o.out << '\n';
      return kExitInvalid;
    }
    sink = &file;
  }

  try {
    if (name == "verify") return verifyCommand(o, *sink);
    const Format format = o.format.empty() ? (name == "approx" ? Format::Json : Format::Csv) : parseFormat(o.format);
    if (o.d < 1) throw InvalidArgument("--d must be at least 1");
    static const std::map<std::string, std::function<Table(const Options&)>> commands{
        {"kernel", kernelCommand}, {"phi", phiCommand},       {"upper", upperCommand},
        {"lower", lowerCommand},   {"oracle", oracleCommand}, {"sweep", sweepCommand},
        {"approx", approxCommand}, {"vemuri", vemuriCommand}, {"radial", radialCommand}};
    const Table table = commands.at(name)(o);
    write(table, format, *sink);
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "gupcert " << name << ": invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const AccuracyFailure& e) {
    err << "gupcert " << name << ": accuracy failure: " << e.what() << " (estimate " << formatReal(e.estimate())
        << ", error " << formatReal(e.errorEstimate()) << ")\n";
    return kExitAccuracy;
  }
}

}  // namespace gup::cli
