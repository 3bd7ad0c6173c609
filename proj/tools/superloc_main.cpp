// Command-line front end: localization verification on linear models, exact
// volumes of homogeneous superspaces, fixed-point counts, regularized
// distribution identities, splitting chains, and convention calibration.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "superloc/convention.hpp"
#include "superloc/json_io.hpp"
#include "superloc/sampling.hpp"

using namespace superloc;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitModuleError = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<ComplexRational> parse_lambda_list(const std::string& s) {
  std::vector<ComplexRational> out;
  for (const std::string& part : split(s, ','))
    out.push_back(complex_rational_from_string(part));
  return out;
}

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split(s, ',')) {
    try {
      out.push_back(std::stod(part));
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad epsilon value: " + part);
    }
  }
  return out;
}

struct Options {
  bool json = false;
  unsigned long seed = 20240901;

  std::string lambdas;
  std::string rep_file;
  int profile_degree = 4;
  int count = 20;

  std::string family;
  int n = 0, r = 0, s = 0;
  std::string root_file;

  std::string identity;
  std::string eps = "0.2,0.1,0.05,0.025";
  std::string lambda = "3i";
  std::string poly = "1";
  std::string envelope = "1";
  double tol = 1e-4;

  std::string steps;
  std::string gl;
  std::string out_file;
};

void emit(const Options& opt, const json& payload, const std::string& table) {
  if (opt.json)
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << table;
}

int run_verify_linear(const Options& opt) {
  qrep::CSRep rep = [&] {
    if (!opt.rep_file.empty()) return io::load_csrep(opt.rep_file);
    if (opt.lambdas.empty())
      fail(ErrorCode::Parse, "verify-linear needs --lambdas or --rep-file");
    return qrep::CSRep::from_lambdas(parse_lambda_list(opt.lambdas));
  }();
  locverify::LinearModel model = locverify::build_model(rep);
  std::mt19937_64 rng(opt.seed);

  int failures = 0;
  json runs = json::array();
  for (int i = 0; i < opt.count; ++i) {
    locverify::FormProfile profile =
        sampling::sample_profile(rng, model.blocks(), opt.profile_degree);
    superalg::SuperFunction f = locverify::make_equivariant_form(model, profile);
    locverify::VerificationReport report = locverify::verify_localization(model, f);
    if (!report.equal) ++failures;
    runs.push_back(json{{"form_terms", f.term_count()},
                        {"equal", report.equal},
                        {"lhs", report.lhs.str()},
                        {"residual", report.residual.str()}});
  }

  json payload = io::report_header(opt.seed);
  json lambdas = json::array();
  for (const auto& l : rep.lambdas()) lambdas.push_back(l.str());
  payload["model"] = json{{"blocks", rep.blocks()}, {"lambdas", std::move(lambdas)}};
  payload["count"] = opt.count;
  payload["failures"] = failures;
  payload["runs"] = std::move(runs);

  std::ostringstream table;
  table << "verify-linear: " << opt.count << " random equivariant forms on " << rep.blocks()
        << " block(s), seed " << opt.seed << "\n"
        << "residual = 0 exactly in " << (opt.count - failures) << "/" << opt.count << " runs\n";
  emit(opt, payload, table.str());
  return failures == 0 ? kExitOk : kExitVerificationFailed;
}

homspace::HomSpaceSpec parse_volume_family(const Options& opt, CLI::App* sub) {
  if (opt.family == "isotropic") {
    if (!sub->count("--n")) fail(ErrorCode::Parse, "isotropic needs --n");
    return homspace::Isotropic{opt.n};
  }
  if (opt.family == "periplectic") {
    if (!sub->count("--r") || !sub->count("--s"))
      fail(ErrorCode::Parse, "periplectic needs --r and --s");
    return homspace::Periplectic{opt.r, opt.s};
  }
  if (opt.family == "flag") {
    if (opt.root_file.empty()) fail(ErrorCode::Parse, "flag needs --root-file");
    return homspace::Flag{io::load_flag_data(opt.root_file)};
  }
  fail(ErrorCode::Parse, "unknown family: " + opt.family);
}

int run_volume(const Options& opt, CLI::App* sub) {
  homspace::HomSpaceSpec spec = parse_volume_family(opt, sub);
  homspace::VolumeResult v = homspace::volume(spec);
  json payload = io::report_header(opt.seed);
  payload.update(io::to_json(v));
  std::ostringstream table;
  table << "family      " << opt.family << "\n"
        << "count       " << v.count << "\n"
        << "exponent m  " << v.exponent_m << "\n"
        << "volume      " << v.value_text() << "\n"
        << "verdict     " << homspace::verdict_name(v.verdict) << "\n";
  emit(opt, payload, table.str());
  return kExitOk;
}

int run_fixed_points(const Options& opt, CLI::App* sub) {
  json payload = io::report_header(opt.seed);
  std::ostringstream table;
  if (opt.family == "isotropic") {
    if (!sub->count("--n")) fail(ErrorCode::Parse, "isotropic needs --n");
    homspace::IsotropicFixedPoints fp = homspace::fixed_isotropic(opt.n);
    payload["family"] = "isotropic";
    payload["count"] = fp.count;
    json reps = json::array();
    for (const auto& w : fp.representatives) reps.push_back(io::to_json(w));
    payload["representatives"] = std::move(reps);
    table << "isotropic n=" << opt.n << ": " << fp.count << " fixed points\n";
    for (const auto& w : fp.representatives) {
      table << "  signs ";
      for (int s : w.sign) table << (s > 0 ? '+' : '-');
      table << "\n";
    }
  } else if (opt.family == "periplectic") {
    if (!sub->count("--r") || !sub->count("--s"))
      fail(ErrorCode::Parse, "periplectic needs --r and --s");
    homspace::PeriplecticFixedPoints fp = homspace::fixed_periplectic(opt.r, opt.s);
    payload["family"] = "periplectic";
    payload["count"] = fp.count;
    payload["raw_count"] = fp.raw_count;
    payload["representatives"] = fp.representatives;
    table << "periplectic (r,s)=(" << opt.r << "," << opt.s << "): " << fp.count << " cosets ("
          << fp.raw_count << " admissible permutations)\n";
    for (const auto& w : fp.representatives) {
      table << "  w = [";
      for (size_t i = 0; i < w.size(); ++i) table << (i ? " " : "") << w[i];
      table << "]\n";
    }
  } else if (opt.family == "flag") {
    if (opt.root_file.empty()) fail(ErrorCode::Parse, "flag needs --root-file");
    homspace::WeylRatio ratio = homspace::weyl_ratio_flag(io::load_flag_data(opt.root_file));
    payload["family"] = "flag";
    payload["w_order"] = ratio.w_order;
    payload["wd_order"] = ratio.wd_order;
    payload["wc_order"] = ratio.wc_order;
    payload["count"] = ratio.ratio;
    table << "flag: |W|=" << ratio.w_order << " |W_d|=" << ratio.wd_order
          << " |W_c|=" << ratio.wc_order << " fixed points = " << ratio.ratio << "\n";
  } else {
    fail(ErrorCode::Parse, "unknown family: " + opt.family);
  }
  emit(opt, payload, table.str());
  return kExitOk;
}

int run_dist_check(const Options& opt) {
  std::vector<double> eps = parse_eps_list(opt.eps);
  std::vector<ComplexRational> poly = parse_lambda_list(opt.poly);
  Rational env = rational_from_string(opt.envelope);
  locverify::DistReport report;
  if (opt.identity == "polediff") {
    // g = p(z zbar) e^{-s z zbar}
    superalg::SuperFunction p = superalg::SuperFunction::zero(1);
    for (size_t k = 0; k < poly.size(); ++k) {
      superalg::EvenMonomial e = superalg::EvenMonomial::one(1);
      e.powers[0] = {static_cast<unsigned>(k), static_cast<unsigned>(k)};
      p.add_term(e, superalg::OddMonomial{}, ExactScalar(poly[k]));
    }
    superalg::SuperFunction g = multiply(p, superalg::SuperFunction::gaussian({env}));
    report = locverify::cauchy_pompeiu_check(g, eps, opt.tol);
  } else if (opt.identity == "sigma") {
    qrep::CSRep rep = qrep::CSRep::from_lambdas({complex_rational_from_string(opt.lambda)});
    locverify::LinearModel model = locverify::build_model(rep);
    locverify::FormProfile profile;
    profile.poly = {poly};
    profile.envelope = {env};
    superalg::SuperFunction f = locverify::make_equivariant_form(model, profile);
    report = locverify::sigma_pairing_check(model, f, eps, opt.tol);
  } else {
    fail(ErrorCode::Parse, "unknown identity: " + opt.identity);
  }

  json payload = io::report_header(opt.seed);
  payload["identity"] = opt.identity;
  payload.update(io::to_json(report));
  std::ostringstream table;
  table << "identity      " << opt.identity << "\n"
        << "extrapolated  (" << report.extrapolated.real() << ", " << report.extrapolated.imag()
        << ")\n"
        << "target        (" << report.target.real() << ", " << report.target.imag() << ")\n"
        << "abs error     " << report.abs_error << " (tolerance " << report.tolerance << ")\n"
        << "pass          " << (report.pass ? "yes" : "no") << "\n";
  emit(opt, payload, table.str());
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int run_chain(const Options& opt, CLI::App* sub) {
  homspace::ChainRequest request = [&]() -> homspace::ChainRequest {
    if (opt.family == "periplectic") {
      if (!opt.steps.empty()) {
        homspace::PeriplecticSteps steps;
        for (const std::string& part : split(opt.steps, ',')) {
          auto rs = split(part, ':');
          if (rs.size() != 2) fail(ErrorCode::Parse, "steps must look like r:s,r:s");
          try {
            steps.steps.emplace_back(std::stoi(rs[0]), std::stoi(rs[1]));
          } catch (const std::exception&) {
            fail(ErrorCode::Parse, "bad step: " + part);
          }
        }
        return steps;
      }
      if (!sub->count("--n")) fail(ErrorCode::Parse, "periplectic chain needs --n or --steps");
      return homspace::PeriplecticTower{opt.n};
    }
    if (opt.family == "flag") {
      if (opt.root_file.empty()) fail(ErrorCode::Parse, "flag chain needs --root-file");
      return homspace::FlagChain{io::load_flag_data(opt.root_file)};
    }
    fail(ErrorCode::Parse, "unknown family: " + opt.family);
  }();

  homspace::ChainReport report = homspace::splitting_chain_report(request);
  json payload = io::report_header(opt.seed);
  payload.update(io::to_json(report));
  std::ostringstream table;
  for (const auto& s : report.steps) {
    table << s.subgroup << " in " << s.ambient << "  [" << s.evidence << "] "
          << (s.ok ? "ok" : "ZERO");
    if (s.vol) table << "  volume " << s.vol->value_text();
    table << "\n";
  }
  table << report.conclusion << "\n";
  emit(opt, payload, table.str());
  return report.broken ? kExitVerificationFailed : kExitOk;
}

int run_calibrate(const Options& opt) {
  ExactScalar recomputed = locverify::calibrate_kappa();
  bool match = recomputed == convention::kappa();
  json payload = io::report_header(opt.seed);
  payload["kappa_recomputed"] = recomputed.str();
  payload["kappa_frozen"] = convention::kappa().str();
  payload["match"] = match;
  std::ostringstream table;
  table << "kappa recomputed " << recomputed.str() << ", frozen " << convention::kappa().str()
        << " -> " << (match ? "match" : "DRIFT") << "\n";
  emit(opt, payload, table.str());
  return match ? kExitOk : kExitVerificationFailed;
}

int run_root_data(const Options& opt) {
  auto mn = split(opt.gl, ',');
  if (mn.size() != 2) fail(ErrorCode::Parse, "--gl needs m,n");
  int m = 0, n = 0;
  try {
    m = std::stoi(mn[0]);
    n = std::stoi(mn[1]);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "--gl needs integer m,n");
  }
  json payload = io::to_json(homspace::gl_root_data(m, n));
  std::string text = payload.dump(2) + "\n";
  if (!opt.out_file.empty()) {
    std::ofstream out(opt.out_file);
    if (!out) fail(ErrorCode::Parse, "cannot write " + opt.out_file);
    out << text;
    std::cout << "wrote " << opt.out_file << "\n";
  } else {
    std::cout << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"localization verifier and CS volume calculator"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "emit JSON reports on stdout");
  app.add_option("--seed", opt.seed, "seed for randomized runs");

  CLI::App* verify = app.add_subcommand(
      "verify-linear", "verify the fixed-point identity on random equivariant forms");
  verify->add_option("--lambdas", opt.lambdas, "comma-separated block lambdas, e.g. 3i,1+2i");
  verify->add_option("--rep-file", opt.rep_file, "representation JSON file");
  verify->add_option("--profiles", opt.profile_degree, "maximum polynomial degree")
      ->check(CLI::Range(0, 16));
  verify->add_option("--count", opt.count, "number of random forms")->check(CLI::PositiveNumber);

  CLI::App* vol = app.add_subcommand("volume", "exact volume of a homogeneous superspace");
  vol->add_option("family", opt.family, "isotropic | periplectic | flag")->required();
  vol->add_option("--n", opt.n, "isotropic parameter n");
  vol->add_option("--r", opt.r, "periplectic r");
  vol->add_option("--s", opt.s, "periplectic s");
  vol->add_option("--root-file", opt.root_file, "flag root-data JSON file");

  CLI::App* fp = app.add_subcommand("fixed-points", "enumerate fixed points");
  fp->add_option("family", opt.family, "isotropic | periplectic | flag")->required();
  fp->add_option("--n", opt.n, "isotropic parameter n");
  fp->add_option("--r", opt.r, "periplectic r");
  fp->add_option("--s", opt.s, "periplectic s");
  fp->add_option("--root-file", opt.root_file, "flag root-data JSON file");

  CLI::App* dist = app.add_subcommand("dist-check", "regularized distribution identity check");
  dist->add_option("--identity", opt.identity, "polediff | sigma")->required();
  dist->add_option("--eps", opt.eps, "comma-separated decreasing epsilon list");
  dist->add_option("--lambda", opt.lambda, "sigma: block lambda");
  dist->add_option("--poly", opt.poly, "polynomial coefficients, ascending");
  dist->add_option("--envelope", opt.envelope, "Gaussian envelope rate (rational)");
  dist->add_option("--tol", opt.tol, "absolute tolerance");

  CLI::App* chain = app.add_subcommand("chain", "splitting chain report");
  chain->add_option("family", opt.family, "periplectic | flag")->required();
  chain->add_option("--n", opt.n, "periplectic ambient P(n)");
  chain->add_option("--steps", opt.steps, "explicit steps r:s,r:s");
  chain->add_option("--root-file", opt.root_file, "flag root-data JSON file");

  app.add_subcommand("calibrate", "recompute the measure constant from the witness");

  CLI::App* rootdata = app.add_subcommand("root-data", "emit root data for a gl(m|n) flag");
  rootdata->add_option("--gl", opt.gl, "m,n")->required();
  rootdata->add_option("--out", opt.out_file, "output file (stdout otherwise)");

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("verify-linear")) return run_verify_linear(opt);
    if (app.got_subcommand("volume")) return run_volume(opt, vol);
    if (app.got_subcommand("fixed-points")) return run_fixed_points(opt, fp);
    if (app.got_subcommand("dist-check")) return run_dist_check(opt);
    if (app.got_subcommand("chain")) return run_chain(opt, chain);
    if (app.got_subcommand("calibrate")) return run_calibrate(opt);
    if (app.got_subcommand("root-data")) return run_root_data(opt);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    json diag{{"error", json{{"code", e.code_name()}, {"message", e.what()}}}};
    std::cout << diag.dump(2) << "\n";
    return kExitModuleError;
  } catch (const std::exception& e) {
    json diag{{"error", json{{"code", "internal"}, {"message", e.what()}}}};
    std::cout << diag.dump(2) << "\n";
    return kExitModuleError;
  }
}
