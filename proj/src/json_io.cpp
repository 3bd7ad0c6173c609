#include "superloc/json_io.hpp"

#include <fstream>

#include "superloc/convention.hpp"
#include "superloc/error.hpp"

namespace superloc::io {

namespace {

Rational rational_field(const json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail(ErrorCode::Parse, "expected a rational string or integer");
}

json complex_pair(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json(const ComplexRational& c) {
  return json::array({to_string(c.re), to_string(c.im)});
}

ComplexRational complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::Parse, "expected a [re, im] pair");
  return ComplexRational(rational_field(j[0]), rational_field(j[1]));
}

json to_json(const ExactScalar& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.terms())
    terms.push_back(json{{"pi", k}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return json{{"text", s.str()}, {"terms", std::move(terms)}};
}

ExactScalar exact_from_json(const json& j) {
  ExactScalar out;
  if (!j.contains("terms")) fail(ErrorCode::Parse, "exact scalar needs a terms array");
  for (const auto& t : j.at("terms")) {
    ComplexRational c(rational_field(t.at("re")), rational_field(t.at("im")));
    out += ExactScalar::pi_power(c, t.at("pi").get<long>());
  }
  return out;
}

json to_json(const qrep::CSRep& rep) {
  json q = json::array();
  for (const auto& c : rep.qgroup().q_square) q.push_back(to_json(c));
  json summands = json::array();
  for (const auto& s : rep.summands())
    summands.push_back(json{{"chi", s.chi.coords}, {"flipped", s.flipped}});
  return json{{"torus_rank", rep.qgroup().torus_rank()},
              {"q_square", std::move(q)},
              {"summands", std::move(summands)}};
}

qrep::CSRep csrep_from_json(const json& j) {
  qrep::QGroupSpec q;
  for (const auto& c : j.at("q_square")) q.q_square.push_back(complex_from_json(c));
  if (j.contains("torus_rank") && j.at("torus_rank").get<int>() != q.torus_rank())
    fail(ErrorCode::Parse, "torus_rank disagrees with q_square length");
  std::vector<qrep::Summand> summands;
  for (const auto& s : j.at("summands")) {
    qrep::Summand out;
    out.chi.coords = s.at("chi").get<std::vector<long>>();
    out.flipped = s.value("flipped", false);
    summands.push_back(std::move(out));
  }
  return qrep::CSRep(std::move(q), std::move(summands));
}

qrep::CSRep load_csrep(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open representation file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, "bad JSON in " + path + ": " + e.what());
  }
  return csrep_from_json(j);
}

json to_json(const locverify::VerificationReport& r) {
  return json{{"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"residual", to_json(r.residual)},
              {"equal", r.equal},
              {"mode", "exact"}};
}

json to_json(const locverify::DistReport& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back(json{{"eps", s.eps}, {"value", complex_pair(s.value)}});
  return json{{"lhs", complex_pair(r.extrapolated)},
              {"rhs", complex_pair(r.target)},
              {"residual", r.abs_error},
              {"equal", r.pass},
              {"tolerance", r.tolerance},
              {"mode", "quadrature"},
              {"eps_trace", std::move(trace)}};
}

json to_json(const homspace::WeylElement& w) {
  return json{{"perm", w.perm}, {"sign", w.sign}};
}

homspace::WeylElement weyl_from_json(const json& j) {
  homspace::WeylElement w;
  w.perm = j.at("perm").get<std::vector<int>>();
  w.sign = j.at("sign").get<std::vector<int>>();
  if (w.perm.size() != w.sign.size())
    fail(ErrorCode::Parse, "perm and sign lengths disagree");
  for (int s : w.sign)
    if (s != 1 && s != -1) fail(ErrorCode::Parse, "signs must be +-1");
  std::vector<bool> seen(w.perm.size(), false);
  for (int p : w.perm) {
    if (p < 0 || static_cast<size_t>(p) >= w.perm.size() || seen[static_cast<size_t>(p)])
      fail(ErrorCode::Parse, "perm is not a permutation");
    seen[static_cast<size_t>(p)] = true;
  }
  return w;
}

json to_json(const homspace::FlagRootData& d) {
  json gens = json::array();
  for (const auto& g : d.weyl_generators) gens.push_back(to_json(g));
  return json{{"weights_basis_rank", d.rank},
              {"even_roots", d.even_roots},
              {"odd_roots", d.odd_roots},
              {"gram", d.gram},
              {"weyl_generators", std::move(gens)},
              {"isotropic_roots", d.isotropic_roots},
              {"k_roots", d.k_roots}};
}

homspace::FlagRootData flag_data_from_json(const json& j) {
  homspace::FlagRootData d;
  d.rank = j.at("weights_basis_rank").get<int>();
  d.even_roots = j.at("even_roots").get<std::vector<std::vector<long>>>();
  d.odd_roots = j.at("odd_roots").get<std::vector<std::vector<long>>>();
  d.gram = j.at("gram").get<std::vector<std::vector<long>>>();
  for (const auto& g : j.at("weyl_generators")) d.weyl_generators.push_back(weyl_from_json(g));
  d.isotropic_roots = j.at("isotropic_roots").get<std::vector<std::vector<long>>>();
  d.k_roots = j.at("k_roots").get<std::vector<std::vector<long>>>();
  return d;
}

homspace::FlagRootData load_flag_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open root-data file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, "bad JSON in " + path + ": " + e.what());
  }
  try {
    return flag_data_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, "bad root data in " + path + ": " + e.what());
  }
}

json to_json(const homspace::VolumeResult& v) {
  json out{{"count", v.count},
           {"exponent_m", v.exponent_m},
           {"value", v.value_text()},
           {"nonzero", v.nonzero},
           {"verdict", homspace::verdict_name(v.verdict)}};
  if (v.alt_exponent) out["alt_exponent"] = *v.alt_exponent;
  return out;
}

json to_json(const homspace::ChainReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json step{{"subgroup", s.subgroup},
              {"ambient", s.ambient},
              {"evidence", s.evidence},
              {"ok", s.ok}};
    if (s.vol) step["volume"] = to_json(*s.vol);
    if (!s.note.empty()) step["note"] = s.note;
    steps.push_back(std::move(step));
  }
  return json{{"steps", std::move(steps)},
              {"broken", r.broken},
              {"verdict", homspace::verdict_name(r.verdict)},
              {"conclusion", r.conclusion}};
}

json report_header(std::optional<unsigned long> seed) {
  json out{{"tool_version", convention::tool_version},
           {"convention",
            json{{"kappa", convention::kappa().str()},
                 {"berezin_sign", convention::berezin_sign}}}};
  if (seed) out["seed"] = *seed;
  return out;
}

}  // namespace superloc::io
