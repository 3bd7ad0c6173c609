#include "superloc/homspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "superloc/error.hpp"

namespace superloc::homspace {

WeylElement WeylElement::identity(int n) {
  WeylElement w;
  w.perm.resize(static_cast<size_t>(n));
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(static_cast<size_t>(n), 1);
  return w;
}

std::vector<long> WeylElement::apply(const std::vector<long>& v) const {
  if (v.size() != perm.size()) fail(ErrorCode::Dimension, "weight rank mismatch");
  std::vector<long> out(v.size(), 0);
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<size_t>(perm[i])] += sign[i] * v[i];
  return out;
}

bool WeylElement::operator<(const WeylElement& o) const {
  if (perm != o.perm) return perm < o.perm;
  return sign < o.sign;
}

WeylElement compose(const WeylElement& a, const WeylElement& b) {
  if (a.size() != b.size()) fail(ErrorCode::Dimension, "composition rank mismatch");
  WeylElement out;
  out.perm.resize(a.perm.size());
  out.sign.resize(a.perm.size());
  for (size_t i = 0; i < a.perm.size(); ++i) {
    out.perm[i] = a.perm[static_cast<size_t>(b.perm[i])];
    out.sign[i] = b.sign[i] * a.sign[static_cast<size_t>(b.perm[i])];
  }
  return out;
}

WeylElement inverse(const WeylElement& w) {
  WeylElement out;
  out.perm.resize(w.perm.size());
  out.sign.resize(w.perm.size());
  for (size_t i = 0; i < w.perm.size(); ++i) {
    out.perm[static_cast<size_t>(w.perm[i])] = static_cast<int>(i);
    out.sign[static_cast<size_t>(w.perm[i])] = w.sign[i];
  }
  return out;
}

namespace {

std::optional<long> enumeration_env() {
  if (const char* env = std::getenv("SUPERLOC_MAX_ENUM")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::nullopt;
}

}  // namespace

long default_enumeration_bound() { return enumeration_env().value_or(kPeriplecticBound); }

long default_closure_bound() {
  return std::max(enumeration_env().value_or(kClosureBound), kClosureBound);
}

IsotropicFixedPoints fixed_isotropic(int n) {
  if (n < 1) fail(ErrorCode::Dimension, "isotropic grassmannian needs n >= 1");
  // 2^{n-1} representatives are materialized; keep that desk-sized.
  if (n > 16)
    fail(ErrorCode::EnumerationLimit,
         "isotropic enumeration bound exceeded: n = " + std::to_string(n) + " > 16");
  IsotropicFixedPoints out;
  std::vector<int> eps_signs(static_cast<size_t>(n), 1);
  std::vector<int> delta_signs(static_cast<size_t>(n), 1);

  // Backtracking over per-block sign pairs; the branch with
  // s^eps_i != s^delta_i fails w(alpha_i) = +-alpha_i and is cut early.
  auto emit = [&]() {
    int flips = 0;
    for (int s : eps_signs)
      if (s < 0) ++flips;
    if (flips % 2 != 0) return;  // only an even number of eps sign changes is in the group
    WeylElement w = WeylElement::identity(2 * n);
    for (int i = 0; i < n; ++i) {
      w.sign[static_cast<size_t>(i)] = eps_signs[static_cast<size_t>(i)];
      w.sign[static_cast<size_t>(n + i)] = delta_signs[static_cast<size_t>(i)];
    }
    out.representatives.push_back(std::move(w));
    ++out.count;
  };
  auto recurse = [&](auto&& self, int block) -> void {
    if (block == n) {
      emit();
      return;
    }
    for (int se : {+1, -1}) {
      for (int sd : {+1, -1}) {
        if (se != sd) continue;
        eps_signs[static_cast<size_t>(block)] = se;
        delta_signs[static_cast<size_t>(block)] = sd;
        self(self, block + 1);
      }
    }
  };
  recurse(recurse, 0);
  return out;
}

PeriplecticFixedPoints fixed_periplectic(int r, int s, long bound) {
  if (r < 1 || s < 1) fail(ErrorCode::Dimension, "periplectic split needs r, s >= 1");
  const int n = r + s;
  if (n > bound)
    fail(ErrorCode::EnumerationLimit,
         "periplectic enumeration bound exceeded: n = " + std::to_string(n) +
             " > " + std::to_string(bound));
  const int l = n / 2;

  // Enumerate w^{-1} position by position; as soon as both preimages of an
  // odd/even pair (j, j+1) with j odd, j <= 2l are placed, they must sit on
  // the same side of the r|s split or the branch is pruned.
  std::vector<int> winv(static_cast<size_t>(n), -1);
  std::vector<bool> taken(static_cast<size_t>(n), false);
  long raw = 0;
  std::set<std::vector<int>> patterns;  // side of each pair (and of the leftover)

  auto side = [&](int value) { return value < r ? 0 : 1; };

  auto emit = [&]() {
    ++raw;
    std::vector<int> pattern;
    for (int p = 0; p < l; ++p) pattern.push_back(side(winv[static_cast<size_t>(2 * p)]));
    if (n % 2 == 1) pattern.push_back(side(winv[static_cast<size_t>(n - 1)]));
    patterns.insert(std::move(pattern));
  };
  auto recurse = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      emit();
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (taken[static_cast<size_t>(v)]) continue;
      if (pos % 2 == 1 && pos < 2 * l &&
          side(v) != side(winv[static_cast<size_t>(pos - 1)]))
        continue;
      taken[static_cast<size_t>(v)] = true;
      winv[static_cast<size_t>(pos)] = v;
      self(self, pos + 1);
      taken[static_cast<size_t>(v)] = false;
    }
  };
  recurse(recurse, 0);

  PeriplecticFixedPoints out;
  out.raw_count = raw;
  out.count = static_cast<long>(patterns.size());
  long wk = 1;
  for (int k = 2; k <= r; ++k) wk *= k;
  for (int k = 2; k <= s; ++k) wk *= k;
  if (out.count * wk != raw)
    fail(ErrorCode::Internal, "coset count is not raw/|W_K|; enumeration inconsistent");

  // One representative permutation per pattern, preimage values ascending.
  for (const auto& pattern : patterns) {
    std::vector<int> low, high;
    for (int v = 0; v < r; ++v) low.push_back(v);
    for (int v = r; v < n; ++v) high.push_back(v);
    size_t li = 0, hi = 0;
    std::vector<int> inv(static_cast<size_t>(n));
    for (int p = 0; p < l; ++p) {
      auto& pool = (pattern[static_cast<size_t>(p)] == 0) ? low : high;
      auto& idx = (pattern[static_cast<size_t>(p)] == 0) ? li : hi;
      inv[static_cast<size_t>(2 * p)] = pool[idx++];
      inv[static_cast<size_t>(2 * p + 1)] = pool[idx++];
    }
    if (n % 2 == 1) {
      auto& pool = (pattern.back() == 0) ? low : high;
      auto& idx = (pattern.back() == 0) ? li : hi;
      inv[static_cast<size_t>(n - 1)] = pool[idx++];
    }
    std::vector<int> w(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<size_t>(inv[static_cast<size_t>(j)])] = j;
    out.representatives.push_back(std::move(w));
  }
  return out;
}

FlagRootData gl_root_data(int m, int n) {
  if (m < 1 || n < 1) fail(ErrorCode::Dimension, "gl(m|n) needs m, n >= 1");
  FlagRootData d;
  d.rank = m + n;
  auto diff = [&](int i, int j) {
    std::vector<long> v(static_cast<size_t>(m + n), 0);
    v[static_cast<size_t>(i)] = 1;
    v[static_cast<size_t>(j)] = -1;
    return v;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) d.even_roots.push_back(diff(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) d.even_roots.push_back(diff(m + i, m + j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      d.odd_roots.push_back(diff(i, m + j));
      d.odd_roots.push_back(diff(m + j, i));
    }
  d.gram.assign(static_cast<size_t>(m + n), std::vector<long>(static_cast<size_t>(m + n), 0));
  for (int i = 0; i < m; ++i) d.gram[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (int i = m; i < m + n; ++i) d.gram[static_cast<size_t>(i)][static_cast<size_t>(i)] = -1;
  auto transposition = [&](int a, int b) {
    WeylElement w = WeylElement::identity(m + n);
    std::swap(w.perm[static_cast<size_t>(a)], w.perm[static_cast<size_t>(b)]);
    return w;
  };
  for (int i = 0; i + 1 < m; ++i) d.weyl_generators.push_back(transposition(i, i + 1));
  for (int i = 0; i + 1 < n; ++i) d.weyl_generators.push_back(transposition(m + i, m + i + 1));
  int defect = std::min(m, n);
  for (int i = 0; i < defect; ++i) d.isotropic_roots.push_back(diff(i, m + i));
  // Even roots of the Levi k = centralizer of the defect torus: both indices
  // beyond the defect range.
  for (int i = defect; i < m; ++i)
    for (int j = defect; j < m; ++j)
      if (i != j) d.k_roots.push_back(diff(i, j));
  for (int i = defect; i < n; ++i)
    for (int j = defect; j < n; ++j)
      if (i != j) d.k_roots.push_back(diff(m + i, m + j));
  return d;
}

namespace {

long bilinear(const std::vector<std::vector<long>>& gram, const std::vector<long>& u,
              const std::vector<long>& v) {
  long acc = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (size_t j = 0; j < v.size(); ++j) acc += u[i] * gram[i][j] * v[j];
  }
  return acc;
}

void validate_flag_data(const FlagRootData& d) {
  size_t rank = static_cast<size_t>(d.rank);
  if (rank == 0) fail(ErrorCode::Dimension, "flag data needs positive rank");
  if (d.gram.size() != rank) fail(ErrorCode::Dimension, "gram matrix rank mismatch");
  for (const auto& row : d.gram)
    if (row.size() != rank) fail(ErrorCode::Dimension, "gram matrix rank mismatch");
  auto check_vec = [&](const std::vector<long>& v, const char* what) {
    if (v.size() != rank) fail(ErrorCode::Dimension, std::string(what) + " rank mismatch");
  };
  for (const auto& v : d.even_roots) check_vec(v, "even root");
  for (const auto& v : d.odd_roots) check_vec(v, "odd root");
  for (const auto& v : d.k_roots) check_vec(v, "k root");
  for (const auto& w : d.weyl_generators)
    if (w.size() != d.rank) fail(ErrorCode::Dimension, "generator rank mismatch");
  for (const auto& a : d.isotropic_roots) {
    check_vec(a, "isotropic root");
    auto neg = a;
    for (long& c : neg) c = -c;
    bool is_odd = std::find(d.odd_roots.begin(), d.odd_roots.end(), a) != d.odd_roots.end() ||
                  std::find(d.odd_roots.begin(), d.odd_roots.end(), neg) != d.odd_roots.end();
    if (!is_odd) fail(ErrorCode::Model, "isotropic root is not among the odd roots");
  }
  for (const auto& a : d.isotropic_roots)
    for (const auto& b : d.isotropic_roots)
      if (bilinear(d.gram, a, b) != 0)
        fail(ErrorCode::Model, "isotropic roots must be mutually orthogonal and isotropic");
}

std::set<WeylElement> group_closure(const std::vector<WeylElement>& generators, int rank,
                                    long bound) {
  std::set<WeylElement> elements;
  std::vector<WeylElement> frontier;
  WeylElement id = WeylElement::identity(rank);
  elements.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<WeylElement> next;
    for (const WeylElement& w : frontier) {
      for (const WeylElement& g : generators) {
        WeylElement e = compose(g, w);
        if (elements.insert(e).second) {
          if (static_cast<long>(elements.size()) > bound)
            fail(ErrorCode::EnumerationLimit, "Weyl group closure bound exceeded");
          next.push_back(std::move(e));
        }
      }
    }
    frontier = std::move(next);
  }
  return elements;
}

bool lex_positive(const std::vector<long>& v) {
  for (long c : v) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

}  // namespace

WeylRatio weyl_ratio_flag(const FlagRootData& data, long closure_bound) {
  validate_flag_data(data);
  std::set<WeylElement> w = group_closure(data.weyl_generators, data.rank, closure_bound);

  std::set<std::vector<long>> alpha_set;
  for (const auto& a : data.isotropic_roots) {
    alpha_set.insert(a);
    auto neg = a;
    for (long& c : neg) c = -c;
    alpha_set.insert(neg);
  }

  unsigned long wd = 0;
  for (const WeylElement& e : w) {
    bool stable = true;
    for (const auto& a : data.isotropic_roots)
      if (!alpha_set.contains(e.apply(a))) {
        stable = false;
        break;
      }
    if (stable) ++wd;
  }

  // Reflections in even roots orthogonal to every alpha_i; orthogonality
  // already forces s_beta(alpha_i) = alpha_i, checked anyway.
  std::vector<WeylElement> c_generators;
  for (const auto& beta : data.even_roots) {
    long norm = bilinear(data.gram, beta, beta);
    if (norm == 0) fail(ErrorCode::Model, "even root with zero norm cannot be reflected");
    bool orthogonal = true;
    for (const auto& a : data.isotropic_roots)
      if (bilinear(data.gram, a, beta) != 0) {
        orthogonal = false;
        break;
      }
    if (!orthogonal) continue;
    WeylElement refl;
    refl.perm.assign(static_cast<size_t>(data.rank), -1);
    refl.sign.assign(static_cast<size_t>(data.rank), 0);
    for (int k = 0; k < data.rank; ++k) {
      std::vector<long> e(static_cast<size_t>(data.rank), 0);
      e[static_cast<size_t>(k)] = 1;
      long twice = 2 * bilinear(data.gram, e, beta);
      if (twice % norm != 0)
        fail(ErrorCode::Model, "reflection is not integral on the weight lattice");
      std::vector<long> image = e;
      long coef = twice / norm;
      for (size_t j = 0; j < image.size(); ++j) image[j] -= coef * beta[j];
      int nonzero = -1;
      for (size_t j = 0; j < image.size(); ++j) {
        if (image[j] == 0) continue;
        if (nonzero != -1 || (image[j] != 1 && image[j] != -1))
          fail(ErrorCode::Model, "reflection is not a signed permutation in this basis");
        nonzero = static_cast<int>(j);
      }
      if (nonzero == -1) fail(ErrorCode::Model, "degenerate reflection image");
      refl.perm[static_cast<size_t>(k)] = nonzero;
      refl.sign[static_cast<size_t>(k)] = static_cast<int>(image[static_cast<size_t>(nonzero)]);
    }
    for (const auto& a : data.isotropic_roots)
      if (refl.apply(a) != a)
        fail(ErrorCode::Model, "orthogonal reflection moves an isotropic root");
    if (!w.contains(refl))
      fail(ErrorCode::Model, "centralizer reflection lies outside the generated Weyl group");
    c_generators.push_back(std::move(refl));
  }
  std::set<WeylElement> wc = c_generators.empty()
                                 ? std::set<WeylElement>{WeylElement::identity(data.rank)}
                                 : group_closure(c_generators, data.rank, closure_bound);

  WeylRatio out;
  out.w_order = w.size();
  out.wd_order = wd;
  out.wc_order = wc.size();
  if (out.wc_order == 0 || out.wd_order % out.wc_order != 0)
    fail(ErrorCode::Model, "stabilizer order is not a multiple of the centralizer Weyl order");
  out.ratio = out.wd_order / out.wc_order;
  return out;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::Splitting ? "Splitting" : "Inconclusive";
}

ExactScalar VolumeResult::value() const {
  if (count == 0) return ExactScalar();
  ComplexRational c(count);
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(exponent_m));
  c *= ComplexRational(Rational(two_pow));
  c *= ComplexRational::i_power(-exponent_m);
  return ExactScalar::pi_power(c, exponent_m);
}

std::string VolumeResult::value_text() const {
  if (count == 0) return "0";
  if (exponent_m == 0) return std::to_string(count);
  std::ostringstream out;
  out << count << "*(2*pi/i)^" << exponent_m;
  return out.str();
}

VolumeResult volume(const HomSpaceSpec& spec, long bound) {
  VolumeResult out;
  if (const auto* iso = std::get_if<Isotropic>(&spec)) {
    out.count = fixed_isotropic(iso->n).count;
    out.exponent_m = static_cast<long>(iso->n) * iso->n;
    out.alt_exponent = 2 * out.exponent_m;  // doubled reading of the headline exponent
  } else if (const auto* per = std::get_if<Periplectic>(&spec)) {
    out.count = fixed_periplectic(per->r, per->s, bound).count;
    out.exponent_m = static_cast<long>(per->r) * per->s;
  } else {
    const auto& flag = std::get<Flag>(spec);
    WeylRatio ratio = weyl_ratio_flag(flag.data);
    out.count = static_cast<long>(ratio.ratio);
    long m = 0;
    auto in_k = [&](const std::vector<long>& beta) {
      auto neg = beta;
      for (long& c : neg) c = -c;
      return std::find(flag.data.k_roots.begin(), flag.data.k_roots.end(), beta) !=
                 flag.data.k_roots.end() ||
             std::find(flag.data.k_roots.begin(), flag.data.k_roots.end(), neg) !=
                 flag.data.k_roots.end();
    };
    for (const auto& beta : flag.data.even_roots)
      if (lex_positive(beta) && !in_k(beta)) ++m;
    out.exponent_m = m;
  }
  out.nonzero = out.count > 0;
  out.verdict = out.nonzero ? Verdict::Splitting : Verdict::Inconclusive;
  return out;
}

Verdict splitting_verdict(const VolumeResult& v) {
  return v.nonzero ? Verdict::Splitting : Verdict::Inconclusive;
}

namespace {

std::string periplectic_name(int copies_of_p2, int tail) {
  std::ostringstream out;
  if (copies_of_p2 == 1)
    out << "P(2)";
  else if (copies_of_p2 > 1)
    out << "P(2)^" << copies_of_p2;
  if (tail > 0) {
    if (copies_of_p2 > 0) out << "x";
    out << "P(" << tail << ")";
  }
  return out.str();
}

ChainStep volume_step(std::string subgroup, std::string ambient, const VolumeResult& v,
                      std::string note) {
  ChainStep step;
  step.subgroup = std::move(subgroup);
  step.ambient = std::move(ambient);
  step.evidence = "volume";
  step.vol = v;
  step.ok = v.nonzero;
  step.note = std::move(note);
  return step;
}

void conclude(ChainReport& r, const std::string& subject, const std::string& ambient) {
  r.broken = false;
  for (const ChainStep& s : r.steps)
    if (!s.ok) r.broken = true;
  r.verdict = r.broken ? Verdict::Inconclusive : Verdict::Splitting;
  r.conclusion = r.broken
                     ? subject + " in " + ambient + ": chain broken, no conclusion"
                     : subject + " is splitting in " + ambient + " by transitivity";
}

}  // namespace

ChainReport splitting_chain_report(const ChainRequest& request, long bound) {
  ChainReport report;
  if (const auto* tower = std::get_if<PeriplecticTower>(&request)) {
    int n = tower->n;
    if (n < 2) fail(ErrorCode::Dimension, "periplectic tower needs n >= 2");
    int copies = 0;
    int k = n;
    while (k > 3) {
      VolumeResult v = volume(Periplectic{2, k - 2}, bound);
      report.steps.push_back(volume_step(periplectic_name(copies + 1, k - 2),
                                         periplectic_name(copies, k),
                                         v, "P(2)xP(" + std::to_string(k - 2) + ") in P(" +
                                                std::to_string(k) + ")"));
      ++copies;
      k -= 2;
    }
    if (k == 3) {
      VolumeResult v = volume(Periplectic{2, 1}, bound);
      report.steps.push_back(volume_step(periplectic_name(copies + 1, 1),
                                         periplectic_name(copies, 3), v, "P(2)xP(1) in P(3)"));
      ++copies;
      k = 1;
    }
    // Terminal identification step: the subgroup equals the product form.
    VolumeResult point;
    point.count = 1;
    point.exponent_m = 0;
    point.nonzero = true;
    point.verdict = Verdict::Splitting;
    std::string final_name = periplectic_name(copies + (k == 2 ? 1 : 0), k == 2 ? 0 : k);
    report.steps.push_back(volume_step(final_name, periplectic_name(copies, k), point,
                                       "identification, quotient is a point"));
    conclude(report, final_name, "P(" + std::to_string(n) + ")");
  } else if (const auto* steps = std::get_if<PeriplecticSteps>(&request)) {
    if (steps->steps.empty()) fail(ErrorCode::Dimension, "empty chain");
    for (auto [r, s] : steps->steps) {
      VolumeResult v = volume(Periplectic{r, s}, bound);
      report.steps.push_back(volume_step(
          "P(" + std::to_string(r) + ")xP(" + std::to_string(s) + ")",
          "P(" + std::to_string(r + s) + ")", v, ""));
    }
    conclude(report, report.steps.back().subgroup, report.steps.front().ambient);
  } else {
    const auto& flag = std::get<FlagChain>(request);
    VolumeResult v = volume(Flag{flag.data}, bound);
    report.steps.push_back(volume_step("K", "G", v, "Levi centralizer of the defect torus"));
    ChainStep structural;
    structural.subgroup = "D";
    structural.ambient = "K";
    structural.evidence = "structural";
    structural.ok = true;
    structural.note = "normal subgroup with semisimple quotient category";
    report.steps.push_back(std::move(structural));
    conclude(report, "the defect subgroup D", "G");
  }
  return report;
}

}  // namespace superloc::homspace
