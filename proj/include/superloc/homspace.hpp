#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "superloc/exact.hpp"

namespace superloc::homspace {

/// Signed permutation of the weight basis: e_i -> sign[i] * e_{perm[i]}.
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  static WeylElement identity(int n);
  int size() const { return static_cast<int>(perm.size()); }
  std::vector<long> apply(const std::vector<long>& v) const;
  bool operator==(const WeylElement&) const = default;
  bool operator<(const WeylElement& o) const;
};

/// a after b (left action).
WeylElement compose(const WeylElement& a, const WeylElement& b);
WeylElement inverse(const WeylElement& w);

long default_enumeration_bound();  // honours SUPERLOC_MAX_ENUM
long default_closure_bound();      // at least kClosureBound, raised by SUPERLOC_MAX_ENUM
inline constexpr long kPeriplecticBound = 9;
inline constexpr long kClosureBound = 1'000'000;

struct IsotropicFixedPoints {
  long count = 0;
  std::vector<WeylElement> representatives;  // sign vectors on (eps_1..eps_n, delta_1..delta_n)
};

/// Sign-change elements w with an even number of eps-sign flips satisfying
/// w(eps_i - delta_i) = +-(eps_i - delta_i) for all i; the count is 2^{n-1}.
IsotropicFixedPoints fixed_isotropic(int n);

struct PeriplecticFixedPoints {
  long count = 0;                                   // cosets modulo S_r x S_s
  long raw_count = 0;                               // admissible permutations
  std::vector<std::vector<int>> representatives;    // one permutation per coset (0-indexed)
};

/// Permutations w of {1..n}, n = r+s, such that for every odd j <= 2*floor(n/2)
/// the preimages of j and j+1 sit on the same side of the r|s split, counted
/// modulo S_r x S_s.
PeriplecticFixedPoints fixed_periplectic(int r, int s, long bound = default_enumeration_bound());

struct FlagRootData {
  int rank = 0;
  std::vector<std::vector<long>> even_roots;
  std::vector<std::vector<long>> odd_roots;
  std::vector<std::vector<long>> gram;  // symmetric bilinear form on the weight basis
  std::vector<WeylElement> weyl_generators;
  std::vector<std::vector<long>> isotropic_roots;  // alpha_1 .. alpha_d
  std::vector<std::vector<long>> k_roots;          // even roots of the Levi k
};

/// Root data of gl(m|n) in the basis (eps_1..eps_m, delta_1..delta_n) with
/// the supertrace form, defect roots alpha_i = eps_i - delta_i.
FlagRootData gl_root_data(int m, int n);

struct WeylRatio {
  unsigned long w_order = 0;
  unsigned long wd_order = 0;  // stabilizer of {+-alpha_1 .. +-alpha_d} as a set
  unsigned long wc_order = 0;  // reflections orthogonal to and fixing every alpha_i
  unsigned long ratio = 0;     // wd / wc, exact
};

WeylRatio weyl_ratio_flag(const FlagRootData& data, long closure_bound = default_closure_bound());

struct Isotropic {
  int n = 0;
};
struct Periplectic {
  int r = 0;
  int s = 0;
};
struct Flag {
  FlagRootData data;
};
using HomSpaceSpec = std::variant<Isotropic, Periplectic, Flag>;

enum class Verdict { Splitting, Inconclusive };
const char* verdict_name(Verdict v);

/// Exact volume count * (2 pi / i)^m together with the splitting verdict.
struct VolumeResult {
  long count = 0;
  long exponent_m = 0;
  bool nonzero = false;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<long> alt_exponent;  // doubled-exponent reading, where it differs

  ExactScalar value() const;
  std::string value_text() const;  // "count*(2*pi/i)^m"
};

VolumeResult volume(const HomSpaceSpec& spec, long bound = default_enumeration_bound());

Verdict splitting_verdict(const VolumeResult& v);

struct PeriplecticTower {
  int n = 0;  // standard P(2)-chain of P(n)
};
struct PeriplecticSteps {
  std::vector<std::pair<int, int>> steps;  // explicit (r, s) per step
};
struct FlagChain {
  FlagRootData data;  // D inside the Levi K inside G
};
using ChainRequest = std::variant<PeriplecticTower, PeriplecticSteps, FlagChain>;

struct ChainStep {
  std::string subgroup;
  std::string ambient;
  std::string evidence;  // "volume" or "structural"
  std::optional<VolumeResult> vol;
  bool ok = false;
  std::string note;
};

struct ChainReport {
  std::vector<ChainStep> steps;
  bool broken = false;
  Verdict verdict = Verdict::Inconclusive;
  std::string conclusion;
};

/// Chains a subgroup tower with per-step volume (or structural) evidence and
/// draws the transitive conclusion; any zero-volume step breaks the chain.
ChainReport splitting_chain_report(const ChainRequest& request,
                                   long bound = default_enumeration_bound());

}  // namespace superloc::homspace
