#pragma once

// Desk-scale protocol simulations: privacy amplification by hashing and
// soft covering with i.i.d. random codebooks.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "renyikit/dist.hpp"
#include "renyikit/numerics.hpp"

namespace renyikit {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

enum class HashFamily { table, exhaustive, affine_bits };
const char* to_string(HashFamily f);

/// Hash h: [domain] -> [range] given by an explicit table.
struct HashSpec {
  std::size_t domain = 0;
  std::size_t range = 0;
  std::vector<std::size_t> table;
  HashFamily family = HashFamily::table;
};

HashSpec identity_hash(std::size_t domain);
HashSpec constant_hash(std::size_t domain, std::size_t range, std::size_t value = 0);
/// z = A x xor b on bit vectors; row r of A is the bit mask rows[r].
HashSpec affine_hash(unsigned domain_bits, const std::vector<std::uint64_t>& rows,
                     std::uint64_t offset);

/// Push-forward R_h(P)(z, y) = sum_{x : h(x) = z} P(x, y). DomainMismatch if the
/// table does not cover the X alphabet or maps outside the range.
JointPmf pa_apply_hash(const JointPmf& joint, const HashSpec& h);

/// D_beta(R_h(P) || uniform_Z x P_Y).
double pa_divergence(const JointPmf& joint, const HashSpec& h, double beta);

/// Visits every table of [|X|] -> [M] in lexicographic mixed-radix order
/// (entry 0 most significant). EnumerationCap if M^|X| exceeds the cap.
void for_each_hash(std::size_t domain, std::size_t range,
                   const std::function<void(const HashSpec&)>& visit,
                   std::size_t cap = kDefaultEnumerationCap);

struct HashSearchResult {
  double value;
  HashSpec argmin;
  std::size_t enumerated;
};

/// Minimum of pa_divergence over all tables; the first strict minimum in
/// enumeration order wins.
HashSearchResult pa_min_divergence_exhaustive(const JointPmf& joint, std::size_t range,
                                              double beta,
                                              std::size_t cap = kDefaultEnumerationCap);

struct PaBoundCheck {
  bool pass = true;
  /// Smallest D_beta(R_h(P) || uniform x P_Y) - bound over hashes, alphas and both bounds.
  double worst_margin = kInf;
  std::size_t hashes = 0;
  std::size_t comparisons = 0;
  std::vector<std::size_t> worst_table;
  double worst_alpha = 0.0;
};

/// For every table h: [|X|] -> [M] and every alpha in `alphas` (each in
/// [beta, 1)), checks D_beta(R_h(P) || uniform x P_Y) against
///   w(alpha) (log M - H~_{alpha,beta}(Z|Y)) evaluated on R_h(P), and
///   w(alpha) (log M - H~_{alpha,beta}(X|Y)) evaluated on P.
/// Requires beta in (0, 1).
PaBoundCheck check_one_shot_pa_bound(const JointPmf& joint, std::size_t range, double beta,
                                     const std::vector<double>& alphas,
                                     std::size_t cap = kDefaultEnumerationCap,
                                     double tol = 1e-10);

struct SimRecord {
  std::size_t n = 1;
  std::size_t M = 1;
  double beta = 1.0;
  std::string estimator;
  double value_bits = 0.0;
  /// Standard error; absent for exact values.
  std::optional<double> stderr_bits;
  std::optional<std::uint64_t> seed;
  std::string rounding_note;
  /// Known bias or validity caveats.
  std::string caveat;
};

struct RoundedSize {
  std::size_t M;
  std::string note;
};

/// M = max(1, round(2^{nR})) with a description of the rounding.
RoundedSize round_codebook_size(std::size_t n, double rate_bits);

struct FamilyResult {
  /// Smallest divergence among the sampled hashes.
  SimRecord best;
  /// (1/(beta-1)) log E_h 2^{(beta-1) D} over the samples (mean D at beta = 1).
  SimRecord ensemble;
};

/// Samples `samples` hashes from the affine family over bit vectors, which is
/// 2-universal; hence beta must lie in [1, 2] and |X|, M must be powers of two.
/// The universal-hashing bound guarantees some hash does no worse than the
/// family average; `best` is that witness among the samples.
FamilyResult pa_universal_family_divergence(const JointPmf& joint, std::size_t range,
                                            double beta, std::uint64_t seed,
                                            std::size_t samples = 256, std::size_t n = 1);

/// n-fold channel matrix W^n(y^n | x^n), row-major |X|^n x |Y|^n.
std::vector<double> channel_power(const CondPmf& channel, std::size_t n,
                                  std::size_t cell_cap = kDefaultCellCap);

/// Codebook-ensemble divergence of M i.i.d. codewords drawn from P_X^n:
/// beta != 1: (1/(beta-1)) log E_C sum_y P_{Y|C}^beta P_Y^{1-beta};
/// beta == 1: E_C D(P_{Y|C} || P_Y).  Exact enumeration over |X|^{nM}
/// codebooks; EnumerationCap above the cap.
SimRecord sc_expected_divergence_exact(const Pmf& px, const CondPmf& channel,
                                       std::size_t n, std::size_t M, double beta,
                                       std::size_t cap = kDefaultEnumerationCap);

/// Monte Carlo estimate of the same quantity from `samples` codebooks. Each
/// codebook uses its own stream derived from (seed, index); per-codebook
/// values are combined in index order, so results do not depend on `threads`.
/// Standard error by the jackknife.
SimRecord sc_expected_divergence_mc(const Pmf& px, const CondPmf& channel, std::size_t n,
                                    std::size_t M, double beta, std::size_t samples,
                                    std::uint64_t seed, std::size_t threads = 1);

struct BoundCheck {
  bool pass;
  /// record.value_bits - bound
  double margin;
  double bound;
};

/// Compares an exact record with the one-shot converse bound
///   beta < 1:  max_{alpha in [beta,1]} w(alpha) (I~_{alpha,beta} - log M)
///   beta >= 1: |I_beta - log M|^+
/// evaluated for the n-fold joint through additivity. Pass iff margin >= -tol.
BoundCheck check_one_shot_sc_bound(const Pmf& px, const CondPmf& channel, std::size_t n,
                                   std::size_t M, double beta, const SimRecord& record,
                                   double tol = 1e-10);

}  // namespace renyikit
