#pragma once

// Single-order Renyi quantities. All values are in bits; +inf is a regular
// result (support mismatch), never an error.

#include <span>
#include <string>

#include "renyikit/dist.hpp"
#include "renyikit/order.hpp"

namespace renyikit {

enum class Branch { generic, alpha_one, alpha_zero, alpha_inf };

const char* to_string(Branch b);
Branch branch_of(const ExtOrder& a);

struct MeasureResult {
  double value;
  Branch branch;
};

/// D_a(p || q) for a pmf p and an arbitrary non-negative measure q on the same
/// index set (q need not sum to 1; the all-ones measure gives -H_a).
/// Terms outside supp(p) are dropped.
MeasureResult renyi_divergence_raw(std::span<const double> p,
                                   std::span<const double> q, const ExtOrder& a);

/// Throws AlphabetMismatch if the alphabets differ.
MeasureResult renyi_divergence(const Pmf& p, const Pmf& q, const ExtOrder& a);

/// D_a(P_{Y|X} || Q_{Y|X} | P_X) = D_a(P_X P_{Y|X} || P_X Q_{Y|X}).
MeasureResult cond_renyi_divergence(const CondPmf& pyx, const CondPmf& qyx,
                                    const Pmf& px, const ExtOrder& a);

MeasureResult renyi_entropy(const Pmf& p, const ExtOrder& a);
MeasureResult renyi_entropy_raw(std::span<const double> p, const ExtOrder& a);

double shannon_entropy(std::span<const double> p);
/// D(p || q) in bits, +inf on support violation.
double relative_entropy(std::span<const double> p, std::span<const double> q);
double shannon_cond_entropy(const JointPmf& joint);
double shannon_mutual_info(const JointPmf& joint);

enum class CondEntropyVariant { H, Hstar, Hbar, HbarStar };
enum class MutualInfoVariant { I, Istar, Ibar, IbarStar };

const char* to_string(CondEntropyVariant v);
const char* to_string(MutualInfoVariant v);

/// H: -D_a(P_XY || 1 x P_Y).  Hstar: Arimoto.  Hbar: P_Y-average of
/// H_a(P_{X|y}).  HbarStar: max over y (a < 1), average (a = 1), min over y
/// (a > 1), y ranging over supp(P_Y).
MeasureResult cond_entropy_variant(CondEntropyVariant v, const JointPmf& joint,
                                   const ExtOrder& a);

/// I: D_a(P_XY || P_X x P_Y).  Istar: Sibson.  Ibar: P_Y-average of
/// D_a(P_{X|y} || P_X).  IbarStar: min over y (a < 1), I (a = 1), max over y
/// (a > 1).
MeasureResult mutual_info_variant(MutualInfoVariant v, const JointPmf& joint,
                                  const ExtOrder& a);

}  // namespace renyikit
