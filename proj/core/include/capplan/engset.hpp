#pragma once

#include "capplan/types.hpp"

namespace capplan {

enum class BlockingMethod { direct, recursive };

struct BlockingResult {
  double probability = 0;
  BlockingMethod method = BlockingMethod::recursive;
};

// Populations above this bound would overflow the exact 64-bit binomials of
// the direct form; blocking_direct refuses them with OverflowError.
inline constexpr int kMaxExactBinomialPopulation = 60;

// Finite-source call congestion seen by arrivals:
//   b(L,S) = C(S-1,L) rho^L / sum_{i=0}^{L} C(S-1,i) rho^i
// Small-instance oracle with exact integer binomials. Returns 0 for L >= S.
double blocking_direct(int licenses, int population, double rho);

// Forward-stable evaluation of the same quantity:
//   b(0) = 1,  b(j) = rho (S-j) b(j-1) / (j + rho (S-j) b(j-1))
// Defined for arbitrarily large S and L; returns 0 for L >= S. Note the
// per-step factor (S-j): the variant with (S-j+1) yields time congestion,
// which disagrees with the arrival-epoch formula above (see decision notes).
double blocking_recursive(int licenses, int population, double rho);

BlockingResult compute_blocking(int licenses, int population, double rho,
                                BlockingMethod method);

// Population-weighted blocking over isolated per-site pools:
//   b_d = sum_i (S_i / S) b(L_i, S_i)
double blocking_distributed(const PoolLayout& layout, double rho);

// Smallest L with blocking_recursive(L, S, rho) <= blocking_max
// (inclusive within kProbabilitySlack). Always <= S since b(S,S) = 0.
int min_licenses_for_blocking(int population, double rho, double blocking_max);

// Two pools of ceil(S/2) and floor(S/2) users holding ceil(L/2) and
// floor(L/2) licenses; the layout used by distributed comparison curves.
PoolLayout equal_two_pool_split(int population, int licenses);

}  // namespace capplan
