#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "infocorr/model.hpp"

// Shared-randomness classical strategies for a prepare-and-measure scenario.
// A deterministic strategy is an encoding E: inputs -> messages over a
// d-symbol alphabet plus a decoder D: messages x settings -> outcomes.
// An alphabet of d = n symbols already reaches every deterministic behavior,
// so the behavior polytope is enumerated with d = n throughout.

namespace infocorr {

struct DeterministicStrategy {
  int n = 0, d = 0, l = 0, k = 0;
  std::vector<int> encoding;  // size n, values in [0, d)
  std::vector<int> decoding;  // size d*l, values in [0, k); index m*l + y

  int decode(int m, int y) const { return decoding[static_cast<std::size_t>(m * l + y)]; }
};

struct EnumerationBudget {
  // Cap on the decoder count k^(d*l); with d = n this equals the number of
  // distinct deterministic behaviors.
  std::uint64_t max_decoders = 10'000'000;
};

// Streams every (encoding, decoder) pair with d = n, encoding-major and
// lexicographic in both odometers. Throws CapacityError (naming the full
// strategy count) when the decoder count exceeds the budget.
void enumerate_strategies(const Scenario& scenario,
                          const std::function<void(const DeterministicStrategy&)>& visit,
                          const EnumerationBudget& budget = {});

// Total strategy count n^n * k^(n*l), saturating at uint64 max.
std::uint64_t strategy_count(const Scenario& scenario);

Behavior strategy_behavior(const DeterministicStrategy& s, const Scenario& scenario);

// Eavesdropper guessing probability of the input given the message:
// sum over used messages of the largest prior in the message's preimage.
double strategy_guessing(const DeterministicStrategy& s, const std::vector<double>& prior);

struct Vertex {
  Behavior behavior;
  double cost;  // minimal guessing probability over generating strategies
};

// Deduplicated deterministic behaviors in canonical (lexicographic) order,
// each with its minimal guessing cost.
std::vector<Vertex> vertices(const Scenario& scenario, const EnumerationBudget& budget = {});

// Vertex set of the information-restricted polytope: vertices with cost <= cap
// plus, for every (cost < cap, cost > cap) vertex pair, the unique mixture
// whose average cost hits the cap exactly. May contain points that are not
// true vertices of the restricted polytope; all returned points belong to it.
std::vector<Behavior> restricted_vertices(const Scenario& scenario,
                                          const InfoBudget& budget,
                                          const EnumerationBudget& enumeration = {});

// Least information (bits) over shared-randomness decompositions of p:
//   min sum_g w_g cost_g  s.t.  sum_g w_g vertex_g = p,  w in the simplex,
// reported as H_min + log2(optimum). Numerically inconsistent behaviors
// surface as InvalidInputError.
double min_info_membership(const Behavior& p, const EnumerationBudget& budget = {});

// Largest witness value over the restricted polytope (LP over vertex weights
// with the average-cost constraint).
double classical_witness_bound(const Witness& witness, const InfoBudget& budget,
                               const EnumerationBudget& enumeration = {});

struct InequalityReport {
  double bound = 0;        // computed restricted-polytope maximum
  bool valid = false;      // bound <= claimed within tolerance
  bool tight = false;      // bound == claimed within tolerance
  bool facet = false;      // saturating points span one dimension less
  int polytope_rank = 0;   // affine rank of the candidate vertex set
  int saturating_rank = 0; // affine rank of the claimed-value saturating subset
};

// Checks witness <= claimed over the restricted polytope. The facet test
// compares affine ranks of restricted_vertices and its saturating subset;
// candidate points that are not true vertices still lie inside the polytope,
// so saturation keeps them on the face and the rank test stays sound.
InequalityReport check_inequality(const Witness& witness, const InfoBudget& budget,
                                  double claimed,
                                  const EnumerationBudget& enumeration = {});

// Rewrites a strategy over an oversized alphabet (d > n) onto d = n symbols,
// moving whole message preimages onto unused symbols. The behavior is
// preserved exactly and so is the guessing probability.
DeterministicStrategy remap_to_n_symbols(const DeterministicStrategy& s);

// Affine rank of a point set: 0 for empty, otherwise 1 + linear rank of the
// differences against the first point (SVD threshold 1e-7).
int affine_rank(const std::vector<std::vector<double>>& points);

}  // namespace infocorr
