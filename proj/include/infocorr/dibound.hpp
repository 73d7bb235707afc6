#pragma once

#include <utility>
#include <vector>

#include "infocorr/model.hpp"

// Bounds that hold for any physical theory, derived from the behavior alone:
// a receiver post-processing b -> b' can never know the input better than the
// message allowed, which caps sum_b max_x p_x p(b|x,y) for every setting.

namespace infocorr {

// Stochastic map p(b'|y,b); rows indexed (y*k_in + b), entries over b'.
struct PostProcessing {
  int settings = 0;
  int outcomes_in = 0;
  int outcomes_out = 0;
  std::vector<double> table;

  PostProcessing(int settings_, int outcomes_in_, int outcomes_out_,
                 std::vector<double> table_);
  double at(int y, int b, int bp) const {
    return table[static_cast<std::size_t>((y * outcomes_in + b) * outcomes_out + bp)];
  }
};

Behavior apply_post_processing(const PostProcessing& post, const Behavior& p);

// Greatest lower bound on the information certified by the behavior itself:
// H_min(X) + log2(max_y sum_b max_x p_x p(b|x,y)). The inner closed form is
// the exact optimum over post-processings (the best map is deterministic,
// b' = argmax_x p_x p(b|x,y)); necessary for any model, not sufficient.
double di_min_info(const Behavior& p);

// Ceiling on a witness over ALL behaviors whose certified information fits
// the budget: LP over p(b|x,y) and slack t_{y,b} with t_{y,b} >= p_x p(b|x,y)
// and sum_b t_{y,b} <= cap for each setting.
double di_max_witness(const Witness& w, const InfoBudget& budget);

// For each target value, the least alpha whose ceiling reaches it, by
// bisection over [0, H_min] to 1e-6 bits. Values above the unrestricted
// maximum are rejected.
std::vector<std::pair<double, double>> di_info_curve(const Witness& w,
                                                     const std::vector<double>& values);

}  // namespace infocorr
