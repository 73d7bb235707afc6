#pragma once

#include <cstdint>
#include <random>

#include "infocorr/linalg.hpp"

namespace infocorr {

// splitmix64; used to derive independent per-restart seeds from one base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  Complex cnormal() { return Complex(normal(), normal()); }

  Matrix complex_gaussian(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
    return m;
  }

  // Ginibre-induced density matrix of the given rank.
  Matrix density(int dim, int rank) {
    Matrix g = complex_gaussian(dim, rank);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

  Vector pure_state(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cnormal();
    return v / v.norm();
  }

  // Random POVM: Ginibre effects, symmetrically normalized to sum to identity.
  std::vector<Matrix> povm(int dim, int outcomes) {
    std::vector<Matrix> eff;
    Matrix sum = Matrix::Zero(dim, dim);
    for (int i = 0; i < outcomes; ++i) {
      Matrix g = complex_gaussian(dim, dim);
      eff.push_back(g * g.adjoint());
      sum += eff.back();
    }
    Matrix s = inverse_sqrt(sum);
    for (auto& e : eff) e = s * e * s;
    return eff;
  }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace infocorr
