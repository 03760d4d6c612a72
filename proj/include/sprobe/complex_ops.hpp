#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sprobe/parallel.hpp"

namespace sprobe::cops {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Batched per-frame complex ops. Matrices hold one frame per column, so all
// kernels are data-parallel over columns. Columns are processed in fixed
// 64-wide chunks and parameter-gradient reductions merge fixed 256-wide
// blocks in order, which makes every result independent of the thread count.
//
// Gradients use the real/imaginary parameterization packed into complex
// numbers: g = dL/dRe + i*dL/dIm. Under this packing the affine backward
// rules are gX = W^H gY and gW = gY X^H.

constexpr int kColChunk = 64;
constexpr int kReduceChunk = 256;

// Y = W X + b (b added to every column).
void affine_fwd(const CMat& W, const CVec& b, const CMat& X, CMat& Y,
                exec::Policy policy = exec::default_policy());

// GX = W^H GY.
void affine_bwd_input(const CMat& W, const CMat& GY, CMat& GX,
                      exec::Policy policy = exec::default_policy());

// GW += GY X^H and gb += sum of GY columns.
void affine_bwd_params(const CMat& GY, const CMat& X, CMat& GW, CVec& gb,
                       exec::Policy policy = exec::default_policy());

// Split tanh: tanh on real and imaginary parts independently.
void stanh_fwd(CMat& X, exec::Policy policy = exec::default_policy());
// G := stanh'(Y) ⊙ G, where Y is the forward output.
void stanh_bwd(const CMat& Y, CMat& G,
               exec::Policy policy = exec::default_policy());

// Phase-preserving magnitude saturation: y = z * tanh(|z|/cap) * cap / |z|.
// Near zero it behaves like the identity; |y| < cap everywhere.
void magcap_fwd(const CMat& Z, double cap, CMat& Y,
                exec::Policy policy = exec::default_policy());
// G := J(Z)^T G for the map above (J is the 2x2 real Jacobian per entry).
void magcap_bwd(const CMat& Z, double cap, CMat& G,
                exec::Policy policy = exec::default_policy());

// Magnitude compression phi(z) = |z|^p * exp(i*arg z) with a floor on |z|.
void compress_fwd(const CMat& Z, double p, double floor, CMat& Y,
                  exec::Policy policy = exec::default_policy());
void compress_bwd(const CMat& Z, double p, double floor, CMat& G,
                  exec::Policy policy = exec::default_policy());

}  // namespace sprobe::cops
