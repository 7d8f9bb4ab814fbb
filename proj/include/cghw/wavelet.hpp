// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cghw {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr double kMaxSlope = 2.0;

/// Refinement coefficients of the gradient scaling function for one slope.
struct CoeffPair {
  double lambda;
  double p0;
  double p1;
  double pt0;  // p0 / sqrt(2)
  double pt1;  // p1 / sqrt(2)
};

/// lambda (x - 1/2) + 1 on [0,1), 0 elsewhere.
double scaling_value(double x, double lambda);
/// Gradient Haar wavelet; reduces to the classical Haar wavelet at lambda = 0.
double wavelet_value(double x, double lambda);
CoeffPair coeffs(double lambda);
/// Affine bijection [0,1] -> [-2,2], lambda = 4s - 2.
double lambda_from_s(double s);

/// One-level analysis matrix of the chaotic gradient Haar transform.
///
/// For row pair r (0 <= r < n/2) the nonzero entries are
///
///     row r        : [2r] = pt0(la)   [2r+1] =  pt1(lb)
///     row n/2 + r  : [2r] = pt1(lc)   [2r+1] = -pt0(ld)
///
/// where (la, lb, lc, ld) are the slopes derived from keystream values
/// 4r .. 4r+3. Each 2x2 block has determinant -(pt0(la) pt0(ld) + pt1(lb) pt1(lc)),
/// which is at most -4/9, so the matrix is always invertible.
class AnalysisMatrix {
 public:
  std::size_t size() const { return n_; }
  std::size_t pairs() const { return n_ / 2; }
  const std::string& source() const { return source_; }

  double low_even(std::size_t r) const { return low_even_[r]; }
  double low_odd(std::size_t r) const { return low_odd_[r]; }
  double high_even(std::size_t r) const { return high_even_[r]; }
  /// Magnitude of the (negative) odd-column entry of high-pass row r.
  double high_odd(std::size_t r) const { return high_odd_[r]; }

  double block_determinant(std::size_t r) const;
  Matrix dense() const;

  friend AnalysisMatrix build_analysis_matrix(std::span<const double>, std::size_t,
                                              std::string);

 private:
  std::size_t n_ = 0;
  std::vector<double> low_even_, low_odd_, high_even_, high_odd_;
  std::string source_;
};

/// Consumes exactly 2n keystream values (four per row pair, in row-pair order).
AnalysisMatrix build_analysis_matrix(std::span<const double> stream, std::size_t n,
                                     std::string source = {});

/// Quadrants of F: LL top-left, HL top-right, LH bottom-left, HH bottom-right.
struct SubBands {
  Matrix ll, lh, hl, hh;
};

/// Assemble the four quadrants into one matrix, and the reverse.
Matrix assemble(const SubBands& bands);
SubBands split(const Matrix& f);

/// M X, M^{-1} X, X M^T and X M^{-T} using the 2-tap block structure.
Matrix apply_rows(const AnalysisMatrix& m, const Matrix& x);
Matrix apply_rows_inverse(const AnalysisMatrix& m, const Matrix& x);
Matrix apply_cols(const Matrix& x, const AnalysisMatrix& m);
Matrix apply_cols_inverse(const Matrix& x, const AnalysisMatrix& m);

/// F = rowM * image * colM^T, split into sub-bands.
SubBands forward1(const Matrix& image, const AnalysisMatrix& row_m, const AnalysisMatrix& col_m);
/// rowM^{-1} * F * colM^{-T}.
Matrix inverse1(const SubBands& bands, const AnalysisMatrix& row_m, const AnalysisMatrix& col_m);

}  // namespace cghw
