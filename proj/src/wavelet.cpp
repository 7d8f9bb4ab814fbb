// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cghw/errors.hpp"

namespace cghw {

namespace {

void check_slope(double lambda) {
  if (!(std::fabs(lambda) <= kMaxSlope)) {
    throw DomainError("slope lambda=" + std::to_string(lambda) + " outside [-2,2]");
  }
}

void check_even(std::size_t n, const char* what) {
  if (n == 0 || n % 2 != 0) {
    throw DimensionError(std::string(what) + " must be a positive even size, got " +
                         std::to_string(n));
  }
}

}  // namespace

double scaling_value(double x, double lambda) {
  check_slope(lambda);
  if (x >= 0.0 && x < 1.0) {
    return lambda * (x - 0.5) + 1.0;
  }
  return 0.0;
}

double wavelet_value(double x, double lambda) {
  check_slope(lambda);
  const double l2 = lambda * lambda / 24.0;
  if (x >= 0.0 && x < 0.5) {
    return (l2 + lambda / 4.0 + 1.0) * (2.0 * lambda * x - lambda / 2.0 + 1.0);
  }
  if (x >= 0.5 && x < 1.0) {
    return -(l2 - lambda / 4.0 + 1.0) * (2.0 * lambda * x - 1.5 * lambda + 1.0);
  }
  return 0.0;
}

CoeffPair coeffs(double lambda) {
  check_slope(lambda);
  const double l2 = lambda * lambda / 24.0;
  const double q = lambda / 4.0;
  CoeffPair c{};
  c.lambda = lambda;
  c.p0 = l2 - q + 1.0;
  c.p1 = l2 + q + 1.0;
  c.pt0 = c.p0 / std::numbers::sqrt2;
  c.pt1 = c.p1 / std::numbers::sqrt2;
  return c;
}

double lambda_from_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("keystream value s=" + std::to_string(s) + " outside [0,1]");
  }
  return 4.0 * s - 2.0;
}

double AnalysisMatrix::block_determinant(std::size_t r) const {
  return -(low_even_[r] * high_odd_[r] + low_odd_[r] * high_even_[r]);
}

Matrix AnalysisMatrix::dense() const {
  Matrix m(n_, n_);
  const std::size_t h = pairs();
  for (std::size_t r = 0; r < h; ++r) {
    m(r, 2 * r) = low_even_[r];
    m(r, 2 * r + 1) = low_odd_[r];
    m(h + r, 2 * r) = high_even_[r];
    m(h + r, 2 * r + 1) = -high_odd_[r];
  }
  return m;
}

AnalysisMatrix build_analysis_matrix(std::span<const double> stream, std::size_t n,
                                     std::string source) {
  check_even(n, "analysis matrix");
  if (stream.size() != 2 * n) {
    throw DimensionError("analysis matrix of size " + std::to_string(n) + " needs " +
                         std::to_string(2 * n) + " keystream values, got " +
                         std::to_string(stream.size()));
  }
  AnalysisMatrix m;
  m.n_ = n;
  m.source_ = std::move(source);
  const std::size_t h = n / 2;
  m.low_even_.resize(h);
  m.low_odd_.resize(h);
  m.high_even_.resize(h);
  m.high_odd_.resize(h);
  for (std::size_t r = 0; r < h; ++r) {
    m.low_even_[r] = coeffs(lambda_from_s(stream[4 * r])).pt0;
    m.low_odd_[r] = coeffs(lambda_from_s(stream[4 * r + 1])).pt1;
    m.high_even_[r] = coeffs(lambda_from_s(stream[4 * r + 2])).pt1;
    m.high_odd_[r] = coeffs(lambda_from_s(stream[4 * r + 3])).pt0;
  }
  return m;
}

Matrix assemble(const SubBands& bands) {
  const std::size_t h = bands.ll.rows();
  const std::size_t w = bands.ll.cols();
  for (const Matrix* b : {&bands.lh, &bands.hl, &bands.hh}) {
    if (b->rows() != h || b->cols() != w) {
      throw DimensionError("sub-band shapes disagree");
    }
  }
  Matrix f(2 * h, 2 * w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      f(i, j) = bands.ll(i, j);
      f(i, w + j) = bands.hl(i, j);
      f(h + i, j) = bands.lh(i, j);
      f(h + i, w + j) = bands.hh(i, j);
    }
  }
  return f;
}

SubBands split(const Matrix& f) {
  check_even(f.rows(), "matrix rows");
  check_even(f.cols(), "matrix cols");
  const std::size_t h = f.rows() / 2;
  const std::size_t w = f.cols() / 2;
  SubBands b{Matrix(h, w), Matrix(h, w), Matrix(h, w), Matrix(h, w)};
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      b.ll(i, j) = f(i, j);
      b.hl(i, j) = f(i, w + j);
      b.lh(i, j) = f(h + i, j);
      b.hh(i, j) = f(h + i, w + j);
    }
  }
  return b;
}

Matrix apply_rows(const AnalysisMatrix& m, const Matrix& x) {
  if (m.size() != x.rows()) {
    throw DimensionError("row matrix size " + std::to_string(m.size()) + " != image rows " +
                         std::to_string(x.rows()));
  }
  const std::size_t h = m.pairs();
  Matrix y(x.rows(), x.cols());
  for (std::size_t r = 0; r < h; ++r) {
    const double a = m.low_even(r), b = m.low_odd(r), c = m.high_even(r), d = m.high_odd(r);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double u = x(2 * r, j), v = x(2 * r + 1, j);
      y(r, j) = a * u + b * v;
      y(h + r, j) = c * u - d * v;
    }
  }
  return y;
}

Matrix apply_rows_inverse(const AnalysisMatrix& m, const Matrix& y) {
  if (m.size() != y.rows()) {
    throw DimensionError("row matrix size " + std::to_string(m.size()) + " != rows " +
                         std::to_string(y.rows()));
  }
  // [a b; c -d]^{-1} = [d b; c -a] / (ad + bc)
  const std::size_t h = m.pairs();
  Matrix x(y.rows(), y.cols());
  for (std::size_t r = 0; r < h; ++r) {
    const double a = m.low_even(r), b = m.low_odd(r), c = m.high_even(r), d = m.high_odd(r);
    const double g = a * d + b * c;
    for (std::size_t j = 0; j < y.cols(); ++j) {
      const double lo = y(r, j), hi = y(h + r, j);
      x(2 * r, j) = (d * lo + b * hi) / g;
      x(2 * r + 1, j) = (c * lo - a * hi) / g;
    }
  }
  return x;
}

Matrix apply_cols(const Matrix& x, const AnalysisMatrix& m) {
  if (m.size() != x.cols()) {
    throw DimensionError("column matrix size " + std::to_string(m.size()) +
                         " != image cols " + std::to_string(x.cols()));
  }
  const std::size_t h = m.pairs();
  Matrix y(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t r = 0; r < h; ++r) {
      const double u = x(i, 2 * r), v = x(i, 2 * r + 1);
      y(i, r) = m.low_even(r) * u + m.low_odd(r) * v;
      y(i, h + r) = m.high_even(r) * u - m.high_odd(r) * v;
    }
  }
  return y;
}

Matrix apply_cols_inverse(const Matrix& y, const AnalysisMatrix& m) {
  if (m.size() != y.cols()) {
    throw DimensionError("column matrix size " + std::to_string(m.size()) + " != cols " +
                         std::to_string(y.cols()));
  }
  const std::size_t h = m.pairs();
  Matrix x(y.rows(), y.cols());
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t r = 0; r < h; ++r) {
      const double a = m.low_even(r), b = m.low_odd(r), c = m.high_even(r), d = m.high_odd(r);
      const double g = a * d + b * c;
      const double lo = y(i, r), hi = y(i, h + r);
      x(i, 2 * r) = (d * lo + b * hi) / g;
      x(i, 2 * r + 1) = (c * lo - a * hi) / g;
    }
  }
  return x;
}

SubBands forward1(const Matrix& image, const AnalysisMatrix& row_m,
                  const AnalysisMatrix& col_m) {
  check_even(image.rows(), "image height");
  check_even(image.cols(), "image width");
  return split(apply_cols(apply_rows(row_m, image), col_m));
}

Matrix inverse1(const SubBands& bands, const AnalysisMatrix& row_m,
                const AnalysisMatrix& col_m) {
  return apply_cols_inverse(apply_rows_inverse(row_m, assemble(bands)), col_m);
}

}  // namespace cghw
