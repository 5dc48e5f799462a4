#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arithcoh {

using Vec3 = std::array<int64_t, 3>;
using Mat3 = std::array<std::array<int64_t, 3>, 3>;

inline Mat3 mat3_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Mat3 mat3_diag(int64_t a, int64_t b, int64_t c) { return {{{a, 0, 0}, {0, b, 0}, {0, 0, c}}}; }

inline Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int64_t s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

inline Vec3 mat3_apply(const Mat3& a, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return out;
}

inline int64_t mat3_det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 mat3_adjugate(const Mat3& m) {
  Mat3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  return a;
}

// Inverse of a matrix with determinant +-1.
inline Mat3 mat3_inverse_unimodular(const Mat3& m) {
  int64_t d = mat3_det(m);
  if (d != 1 && d != -1) throw std::domain_error("matrix is not unimodular");
  Mat3 a = mat3_adjugate(m);
  for (auto& row : a)
    for (auto& e : row) e *= d;
  return a;
}

inline Mat3 mat3_transpose(const Mat3& m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

inline Vec3 mat3_column(const Mat3& m, int j) { return {m[0][j], m[1][j], m[2][j]}; }

inline Mat3 mat3_from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
  return {{{a[0], b[0], c[0]}, {a[1], b[1], c[1]}, {a[2], b[2], c[2]}}};
}

inline int64_t vec3_content(const Vec3& v) {
  return std::gcd(std::gcd(std::llabs(v[0]), std::llabs(v[1])), std::llabs(v[2]));
}

inline std::string mat3_to_string(const Mat3& m) {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    s += (i ? ",[" : "[");
    for (int j = 0; j < 3; ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

}  // namespace arithcoh
