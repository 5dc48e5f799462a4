#include "arithcoh/modular_symbol.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

namespace arithcoh {
namespace {

int64_t iabs(int64_t a) { return a < 0 ? -a : a; }

// round(a / b) for b > 0, halves away from minus infinity.
int64_t round_div(int64_t a, int64_t b) {
  int64_t n = 2 * a + b, d = 2 * b;
  int64_t q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

// Divides every column by its content; false when a column vanishes.
bool make_primitive(Mat3& m) {
  for (int j = 0; j < 3; ++j) {
    int64_t c = vec3_content(mat3_column(m, j));
    if (c == 0) return false;
    for (int i = 0; i < 3; ++i) m[i][j] /= c;
  }
  return true;
}

Mat3 replace_column(Mat3 m, int j, const Vec3& w) {
  for (int i = 0; i < 3; ++i) m[i][j] = w[i];
  return m;
}

// Largest |det| among children after making them primitive.
int64_t child_score(const Mat3& m, const Vec3& w) {
  int64_t best = 0;
  for (int j = 0; j < 3; ++j) {
    Mat3 c = replace_column(m, j, w);
    if (!make_primitive(c)) continue;
    best = std::max(best, iabs(mat3_det(c)));
  }
  return best;
}

bool parallel(const Vec3& a, const Vec3& b) {
  return a[1] * b[2] - a[2] * b[1] == 0 && a[2] * b[0] - a[0] * b[2] == 0 && a[0] * b[1] - a[1] * b[0] == 0;
}

// Numerators over 6 of {0, +-1/3, +-1/2, +-2/3, 1}.
constexpr std::array<int64_t, 8> kCoefficients{0, 2, -2, 3, -3, 4, -4, 6};

Vec3 centered_fallback(const Mat3& m, int64_t d) {
  const Mat3 adj = mat3_adjugate(m);  // m^{-1} = adj / d
  for (int j = 0; j < 3; ++j) {
    Vec3 num{adj[0][j], adj[1][j], adj[2][j]};  // d * m^{-1} e_j
    bool integral = true;
    for (auto v : num) integral = integral && (v % d == 0);
    if (integral) continue;
    Vec3 rounded;
    int64_t dd = d, sgn = 1;
    if (dd < 0) {
      dd = -dd;
      sgn = -1;
    }
    for (int i = 0; i < 3; ++i) rounded[i] = round_div(sgn * num[i], dd);
    const Vec3 mr = mat3_apply(m, rounded);
    Vec3 w;
    for (int i = 0; i < 3; ++i) w[i] = (i == j ? 1 : 0) - mr[i];
    return w;
  }
  throw std::logic_error("matrix with integral inverse has |det| > 1");
}

void reduce_into(Mat3 m, const ReduceOptions& opts, UnimodularChain& out, int depth) {
  if (!make_primitive(m)) return;
  int64_t d = mat3_det(m);
  if (d == 0) return;
  if (d == 1 || d == -1) {
    if (d == -1)
      for (int i = 0; i < 3; ++i) m[i][0] = -m[i][0];
    out.push_back({m, 1});
    return;
  }
  if (depth > 64) throw std::logic_error("symbol reduction did not terminate");
  const int64_t ad = iabs(d);
  const Vec3 v[3] = {mat3_column(m, 0), mat3_column(m, 1), mat3_column(m, 2)};

  Vec3 best_w{};
  int64_t best_score = ad;
  if (!opts.fallback_only) {
    std::vector<std::array<int64_t, 3>> cands;
    for (auto a : kCoefficients)
      for (auto b : kCoefficients)
        for (auto c : kCoefficients) cands.push_back({a, b, c});
    if (opts.reverse_candidates) std::reverse(cands.begin(), cands.end());
    for (const auto& c : cands) {
      Vec3 w;
      for (int i = 0; i < 3; ++i) w[i] = round_div(c[0] * v[0][i] + c[1] * v[1][i] + c[2] * v[2][i], 6);
      if (w == Vec3{0, 0, 0}) continue;
      if (parallel(w, v[0]) || parallel(w, v[1]) || parallel(w, v[2])) continue;
      int64_t s = child_score(m, w);
      if (s < best_score) {
        best_score = s;
        best_w = w;
      }
    }
  }
  if (best_score >= ad) best_w = centered_fallback(m, d);
  for (int j = 0; j < 3; ++j) {
    Mat3 c = replace_column(m, j, best_w);
    Mat3 p = c;
    if (!make_primitive(p)) continue;
    if (iabs(mat3_det(p)) >= ad) throw std::logic_error("four-term split did not lower the determinant");
    reduce_into(c, opts, out, depth + 1);
  }
}

}  // namespace

UnimodularChain reduce_symbol(const ModularSymbol& s, const ReduceOptions& opts) {
  UnimodularChain out;
  reduce_into(s.columns, opts, out, 0);
  return out;
}

}  // namespace arithcoh
