#include "arithcoh/rref.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

namespace arithcoh {
namespace {

using Entry = SparseMatrix::Entry;
using Row = std::vector<Entry>;

struct PivotRow {
  uint32_t col;
  Row row;  // includes the pivot entry, normalized to 1
};

// Markowitz elimination. Consumes `rows`; leaves the unreduced remainder in it.
class SparsePhase {
 public:
  SparsePhase(const PrimeField& f, std::vector<Row>& rows, size_t cols, const RrefOptions& opts)
      : f_(f), rows_(rows), count_(cols, 0), col_rows_(cols), opts_(opts) {
    active_.assign(rows_.size(), true);
    for (uint32_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].empty()) active_[i] = false;
      nnz_ += rows_[i].size();
      for (auto& e : rows_[i]) {
        ++count_[e.col];
        col_rows_[e.col].push_back(i);
      }
    }
    nnz_limit_ = static_cast<size_t>(opts.fill_limit * static_cast<double>(nnz_)) + 1024;
    for (uint32_t c = 0; c < cols; ++c)
      if (count_[c]) queue_.insert({count_[c], c});
  }

  std::vector<PivotRow> run() {
    std::vector<PivotRow> pivots;
    while (!queue_.empty() && nnz_ <= nnz_limit_) {
      auto choice = choose();
      if (!choice) break;
      auto [r, c] = *choice;
      pivots.push_back(eliminate(r, c));
    }
    return pivots;
  }

  const std::vector<bool>& active() const { return active_; }
  const std::vector<uint32_t>& counts() const { return count_; }

 private:
  struct Choice {
    uint32_t row, col;
  };

  static const Entry* find(const Row& row, uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, uint32_t v) { return e.col < v; });
    return (it != row.end() && it->col == c) ? &*it : nullptr;
  }

  void set_count(uint32_t c, uint32_t n) {
    if (count_[c]) queue_.erase({count_[c], c});
    count_[c] = n;
    if (n) queue_.insert({n, c});
  }

  // Live rows containing column c, compacting the stale list.
  std::vector<uint32_t>& live_rows(uint32_t c) {
    auto& lst = col_rows_[c];
    size_t w = 0;
    for (uint32_t r : lst)
      if (active_[r] && find(rows_[r], c)) lst[w++] = r;
    lst.resize(w);
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    return lst;
  }

  std::optional<Choice> choose() {
    const uint32_t min_count = queue_.begin()->first;
    std::optional<Choice> best;
    uint64_t best_cost = UINT64_MAX;
    int examined = 0;
    for (auto it = queue_.begin(); it != queue_.end() && it->first == min_count && examined < 16; ++it, ++examined) {
      uint32_t c = it->second;
      for (uint32_t r : live_rows(c)) {
        uint64_t cost = uint64_t(min_count - 1) * (rows_[r].size() - 1);
        if (cost < best_cost || (cost == best_cost && (r < best->row || (r == best->row && c < best->col)))) {
          best_cost = cost;
          best = Choice{r, c};
        }
      }
    }
    if (!best || best_cost > opts_.markowitz_max_cost) return std::nullopt;
    return best;
  }

  PivotRow eliminate(uint32_t p, uint32_t c) {
    Row prow = std::move(rows_[p]);
    active_[p] = false;
    uint32_t inv = f_.inv(find(prow, c)->val);
    for (auto& e : prow) e.val = f_.mul(e.val, inv);
    for (auto& e : prow) set_count(e.col, count_[e.col] - 1);
    nnz_ -= prow.size();

    std::vector<uint32_t> targets = live_rows(c);
    Row merged;
    for (uint32_t r : targets) {
      Row& row = rows_[r];
      uint32_t a = find(row, c)->val;
      merged.clear();
      merged.reserve(row.size() + prow.size());
      size_t i = 0, j = 0;
      while (i < row.size() || j < prow.size()) {
        if (j == prow.size() || (i < row.size() && row[i].col < prow[j].col)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || prow[j].col < row[i].col) {
          uint32_t v = f_.neg(f_.mul(a, prow[j].val));
          merged.push_back({prow[j].col, v});
          set_count(prow[j].col, count_[prow[j].col] + 1);
          col_rows_[prow[j].col].push_back(r);
          ++j;
        } else {
          uint32_t v = f_.sub(row[i].val, f_.mul(a, prow[j].val));
          if (v) {
            merged.push_back({row[i].col, v});
          } else {
            set_count(row[i].col, count_[row[i].col] - 1);
          }
          ++i;
          ++j;
        }
      }
      nnz_ += merged.size();
      nnz_ -= row.size();
      row.swap(merged);
      if (row.empty()) active_[r] = false;
    }
    col_rows_[c].clear();
    return {c, std::move(prow)};
  }

  const PrimeField& f_;
  std::vector<Row>& rows_;
  std::vector<bool> active_;
  std::vector<uint32_t> count_;
  std::vector<std::vector<uint32_t>> col_rows_;
  std::set<std::pair<uint32_t, uint32_t>> queue_;
  size_t nnz_ = 0, nnz_limit_ = 0;
  const RrefOptions& opts_;
};

inline void reduce_mod(double* x, size_t n, double r, double rinv) {
  for (size_t i = 0; i < n; ++i) {
    double y = x[i] - std::floor(x[i] * rinv) * r;
    y = y < 0 ? y + r : y;
    x[i] = y >= r ? y - r : y;
  }
}

// Streaming Gauss-Jordan over the columns the sparse phase left behind.
// Invariant: basis row i is e_{piv[i]} + sum_j F(i,j) e_{free[j]}.
class DensePhase {
 public:
  DensePhase(const PrimeField& f, size_t ncols, const RrefOptions& opts)
      : f_(f), r_(f.modulus()), rinv_(1.0 / f.modulus()), opts_(opts) {
    free_.resize(ncols);
    pos_.resize(ncols);
    pivot_of_.assign(ncols, -1);
    for (size_t j = 0; j < ncols; ++j) {
      free_[j] = static_cast<uint32_t>(j);
      pos_[j] = static_cast<int64_t>(j);
    }
  }

  void feed(const std::vector<const Row*>& rows) {
    size_t done = 0, chunks = 0;
    while (done < rows.size() && !free_.empty()) {
      size_t n = std::min(opts_.chunk_rows, rows.size() - done);
      process(rows.data() + done, n);
      done += n;
      if (opts_.progress && (++chunks % 64 == 0))
        opts_.progress("dense elimination: " + std::to_string(done) + "/" + std::to_string(rows.size()) +
                       " rows, rank " + std::to_string(piv_.size()) + ", free " + std::to_string(free_.size()));
    }
  }

  const std::vector<uint32_t>& pivots() const { return piv_; }
  const std::vector<uint32_t>& free_cols() const { return free_; }
  uint32_t entry(size_t i, size_t j) const { return static_cast<uint32_t>(F_[i * free_.size() + j]); }

 private:
  void process(const Row* const* rows, size_t n) {
    const size_t q = free_.size();
    std::vector<double> C(n * q, 0.0);
    for (size_t t = 0; t < n; ++t) {
      double* ct = C.data() + t * q;
      for (auto& e : *rows[t]) {
        if (pos_[e.col] >= 0) {
          ct[pos_[e.col]] += e.val;
        } else {
          const double v = e.val;
          const double* fi = F_.data() + static_cast<size_t>(pivot_of_[e.col]) * q;
          for (size_t j = 0; j < q; ++j) ct[j] -= v * fi[j];
        }
      }
      reduce_mod(ct, q, r_, rinv_);
    }

    // Gauss-Jordan within the block, lowest column first.
    std::vector<size_t> J;
    size_t k = 0;
    for (size_t j = 0; j < q && k < n; ++j) {
      size_t p = k;
      while (p < n && C[p * q + j] == 0.0) ++p;
      if (p == n) continue;
      if (p != k) std::swap_ranges(C.begin() + p * q + j, C.begin() + p * q + q, C.begin() + k * q + j);
      double* ck = C.data() + k * q;
      const double inv = f_.inv(static_cast<uint32_t>(ck[j]));
      for (size_t l = j; l < q; ++l) ck[l] *= inv;
      reduce_mod(ck + j, q - j, r_, rinv_);
      for (size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        double* ci = C.data() + i * q;
        const double a = ci[j];
        if (a == 0.0) continue;
        for (size_t l = j; l < q; ++l) ci[l] -= a * ck[l];
        reduce_mod(ci + j, q - j, r_, rinv_);
      }
      J.push_back(j);
      ++k;
    }
    if (J.empty()) return;

    std::vector<bool> in_J(q, false);
    for (auto j : J) in_J[j] = true;
    std::vector<size_t> keep;
    keep.reserve(q - J.size());
    for (size_t j = 0; j < q; ++j)
      if (!in_J[j]) keep.push_back(j);
    const size_t q2 = keep.size(), rho = piv_.size(), nj = J.size();

    std::vector<double> FJ(rho * nj), G(nj * q2);
    for (size_t i = 0; i < rho; ++i) {
      const double* src = F_.data() + i * q;
      for (size_t t = 0; t < nj; ++t) FJ[i * nj + t] = src[J[t]];
      double* dst = F_.data() + i * q2;  // in-place compaction, dst <= src
      for (size_t t = 0; t < q2; ++t) dst[t] = src[keep[t]];
    }
    for (size_t t = 0; t < nj; ++t)
      for (size_t u = 0; u < q2; ++u) G[t * q2 + u] = C[t * q + keep[u]];
    F_.resize((rho + nj) * q2);
    if (rho > 0 && q2 > 0) {
      cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(rho), static_cast<int>(q2),
                  static_cast<int>(nj), -1.0, FJ.data(), static_cast<int>(nj), G.data(), static_cast<int>(q2), 1.0,
                  F_.data(), static_cast<int>(q2));
      reduce_mod(F_.data(), rho * q2, r_, rinv_);
    }
    std::copy(G.begin(), G.end(), F_.begin() + rho * q2);

    for (size_t t = 0; t < nj; ++t) {
      uint32_t col = free_[J[t]];
      pivot_of_[col] = static_cast<int64_t>(rho + t);
      pos_[col] = -1;
      piv_.push_back(col);
    }
    std::vector<uint32_t> nf(q2);
    for (size_t u = 0; u < q2; ++u) {
      nf[u] = free_[keep[u]];
      pos_[nf[u]] = static_cast<int64_t>(u);
    }
    free_.swap(nf);
  }

  const PrimeField& f_;
  double r_, rinv_;
  const RrefOptions& opts_;
  std::vector<uint32_t> free_, piv_;
  std::vector<int64_t> pos_, pivot_of_;
  std::vector<double> F_;
};

}  // namespace

RrefResult rref(const PrimeField& f, const SparseMatrix& m, const RrefOptions& opts) {
  openblas_set_num_threads(1);
  const size_t ncols = m.cols();
  std::vector<Row> rows(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) rows[i].assign(m.row_begin(i), m.row_end(i));

  SparsePhase sparse(f, rows, ncols, opts);
  std::vector<PivotRow> spiv = sparse.run();
  if (opts.progress)
    opts.progress("sparse elimination: " + std::to_string(spiv.size()) + " pivots of " + std::to_string(ncols) +
                  " columns");

  std::vector<bool> eliminated(ncols, false);
  for (auto& p : spiv) eliminated[p.col] = true;
  // Remaining columns still touched by active rows.
  std::vector<int64_t> local(ncols, -1);
  std::vector<uint32_t> global;
  for (uint32_t c = 0; c < ncols; ++c)
    if (!eliminated[c] && sparse.counts()[c] > 0) {
      local[c] = static_cast<int64_t>(global.size());
      global.push_back(c);
    }
  std::vector<Row> remaining;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!sparse.active()[i]) continue;
    Row r = rows[i];
    for (auto& e : r) e.col = static_cast<uint32_t>(local[e.col]);
    remaining.push_back(std::move(r));
  }
  std::vector<const Row*> ptrs;
  for (auto& r : remaining) ptrs.push_back(&r);
  DensePhase dense(f, global.size(), opts);
  dense.feed(ptrs);

  RrefResult res;
  res.sparse_pivots = spiv.size();
  for (auto& p : spiv) res.pivot_columns.push_back(p.col);
  for (auto c : dense.pivots()) res.pivot_columns.push_back(global[c]);
  std::sort(res.pivot_columns.begin(), res.pivot_columns.end());
  res.rank = res.pivot_columns.size();
  if (!opts.want_kernel) return res;

  std::vector<bool> is_pivot(ncols, false);
  for (auto c : res.pivot_columns) is_pivot[c] = true;
  std::vector<uint32_t> free_cols;
  for (uint32_t c = 0; c < ncols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  std::vector<int64_t> dense_free_pos(ncols, -1);
  for (size_t j = 0; j < dense.free_cols().size(); ++j) dense_free_pos[global[dense.free_cols()[j]]] = static_cast<int64_t>(j);

  res.kernel_basis = zeros(f, ncols, free_cols.size());
  std::vector<uint32_t> x(ncols);
  for (size_t t = 0; t < free_cols.size(); ++t) {
    std::fill(x.begin(), x.end(), 0u);
    const uint32_t fc = free_cols[t];
    x[fc] = 1;
    if (dense_free_pos[fc] >= 0) {
      const size_t j = static_cast<size_t>(dense_free_pos[fc]);
      for (size_t i = 0; i < dense.pivots().size(); ++i) x[global[dense.pivots()[i]]] = f.neg(dense.entry(i, j));
    }
    for (size_t s = spiv.size(); s-- > 0;) {
      uint32_t acc = 0;
      for (auto& e : spiv[s].row)
        if (e.col != spiv[s].col && x[e.col]) acc = f.add(acc, f.mul(e.val, x[e.col]));
      x[spiv[s].col] = f.neg(acc);
    }
    for (size_t c = 0; c < ncols; ++c) res.kernel_basis(c, t) = x[c];
  }
  return res;
}

}  // namespace arithcoh
