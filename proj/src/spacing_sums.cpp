#include "spacing_sums.hpp"

#include <cmath>
#include <vector>

namespace gmd::detail {

namespace {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// One-based view: d(i) = D_i, w(i) = a_i D_i, for i = 1..M-1.
struct Spacings {
  explicit Spacings(std::span<const double> s)
      : d(s), size(static_cast<long>(s.size()) + 1), w(s.size() + 1) {
    const double md = static_cast<double>(size);
    for (long i = 1; i < size; ++i) {
      w[i] = (2.0 * static_cast<double>(i) - md) / md * d[i - 1];
    }
  }
  double delta(long i) const { return d[static_cast<std::size_t>(i - 1)]; }

  std::span<const double> d;
  long size;  // M
  std::vector<double> w;
};

// The six case-table branches, without their conditions.
double case1(double i, double j, double m, double M) {
  return i * (i - 1) * (M - m) * (M - j - 1 + j * (m - j) / M);
}
double case2(double i, double j, double m, double M) {
  return i * (i - 1) * (M - j) * (M - m - 1 + m * (m - j) / M);
}
double case3(double i, double j, double m, double M) {
  return j * (M - m) *
         ((i - 1) * (M - i - 1) +
          ((M - i) * (M - i - 1) * (i - j) + i * (i - 1) * (m - i)) / M);
}
double case4(double i, double j, double m, double M) {
  return m * (M - j) *
         ((i - 1) * (M - i - 1) +
          (i * (i - 1) * (i - j) + (M - i - 1) * (M - i) * (m - i)) / M);
}
double case5(double i, double j, double m, double M) {
  return j * (M - i - 1) * (M - i) * (m - 1 + (M - m) * (m - j) / M);
}
double case6(double i, double j, double m, double M) {
  return m * (M - i - 1) * (M - i) * (j - 1 + (M - j) * (m - j) / M);
}

using CaseFn = double (*)(double, double, double, double);

// Prefix moments P_k(m) = sum_{m' <= m} m'^k w_m' for k = 0, 1, 2.
struct PrefixMoments {
  explicit PrefixMoments(const Spacings& s)
      : p0(s.size, 0.0), p1(s.size, 0.0), p2(s.size, 0.0) {
    for (long m = 1; m < s.size; ++m) {
      const double md = static_cast<double>(m);
      p0[m] = p0[m - 1] + s.w[m];
      p1[m] = p1[m - 1] + md * s.w[m];
      p2[m] = p2[m - 1] + md * md * s.w[m];
    }
  }

  // sum_{m=lo}^{hi} f(m) w_m for f(m) = fn(i, j, m, M), quadratic in m.
  double range(CaseFn fn, double i, double j, long lo, long hi, double M) const {
    if (lo > hi) return 0.0;
    const double c0 = fn(i, j, 0.0, M);
    const double c1 = fn(i, j, 1.0, M);
    const double c2 = fn(i, j, 2.0, M);
    const double q2 = (c2 - 2.0 * c1 + c0) / 2.0;
    const double q1 = c1 - c0 - q2;
    const double s0 = p0[hi] - p0[lo - 1];
    const double s1 = p1[hi] - p1[lo - 1];
    const double s2 = p2[hi] - p2[lo - 1];
    return c0 * s0 + q1 * s1 + q2 * s2;
  }

  std::vector<double> p0, p1, p2;
};

}  // namespace

double kappa_coefficient(long i, long j, long m, long M) {
  const double di = static_cast<double>(i);
  const double dj = static_cast<double>(j);
  const double dm = static_cast<double>(m);
  const double dM = static_cast<double>(M);
  if (i <= j && j <= m) return case1(di, dj, dm, dM);
  if (i <= m && m < j) return case2(di, dj, dm, dM);
  if (j < i && i < m) return case3(di, dj, dm, dM);
  if (m < i && i < j) return case4(di, dj, dm, dM);
  if (j < m && m <= i) return case5(di, dj, dm, dM);
  return case6(di, dj, dm, dM);  // m <= j <= i
}

double sigma1_bracket(std::span<const double> spacings, SumPath path) {
  const Spacings s(spacings);
  const long M = s.size;
  const double md = static_cast<double>(M);
  double diag = 0.0, off = 0.0;
  if (path == SumPath::Naive) {
    for (long i = 1; i < M; ++i) {
      const double di = static_cast<double>(i);
      diag += di * (md - di) * s.w[i] * s.w[i];
      for (long j = i + 1; j < M; ++j) {
        off += di * (md - static_cast<double>(j)) * s.w[i] * s.w[j];
      }
    }
  } else {
    double left = 0.0;  // sum_{i<j} i w_i
    for (long j = 1; j < M; ++j) {
      const double dj = static_cast<double>(j);
      diag += dj * (md - dj) * s.w[j] * s.w[j];
      off += (md - dj) * s.w[j] * left;
      left += dj * s.w[j];
    }
  }
  return diag + 2.0 * off;
}

double sigma2_bracket(std::span<const double> spacings, SumPath path) {
  const Spacings s(spacings);
  const long M = s.size;
  const double md = static_cast<double>(M);
  auto lead = [md](double i) { return i * (i - 1.0); };
  auto tail = [md](double j) { return (md - j - 1.0) * (md - j); };
  double diag = 0.0, off = 0.0;
  if (path == SumPath::Naive) {
    for (long i = 1; i < M; ++i) {
      const double di = static_cast<double>(i);
      diag += lead(di) * tail(di) * s.delta(i) * s.delta(i);
      for (long j = i + 1; j < M; ++j) {
        off += lead(di) * tail(static_cast<double>(j)) * s.delta(i) * s.delta(j);
      }
    }
  } else {
    double left = 0.0;
    for (long j = 1; j < M; ++j) {
      const double dj = static_cast<double>(j);
      diag += lead(dj) * tail(dj) * s.delta(j) * s.delta(j);
      off += tail(dj) * s.delta(j) * left;
      left += lead(dj) * s.delta(j);
    }
  }
  return diag + 2.0 * off;
}

double alpha_bracket(std::span<const double> spacings, SumPath path) {
  const Spacings s(spacings);
  const long M = s.size;
  const double md = static_cast<double>(M);
  const auto& w = s.w;

  if (path == SumPath::Naive) {
    double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
    for (long i = 1; i < M; ++i) {
      const double di = static_cast<double>(i);
      t1 += di * (md - 2 * di) * (md - di) * w[i] * w[i] * w[i];
      for (long j = i + 1; j < M; ++j) {
        const double dj = static_cast<double>(j);
        t2 += di * (md - 2 * di) * (md - dj) * w[i] * w[i] * w[j];
        t3 += di * (md - 2 * dj) * (md - dj) * w[i] * w[j] * w[j];
        for (long m = j + 1; m < M; ++m) {
          const double dm = static_cast<double>(m);
          t4 += di * (md - 2 * dj) * (md - dm) * w[i] * w[j] * w[m];
        }
      }
    }
    return t1 + 3.0 * t2 + 3.0 * t3 + 6.0 * t4;
  }

  // right[j] = sum_{m>j} (M - m) w_m
  std::vector<double> right(static_cast<std::size_t>(M) + 1, 0.0);
  for (long m = M - 1; m >= 1; --m) {
    right[m - 1] = right[m] + (md - static_cast<double>(m)) * w[m];
  }
  double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
  double left = 0.0;     // sum_{i<j} i w_i
  double left_sq = 0.0;  // sum_{i<j} i (M - 2i) w_i^2
  for (long j = 1; j < M; ++j) {
    const double dj = static_cast<double>(j);
    const double wj = w[j];
    t1 += dj * (md - 2 * dj) * (md - dj) * wj * wj * wj;
    t2 += (md - dj) * wj * left_sq;
    t3 += (md - 2 * dj) * (md - dj) * wj * wj * left;
    t4 += (md - 2 * dj) * wj * left * right[j];
    left += dj * wj;
    left_sq += dj * (md - 2 * dj) * wj * wj;
  }
  return t1 + 3.0 * t2 + 3.0 * t3 + 6.0 * t4;
}

double kappa_bracket(std::span<const double> spacings, SumPath path) {
  const Spacings s(spacings);
  const long M = s.size;
  const double md = static_cast<double>(M);
  CompensatedSum total;

  if (path == SumPath::Naive) {
    for (long i = 1; i < M; ++i) {
      const double di = s.delta(i);
      if (di == 0.0) continue;
      for (long j = 1; j < M; ++j) {
        const double dij = di * s.w[j];
        for (long m = 1; m < M; ++m) {
          total.add(kappa_coefficient(i, j, m, M) * dij * s.w[m]);
        }
      }
    }
    return total.value();
  }

  const PrefixMoments pm(s);
  const long last = M - 1;
  for (long i = 1; i < M; ++i) {
    const double di = s.delta(i);
    if (di == 0.0) continue;
    const double fi = static_cast<double>(i);
    for (long j = 1; j < M; ++j) {
      const double fj = static_cast<double>(j);
      double inner = 0.0;
      if (i < j) {
        inner += pm.range(&case4, fi, fj, 1, i - 1, md);
        inner += pm.range(&case2, fi, fj, i, j - 1, md);
        inner += pm.range(&case1, fi, fj, j, last, md);
      } else if (i == j) {
        inner += pm.range(&case6, fi, fj, 1, i - 1, md);
        inner += pm.range(&case1, fi, fj, i, last, md);
      } else {
        inner += pm.range(&case6, fi, fj, 1, j, md);
        inner += pm.range(&case5, fi, fj, j + 1, i, md);
        inner += pm.range(&case3, fi, fj, i + 1, last, md);
      }
      total.add(di * s.w[j] * inner);
    }
  }
  return total.value();
}

}  // namespace gmd::detail
