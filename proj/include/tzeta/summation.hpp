#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace tzeta {

/// Neumaier's variant of compensated summation. Works for real and
/// std::complex scalars (the compensation is applied componentwise).
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      double re = sum_.real(), im = sum_.imag();
      double cre = comp_.real(), cim = comp_.imag();
      add_real(re, cre, x.real());
      add_real(im, cim, x.imag());
      sum_ = T(re, im);
      comp_ = T(cre, cim);
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T comp_{};
};

template <class T>
struct SumResult {
  T value{};
  double abs_sum = 0.0;  // sum of |term|, for rounding-error estimates
};

/// Process-wide default worker count used by the lattice sums. 0 means
/// "use hardware concurrency".
void set_default_threads(int threads);
int default_threads();

/// Number of terms in one leaf block of the reduction tree. Fixed so that the
/// tree, and therefore every rounding, is independent of the thread count.
inline constexpr std::size_t summation_block = 2048;

namespace detail {

template <class T>
T pairwise_combine(std::vector<T>& partial) {
  if (partial.empty()) return T{};
  std::size_t width = partial.size();
  while (width > 1) {
    const std::size_t half = (width + 1) / 2;
    for (std::size_t i = 0; i + half < width; ++i) partial[i] += partial[i + half];
    width = half;
  }
  return partial[0];
}

// Run job(0) .. job(workers - 1) on separate threads. An exception thrown
// by a job is carried back and rethrown here; when several jobs fail, the
// one with the lowest worker index wins.
template <class Job>
void run_workers(int workers, Job&& job) {
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        job(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Sum term(0) + ... + term(count - 1).
///
/// Terms are cut into fixed blocks, each block is summed with compensation,
/// and the block results are folded by a fixed pairwise tree. Blocks are
/// shared among worker threads but the combination order never depends on
/// which thread produced which block, so results are bit-identical for any
/// thread count.
template <class T, class Term>
SumResult<T> deterministic_sum(std::size_t count, Term&& term, int threads = 0) {
  const std::size_t blocks = (count + summation_block - 1) / summation_block;
  std::vector<T> partial(blocks);
  std::vector<double> partial_abs(blocks);

  auto run_block = [&](std::size_t b) {
    CompensatedSum<T> acc;
    double abs_acc = 0.0;
    const std::size_t end = std::min(count, (b + 1) * summation_block);
    for (std::size_t i = b * summation_block; i < end; ++i) {
      const T x = term(i);
      acc.add(x);
      abs_acc += std::abs(x);
    }
    partial[b] = acc.value();
    partial_abs[b] = abs_acc;
  };

  int workers = threads > 0 ? threads : default_threads();
  workers = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(blocks, 1)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    detail::run_workers(workers, [&](int w) {
      for (std::size_t b = w; b < blocks; b += workers) run_block(b);
    });
  }

  SumResult<T> out;
  out.value = detail::pairwise_combine(partial);
  out.abs_sum = detail::pairwise_combine(partial_abs);
  return out;
}

/// Call body(i) for i in [0, count), spread over worker threads in a fixed
/// strided pattern. Each index is handled exactly once, so writing results
/// into slot i of a pre-sized vector gives output in index order no matter
/// how the threads interleave.
template <class Body>
void parallel_for(std::size_t count, Body&& body, int threads = 0) {
  int workers = threads > 0 ? threads : default_threads();
  workers = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  detail::run_workers(workers, [&](int w) {
    for (std::size_t i = w; i < count; i += workers) body(i);
  });
}

}  // namespace tzeta
