// Compares the OpenMP batch predictor against its serial reference and the
// full-scan oracle on random sparse unit vectors.
//
//   bench_predict [dimension] [batch] [nonzeros] [rounds]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conical/conical.hpp"
#include "conical/format.hpp"
#include "conical/synthetic.hpp"

namespace {

template <typename F>
double best_of(int rounds, F&& f) {
  double best = 1e300;
  for (int r = 0; r < rounds; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t dim = argc > 1 ? std::stoul(argv[1]) : 5000;
  const std::size_t batch = argc > 2 ? std::stoul(argv[2]) : 20000;
  const std::size_t nnz = argc > 3 ? std::stoul(argv[3]) : 32;
  const int rounds = argc > 4 ? std::stoi(argv[4]) : 3;

  const auto box = conical::random_box(dim, 500, nnz, 1);
  // Half the batch is drawn from the same distribution as the training
  // corpus, half is plain noise.
  auto vectors = conical::random_unit_vectors(batch / 2, dim, nnz, 2);
  auto noise = conical::random_unit_vectors(batch - batch / 2, dim, nnz * 4, 3);
  vectors.insert(vectors.end(), noise.begin(), noise.end());

  std::vector<conical::Prediction> serial, parallel, full;
  const double t_serial = best_of(rounds, [&] { serial = conical::predict_batch_serial(box, vectors); });
  const double t_parallel = best_of(rounds, [&] { parallel = conical::predict_batch(box, vectors); });
  const double t_full = best_of(rounds, [&] {
    full.clear();
    for (const auto& v : vectors) full.push_back(conical::brute_force_membership(box, v));
  });

  bool agree = serial == parallel;
  for (std::size_t i = 0; i < full.size(); ++i) agree &= full[i].label == serial[i].label;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::cout << "dimension " << dim << "  batch " << vectors.size() << "  nonzeros " << nnz
            << "  threads " << threads << "\n";
  std::cout << "serial short-circuit   " << conical::format_fixed(t_serial, 6) << " s\n";
  std::cout << "openmp short-circuit   " << conical::format_fixed(t_parallel, 6) << " s  speedup "
            << conical::format_fixed(t_serial / t_parallel, 2) << "x\n";
  std::cout << "serial full scan       " << conical::format_fixed(t_full, 6) << " s\n";
  std::cout << "labels " << (agree ? "agree" : "DISAGREE") << "\n";
  return agree ? EXIT_SUCCESS : EXIT_FAILURE;
}
