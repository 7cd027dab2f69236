// Serial reference vs OpenMP kernels: frame integration and measurement.
//
//   bench_kernels [n] [repeats]

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include "cmclab/measure.hpp"

using namespace cmclab;

template <typename Fn>
double best_of(int repeats, Fn fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const double t0 = omp_get_wtime();
    fn();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 401;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  const GridSpec grid(-1.0, 1.0, -1.0, 1.0, n, n);
  const SurfaceData data = delaunay_data(grid, 0.5, 0.3, 0.0);
  const SpectralParam lambda(0.5, 0.1);

  std::cout << "grid " << n << "x" << n << ", threads " << omp_get_max_threads() << "\n";

  ExtendedFrame a = serial::integrate_frame(data, lambda);
  ExtendedFrame b = integrate_frame(data, lambda);
  const double t_frame_serial = best_of(repeats, [&] { a = serial::integrate_frame(data, lambda); });
  const double t_frame_omp = best_of(repeats, [&] { b = integrate_frame(data, lambda); });

  const H3SurfaceGrid surface = surface_primary(b);
  const NormalField normal = normal_field(b);
  MeasuredData ma = serial::measure(surface, normal);
  MeasuredData mb = measure(surface, normal);
  const double t_measure_serial = best_of(repeats, [&] { ma = serial::measure(surface, normal); });
  const double t_measure_omp = best_of(repeats, [&] { mb = measure(surface, normal); });

  std::cout << std::fixed << std::setprecision(4);
  std::cout << "integrate_frame  serial " << t_frame_serial << " s   omp " << t_frame_omp
            << " s   speedup " << t_frame_serial / t_frame_omp << "\n";
  std::cout << "measure          serial " << t_measure_serial << " s   omp " << t_measure_omp
            << " s   speedup " << t_measure_serial / t_measure_omp << "\n";
  std::cout << std::scientific << std::setprecision(3)
            << "max frame difference " << max_frame_difference(a, b) << "\n";
  return 0;
}
