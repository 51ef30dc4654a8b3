// Serial reference versus OpenMP kernels: wall time and output equality.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "dp2ff/confinement.hpp"
#include "dp2ff/tau.hpp"

using namespace dp2ff;

namespace {

double seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_scan(const ScanResult& a, const ScanResult& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& x = a.entries[i].report;
    const auto& y = b.entries[i].report;
    if (x.status != y.status || x.m != y.m || x.image_x != y.image_x || x.image_y != y.image_y) {
      return false;
    }
  }
  return a.has_almost_good_reduction() == b.has_almost_good_reduction();
}

void row(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-34s serial %8.3f s  openmp %8.3f s  speedup %5.2f  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, equal ? "equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  bool ok = true;

  const struct {
    const char* name;
    MapFamily map;
  } scans[] = {
      {"agr_scan dp2 p=7 (a=-8,d=2,z0=2)",
       build_dp2_params(Prime(7), Rational(-8), Rational(2), Rational(2))},
      {"agr_scan dp2 p=13 (a=-8,d=2,z0=2)",
       build_dp2_params(Prime(13), Rational(-8), Rational(2), Rational(2))},
      {"agr_scan qrt gamma=2 p=11 a=1", build_qrt_params(Prime(11), 2, Rational(1))},
  };
  for (const auto& s : scans) {
    ScanResult a, b;
    const double ts = seconds([&] { a = agr_scan_serial(s.map); });
    const double tp = seconds([&] { b = agr_scan(s.map); });
    const bool eq = same_scan(a, b);
    ok = ok && eq;
    row(s.name, ts, tp, eq);
  }

  for (long N : {3L, 6L}) {
    const TauParams tp = TauParams::make(N, Rational(1));
    const Prime p(101);
    std::vector<FpProj> a, b;
    const double ts = seconds([&] { a = reduced_solution_serial(tp, p, 200); });
    const double tq = seconds([&] { b = reduced_solution(tp, p, 200); });
    char name[64];
    std::snprintf(name, sizeof name, "reduced_solution N=%ld p=101 x200", N);
    ok = ok && a == b;
    row(name, ts, tq, a == b);
  }
  return ok ? 0 : 1;
}
