// Compares the serial reference runner against the OpenMP runner on the
// three campaign-style kernels and verifies that the reductions agree
// bit-for-bit.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "nclp/campaign.hpp"
#include "nclp/epcfm.hpp"
#include "nclp/scenarios.hpp"

using namespace nclp;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct BenchRow {
  std::string name;
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
  bool identical = false;
};

BenchRow bench_campaign(const std::string& name, int trials, const TrialFn& fn) {
  BenchRow row;
  row.name = name;
  const double t0 = now_ms();
  const auto serial = run_trials(trials, Exec::Serial, fn);
  const double t1 = now_ms();
  const auto parallel = run_trials(trials, Exec::Parallel, fn);
  const double t2 = now_ms();
  row.serial_ms = t1 - t0;
  row.parallel_ms = t2 - t1;
  row.identical = serial == parallel;
  return row;
}

void print_row(const BenchRow& row) {
  std::printf("%-28s serial %9.1f ms   openmp %9.1f ms   speedup %5.2fx   %s\n",
              row.name.c_str(), row.serial_ms, row.parallel_ms,
              row.parallel_ms > 0 ? row.serial_ms / row.parallel_ms : 0.0,
              row.identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int scale = (argc > 1) ? std::atoi(argv[1]) : 1;
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    const auto alg = AlgebraDescriptor::full(3);
    print_row(bench_campaign("clarkson-pairs", 20000 * scale, [&](int k) {
      CounterRng rng(42, "bench-clarkson", k);
      const auto pair = scenarios::clarkson_pair(alg, rng, 0.0);
      const auto r = clarkson_equal({pair.xi, 3.0}, {pair.eta, 3.0});
      return std::abs(r.lhs - r.rhs);
    }));
  }
  {
    print_row(bench_campaign("yeadon-roundtrips", 64 * scale, [&](int k) {
      CounterRng rng(42, "bench-yeadon", k);
      const JordanMono j = scenarios::random_mixed_jordan(rng);
      const YeadonTriple t = scenarios::random_yeadon(j, 3.0, rng);
      const YeadonTriple back = decompose_isometry(construct_yeadon(t));
      return (back.B - t.B).op_norm();
    }));
  }
  {
    BlochCFM rho;
    rho.c = 2.0;
    rho.odd_poly[{3, 0, 0}] = 0.5;
    rho.p = 1.0;
    BenchRow row;
    row.name = "bloch-witness-grid";
    const double t0 = now_ms();
    const auto ws = nonlinearity_witness(rho, 1.0, 1e-8, false);
    const double t1 = now_ms();
    const auto wp = nonlinearity_witness(rho, 1.0, 1e-8, true);
    const double t2 = now_ms();
    row.serial_ms = t0 < t1 ? t1 - t0 : 0.0;
    row.parallel_ms = t2 - t1;
    row.identical = ws.gap == wp.gap && (ws.h1 - wp.h1).op_norm() == 0.0;
    print_row(row);
  }
  return 0;
}
