#include "nclp/tol.hpp"

#include <atomic>

namespace nclp {

namespace {
std::atomic<double> g_tol{1e-9};
}

double default_tol() { return g_tol.load(std::memory_order_relaxed); }
void set_default_tol(double tol) { g_tol.store(tol, std::memory_order_relaxed); }

}  // namespace nclp
