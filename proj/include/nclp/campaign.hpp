#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nclp {

// Trial campaigns: N independent residual computations, each seeded by its
// own counter stream.  The parallel runner fills the same per-trial buffer
// an OpenMP loop at a time and reduces serially, so the result is
// bit-identical to the serial reference regardless of thread count.
enum class Exec { Serial, Parallel };

using TrialFn = std::function<double(int trial)>;

std::vector<double> run_trials(int trials, Exec mode, const TrialFn& fn);

struct CampaignResult {
  double max_residual = 0.0;
  int argmax = -1;
};
CampaignResult reduce_max(const std::vector<double>& residuals);
CampaignResult run_campaign(int trials, Exec mode, const TrialFn& fn);

// Trials that produce several residuals at once (avoids rebuilding the
// same scenario per sub-check); result is [output][trial].
using MultiTrialFn = std::function<std::vector<double>(int trial)>;
std::vector<std::vector<double>> run_trials_multi(int trials, int outputs, Exec mode,
                                                  const MultiTrialFn& fn);

}  // namespace nclp
