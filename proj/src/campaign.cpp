#include "nclp/campaign.hpp"

namespace nclp {

std::vector<double> run_trials(int trials, Exec mode, const TrialFn& fn) {
  std::vector<double> residuals(trials, 0.0);
  if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < trials; ++k) residuals[k] = fn(k);
  } else {
    for (int k = 0; k < trials; ++k) residuals[k] = fn(k);
  }
  return residuals;
}

CampaignResult reduce_max(const std::vector<double>& residuals) {
  CampaignResult out;
  for (int k = 0; k < static_cast<int>(residuals.size()); ++k)
    if (residuals[k] > out.max_residual) {
      out.max_residual = residuals[k];
      out.argmax = k;
    }
  if (out.argmax < 0 && !residuals.empty()) out.argmax = 0;
  return out;
}

CampaignResult run_campaign(int trials, Exec mode, const TrialFn& fn) {
  return reduce_max(run_trials(trials, mode, fn));
}

std::vector<std::vector<double>> run_trials_multi(int trials, int outputs, Exec mode,
                                                  const MultiTrialFn& fn) {
  std::vector<std::vector<double>> out(outputs, std::vector<double>(trials, 0.0));
  auto body = [&](int k) {
    const std::vector<double> r = fn(k);
    for (int j = 0; j < outputs && j < static_cast<int>(r.size()); ++j) out[j][k] = r[j];
  };
  if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < trials; ++k) body(k);
  } else {
    for (int k = 0; k < trials; ++k) body(k);
  }
  return out;
}

}  // namespace nclp
