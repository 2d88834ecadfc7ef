#include "workbench/analysis/stripes.h"

#include <numeric>

namespace wb::analysis {

std::vector<double> row_means(const RawImage& raw) {
  std::vector<double> m(raw.height);
  for (int y = 0; y < raw.height; ++y) {
    double s = 0;
    for (int x = 0; x < raw.width; ++x) s += raw.at(x, y);
    m[y] = s / raw.width;
  }
  return m;
}

std::vector<double> row_means(const RgbImage& img) {
  std::vector<double> m(img.height);
  for (int y = 0; y < img.height; ++y) {
    double s = 0;
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) s += img.at(x, y, c);
    m[y] = s / (3.0 * img.width);
  }
  return m;
}

double autocorrelation(const std::vector<double>& s, int lag) {
  const int n = static_cast<int>(s.size());
  if (lag < 0 || lag >= n) return 0;
  const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) den += (s[i] - mean) * (s[i] - mean);
  if (den == 0) return 0;
  for (int i = 0; i + lag < n; ++i) num += (s[i] - mean) * (s[i + lag] - mean);
  // Unbiased per-pair normalisation so long lags are not penalised.
  return (num / (n - lag)) / (den / n);
}

double band_period(const std::vector<double>& m) {
  const int n = static_cast<int>(m.size());
  const int max_lag = n / 2;
  std::vector<double> ac(max_lag + 1);
  for (int k = 0; k <= max_lag; ++k) ac[k] = autocorrelation(m, k);
  int k = 1;
  while (k <= max_lag && ac[k] >= 0) ++k;
  if (k > max_lag) return 0;
  while (k <= max_lag && ac[k] < 0) ++k;
  if (k > max_lag) return 0;
  int best = k;
  while (k <= max_lag && ac[k] >= 0) {
    if (ac[k] > ac[best]) best = k;
    ++k;
  }
  if (best + 1 > max_lag) return best;
  const double a = ac[best - 1], b = ac[best], c = ac[best + 1];
  const double denom = a - 2 * b + c;
  return denom < 0 ? best + 0.5 * (a - c) / denom : best;
}

}  // namespace wb::analysis
