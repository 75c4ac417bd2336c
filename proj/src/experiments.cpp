#include "sigot/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "sigot/bounds.hpp"
#include "sigot/error.hpp"
#include "sigot/metric.hpp"
#include "sigot/noise.hpp"

namespace sigot {

std::string_view metric_name(Metric m) noexcept {
  switch (m) {
    case Metric::L2: return "L2";
    case Metric::W1: return "W1";
    case Metric::W2: return "W2";
    case Metric::W3: return "W3";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Metric m : {Metric::L2, Metric::W1, Metric::W2, Metric::W3}) {
    if (upper == metric_name(m)) return m;
  }
  throw Error(Errc::invalid_argument, "unknown metric '" + std::string(name) + "'");
}

int metric_exponent(Metric m) noexcept {
  switch (m) {
    case Metric::L2: return 0;
    case Metric::W1: return 1;
    case Metric::W2: return 2;
    case Metric::W3: return 3;
  }
  return 0;
}

double evaluate_metric(Metric m, const SignedGridMeasure& a,
                       const SignedGridMeasure& b, double weight_floor) {
  if (m == Metric::L2) return l2_distance(a, b);
  SignedDistanceOptions opts;
  opts.weight_floor = weight_floor;
  return signed_wasserstein(a, b, metric_exponent(m), opts).value;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw Error(Errc::invalid_argument, "grid side must be >= 2");
  if (cfg.sigmas.empty()) throw Error(Errc::invalid_argument, "empty sigma grid");
  for (std::size_t s = 0; s < cfg.sigmas.size(); ++s) {
    const double sigma = cfg.sigmas[s];
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw Error(Errc::invalid_argument, "sigma values must be finite and >= 0");
    }
    if (s > 0 && !(sigma > cfg.sigmas[s - 1])) {
      throw Error(Errc::invalid_argument, "sigma grid must be strictly increasing");
    }
  }
  if (cfg.trials == 0) throw Error(Errc::invalid_argument, "trials must be >= 1");
  if (cfg.metrics.empty()) throw Error(Errc::invalid_argument, "no metrics selected");
  if (cfg.workers == 0) throw Error(Errc::invalid_argument, "workers must be >= 1");
  if (!(cfg.weight_floor >= 0.0)) {
    throw Error(Errc::invalid_argument, "weight floor must be >= 0");
  }
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw Error(Errc::invalid_argument, "log_space needs 0 < lo <= hi and count >= 1");
  }
  if (count == 1) return {lo};
  std::vector<double> out(count);
  // Base-10 exponents keep whole decades exact (pow(10, -3) == 1e-3).
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) /
                                    static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  for (unsigned w = 0; w < used; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SeriesPoint summarize(double sigma, const std::vector<double>& values) {
  SeriesPoint pt;
  pt.sigma = sigma;
  if (values.empty()) return pt;
  const double count = static_cast<double>(values.size());
  pt.mean = compensated_sum(values) / count;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - pt.mean;
      sq[i] = d * d;
    }
    pt.se = std::sqrt(compensated_sum(sq) / (count - 1.0) / count);
  }
  return pt;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(Errc::invalid_argument, "slope fit needs at least two points");
  }
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw Error(Errc::invalid_argument, "slope fit needs positive values");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double count = static_cast<double>(x.size());
  const double mx = compensated_sum(lx) / count;
  const double my = compensated_sum(ly) / count;
  std::vector<double> sxy(x.size()), sxx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy[i] = (lx[i] - mx) * (ly[i] - my);
    sxx[i] = (lx[i] - mx) * (lx[i] - mx);
  }
  const double denom = compensated_sum(sxx);
  if (denom == 0.0) throw Error(Errc::invalid_argument, "slope fit needs distinct x");
  return compensated_sum(sxy) / denom;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(Errc::invalid_argument, "rank correlation needs two equal-length samples");
  }
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double count = static_cast<double>(a.size());
  const double ma = compensated_sum(ra) / count;
  const double mb = compensated_sum(rb) / count;
  std::vector<double> sab(a.size()), saa(a.size()), sbb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab[i] = (ra[i] - ma) * (rb[i] - mb);
    saa[i] = (ra[i] - ma) * (ra[i] - ma);
    sbb[i] = (rb[i] - mb) * (rb[i] - mb);
  }
  const double denom = std::sqrt(compensated_sum(saa) * compensated_sum(sbb));
  if (denom == 0.0) return 0.0;
  return compensated_sum(sab) / denom;
}

namespace {

// Noiseless levels need a single evaluation.
std::size_t trials_at(double sigma, std::size_t trials) {
  return sigma == 0.0 ? 1 : trials;
}

SignedGridMeasure noisy(const SignedGridMeasure& mu, const ExperimentConfig& cfg,
                        double sigma, std::size_t trial, std::uint64_t stream) {
  if (sigma == 0.0) return mu;
  return add_noise(mu, sample_zero_sum({mu.n(), sigma, cfg.seed, false}, trial, stream));
}

// Flattened (sigma, trial) task list.
struct TaskGrid {
  std::vector<std::size_t> offset;  // first task of each sigma
  std::size_t total = 0;

  TaskGrid(const ExperimentConfig& cfg) {
    for (double sigma : cfg.sigmas) {
      offset.push_back(total);
      total += trials_at(sigma, cfg.trials);
    }
  }

  std::pair<std::size_t, std::size_t> locate(std::size_t task) const {
    const auto it = std::upper_bound(offset.begin(), offset.end(), task);
    const std::size_t s = static_cast<std::size_t>(it - offset.begin()) - 1;
    return {s, task - offset[s]};
  }
};

void push_summary(std::vector<ExperimentRecord>& records, const std::string& label,
                  const std::string& pair, const SeriesPoint& pt) {
  records.push_back({pt.sigma, -1, label + "_mean", pair, pt.mean, pt.bound});
  records.push_back({pt.sigma, -1, label + "_se", pair, pt.se, std::nullopt});
}

std::vector<Metric> transport_metrics(const std::vector<Metric>& metrics) {
  std::vector<Metric> out;
  for (Metric m : metrics) {
    if (m != Metric::L2) out.push_back(m);
  }
  return out;
}

void require_pair(const SignedGridMeasure& a, const SignedGridMeasure& b,
                  const ExperimentConfig& cfg) {
  require_same_grid(a, b);
  if (a.n() != cfg.n) {
    throw Error(Errc::grid_mismatch, "images do not match the configured grid side");
  }
}

}  // namespace

ScalingResult exp_scaling(const SignedGridMeasure& mu, const ExperimentConfig& cfg) {
  validate(cfg);
  if (mu.n() != cfg.n) {
    throw Error(Errc::grid_mismatch, "image does not match the configured grid side");
  }
  const TaskGrid grid(cfg);
  const std::size_t nm = cfg.metrics.size();
  std::vector<double> values(grid.total * nm);
  parallel_for(grid.total, cfg.workers, [&](std::size_t task) {
    const auto [s, t] = grid.locate(task);
    const SignedGridMeasure noisy_mu = noisy(mu, cfg, cfg.sigmas[s], t, 0);
    for (std::size_t m = 0; m < nm; ++m) {
      values[task * nm + m] =
          evaluate_metric(cfg.metrics[m], mu, noisy_mu, cfg.weight_floor);
    }
  });

  ScalingResult out;
  for (std::size_t m = 0; m < nm; ++m) {
    const Metric metric = cfg.metrics[m];
    const int p = metric_exponent(metric);
    const std::string name(metric_name(metric));
    Series series{name, {}};
    Series powered{name + "^p", {}};
    for (std::size_t s = 0; s < cfg.sigmas.size(); ++s) {
      const double sigma = cfg.sigmas[s];
      const std::size_t count = trials_at(sigma, cfg.trials);
      std::vector<double> level(count), level_p(count);
      for (std::size_t t = 0; t < count; ++t) {
        const double v = values[(grid.offset[s] + t) * nm + m];
        level[t] = v;
        level_p[t] = p >= 2 ? std::pow(v, p) : v;
        out.records.push_back({sigma, static_cast<long>(t), name, "self", v, std::nullopt});
      }
      SeriesPoint pt = summarize(sigma, level);
      if (p == 1) pt.bound = bound_w1_self(cfg.n, sigma);
      if (p >= 2) pt.bound = bound_wp_self(cfg.n, sigma, p);
      push_summary(out.records, name, "self", pt);
      series.points.push_back(pt);
      if (p >= 2) {
        SeriesPoint pp = summarize(sigma, level_p);
        pp.bound = bound_wp_self_power(cfg.n, sigma, p);
        push_summary(out.records, name + "_pow", "self", pp);
        powered.points.push_back(pp);
      }
    }

    std::vector<double> xs, ys;
    for (const SeriesPoint& pt : series.points) {
      if (pt.sigma > 0.0) {
        xs.push_back(pt.sigma);
        ys.push_back(pt.mean);
      }
    }
    const std::size_t half = xs.size() / 2;
    if (xs.size() - half >= 2) {
      out.slopes.emplace_back(
          metric, log_log_slope({xs.begin() + static_cast<long>(half), xs.end()},
                                {ys.begin() + static_cast<long>(half), ys.end()}));
    }
    out.series.push_back(std::move(series));
    if (p >= 2) out.series.push_back(std::move(powered));
  }
  return out;
}

RatioResult exp_ratio(const SignedGridMeasure& a, const SignedGridMeasure& b,
                      const ExperimentConfig& cfg) {
  validate(cfg);
  require_pair(a, b, cfg);
  RatioResult out;
  std::vector<Metric> metrics;
  std::vector<double> clean;
  for (Metric m : cfg.metrics) {
    const double d = evaluate_metric(m, a, b, cfg.weight_floor);
    if (d > 0.0) {
      metrics.push_back(m);
      clean.push_back(d);
    } else {
      out.excluded.push_back(m);
    }
  }
  if (metrics.empty()) return out;

  const TaskGrid grid(cfg);
  const std::size_t nm = metrics.size();
  std::vector<double> ratios(grid.total * nm);
  parallel_for(grid.total, cfg.workers, [&](std::size_t task) {
    const auto [s, t] = grid.locate(task);
    const SignedGridMeasure na = noisy(a, cfg, cfg.sigmas[s], t, 0);
    const SignedGridMeasure nb = noisy(b, cfg, cfg.sigmas[s], t, 1);
    for (std::size_t m = 0; m < nm; ++m) {
      ratios[task * nm + m] =
          evaluate_metric(metrics[m], na, nb, cfg.weight_floor) / clean[m];
    }
  });

  for (std::size_t m = 0; m < nm; ++m) {
    const std::string name = std::string(metric_name(metrics[m])) + "_ratio";
    Series series{name, {}};
    for (std::size_t s = 0; s < cfg.sigmas.size(); ++s) {
      const double sigma = cfg.sigmas[s];
      const std::size_t count = trials_at(sigma, cfg.trials);
      std::vector<double> level(count);
      for (std::size_t t = 0; t < count; ++t) {
        level[t] = ratios[(grid.offset[s] + t) * nm + m];
        out.records.push_back({sigma, static_cast<long>(t), name, "A-B", level[t], std::nullopt});
      }
      const SeriesPoint pt = summarize(sigma, level);
      push_summary(out.records, name, "A-B", pt);
      series.points.push_back(pt);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

OverlayResult exp_bound_overlay(const SignedGridMeasure& a,
                                const SignedGridMeasure& b,
                                const ExperimentConfig& cfg) {
  validate(cfg);
  require_pair(a, b, cfg);
  const std::vector<Metric> metrics = transport_metrics(cfg.metrics);
  if (metrics.empty()) {
    throw Error(Errc::invalid_argument, "bound overlay needs at least one W metric");
  }
  OverlayResult out;
  out.w1_clean = evaluate_metric(Metric::W1, a, b, cfg.weight_floor);

  const TaskGrid grid(cfg);
  const std::size_t nm = metrics.size();
  std::vector<double> values(grid.total * nm);
  parallel_for(grid.total, cfg.workers, [&](std::size_t task) {
    const auto [s, t] = grid.locate(task);
    const SignedGridMeasure na = noisy(a, cfg, cfg.sigmas[s], t, 0);
    const SignedGridMeasure nb = noisy(b, cfg, cfg.sigmas[s], t, 1);
    for (std::size_t m = 0; m < nm; ++m) {
      values[task * nm + m] = evaluate_metric(metrics[m], na, nb, cfg.weight_floor);
    }
  });

  for (std::size_t m = 0; m < nm; ++m) {
    const int p = metric_exponent(metrics[m]);
    const std::string name(metric_name(metrics[m]));
    Series series{name, {}};
    for (std::size_t s = 0; s < cfg.sigmas.size(); ++s) {
      const double sigma = cfg.sigmas[s];
      const std::size_t count = trials_at(sigma, cfg.trials);
      std::vector<double> level(count);
      for (std::size_t t = 0; t < count; ++t) {
        level[t] = values[(grid.offset[s] + t) * nm + m];
        out.records.push_back({sigma, static_cast<long>(t), name, "A-B", level[t], std::nullopt});
      }
      SeriesPoint pt = summarize(sigma, level);
      pt.bound = p == 1 ? out.w1_clean + bound_w1_pair(cfg.n, sigma)
                        : bound_wp_pair(out.w1_clean, cfg.n, sigma, p);
      if (pt.mean > *pt.bound + 2.0 * pt.se) out.all_within_bounds = false;
      push_summary(out.records, name, "A-B", pt);
      series.points.push_back(pt);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

std::vector<double> DistanceMatrix::upper_triangle() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) out.push_back(entries[i * k + j]);
  }
  return out;
}

MatrixResult exp_matrix(const std::vector<SignedGridMeasure>& images,
                        const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t k = images.size();
  if (k < 2) throw Error(Errc::invalid_argument, "matrix needs at least two images");
  for (const auto& img : images) {
    if (img.n() != cfg.n) throw Error(Errc::grid_mismatch, "mixed grid sizes");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  auto pair_name = [](std::size_t i, std::size_t j) {
    return std::to_string(i) + "-" + std::to_string(j);
  };
  const std::size_t nm = cfg.metrics.size();

  // Clean matrices, both orientations, to record symmetry and the diagonal.
  std::vector<double> clean(nm * k * k);
  parallel_for(k * k, cfg.workers, [&](std::size_t cell) {
    const std::size_t i = cell / k;
    const std::size_t j = cell % k;
    for (std::size_t m = 0; m < nm; ++m) {
      clean[m * k * k + cell] =
          evaluate_metric(cfg.metrics[m], images[i], images[j], cfg.weight_floor);
    }
  });
  std::vector<DistanceMatrix> clean_mats(nm);
  for (std::size_t m = 0; m < nm; ++m) {
    DistanceMatrix& dm = clean_mats[m];
    dm.k = k;
    dm.entries.assign(clean.begin() + static_cast<long>(m * k * k),
                      clean.begin() + static_cast<long>((m + 1) * k * k));
    for (std::size_t i = 0; i < k; ++i) {
      if (dm(i, i) != 0.0) dm.zero_diagonal = false;
      for (std::size_t j = i + 1; j < k; ++j) {
        const double scale = std::max({dm(i, j), dm(j, i), 1e-300});
        if (std::abs(dm(i, j) - dm(j, i)) > 1e-9 * scale) dm.symmetric = false;
      }
    }
  }

  MatrixResult out;
  for (std::size_t m = 0; m < nm; ++m) {
    const std::string name(metric_name(cfg.metrics[m]));
    for (const auto& [i, j] : pairs) {
      out.records.push_back({0.0, -1, name + "_clean", pair_name(i, j),
                             clean_mats[m](i, j), std::nullopt});
    }
  }

  for (double sigma : cfg.sigmas) {
    const std::size_t count = trials_at(sigma, cfg.trials);
    std::vector<double> values(count * pairs.size() * nm);
    // Noisy images depend only on (trial, image), so build them once per
    // trial and evaluate every pair from the same draws.
    parallel_for(count * pairs.size(), cfg.workers, [&](std::size_t task) {
      const std::size_t t = task / pairs.size();
      const auto [i, j] = pairs[task % pairs.size()];
      const SignedGridMeasure ni = noisy(images[i], cfg, sigma, t, i);
      const SignedGridMeasure nj = noisy(images[j], cfg, sigma, t, j);
      for (std::size_t m = 0; m < nm; ++m) {
        values[task * nm + m] = evaluate_metric(cfg.metrics[m], ni, nj, cfg.weight_floor);
      }
    });
    for (std::size_t m = 0; m < nm; ++m) {
      const std::string name(metric_name(cfg.metrics[m]));
      MatrixEntry entry;
      entry.metric = cfg.metrics[m];
      entry.sigma = sigma;
      entry.clean = clean_mats[m];
      entry.noisy.k = k;
      entry.noisy.entries.assign(k * k, 0.0);
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        std::vector<double> level(count);
        for (std::size_t t = 0; t < count; ++t) {
          level[t] = values[(t * pairs.size() + q) * nm + m];
          out.records.push_back({sigma, static_cast<long>(t), name,
                                 pair_name(pairs[q].first, pairs[q].second), level[t],
                                 std::nullopt});
        }
        const SeriesPoint pt = summarize(sigma, level);
        const auto [i, j] = pairs[q];
        entry.noisy.entries[i * k + j] = pt.mean;
        entry.noisy.entries[j * k + i] = pt.mean;
        push_summary(out.records, name, pair_name(i, j), pt);
      }
      entry.rank_correlation =
          spearman(entry.clean.upper_triangle(), entry.noisy.upper_triangle());
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

DipResult exp_dip(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.n < 4) throw Error(Errc::invalid_argument, "dip experiment needs n >= 4");
  const std::vector<Metric> metrics = transport_metrics(cfg.metrics);
  if (metrics.empty()) {
    throw Error(Errc::invalid_argument, "dip experiment needs at least one W metric");
  }
  const std::size_t q = cfg.n / 4;
  const SignedGridMeasure a = SignedGridMeasure::point_mass(cfg.n, q, q);
  const SignedGridMeasure b = SignedGridMeasure::point_mass(cfg.n, 3 * q, 3 * q);

  const TaskGrid grid(cfg);
  const std::size_t nm = metrics.size();
  std::vector<double> values(grid.total * nm);
  parallel_for(grid.total, cfg.workers, [&](std::size_t task) {
    const auto [s, t] = grid.locate(task);
    const SignedGridMeasure na = noisy(a, cfg, cfg.sigmas[s], t, 0);
    const SignedGridMeasure nb = noisy(b, cfg, cfg.sigmas[s], t, 1);
    for (std::size_t m = 0; m < nm; ++m) {
      values[task * nm + m] = evaluate_metric(metrics[m], na, nb, cfg.weight_floor);
    }
  });

  DipResult out;
  for (std::size_t m = 0; m < nm; ++m) {
    const std::string name(metric_name(metrics[m]));
    DipSummary summary;
    summary.metric = metrics[m];
    summary.clean_value = evaluate_metric(metrics[m], a, b, cfg.weight_floor);
    out.records.push_back({0.0, -1, name + "_clean", "A-B", summary.clean_value, std::nullopt});
    Series series{name, {}};
    for (std::size_t s = 0; s < cfg.sigmas.size(); ++s) {
      const double sigma = cfg.sigmas[s];
      const std::size_t count = trials_at(sigma, cfg.trials);
      std::vector<double> level(count);
      for (std::size_t t = 0; t < count; ++t) {
        level[t] = values[(grid.offset[s] + t) * nm + m];
        out.records.push_back({sigma, static_cast<long>(t), name, "A-B", level[t], std::nullopt});
      }
      SeriesPoint pt = summarize(sigma, level);
      if (metric_exponent(metrics[m]) == 1) {
        pt.bound = summary.clean_value + bound_w1_pair(cfg.n, sigma);
      }
      push_summary(out.records, name, "A-B", pt);
      const bool interior = s + 1 < cfg.sigmas.size();
      if (interior && pt.se > 0.0 && pt.mean < summary.clean_value - 2.0 * pt.se) {
        const double depth = (summary.clean_value - pt.mean) / pt.se;
        if (!summary.dip_detected || depth > summary.dip_depth_se) {
          summary.dip_sigma = sigma;
          summary.dip_depth_se = depth;
        }
        summary.dip_detected = true;
      }
      series.points.push_back(pt);
    }
    out.series.push_back(std::move(series));
    out.summaries.push_back(summary);
  }
  return out;
}

SignedGridMeasure flow_trace(const SignedDistanceResult& result, std::size_t i,
                             std::size_t j, TraceDirection direction) {
  const std::size_t n = result.split.s.n();
  if (n == 0 || i >= n || j >= n) {
    throw Error(Errc::invalid_argument, "trace pixel outside the grid");
  }
  const bool from_source = direction == TraceDirection::source;
  const DiscreteMeasure& own = from_source ? result.src : result.dst;
  const DiscreteMeasure& other = from_source ? result.dst : result.src;
  const std::size_t pixel = i * n + j;
  const auto it = std::find(own.pixels.begin(), own.pixels.end(), pixel);
  if (it == own.pixels.end()) {
    throw Error(Errc::invalid_argument,
                "pixel (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is not in the " + (from_source ? "source" : "target") +
                    " support");
  }
  const std::size_t index = static_cast<std::size_t>(it - own.pixels.begin());
  std::vector<double> values(n * n, 0.0);
  for (const PlanEntry& e : result.plan.entries) {
    const std::size_t mine = from_source ? e.src : e.dst;
    const std::size_t theirs = from_source ? e.dst : e.src;
    if (mine == index) values[other.pixels[theirs]] += e.mass;
  }
  return SignedGridMeasure(n, std::move(values));
}

}  // namespace sigot
