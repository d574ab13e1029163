#include "cachenet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cachenet/load.hpp"

namespace cachenet::mc {

namespace detail {

int serving_index(const std::vector<double>& r2, const std::vector<char>& holds) {
  int best = -1;
  double best_r2 = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    if (!holds[i]) continue;
    if (best < 0 || r2[i] < best_r2) {
      best = static_cast<int>(i);
      best_r2 = r2[i];
    }
  }
  return best;
}

bool segment_hit(double lo, double hi, double u) {
  return content::systematic_hit(lo, hi, u);
}

}  // namespace detail

namespace {

struct Tally {
  std::int64_t successes = 0;
  std::int64_t cached_requests = 0;
  std::int64_t missing_serving = 0;
  std::vector<std::int64_t> file_requests;
  std::vector<std::int64_t> file_successes;

  explicit Tally(int file_count)
      : file_requests(file_count, 0), file_successes(file_count, 0) {}

  void merge(const Tally& other) {
    successes += other.successes;
    cached_requests += other.cached_requests;
    missing_serving += other.missing_serving;
    for (std::size_t i = 0; i < file_requests.size(); ++i) {
      file_requests[i] += other.file_requests[i];
      file_successes[i] += other.file_successes[i];
    }
  }
};

Estimate bernoulli_estimate(std::int64_t successes, std::int64_t n) {
  Estimate e;
  e.n = n;
  if (n == 0) return e;
  e.mean = static_cast<double>(successes) / static_cast<double>(n);
  if (n > 1) {
    const double var = e.mean * (1.0 - e.mean) * n / (n - 1.0);
    e.stderr_ = std::sqrt(var / static_cast<double>(n));
  }
  return e;
}

// Precomputed per-run tables shared read-only across threads.
struct SimTables {
  double radius = 0.0;
  double mean_bs = 0.0;
  double mean_users = 0.0;
  double noise_over_power = 0.0;
  std::vector<double> popularity_cdf;
  std::vector<char> is_cached;          // 1-based flag per file
  std::vector<double> segment_lo;       // per file, cached files only
  std::vector<double> segment_hi;
  std::vector<std::vector<double>> load_cdf;  // per file, backhaul files only
  std::vector<char> is_backhaul;
};

SimTables build_tables(const content::FileAllocation& alloc,
                       const content::CachePlacement& placement,
                       const analytic::NetworkParams& net,
                       const content::ContentParams& cp, const SimConfig& sim) {
  SimTables t;
  t.radius = sim.window_radius > 0.0 ? sim.window_radius
                                     : 20.0 / std::sqrt(M_PI * net.lambda_b);
  t.mean_bs = net.lambda_b * M_PI * t.radius * t.radius;
  t.mean_users = net.lambda_u * M_PI * t.radius * t.radius;
  t.noise_over_power = net.noise_power_w / net.tx_power_w;
  t.popularity_cdf.resize(cp.popularity.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cp.popularity.size(); ++i) {
    acc += cp.popularity[i];
    t.popularity_cdf[i] = acc;
  }
  t.popularity_cdf.back() = 1.0;

  const int F = cp.file_count;
  t.is_cached.assign(F + 1, 0);
  t.is_backhaul.assign(F + 1, 0);
  t.segment_lo.assign(F + 1, 0.0);
  t.segment_hi.assign(F + 1, 0.0);
  double segment_start = 0.0;
  for (std::size_t k = 0; k < alloc.cached.size(); ++k) {
    const int f = alloc.cached[k];
    t.is_cached[f] = 1;
    t.segment_lo[f] = segment_start;
    segment_start += placement.t[k];
    t.segment_hi[f] = segment_start;
  }
  t.load_cdf.resize(F + 1);
  for (int f : alloc.backhaul) {
    t.is_backhaul[f] = 1;
    if (sim.load_model == LoadModel::analytic_pmf && cp.backhaul_capability > 0) {
      const auto pmf =
          load::backhaul_load_pmf(f, alloc.backhaul, cp.popularity, net.lambda_u,
                                  net.lambda_b);
      auto& cdf = t.load_cdf[f];
      cdf.resize(pmf.probs.size());
      double c = 0.0;
      for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
        c += pmf.probs[k];
        cdf[k] = c;
      }
      cdf.back() = 1.0;
    }
  }
  return t;
}

int draw_from_cdf(const std::vector<double>& cdf, double u) {
  return static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

double pathloss(double r2, double beta) {
  if (beta == 4.0) return 1.0 / (r2 * r2);
  return std::pow(r2, -0.5 * beta);
}

void run_realization(std::uint64_t index, const SimTables& tables,
                     const analytic::NetworkParams& net,
                     const content::ContentParams& cp, const SimConfig& sim,
                     Tally& tally) {
  Rng rng(sim.rng_seed, index);

  const std::int64_t n_bs = rng.poisson(tables.mean_bs);
  std::vector<double> r2(n_bs);
  std::vector<double> xs(n_bs), ys(n_bs);
  for (std::int64_t i = 0; i < n_bs; ++i) {
    const double r = tables.radius * std::sqrt(rng.uniform());
    const double angle = 2.0 * M_PI * rng.uniform();
    xs[i] = r * std::cos(angle);
    ys[i] = r * std::sin(angle);
    r2[i] = xs[i] * xs[i] + ys[i] * ys[i];
  }

  const int file = 1 + draw_from_cdf(tables.popularity_cdf, rng.uniform());
  const bool cached = tables.is_cached[file];
  ++tally.file_requests[file - 1];
  if (cached) ++tally.cached_requests;

  int serving = -1;
  if (cached) {
    const double lo = tables.segment_lo[file];
    const double hi = tables.segment_hi[file];
    double best_r2 = 0.0;
    for (std::int64_t i = 0; i < n_bs; ++i) {
      const double u = rng.uniform();
      if (!detail::segment_hit(lo, hi, u)) continue;
      if (serving < 0 || r2[i] < best_r2) {
        serving = static_cast<int>(i);
        best_r2 = r2[i];
      }
    }
  } else {
    double best_r2 = 0.0;
    for (std::int64_t i = 0; i < n_bs; ++i) {
      if (serving < 0 || r2[i] < best_r2) {
        serving = static_cast<int>(i);
        best_r2 = r2[i];
      }
    }
  }
  if (serving < 0) {
    if (cached) ++tally.missing_serving;
    return;  // counted as failure
  }

  double interference = 0.0;
  for (std::int64_t i = 0; i < n_bs; ++i) {
    if (i == serving) continue;
    interference += pathloss(r2[i], net.beta) * rng.exponential();
  }
  const double signal = pathloss(r2[serving], net.beta) * rng.gamma_int(net.antennas);
  double denom = interference;
  if (sim.metric == Metric::sinr) denom += tables.noise_over_power;
  const bool link_ok = denom > 0.0 ? signal / denom > net.tau : true;

  bool admitted = true;
  if (!cached) {
    const int B = cp.backhaul_capability;
    if (B <= 0) {
      admitted = false;
    } else {
      std::int64_t k = 1;
      if (sim.load_model == LoadModel::analytic_pmf) {
        k = 1 + draw_from_cdf(tables.load_cdf[file], rng.uniform());
      } else {
        // Instantiate the users and count distinct backhaul files requested
        // in the tagged cell.
        std::vector<char> requested(cp.file_count + 1, 0);
        requested[file] = 1;
        const std::int64_t n_users = rng.poisson(tables.mean_users);
        for (std::int64_t uidx = 0; uidx < n_users; ++uidx) {
          const double r = tables.radius * std::sqrt(rng.uniform());
          const double angle = 2.0 * M_PI * rng.uniform();
          const double ux = r * std::cos(angle);
          const double uy = r * std::sin(angle);
          const int g = 1 + draw_from_cdf(tables.popularity_cdf, rng.uniform());
          if (!tables.is_backhaul[g] || requested[g]) continue;
          double best = 0.0;
          int nearest = -1;
          for (std::int64_t i = 0; i < n_bs; ++i) {
            const double dx = xs[i] - ux;
            const double dy = ys[i] - uy;
            const double d2 = dx * dx + dy * dy;
            if (nearest < 0 || d2 < best) {
              nearest = static_cast<int>(i);
              best = d2;
            }
          }
          if (nearest == serving) requested[g] = 1;
        }
        k = 0;
        for (int g = 1; g <= cp.file_count; ++g) k += requested[g];
      }
      if (k > B) admitted = rng.uniform() * k < B;
    }
  }

  if (link_ok && admitted) {
    ++tally.successes;
    ++tally.file_successes[file - 1];
  }
}

}  // namespace

std::vector<Point> sample_ppp(double lambda, double radius, Rng& rng) {
  if (!(lambda >= 0.0) || !(radius > 0.0)) {
    throw std::domain_error("sample_ppp: density must be >= 0 and radius positive");
  }
  const std::int64_t count = rng.poisson(lambda * M_PI * radius * radius);
  std::vector<Point> points(count);
  for (auto& p : points) {
    const double r = radius * std::sqrt(rng.uniform());
    const double angle = 2.0 * M_PI * rng.uniform();
    p.x = r * std::cos(angle);
    p.y = r * std::sin(angle);
  }
  return points;
}

StpSimResult simulate_stp(const content::FileAllocation& alloc,
                          const content::CachePlacement& placement,
                          const analytic::NetworkParams& net,
                          const content::ContentParams& cp, const SimConfig& sim) {
  net.check();
  if (sim.realizations < 1) {
    throw std::domain_error("simulate_stp: realization count must be >= 1");
  }
  const auto violations = content::validate(alloc, placement, cp);
  if (!violations.empty()) {
    throw std::domain_error("simulate_stp: infeasible inputs: " + violations.front());
  }
  const SimTables tables = build_tables(alloc, placement, net, cp, sim);

  const int threads = std::max(1, sim.threads);
  std::vector<Tally> tallies(threads, Tally(cp.file_count));
  const auto worker = [&](int tid) {
    for (std::int64_t i = tid; i < sim.realizations; i += threads) {
      run_realization(static_cast<std::uint64_t>(i), tables, net, cp, sim, tallies[tid]);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }
  Tally total(cp.file_count);
  for (const auto& t : tallies) total.merge(t);

  StpSimResult result;
  result.overall = bernoulli_estimate(total.successes, sim.realizations);
  result.overall.window_warning =
      total.cached_requests > 0 &&
      total.missing_serving > 0.01 * static_cast<double>(total.cached_requests);
  for (int f = 1; f <= cp.file_count; ++f) {
    if (total.file_requests[f - 1] == 0) continue;
    result.per_file[f] =
        bernoulli_estimate(total.file_successes[f - 1], total.file_requests[f - 1]);
  }
  return result;
}

Estimate simulate_ase(const content::FileAllocation& alloc,
                      const content::CachePlacement& placement,
                      const analytic::NetworkParams& net,
                      const content::ContentParams& cp, const SimConfig& sim) {
  const StpSimResult stp = simulate_stp(alloc, placement, net, cp, sim);
  const double factor = net.lambda_b * analytic::kPerKm2 * std::log2(1.0 + net.tau);
  Estimate out = stp.overall;
  out.mean *= factor;
  out.stderr_ *= factor;
  return out;
}

}  // namespace cachenet::mc
