#include "codemix/svm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "codemix/error.hpp"

namespace codemix {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SmoSolution solve_smo(std::span<const double> kernel, std::span<const std::int8_t> y,
                      const SmoOptions& options) {
  const std::size_t n = y.size();
  if (kernel.size() != n * n) {
    throw ArgumentError("solve_smo: kernel matrix must be n x n");
  }
  if (!(options.C > 0.0) || !(options.tolerance > 0.0)) {
    throw ArgumentError("solve_smo: C and tolerance must be positive");
  }
  const double C = options.C;
  const double eps = options.tolerance;
  const std::size_t max_iter =
      options.max_iter > 0 ? options.max_iter : std::max<std::size_t>(10'000'000, 100 * n);

  const auto K = [&](std::size_t i, std::size_t j) { return kernel[i * n + j]; };
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha + p with p = -e

  const auto upper = [&](std::size_t i) { return alpha[i] >= C; };
  const auto lower = [&](std::size_t i) { return alpha[i] <= 0.0; };

  std::size_t iter = 0;
  while (true) {
    // Working-set selection: i maximizes -y_t grad_t over I_up, j minimizes
    // the second-order objective decrease over I_low.
    double gmax = -kInf;
    double gmax2 = -kInf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i = t;
        }
      } else if (!lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i = t;
      }
    }
    std::size_t j = n;
    double obj_min = kInf;
    if (i < n) {
      for (std::size_t t = 0; t < n; ++t) {
        const double qit = static_cast<double>(y[i]) * static_cast<double>(y[t]) * K(i, t);
        if (y[t] == 1) {
          if (lower(t)) continue;
          const double grad_diff = gmax + grad[t];
          gmax2 = std::max(gmax2, grad[t]);
          if (grad_diff > 0.0) {
            const double quad = K(i, i) + K(t, t) - 2.0 * static_cast<double>(y[i]) * qit;
            const double obj = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
            if (obj <= obj_min) {
              j = t;
              obj_min = obj;
            }
          }
        } else {
          if (upper(t)) continue;
          const double grad_diff = gmax - grad[t];
          gmax2 = std::max(gmax2, -grad[t]);
          if (grad_diff > 0.0) {
            const double quad = K(i, i) + K(t, t) + 2.0 * static_cast<double>(y[i]) * qit;
            const double obj = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
            if (obj <= obj_min) {
              j = t;
              obj_min = obj;
            }
          }
        }
      }
    }
    if (i == n || j == n || gmax + gmax2 < eps) break;
    if (iter >= max_iter) {
      throw ConvergenceError("SMO did not reach tolerance " + std::to_string(eps) + " within " +
                             std::to_string(max_iter) + " iterations");
    }
    ++iter;

    const double yi = y[i];
    const double yj = y[j];
    const double qij = yi * yj * K(i, j);
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = K(i, i) + K(j, j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = K(i, i) + K(j, j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      const double yt = y[t];
      grad[t] += yt * (yi * K(i, t) * dai + yj * K(j, t) * daj);
    }
  }

  // Offset from free variables, or the midpoint of the feasible interval.
  double ub = kInf;
  double lb = -kInf;
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = static_cast<double>(y[t]) * grad[t];
    if (upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  SmoSolution out;
  out.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  out.alpha = std::move(alpha);
  out.iterations = iter;
  return out;
}

double scale_gamma(const DocTermMatrix& matrix) {
  const double cells = static_cast<double>(matrix.size()) * static_cast<double>(matrix.dimension);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& row : matrix.rows) {
    for (const auto& e : row.entries()) {
      sum += e.value;
      sum_sq += e.value * e.value;
    }
  }
  const double mean = sum / cells;
  const double var = sum_sq / cells - mean * mean;
  if (!(var > 0.0)) return 1.0;
  return 1.0 / (static_cast<double>(matrix.dimension) * var);
}

double SvmModel::kernel_value(const DocumentVector& a, double a_sq, const DocumentVector& b,
                              double b_sq) const {
  const double d = dot(a, b);
  if (kernel_ == KernelKind::Linear) return d;
  return std::exp(-gamma_ * std::max(0.0, a_sq + b_sq - 2.0 * d));
}

std::vector<double> SvmModel::decision_values(const DocumentVector& x) const {
  if (x.dimension() != dimension_) {
    throw ArgumentError("SVM: input dimension mismatch");
  }
  const double x_sq = x.squared_norm();
  std::vector<double> kx(support_vectors_.size());
  for (std::size_t s = 0; s < kx.size(); ++s) {
    kx[s] = kernel_value(support_vectors_[s], support_sq_norms_[s], x, x_sq);
  }
  std::vector<double> out;
  out.reserve(machines_.size());
  for (const auto& m : machines_) {
    double f = -m.rho;
    for (std::size_t s = 0; s < m.support.size(); ++s) f += m.coef[s] * kx[m.support[s]];
    out.push_back(f);
  }
  return out;
}

ClassScores SvmModel::scores(const DocumentVector& x) const {
  const auto dec = decision_values(x);
  ClassScores votes(num_classes_, 0.0);
  for (std::size_t p = 0; p < machines_.size(); ++p) {
    votes[dec[p] > 0.0 ? machines_[p].positive : machines_[p].negative] += 1.0;
  }
  const double total = static_cast<double>(machines_.size());
  for (auto& v : votes) v /= total;
  return votes;
}

SvmModel fit_svm(const DocTermMatrix& matrix, const ClassifierSpec& spec) {
  check_training_matrix(matrix);
  spec.validate();

  SvmModel model;
  model.num_classes_ = matrix.num_classes;
  model.dimension_ = matrix.dimension;
  model.kernel_ = spec.kernel;
  model.gamma_ = spec.gamma.value_or(scale_gamma(matrix));

  std::vector<std::vector<std::uint32_t>> by_class(matrix.num_classes);
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    by_class[matrix.labels[r]].push_back(static_cast<std::uint32_t>(r));
  }
  std::vector<double> sq_norms(matrix.size());
  for (std::size_t r = 0; r < matrix.size(); ++r) sq_norms[r] = matrix.rows[r].squared_norm();

  for (LabelId a = 0; a < matrix.num_classes; ++a) {
    for (LabelId b = a + 1; b < matrix.num_classes; ++b) {
      if (by_class[a].empty() || by_class[b].empty()) continue;
      BinarySvm m;
      m.positive = a;
      m.negative = b;
      m.rows = by_class[a];
      m.rows.insert(m.rows.end(), by_class[b].begin(), by_class[b].end());
      m.y.assign(by_class[a].size(), 1);
      m.y.resize(m.rows.size(), -1);
      model.machines_.push_back(std::move(m));
    }
  }

  const SmoOptions smo{spec.C, spec.tolerance, spec.max_iter};
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    try {
      std::vector<double> gram;
      for (std::size_t p = next++; p < model.machines_.size(); p = next++) {
        auto& m = model.machines_[p];
        const std::size_t n = m.rows.size();
        gram.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          const auto& xi = matrix.rows[m.rows[i]];
          for (std::size_t j = i; j < n; ++j) {
            const double k = model.kernel_value(xi, sq_norms[m.rows[i]], matrix.rows[m.rows[j]],
                                                sq_norms[m.rows[j]]);
            gram[i * n + j] = k;
            gram[j * n + i] = k;
          }
        }
        auto sol = solve_smo(gram, m.y, smo);
        m.alpha = std::move(sol.alpha);
        m.rho = sol.rho;
        m.iterations = sol.iterations;
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = model.machines_.size();
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(spec.workers, 1, std::max<std::size_t>(1, model.machines_.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Pool support vectors across machines; a row is stored once.
  std::vector<std::int64_t> sv_index(matrix.size(), -1);
  for (auto& m : model.machines_) {
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      if (m.alpha[i] <= 0.0) continue;
      const auto r = m.rows[i];
      if (sv_index[r] < 0) {
        sv_index[r] = static_cast<std::int64_t>(model.support_vectors_.size());
        model.support_vectors_.push_back(matrix.rows[r]);
        model.support_sq_norms_.push_back(sq_norms[r]);
      }
      m.support.push_back(static_cast<std::uint32_t>(sv_index[r]));
      m.coef.push_back(static_cast<double>(m.y[i]) * m.alpha[i]);
    }
  }
  return model;
}

}  // namespace codemix
