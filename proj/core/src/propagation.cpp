#include "annealpath/propagation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "annealpath/errors.hpp"
#include "annealpath/hamiltonian.hpp"
#include "annealpath/krylov.hpp"

namespace annealpath {

std::string_view to_string(Propagator p) {
  switch (p) {
    case Propagator::suzuki_trotter_2:
      return "suzuki-trotter-2";
    case Propagator::exact_midpoint:
      return "exact-midpoint";
  }
  return "unknown";
}

Propagator parse_propagator(std::string_view text) {
  if (text == "suzuki-trotter-2" || text == "trotter") return Propagator::suzuki_trotter_2;
  if (text == "exact-midpoint" || text == "exact") return Propagator::exact_midpoint;
  throw InputError("unknown propagator '" + std::string(text) + "'");
}

double default_time_step(double anneal_time) { return std::min(anneal_time / 10000.0, 1e-3); }

std::size_t step_count(double anneal_time, double time_step) {
  if (!(time_step > 0.0)) throw InputError("time step must be positive");
  if (time_step > anneal_time * (1.0 + 1e-12)) throw InputError("time step exceeds the anneal time");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(anneal_time / time_step)));
}

namespace {

struct Mat2 {
  // Row-major complex 2x2 as separate real/imaginary parts.
  std::array<double, 4> re{1, 0, 0, 1};
  std::array<double, 4> im{0, 0, 0, 0};
};

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      double sr = 0.0;
      double si = 0.0;
      for (int k = 0; k < 2; ++k) {
        sr += a.re[r * 2 + k] * b.re[k * 2 + c] - a.im[r * 2 + k] * b.im[k * 2 + c];
        si += a.re[r * 2 + k] * b.im[k * 2 + c] + a.im[r * 2 + k] * b.re[k * 2 + c];
      }
      out.re[r * 2 + c] = sr;
      out.im[r * 2 + c] = si;
    }
  }
  return out;
}

void apply_single_qubit(std::span<Complex> psi, int qubit, const Mat2& m) {
  auto* p = reinterpret_cast<double*>(psi.data());
  const std::size_t dim = psi.size();
  const std::size_t stride = std::size_t{1} << qubit;
  const double m00r = m.re[0], m00i = m.im[0], m01r = m.re[1], m01i = m.im[1];
  const double m10r = m.re[2], m10i = m.im[2], m11r = m.re[3], m11i = m.im[3];
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    double* lo = p + 2 * base;
    double* hi = p + 2 * (base + stride);
    for (std::size_t j = 0; j < stride; ++j) {
      const double a0r = lo[2 * j], a0i = lo[2 * j + 1];
      const double a1r = hi[2 * j], a1i = hi[2 * j + 1];
      lo[2 * j] = m00r * a0r - m00i * a0i + m01r * a1r - m01i * a1i;
      lo[2 * j + 1] = m00r * a0i + m00i * a0r + m01r * a1i + m01i * a1r;
      hi[2 * j] = m10r * a0r - m10i * a0i + m11r * a1r - m11i * a1i;
      hi[2 * j + 1] = m10r * a0i + m10i * a0r + m11r * a1i + m11i * a1r;
    }
  }
}

// Precomputed pieces of the product formula for one problem/schedule pair.
class TrotterKernel {
 public:
  TrotterKernel(const ProblemInstance& problem, const OffsetSchedule& schedule, double omega)
      : problem_(problem), schedule_(schedule), omega_(omega), b_(static_cast<std::size_t>(problem.n_qubits())) {
    if (schedule.n_qubits() != problem.n_qubits()) {
      throw InputError("schedule and problem disagree on the qubit count");
    }
    build_zz_patterns();
  }

  // e^{i w dt [A_q X + B_q C h_q Z]} for every qubit at fraction s.
  std::vector<Mat2> single_site(double s, double dt) {
    schedule_.eval_b_all(s, b_);
    std::vector<Mat2> out(b_.size());
    for (std::size_t q = 0; q < b_.size(); ++q) {
      const double a = 1.0 - b_[q];
      const double z = b_[q] * problem_.scale_c() * problem_.fields()[q];
      const double r = std::hypot(a, z);
      if (r == 0.0) continue;
      const double theta = omega_ * dt * r;
      const double c = std::cos(theta);
      const double sn = std::sin(theta);
      const double nx = a / r;
      const double nz = z / r;
      Mat2& m = out[q];
      m.re = {c, 0.0, 0.0, c};
      m.im = {sn * nz, sn * nx, sn * nx, -sn * nz};
    }
    return out;
  }

  // prod over pairs of e^{i w tau sqrt(B_i B_j) C J_ij Z_i Z_j}: aligned spins gain +theta.
  // All pairs commute, so the product is one diagonal phase per basis state.
  void apply_zz(double s, double tau, std::span<Complex> psi) {
    if (classes_.empty()) return;
    const std::size_t n_classes = classes_.size();
    std::vector<double> theta(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
      theta[c] = omega_ * tau * schedule_.coupling_weight(classes_[c].first, classes_[c].second, s) *
                 problem_.scale_c();
    }
    const std::size_t n_patterns = pattern_values_.size() / n_classes;
    phase_re_.resize(n_patterns);
    phase_im_.resize(n_patterns);
    for (std::size_t u = 0; u < n_patterns; ++u) {
      double angle = 0.0;
      for (std::size_t c = 0; c < n_classes; ++c) angle += theta[c] * pattern_values_[u * n_classes + c];
      phase_re_[u] = std::cos(angle);
      phase_im_[u] = std::sin(angle);
    }
    auto* p = reinterpret_cast<double*>(psi.data());
    const std::size_t dim = psi.size();
    for (std::size_t x = 0; x < dim; ++x) {
      const std::uint32_t u = pattern_of_[x];
      const double cs = phase_re_[u];
      const double sn = phase_im_[u];
      const double re = p[2 * x];
      const double im = p[2 * x + 1];
      p[2 * x] = cs * re - sn * im;
      p[2 * x + 1] = cs * im + sn * re;
    }
  }

  static void apply_all(const std::vector<Mat2>& ms, std::span<Complex> psi) {
    for (std::size_t q = 0; q < ms.size(); ++q) apply_single_qubit(psi, static_cast<int>(q), ms[q]);
  }

 private:
  const ProblemInstance& problem_;
  const OffsetSchedule& schedule_;
  double omega_;
  // Pairs whose offsets match share a schedule weight; each class is keyed by
  // one representative pair. A basis state's zz energy per class (summed J z z)
  // takes few distinct values, so states are indexed by their value pattern.
  void build_zz_patterns() {
    std::map<std::pair<double, double>, std::size_t> class_of;
    std::vector<std::pair<const Coupling*, std::size_t>> pairs;
    for (const auto& c : problem_.couplings()) {
      if (c.value == 0.0) continue;
      const double gi = schedule_.gammas()[static_cast<std::size_t>(c.i)];
      const double gj = schedule_.gammas()[static_cast<std::size_t>(c.j)];
      const auto key = std::minmax(gi, gj);
      auto [it, inserted] = class_of.try_emplace(key, classes_.size());
      if (inserted) classes_.emplace_back(c.i, c.j);
      pairs.emplace_back(&c, it->second);
    }
    if (classes_.empty()) return;
    const std::size_t n_classes = classes_.size();
    const std::size_t dim = std::size_t{1} << problem_.n_qubits();
    pattern_of_.resize(dim);
    std::map<std::vector<double>, std::uint32_t> index;
    std::vector<double> values(n_classes);
    for (std::size_t x = 0; x < dim; ++x) {
      std::fill(values.begin(), values.end(), 0.0);
      for (const auto& [c, cls] : pairs) {
        const bool differ = ((x >> c->i) & 1U) != ((x >> c->j) & 1U);
        values[cls] += differ ? -c->value : c->value;
      }
      auto [it, inserted] = index.try_emplace(values, static_cast<std::uint32_t>(index.size()));
      if (inserted) pattern_values_.insert(pattern_values_.end(), values.begin(), values.end());
      pattern_of_[x] = it->second;
    }
  }

  std::vector<double> b_;
  std::vector<std::pair<int, int>> classes_;
  std::vector<double> pattern_values_;
  std::vector<std::uint32_t> pattern_of_;
  std::vector<double> phase_re_;
  std::vector<double> phase_im_;
};

void check_state(const ProblemInstance& problem, const QuantumState& state) {
  if (state.n_qubits() != problem.n_qubits()) throw InputError("state dimension does not match problem");
  if (std::abs(state.norm() - 1.0) > 1e-9) throw InputError("input state is not normalized");
}

double population(const QuantumState& state, std::span<const BasisIndex> states) {
  double p = 0.0;
  for (BasisIndex z : states) p += state.probability(z);
  return p;
}

TrajectoryPoint observe(const ProblemInstance& problem, const OffsetSchedule& schedule, double s,
                        const QuantumState& state, std::span<const BasisIndex> ground_states) {
  const InstantaneousHamiltonian h(problem, schedule, s);
  return {s, h.expectation(state), population(state, ground_states)};
}

constexpr std::size_t kDenseExactDimension = 64;

}  // namespace

void apply_trotter_step(const ProblemInstance& problem, const OffsetSchedule& schedule, double s_mid,
                        double tau, QuantumState& state, double angular_factor) {
  if (state.n_qubits() != problem.n_qubits()) throw InputError("state dimension does not match problem");
  TrotterKernel kernel(problem, schedule, angular_factor);
  const auto half = kernel.single_site(s_mid, 0.5 * tau);
  TrotterKernel::apply_all(half, state.amplitudes());
  kernel.apply_zz(s_mid, tau, state.amplitudes());
  TrotterKernel::apply_all(half, state.amplitudes());
}

void apply_exact_midpoint_step(const ProblemInstance& problem, const OffsetSchedule& schedule,
                               double s_mid, double tau, QuantumState& state, double angular_factor) {
  if (state.n_qubits() != problem.n_qubits()) throw InputError("state dimension does not match problem");
  const InstantaneousHamiltonian h(problem, schedule, s_mid);
  const double t = angular_factor * tau;
  if (h.dimension() <= kDenseExactDimension) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.dense());
    const Eigen::MatrixXd& q = eig.eigenvectors();
    Eigen::Map<Eigen::VectorXcd> psi(state.amplitudes().data(), static_cast<Eigen::Index>(h.dimension()));
    Eigen::VectorXcd coeffs = q.transpose().cast<Complex>() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      coeffs(k) *= std::exp(Complex(0.0, -t * eig.eigenvalues()(k)));
    }
    psi = q.cast<Complex>() * coeffs;
    return;
  }
  expm_krylov([&h](std::span<const Complex> in, std::span<Complex> out) { h.apply(in, out); }, t,
              state.amplitudes());
}

Trajectory evolve(const ProblemInstance& problem, const OffsetSchedule& schedule,
                  const EvolutionConfig& config, QuantumState state,
                  std::span<const BasisIndex> ground_states) {
  check_state(problem, state);
  if (schedule.n_qubits() != problem.n_qubits()) {
    throw InputError("schedule and problem disagree on the qubit count");
  }
  if (!(config.angular_factor > 0.0)) throw InputError("angular factor must be positive");
  const double t_a = schedule.anneal_time();
  const double requested = config.time_step > 0.0 ? config.time_step : default_time_step(t_a);
  const std::size_t steps = step_count(t_a, requested);
  const double tau = t_a / static_cast<double>(steps);
  const double ds = 1.0 / static_cast<double>(steps);
  const std::size_t stride = config.record_stride;

  Trajectory out{{}, state, steps, tau};
  QuantumState& psi = out.final_state;
  out.points.push_back(observe(problem, schedule, 0.0, psi, ground_states));
  auto recorded_after = [&](std::size_t n) { return stride > 0 && (n + 1) % stride == 0 && n + 1 < steps; };
  auto midpoint = [&](std::size_t n) { return (static_cast<double>(n) + 0.5) * ds; };

  if (config.propagator == Propagator::exact_midpoint) {
    for (std::size_t n = 0; n < steps; ++n) {
      apply_exact_midpoint_step(problem, schedule, midpoint(n), tau, psi, config.angular_factor);
      if (recorded_after(n)) {
        out.points.push_back(observe(problem, schedule, static_cast<double>(n + 1) * ds, psi, ground_states));
      }
    }
  } else {
    TrotterKernel kernel(problem, schedule, config.angular_factor);
    // Adjacent half-steps act on the same qubits, so the trailing half of step n
    // and the leading half of step n + 1 are fused into one 2x2 per qubit unless
    // the state between them has to be observed.
    auto half = kernel.single_site(midpoint(0), 0.5 * tau);
    TrotterKernel::apply_all(half, psi.amplitudes());
    for (std::size_t n = 0; n < steps; ++n) {
      kernel.apply_zz(midpoint(n), tau, psi.amplitudes());
      if (n + 1 == steps || recorded_after(n)) {
        TrotterKernel::apply_all(half, psi.amplitudes());
        if (n + 1 == steps) break;
        out.points.push_back(observe(problem, schedule, static_cast<double>(n + 1) * ds, psi, ground_states));
        half = kernel.single_site(midpoint(n + 1), 0.5 * tau);
        TrotterKernel::apply_all(half, psi.amplitudes());
      } else {
        auto next = kernel.single_site(midpoint(n + 1), 0.5 * tau);
        std::vector<Mat2> fused(next.size());
        for (std::size_t q = 0; q < next.size(); ++q) fused[q] = multiply(next[q], half[q]);
        TrotterKernel::apply_all(fused, psi.amplitudes());
        half = std::move(next);
      }
    }
  }
  out.points.push_back(observe(problem, schedule, 1.0, psi, ground_states));
  return out;
}

}  // namespace annealpath
