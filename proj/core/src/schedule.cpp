#include "annealpath/schedule.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "annealpath/errors.hpp"

namespace annealpath {

double OffsetWindow::clamp(double gamma) const {
  if (gamma > upper) return upper;
  if (gamma <= lower_exclusive) return std::nextafter(lower_exclusive, upper);
  return gamma;
}

OffsetSchedule::OffsetSchedule(std::vector<double> gammas, double anneal_time, OffsetWindow window)
    : gammas_(std::move(gammas)), anneal_time_(anneal_time), window_(window) {
  if (gammas_.empty()) throw InputError("schedule needs at least one qubit");
  if (!(anneal_time > 0.0) || !std::isfinite(anneal_time)) {
    throw InputError("anneal time must be positive");
  }
  if (window_.lower_exclusive < -1.0) throw InputError("offset window cannot extend below -1");
  for (std::size_t q = 0; q < gammas_.size(); ++q) {
    if (!window_.contains(gammas_[q])) {
      throw InputError("offset " + std::to_string(gammas_[q]) + " for qubit " +
                       std::to_string(q + 1) + " outside (" +
                       std::to_string(window_.lower_exclusive) + ", " +
                       std::to_string(window_.upper) + "]");
    }
  }
}

OffsetSchedule OffsetSchedule::linear(int n_qubits, double anneal_time) {
  return OffsetSchedule(std::vector<double>(static_cast<std::size_t>(n_qubits), 0.0), anneal_time);
}

void OffsetSchedule::check(int qubit, double s) const {
  if (qubit < 0 || qubit >= n_qubits()) throw InputError("qubit index out of range");
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("anneal fraction must lie in [0, 1]");
}

double OffsetSchedule::eval_b(int qubit, double s) const {
  check(qubit, s);
  return std::pow(s, 1.0 + gammas_[static_cast<std::size_t>(qubit)]);
}

double OffsetSchedule::eval_a(int qubit, double s) const { return 1.0 - eval_b(qubit, s); }

double OffsetSchedule::coupling_weight(int i, int j, double s) const {
  check(j, s);
  if (gammas_[static_cast<std::size_t>(i)] == gammas_[static_cast<std::size_t>(j)]) {
    return eval_b(i, s);
  }
  return std::sqrt(eval_b(i, s) * eval_b(j, s));
}

void OffsetSchedule::eval_b_all(double s, std::span<double> out) const {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("anneal fraction must lie in [0, 1]");
  if (out.size() != gammas_.size()) throw InputError("output span has wrong size");
  for (std::size_t q = 0; q < gammas_.size(); ++q) out[q] = std::pow(s, 1.0 + gammas_[q]);
}

OffsetSchedule OffsetSchedule::with_gammas(std::vector<double> gammas) const {
  return OffsetSchedule(std::move(gammas), anneal_time_, window_);
}

}  // namespace annealpath
