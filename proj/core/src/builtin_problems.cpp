#include "annealpath/builtin_problems.hpp"

#include <array>

#include "annealpath/errors.hpp"

namespace annealpath {

namespace {

struct Table {
  std::string_view label;
  std::array<double, 12> h;
  std::array<std::array<int, 3>, 13> j;  // one-based (i, j, J_ij)
};

// The trailing zero entries are part of the published tables.
constexpr std::array<Table, 3> kTables{{
    {"487",
     {-2, -1, 1, -1, -2, 1, -1, 1, 1, 1, -2, 0},
     {{{1, 4, -1}, {1, 6, 1}, {1, 8, 1}, {1, 11, 1}, {2, 6, 0}, {2, 11, -1}, {3, 5, 1},
       {5, 7, -1}, {5, 11, 1}, {5, 12, 1}, {9, 11, 1}, {10, 12, 1}, {1, 2, 0}}}},
    {"26",
     {0, -1, 0, -1, 1, -1, 0, 1, 0, -1, 0, 0},
     {{{1, 9, 1}, {1, 11, -1}, {2, 11, 1}, {3, 4, 1}, {3, 6, 1}, {4, 8, 1}, {4, 10, -1},
       {5, 12, -1}, {6, 7, -1}, {6, 12, -1}, {7, 9, -1}, {8, 12, 0}, {1, 2, 0}}}},
    {"301",
     {0, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0},
     {{{1, 2, -1}, {1, 3, 1}, {2, 4, -1}, {3, 8, 1}, {4, 12, 1}, {5, 12, 1}, {6, 7, 1},
       {6, 10, -1}, {8, 11, -1}, {9, 10, -1}, {10, 11, 1}, {11, 12, 0}, {1, 4, 0}}}},
}};

}  // namespace

std::vector<std::string> builtin_labels() {
  std::vector<std::string> out;
  for (const auto& t : kTables) out.emplace_back(t.label);
  return out;
}

ProblemInstance builtin(std::string_view label) {
  for (const auto& t : kTables) {
    if (t.label != label) continue;
    std::vector<double> h(t.h.begin(), t.h.end());
    std::vector<Coupling> couplings;
    for (const auto& e : t.j) couplings.push_back({e[0] - 1, e[1] - 1, static_cast<double>(e[2])});
    return ProblemInstance(12, std::move(h), std::move(couplings), 1.0, std::string(t.label));
  }
  throw InputError("unknown built-in problem '" + std::string(label) + "' (known: 487, 26, 301)");
}

}  // namespace annealpath
