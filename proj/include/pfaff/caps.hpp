#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pfaff {

// Resource limits for the enumeration and search routines.  Exceeding a hard
// cap and exhausting a search budget are different situations: a cap means
// the instance is too large to process at all, a budget means the search
// stopped before it could decide either way.  Callers must not treat
// budget_exhausted as "none exists".
struct Caps {
    std::size_t max_factors = 1'000'000;    // perfect-matching enumeration cap
    std::size_t max_cycles = 100'000;       // alternating-cycle enumeration cap
    std::size_t search_budget = 10'000;     // candidate budget for certificate/witness searches
    std::uint64_t seed = 0x5eedb0a7ULL;     // seed for all randomized search stages
};

class cap_exceeded : public std::runtime_error {
  public:
    cap_exceeded(const std::string& what_cap, std::size_t limit)
        : std::runtime_error("cap exceeded: " + what_cap + " (limit " + std::to_string(limit) + ")"),
          cap_name(what_cap),
          cap_limit(limit) {}
    std::string cap_name;
    std::size_t cap_limit;
};

class budget_exhausted : public std::runtime_error {
  public:
    budget_exhausted(const std::string& search, std::size_t budget)
        : std::runtime_error("search budget exhausted: " + search + " (budget " + std::to_string(budget) +
                             "); result is inconclusive"),
          search_name(search),
          budget(budget) {}
    std::string search_name;
    std::size_t budget;
};

}  // namespace pfaff
