#ifndef WNE_ERRORS_HPP
#define WNE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wne {

/// Raised when an on-the-fly search would intern more states than allowed.
class StateBudgetExceeded : public std::runtime_error {
public:
    explicit StateBudgetExceeded(std::size_t budget)
        : std::runtime_error("state budget of " + std::to_string(budget) +
                             " explored states exceeded"),
          budget_(budget) {}

    std::size_t budget() const { return budget_; }

private:
    std::size_t budget_;
};

/// Raised when an explicit table construction would exceed its size cap.
class SizeBudgetExceeded : public std::runtime_error {
public:
    explicit SizeBudgetExceeded(std::size_t budget)
        : std::runtime_error("size budget of " + std::to_string(budget) +
                             " table entries exceeded"),
          budget_(budget) {}

    std::size_t budget() const { return budget_; }

private:
    std::size_t budget_;
};

} // namespace wne

#endif
