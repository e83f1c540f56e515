#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace plsolve {

/// 0/1 diagonal P stored as a bit per component, with its population count
/// kept in sync.
class ActiveMask {
 public:
  ActiveMask() = default;
  explicit ActiveMask(std::size_t n) : bits_(n, 0) {}
  explicit ActiveMask(std::vector<bool> const& bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t popcount() const noexcept { return popcount_; }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool value);

  /// this := this OR other. Returns the number of newly set bits.
  std::size_t join(const ActiveMask& other);
  /// True when every bit of `other` is also set here.
  bool contains(const ActiveMask& other) const;

  bool all() const noexcept { return popcount_ == bits_.size(); }
  bool none() const noexcept { return popcount_ == 0; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::vector<bool> to_bools() const;

  friend bool operator==(const ActiveMask& a, const ActiveMask& b) {
    return a.bits_ == b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t popcount_ = 0;
};

/// P(x) with bit i set iff x_i >= threshold (the boundary case counts as active).
ActiveMask active_mask(std::span<const double> x, double threshold = 0.0);
/// P_xi(x) with a per-component threshold xi_i.
ActiveMask active_mask(std::span<const double> x, std::span<const double> threshold);

}  // namespace plsolve
