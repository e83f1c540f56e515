#include "plsolve/pls/active_mask.hpp"

#include "plsolve/numkit/vector.hpp"

namespace plsolve {

ActiveMask::ActiveMask(std::vector<bool> const& bits) : bits_(bits.size(), 0) {
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) {
      bits_[i] = 1;
      ++popcount_;
    }
}

void ActiveMask::set(std::size_t i, bool value) {
  const bool old = bits_[i] != 0;
  if (old == value) return;
  bits_[i] = value ? 1 : 0;
  if (value)
    ++popcount_;
  else
    --popcount_;
}

std::size_t ActiveMask::join(const ActiveMask& other) {
  require_same_size(size(), other.size(), "ActiveMask::join");
  std::size_t added = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (!bits_[i] && other.bits_[i]) {
      bits_[i] = 1;
      ++added;
    }
  popcount_ += added;
  return added;
}

bool ActiveMask::contains(const ActiveMask& other) const {
  require_same_size(size(), other.size(), "ActiveMask::contains");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (other.bits_[i] && !bits_[i]) return false;
  return true;
}

std::vector<bool> ActiveMask::to_bools() const {
  std::vector<bool> r(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r[i] = bits_[i] != 0;
  return r;
}

ActiveMask active_mask(std::span<const double> x, double threshold) {
  ActiveMask m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= threshold) m.set(i, true);
  return m;
}

ActiveMask active_mask(std::span<const double> x, std::span<const double> threshold) {
  require_same_size(x.size(), threshold.size(), "active_mask");
  ActiveMask m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= threshold[i]) m.set(i, true);
  return m;
}

}  // namespace plsolve
