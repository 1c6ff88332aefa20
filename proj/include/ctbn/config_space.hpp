#ifndef CTBN_CONFIG_SPACE_HPP
#define CTBN_CONFIG_SPACE_HPP

#include <span>
#include <stdexcept>
#include <vector>

namespace ctbn {

/* Mixed-radix index over an ordered list of cardinalities.  The first
 * digit (lowest variable index) varies fastest; this ordering is part of
 * the on-disk layout of conditional intensity matrices. */
class ConfigSpace {
 public:
  ConfigSpace() { strides_ = {1}; }

  explicit ConfigSpace(std::vector<int> cards) : cards_(std::move(cards)) {
    strides_.resize(cards_.size() + 1);
    strides_[0] = 1;
    for (std::size_t i = 0; i < cards_.size(); ++i) {
      if (cards_[i] < 1) throw std::invalid_argument("cardinality must be >= 1");
      strides_[i + 1] = strides_[i] * cards_[i];
    }
  }

  int count() const { return strides_.back(); }
  int digits() const { return static_cast<int>(cards_.size()); }
  int card(int pos) const { return cards_[pos]; }
  int stride(int pos) const { return strides_[pos]; }

  int index(std::span<const int> states) const {
    int idx = 0;
    for (std::size_t i = 0; i < cards_.size(); ++i) idx += states[i] * strides_[i];
    return idx;
  }

  int digit(int config, int pos) const {
    return (config / strides_[pos]) % cards_[pos];
  }

  int replace_digit(int config, int pos, int value) const {
    return config + (value - digit(config, pos)) * strides_[pos];
  }

  void decode(int config, std::span<int> out) const {
    for (std::size_t i = 0; i < cards_.size(); ++i) {
      out[i] = config % cards_[i];
      config /= cards_[i];
    }
  }

  /* Index in the space obtained by inserting one extra digit of the given
   * cardinality at position pos, keeping all other digits. */
  int expand(int config, int pos, int extra_card, int value) const {
    const int before = strides_[pos];
    const int low = config % before;
    const int high = config / before;
    return low + before * (value + extra_card * high);
  }

 private:
  std::vector<int> cards_;
  std::vector<int> strides_;
};

}  // namespace ctbn

#endif
