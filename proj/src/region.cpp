#include "rankwalk/region.hpp"

#include <algorithm>
#include <limits>

namespace rankwalk {

Region::Region(std::vector<long> ceiling, std::vector<long> floor)
    : ceiling_(std::move(ceiling)), floor_(std::move(floor)) {
  while (!ceiling_.empty() && ceiling_.back() == 0) ceiling_.pop_back();
  if (floor_.size() > ceiling_.size()) {
    for (std::size_t x = ceiling_.size(); x < floor_.size(); ++x) {
      if (floor_[x] != 0) throw std::invalid_argument("region: floor exceeds ceiling");
    }
  }
  floor_.resize(ceiling_.size(), 0);

  for (std::size_t x = 0; x < ceiling_.size(); ++x) {
    if (ceiling_[x] < 0 || floor_[x] < 0) throw std::invalid_argument("region: negative height");
    if (x > 0 && ceiling_[x] > ceiling_[x - 1]) {
      throw std::invalid_argument("region: ceiling must be nonincreasing");
    }
    if (x > 0 && floor_[x] > floor_[x - 1]) {
      throw std::invalid_argument("region: floor must be nonincreasing");
    }
    if (floor_[x] > ceiling_[x]) throw std::invalid_argument("region: floor exceeds ceiling");
    area_ += ceiling_[x] - floor_[x];
    floor_area_ += floor_[x];
  }
  choose_split();
}

Region Region::box(long width, long height) {
  if (width < 0 || height < 0) throw std::invalid_argument("region: negative box side");
  return Region(std::vector<long>(static_cast<std::size_t>(height > 0 ? width : 0), height));
}

void Region::choose_split() {
  long best = std::numeric_limits<long>::max();
  for (long s = 0; s <= width(); ++s) {
    const long t = ceiling(s + 1);
    if (s + t < best) {
      best = s + t;
      column_slots_ = s;
      row_slots_ = t;
    }
  }
  if (width() == 0) {
    column_slots_ = 0;
    row_slots_ = 0;
  }
}

Region Region::with_split(long column_slots, long row_slots) const {
  if (column_slots < 0 || row_slots < 0 || column_slots > width()) {
    throw std::invalid_argument("region: split out of range");
  }
  if (ceiling(column_slots + 1) > row_slots) {
    throw std::invalid_argument("region: split does not cover every cell");
  }
  Region copy = *this;
  copy.column_slots_ = column_slots;
  copy.row_slots_ = row_slots;
  return copy;
}

namespace {

// Number of leading entries >= y in a nonincreasing sequence.
long count_at_least(const std::vector<long>& v, long y) {
  auto it = std::partition_point(v.begin(), v.end(), [y](long h) { return h >= y; });
  return static_cast<long>(it - v.begin());
}

}  // namespace

long Region::row_ceiling(long y) const { return y >= 1 ? count_at_least(ceiling_, y) : 0; }

long Region::row_floor(long y) const { return y >= 1 ? count_at_least(floor_, y) : 0; }

}  // namespace rankwalk
