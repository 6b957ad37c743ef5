#pragma once

// A Region bounds Young diagrams from above by a nonincreasing ceiling
// profile and, for skew regions, from below by a nonincreasing floor profile.
// Column x (1-based) may hold cells floor(x)+1 .. ceiling(x).
//
// Every region also carries an addressing split (s, t): columns 1..s are
// addressed by their heights and rows 1..t by their widths, and every cell of
// the region must satisfy x <= s or y <= t. The chain's move slots and the
// compressed diagram state are both laid out along this split.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rankwalk {

class Region {
 public:
  Region() = default;

  // Columns past the last nonzero ceiling are dropped. The split is chosen to
  // minimise s + t.
  explicit Region(std::vector<long> ceiling, std::vector<long> floor = {});

  static Region box(long width, long height);

  // Same region with an explicit addressing split; throws if some cell lies
  // outside both the first s columns and the first t rows.
  Region with_split(long column_slots, long row_slots) const;

  long width() const { return static_cast<long>(ceiling_.size()); }
  long ceiling(long x) const { return (x >= 1 && x <= width()) ? ceiling_[x - 1] : 0; }
  long floor(long x) const { return (x >= 1 && x <= width()) ? floor_[x - 1] : 0; }

  // Number of columns whose ceiling (resp. floor) reaches row y.
  long row_ceiling(long y) const;
  long row_floor(long y) const;

  const std::vector<long>& ceilings() const { return ceiling_; }
  const std::vector<long>& floors() const { return floor_; }
  bool has_floor() const { return floor_area_ > 0; }

  // Free cells: sum of ceiling - floor. This is the rank of the full region.
  long area() const { return area_; }
  long floor_area() const { return floor_area_; }

  long column_slots() const { return column_slots_; }
  long row_slots() const { return row_slots_; }

  bool operator==(const Region&) const = default;

 private:
  void choose_split();

  std::vector<long> ceiling_;
  std::vector<long> floor_;
  long area_ = 0;
  long floor_area_ = 0;
  long column_slots_ = 0;
  long row_slots_ = 0;
};

}  // namespace rankwalk
