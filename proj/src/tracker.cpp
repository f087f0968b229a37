#include "zimin/tracker.hpp"

#include <algorithm>

namespace zimin {

ZiminTracker::ZiminTracker(unsigned cap) : cap_(std::clamp(cap, 1u, 255u)) {}

void ZiminTracker::push(Letter c) {
  const std::size_t j = word_.size();
  word_.push_back(c);
  for (std::size_t i = 0; i < j; ++i) {
    Row& r = rows_[i];
    const std::size_t len = j - i + 1;
    const Letter* base = word_.data() + i;
    std::uint32_t k = r.fail[len - 1];
    while (k > 0 && base[k] != c) k = r.fail[k];
    if (base[k] == c) ++k;
    r.fail.push_back(k);
    std::uint32_t b = k;
    while (2 * b >= len) b = r.fail[b];
    unsigned lv = b > 0 ? std::min<unsigned>(cap_, 1u + r.best[b]) : 1u;
    r.level.push_back(static_cast<std::uint8_t>(lv));
    r.best.push_back(static_cast<std::uint8_t>(std::max<unsigned>(lv, r.best[k])));
  }
  Row row;
  if (!spare_.empty()) {
    row = std::move(spare_.back());
    spare_.pop_back();
    row.fail.clear();
    row.level.clear();
    row.best.clear();
  }
  row.fail = {0, 0};
  row.level = {0, 1};
  row.best = {0, 1};
  rows_.push_back(std::move(row));
}

void ZiminTracker::pop() {
  if (word_.empty()) fail(Errc::out_of_range, "pop on empty tracker");
  spare_.push_back(std::move(rows_.back()));
  rows_.pop_back();
  word_.pop_back();
  for (Row& r : rows_) {
    r.fail.pop_back();
    r.level.pop_back();
    r.best.pop_back();
  }
}

void ZiminTracker::clear() {
  word_.clear();
  rows_.clear();
}

unsigned ZiminTracker::level(std::size_t i, std::size_t len) const {
  if (len == 0 || i + len > word_.size()) fail(Errc::out_of_range, "tracker factor out of range");
  return rows_[i].level[len];
}

unsigned ZiminTracker::suffix_level(std::size_t i) const {
  if (i >= word_.size()) fail(Errc::out_of_range, "tracker suffix out of range");
  return rows_[i].level.back();
}

unsigned ZiminTracker::max_suffix_level() const {
  unsigned m = 0;
  for (const Row& r : rows_) m = std::max<unsigned>(m, r.level.back());
  return m;
}

std::size_t ZiminTracker::suffixes_at_least(unsigned n) const {
  std::size_t k = 0;
  for (const Row& r : rows_) k += r.level.back() >= n;
  return k;
}

std::size_t ZiminTracker::first_suffix_at_least(unsigned n) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].level.back() >= n) return i;
  return rows_.size();
}

}  // namespace zimin
