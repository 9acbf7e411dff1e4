#include "delcode/bits.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace delcode {

namespace {

constexpr std::uint64_t low_mask(unsigned n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::uint64_t reverse64(std::uint64_t x) noexcept {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  return __builtin_bswap64(x);
}

}  // namespace

BitString::BitString(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
  trim_tail();
}

BitString BitString::from_string(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument(std::string("bit string contains non-binary character '") + c + "'");
    }
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, unsigned width) {
  BitString out;
  out.append_uint(value, width);
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= size_) {
    throw std::out_of_range("bit index " + std::to_string(i) + " out of range for length " + std::to_string(size_));
  }
  return (*this)[i];
}

void BitString::trim_tail() noexcept {
  if ((size_ & 63) != 0 && !words_.empty()) {
    words_.back() &= low_mask(static_cast<unsigned>(size_ & 63));
  }
}

void BitString::push_back(bool value) {
  if ((size_ & 63) == 0) {
    words_.push_back(0);
  }
  if (value) {
    words_.back() |= std::uint64_t{1} << (size_ & 63);
  }
  ++size_;
}

void BitString::append_raw(std::uint64_t bits, unsigned n) {
  if (n == 0) {
    return;
  }
  bits &= low_mask(n);
  const unsigned off = static_cast<unsigned>(size_ & 63);
  if (off == 0) {
    words_.push_back(bits);
  } else {
    words_.back() |= bits << off;
    if (off + n > 64) {
      words_.push_back(bits >> (64 - off));
    }
  }
  size_ += n;
}

void BitString::append(const BitString& other) { append(other, 0, other.size_); }

void BitString::append(const BitString& other, std::size_t pos, std::size_t len) {
  if (pos + len > other.size_) {
    throw std::out_of_range("append range exceeds source length");
  }
  reserve(size_ + len);
  std::size_t q = 0;
  for (; q + 64 <= len; q += 64) {
    append_raw(other.raw_bits(pos + q, 64), 64);
  }
  append_raw(other.raw_bits(pos + q, static_cast<unsigned>(len - q)), static_cast<unsigned>(len - q));
}

void BitString::append_uint(std::uint64_t value, unsigned width) {
  if (width == 0) {
    return;
  }
  if (width > 64) {
    append_zeros(width - 64);
    width = 64;
  }
  append_raw(reverse64(value) >> (64 - width), width);
}

void BitString::append_zeros(std::size_t count) {
  resize(size_ + count);
}

void BitString::resize(std::size_t size) {
  words_.resize((size + 63) / 64, 0);
  size_ = size;
  trim_tail();
}

std::uint64_t BitString::raw_bits(std::size_t pos, unsigned width) const noexcept {
  if (width == 0) {
    return 0;
  }
  const std::size_t w = pos >> 6;
  const unsigned off = static_cast<unsigned>(pos & 63);
  std::uint64_t lo = words_[w] >> off;
  if (off != 0 && off + width > 64 && w + 1 < words_.size()) {
    lo |= words_[w + 1] << (64 - off);
  }
  return lo & low_mask(width);
}

std::uint64_t BitString::read_uint(std::size_t pos, unsigned width) const {
  if (width > 64 || pos + width > size_) {
    throw std::out_of_range("read_uint range exceeds bit string");
  }
  if (width == 0) {
    return 0;
  }
  return reverse64(raw_bits(pos, width)) >> (64 - width);
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  BitString out;
  out.append(*this, pos, len);
  return out;
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) {
      out[i] = '1';
    }
  }
  return out;
}

bool operator==(const BitString& a, const BitString& b) noexcept {
  return a.size_ == b.size_ && a.words_ == b.words_;
}

bool operator<(const BitString& a, const BitString& b) noexcept {
  const std::size_t n = std::min(a.size_, b.size_);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      return !a[i];
    }
  }
  return a.size_ < b.size_;
}

BitString apply_deletions(const BitString& s, const DeletionPattern& pattern) {
  const auto& idx = pattern.indices;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= s.size()) {
      throw std::invalid_argument("deletion index " + std::to_string(idx[i]) + " out of range for length " +
                                  std::to_string(s.size()));
    }
    if (i > 0 && idx[i] <= idx[i - 1]) {
      throw std::invalid_argument("deletion indices must be strictly increasing");
    }
  }
  BitString out;
  out.reserve(s.size() - idx.size());
  std::size_t from = 0;
  for (auto i : idx) {
    out.append(s, from, i - from);
    from = i + 1;
  }
  out.append(s, from, s.size() - from);
  return out;
}

BitString apply_edits(const BitString& s, const EditScript& script) {
  BitString cur = s;
  for (const auto& op : script.ops) {
    BitString next;
    if (op.kind == EditOp::Kind::kDelete) {
      if (op.position >= cur.size()) {
        throw std::invalid_argument("edit script deletes past end of string");
      }
      next.append(cur, 0, op.position);
      next.append(cur, op.position + 1, cur.size() - op.position - 1);
    } else {
      if (op.position > cur.size()) {
        throw std::invalid_argument("edit script inserts past end of string");
      }
      next.append(cur, 0, op.position);
      next.push_back(op.bit);
      next.append(cur, op.position, cur.size() - op.position);
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<BitString> enumerate_subsequences(const BitString& s, std::size_t delta) {
  if (delta > s.size()) {
    throw std::invalid_argument("cannot delete " + std::to_string(delta) + " bits from a string of length " +
                                std::to_string(s.size()));
  }
  std::vector<BitString> out;
  DeletionStream stream(s, delta, delta);
  while (auto y = stream.next()) {
    out.push_back(std::move(*y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subsequence(const BitString& y, const BitString& s) noexcept {
  if (y.size() > s.size()) {
    return false;
  }
  std::size_t j = 0;
  for (std::size_t i = 0; i < s.size() && j < y.size(); ++i) {
    if (s[i] == y[j]) {
      ++j;
    }
  }
  return j == y.size();
}

std::size_t lcs_length(const BitString& a, const BitString& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

// Banded DP; a mismatched diagonal step costs sub_cost (1 for Levenshtein,
// 2 for insertion/deletion-only distance).
std::size_t banded_distance(const BitString& a, const BitString& b, std::size_t bound, std::size_t sub_cost) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t over = bound + 1;
  if ((n > m ? n - m : m - n) > bound) {
    return over;
  }
  // Row i holds D[i][j] for j in [i - bound, i + bound], stored at offset j - i + bound.
  const std::size_t width = 2 * bound + 1;
  std::vector<std::size_t> prev(width, over);
  std::vector<std::size_t> cur(width, over);
  for (std::size_t off = bound; off < width; ++off) {
    const std::size_t j = off - bound;
    if (j <= m) {
      prev[off] = std::min(j, over);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t row_min = over;
    for (std::size_t off = 0; off < width; ++off) {
      cur[off] = over;
      if (i + off < bound) {
        continue;
      }
      const std::size_t j = i + off - bound;
      if (j > m) {
        break;
      }
      std::size_t best = over;
      if (j == 0) {
        best = std::min(i, over);
      } else {
        // diagonal: D[i-1][j-1] sits at the same offset in prev
        best = std::min(best, prev[off] + (a[i - 1] == b[j - 1] ? 0 : sub_cost));
        if (off > 0) {
          best = std::min(best, cur[off - 1] + 1);  // D[i][j-1]
        }
      }
      if (off + 1 < width) {
        best = std::min(best, prev[off + 1] + 1);  // D[i-1][j]
      }
      cur[off] = std::min(best, over);
      row_min = std::min(row_min, cur[off]);
    }
    if (row_min >= over) {
      return over;
    }
    std::swap(prev, cur);
  }
  const std::size_t off = m + bound - n;
  return std::min(prev[off], over);
}

}  // namespace

std::size_t edit_distance_bounded(const BitString& a, const BitString& b, std::size_t bound) {
  return banded_distance(a, b, bound, 1);
}

std::size_t indel_distance_bounded(const BitString& a, const BitString& b, std::size_t bound) {
  return banded_distance(a, b, bound, 2);
}

BitString mu(const BitString& s, const BitString& t) {
  if (t.empty()) {
    throw std::invalid_argument("template must be non-empty");
  }
  BitString out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t period_left = t.size();
    std::size_t q = 0;
    while (q < period_left && pos < s.size()) {
      const unsigned chunk = static_cast<unsigned>(std::min<std::size_t>({64, period_left - q, s.size() - pos}));
      out.append_raw(s.raw_bits(pos, chunk) ^ t.raw_bits(q, chunk), chunk);
      q += chunk;
      pos += chunk;
    }
  }
  return out;
}

unsigned lcs_packed(std::uint64_t a, unsigned len_a, std::uint64_t b, unsigned len_b) noexcept {
  if (len_a == 0 || len_b == 0) {
    return 0;
  }
  // Match masks over positions of a, position i (from the left) at bit i.
  std::uint64_t match[2] = {0, 0};
  for (unsigned i = 0; i < len_a; ++i) {
    const unsigned c = static_cast<unsigned>((a >> (len_a - 1 - i)) & 1U);
    match[c] |= std::uint64_t{1} << i;
  }
  const std::uint64_t mask = low_mask(len_a);
  std::uint64_t v = mask;
  for (unsigned j = 0; j < len_b; ++j) {
    const unsigned c = static_cast<unsigned>((b >> (len_b - 1 - j)) & 1U);
    const std::uint64_t u = v & match[c];
    v = ((v + u) | (v - u)) & mask;
  }
  return len_a - static_cast<unsigned>(std::popcount(v));
}

bool is_subsequence_packed(std::uint64_t y, unsigned len_y, std::uint64_t s, unsigned len_s) noexcept {
  if (len_y > len_s) {
    return false;
  }
  unsigned j = 0;
  for (unsigned i = 0; i < len_s && j < len_y; ++i) {
    if (((s >> (len_s - 1 - i)) & 1U) == ((y >> (len_y - 1 - j)) & 1U)) {
      ++j;
    }
  }
  return j == len_y;
}

// DeletionStream

DeletionStream::DeletionStream(const BitString& s, std::size_t k, std::size_t min_delta)
    : source_(s), k_(std::min(k, s.size())), delta_(min_delta) {
  if (k > s.size()) {
    throw std::invalid_argument("deletion budget exceeds string length");
  }
  if (min_delta > k_) {
    done_ = true;
  }
}

bool DeletionStream::advance_combination() {
  const std::size_t n = source_.size();
  if (!started_) {
    started_ = true;
    combo_.resize(delta_);
    for (std::size_t i = 0; i < delta_; ++i) {
      combo_[i] = i;
    }
    return true;
  }
  // Standard next-combination in lexicographic order.
  std::size_t i = combo_.size();
  while (i > 0) {
    --i;
    if (combo_[i] < n - combo_.size() + i) {
      ++combo_[i];
      for (std::size_t j = i + 1; j < combo_.size(); ++j) {
        combo_[j] = combo_[j - 1] + 1;
      }
      return true;
    }
  }
  // Exhausted this delta.
  if (delta_ >= k_) {
    return false;
  }
  ++delta_;
  started_ = false;
  return advance_combination();
}

bool DeletionStream::canonical(const BitString& y) const {
  // Leftmost embedding of y in s; its complement must equal combo_.
  const BitString& s = source_;
  std::size_t j = 0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (j < y.size() && s[i] == y[j]) {
      ++j;
    } else {
      if (c >= combo_.size() || combo_[c] != i) {
        return false;
      }
      ++c;
    }
  }
  return c == combo_.size();
}

std::optional<BitString> DeletionStream::next() {
  while (!done_) {
    if (!advance_combination()) {
      done_ = true;
      break;
    }
    BitString y = apply_deletions(source_, DeletionPattern{combo_});
    if (canonical(y)) {
      return y;
    }
  }
  return std::nullopt;
}

// IndelStream

IndelStream::IndelStream(const BitString& s, std::size_t k) : source_(s), k_(k) {
  if (k_ >= 2) {
    std::unordered_set<BitString> seen{s};
    std::vector<BitString> layer{s};
    pending_.push_back(s);
    for (std::size_t step = 0; step < k_; ++step) {
      std::vector<BitString> next_layer;
      for (const auto& cur : layer) {
        for (std::size_t p = 0; p < cur.size(); ++p) {
          BitString y = apply_edits(cur, EditScript{{{EditOp::Kind::kDelete, p, false}}});
          if (seen.insert(y).second) {
            next_layer.push_back(y);
          }
        }
        for (std::size_t p = 0; p <= cur.size(); ++p) {
          for (bool b : {false, true}) {
            BitString y = apply_edits(cur, EditScript{{{EditOp::Kind::kInsert, p, b}}});
            if (seen.insert(y).second) {
              next_layer.push_back(y);
            }
          }
        }
      }
      pending_.insert(pending_.end(), next_layer.begin(), next_layer.end());
      layer = std::move(next_layer);
    }
  }
}

std::optional<BitString> IndelStream::next() {
  if (k_ >= 2) {
    if (cursor_ < pending_.size()) {
      return pending_[cursor_++];
    }
    return std::nullopt;
  }
  const BitString& s = source_;
  // phase 0: identity; 1: delete first bit of each run; 2: insert bit 0; 3: insert bit 1.
  while (true) {
    switch (phase_) {
      case 0:
        phase_ = k_ == 0 ? 4 : 1;
        return s;
      case 1:
        while (pos_ < s.size()) {
          const std::size_t p = pos_++;
          if (p == 0 || s[p] != s[p - 1]) {
            return apply_edits(s, EditScript{{{EditOp::Kind::kDelete, p, false}}});
          }
        }
        phase_ = 2;
        pos_ = 0;
        break;
      case 2:
      case 3: {
        const bool b = phase_ == 3;
        while (pos_ <= s.size()) {
          const std::size_t p = pos_++;
          // Inserting b next to an equal bit duplicates the insertion at the run start.
          if (p == 0 || s[p - 1] != b) {
            return apply_edits(s, EditScript{{{EditOp::Kind::kInsert, p, b}}});
          }
        }
        ++phase_;
        pos_ = 0;
        break;
      }
      default:
        return std::nullopt;
    }
  }
}

DeletionPattern random_deletion_pattern(std::size_t length, std::size_t count, std::mt19937_64& rng) {
  if (count > length) {
    throw std::invalid_argument("cannot delete more bits than the string holds");
  }
  std::set<std::size_t> chosen;
  std::uniform_int_distribution<std::size_t> pick(0, length == 0 ? 0 : length - 1);
  while (chosen.size() < count) {
    chosen.insert(pick(rng));
  }
  return DeletionPattern{{chosen.begin(), chosen.end()}};
}

EditScript random_edit_script(std::size_t length, std::size_t ops, std::mt19937_64& rng) {
  EditScript script;
  std::size_t len = length;
  for (std::size_t i = 0; i < ops; ++i) {
    const bool del = len > 0 && (rng() & 1U);
    EditOp op;
    if (del) {
      op.kind = EditOp::Kind::kDelete;
      op.position = std::uniform_int_distribution<std::size_t>(0, len - 1)(rng);
      --len;
    } else {
      op.kind = EditOp::Kind::kInsert;
      op.position = std::uniform_int_distribution<std::size_t>(0, len)(rng);
      op.bit = (rng() & 1U) != 0;
      ++len;
    }
    script.ops.push_back(op);
  }
  return script;
}

BitString channel_delete(const BitString& s, std::size_t k, std::uint64_t seed) {
  if (k > s.size()) {
    throw std::invalid_argument("deletion budget exceeds string length");
  }
  std::mt19937_64 rng(seed);
  return apply_deletions(s, random_deletion_pattern(s.size(), k, rng));
}

BitString channel_indel(const BitString& s, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return apply_edits(s, random_edit_script(s.size(), k, rng));
}

}  // namespace delcode

std::size_t std::hash<delcode::BitString>::operator()(const delcode::BitString& s) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ s.size();
  for (auto w : s.words()) {
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}
