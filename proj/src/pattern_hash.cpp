#include "delcode/pattern_hash.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

#include "delcode/block_hash.hpp"
#include "delcode/errors.hpp"
#include "delcode/gf.hpp"

namespace delcode {

namespace {

std::vector<BitString> cut(const BitString& r, const std::vector<std::size_t>& points) {
  std::vector<BitString> out;
  out.reserve(points.size() + 1);
  std::size_t prev = 0;
  for (auto a : points) {
    out.push_back(r.slice(prev, a - prev));
    prev = a;
  }
  out.push_back(r.slice(prev, r.size() - prev));
  return out;
}

// Symbol q of every slot, for q = 0..c-1.
std::vector<std::vector<Symbol>> to_rows(const std::vector<BitString>& digests, const ParameterSet& p) {
  std::vector<std::vector<Symbol>> rows(p.c, std::vector<Symbol>(digests.size()));
  for (std::size_t j = 0; j < digests.size(); ++j) {
    for (std::size_t q = 0; q < p.c; ++q) {
      rows[q][j] = static_cast<Symbol>(digests[j].read_uint(q * p.w, p.w));
    }
  }
  return rows;
}

// One code per thread, rebuilt when the parameters change.
const ReedSolomon& row_code(const ParameterSet& p) {
  thread_local std::unique_ptr<ReedSolomon> code;
  thread_local std::tuple<std::size_t, unsigned, unsigned> key{0, 0, 0};
  const std::tuple<std::size_t, unsigned, unsigned> want{p.frame_slots(), p.w, p.k};
  if (!code || key != want) {
    code = std::make_unique<ReedSolomon>(galois_field(p.w), p.frame_slots(), p.k);
    key = want;
  }
  return *code;
}

}  // namespace

SegmentSplit split_by_pattern(const BitString& r, std::uint64_t pattern, const ParameterSet& params) {
  SegmentSplit s;
  s.pattern = pattern;
  s.m = params.m;
  s.split_points = find_split_points(r, pattern, params.m);
  s.segments = cut(r, s.split_points);
  for (std::size_t j = 0; j < s.segments.size(); ++j) {
    if (s.segments[j].size() > params.d) {
      throw MixednessError("segment " + std::to_string(j) + " for pattern " + std::to_string(pattern) + " has " +
                           std::to_string(s.segments[j].size()) + " bits, more than d = " + std::to_string(params.d));
    }
  }
  return s;
}

SegmentSplit split_by_pattern(const BitString& r, const BitString& pattern, const ParameterSet& params) {
  if (pattern.size() != params.m) {
    throw std::invalid_argument("pattern length differs from m");
  }
  return split_by_pattern(r, pattern.read_uint(0, params.m), params);
}

BitString segment_digest(const BitString& segment, const ParameterSet& params) {
  if (segment.size() > params.d) {
    throw MixednessError("segment of " + std::to_string(segment.size()) + " bits exceeds d = " +
                         std::to_string(params.d));
  }
  const auto layout = hash2_layout(params.d, params.B, params.k, params.variant());
  BitString out = hash2_padded_bits(segment, params.d, layout);
  out.append_uint(segment.size(), params.length_field_bits());
  out.resize(params.c * params.w);
  return out;
}

PatternHash h_pattern(const BitString& r, std::uint64_t pattern, const ParameterSet& params) {
  const auto split = split_by_pattern(r, pattern, params);
  if (split.segments.size() > params.frame_slots()) {
    throw CapacityError("pattern split has " + std::to_string(split.segments.size()) + " segments, frame holds " +
                        std::to_string(params.frame_slots()) + "; raise w");
  }
  std::vector<BitString> digests;
  digests.reserve(split.segments.size());
  for (const auto& seg : split.segments) {
    digests.push_back(segment_digest(seg, params));
  }
  const auto rows = to_rows(digests, params);
  const auto& rs = row_code(params);
  PatternHash ph;
  ph.pattern = pattern;
  ph.bits.reserve(params.pattern_hash_bits());
  for (const auto& row : rows) {
    for (auto s : rs.parity(row).symbols) {
      ph.bits.append_uint(s, params.w);
    }
  }
  return ph;
}

std::optional<BitString> g_pattern(const BitString& received, const BitString& hash_bits, std::uint64_t pattern,
                                   const ParameterSet& params) {
  const std::size_t n = params.n;
  const bool indel = params.channel == Channel::kIndel;
  if (hash_bits.size() != params.pattern_hash_bits() || received.size() + params.k < n ||
      received.size() > n + (indel ? params.k : 0)) {
    return std::nullopt;
  }
  const auto points = find_split_points(received, pattern, params.m);
  const std::size_t slots = points.size() + 1;
  if (slots > params.frame_slots()) {
    return std::nullopt;
  }
  const auto segments = cut(received, points);
  std::vector<BitString> digests;
  digests.reserve(slots);
  for (const auto& seg : segments) {
    if (seg.size() > params.d) {
      // Cannot be a true segment; the length check below forces a rebuild.
      digests.emplace_back(params.c * params.w);
    } else {
      digests.push_back(segment_digest(seg, params));
    }
  }

  // RS correction, row by row.
  auto rows = to_rows(digests, params);
  const auto& rs = row_code(params);
  const std::size_t nparity = 2 * std::size_t{params.k};
  std::vector<Symbol> parity(nparity);
  for (std::size_t q = 0; q < params.c; ++q) {
    for (std::size_t t = 0; t < nparity; ++t) {
      parity[t] = static_cast<Symbol>(hash_bits.read_uint((q * nparity + t) * params.w, params.w));
    }
    auto fixed = rs.correct(rows[q], parity);
    if (!fixed) {
      return std::nullopt;
    }
    rows[q] = std::move(*fixed);
  }

  const auto layout = hash2_layout(params.d, params.B, params.k, params.variant());
  const unsigned lbits = params.length_field_bits();
  BitString out;
  out.reserve(n);
  std::size_t total = 0;
  for (std::size_t j = 0; j < slots; ++j) {
    BitString digest;
    digest.reserve(params.c * params.w);
    for (std::size_t q = 0; q < params.c; ++q) {
      digest.append_uint(rows[q][j], params.w);
    }
    const std::size_t len = digest.read_uint(layout.total_bits, lbits);
    if (len > params.d) {
      return std::nullopt;
    }
    total += len;
    const BitString& seg = segments[j];
    if (digest == digests[j] && len == seg.size()) {
      out.append(seg);
      continue;
    }
    // Rebuild the segment from its corrected digest.
    const std::size_t zeros = params.d - len;
    if (seg.size() + params.k < len || (!indel && seg.size() > len) || seg.size() > len + params.k) {
      return std::nullopt;
    }
    BitString padded(zeros);
    padded.append(seg);
    auto h = Hash2Digest::parse(digest.slice(0, layout.total_bits), layout);
    if (!h) {
      return std::nullopt;
    }
    auto v = indel ? hash2_decode_indel(padded, *h, params.d, params.k) : hash2_decode(padded, *h, params.d);
    if (!v) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < zeros; ++i) {
      if ((*v)[i]) {
        return std::nullopt;
      }
    }
    out.append(*v, zeros, len);
  }
  if (total != n || out.size() != n) {
    return std::nullopt;
  }
  if (indel ? indel_distance_bounded(out, received, params.k) > params.k : !is_subsequence(received, out)) {
    return std::nullopt;
  }
  return out;
}

BitString H_mixed(const BitString& r, const ParameterSet& params) {
  if (r.size() != params.n) {
    throw std::invalid_argument("H_mixed: string has " + std::to_string(r.size()) + " bits, expected " +
                                std::to_string(params.n));
  }
  BitString out;
  out.reserve(params.mixed_hash_bits());
  for (std::uint64_t p = 0; p < params.pattern_count(); ++p) {
    out.append(h_pattern(r, p, params).bits);
  }
  return out;
}

std::optional<BitString> G_mixed(const BitString& received, const BitString& mixed_hash, const ParameterSet& params,
                                 MixedDecodeStats* stats) {
  const std::size_t per = params.pattern_hash_bits();
  if (mixed_hash.size() != params.mixed_hash_bits()) {
    return std::nullopt;
  }
  // Identical outputs are pooled; the vote is over distinct candidates.
  std::map<BitString, std::size_t> votes;
  std::size_t failed = 0;
  for (std::uint64_t p = 0; p < params.pattern_count(); ++p) {
    auto r = g_pattern(received, mixed_hash.slice(p * per, per), p, params);
    if (r) {
      ++votes[*r];
    } else {
      ++failed;
    }
  }
  const std::size_t half = params.pattern_count() / 2;
  std::optional<BitString> result;
  for (const auto& [cand, count] : votes) {
    if (count > half) {
      result = cand;
    }
  }
  if (!result && !votes.empty()) {
    BitString bits(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
      std::size_t ones = 0;
      std::size_t zeros = 0;
      for (const auto& [cand, count] : votes) {
        (cand[i] ? ones : zeros) += count;
      }
      if (ones > half) {
        bits.set(i, true);
      } else if (zeros <= half) {
        return std::nullopt;
      }
    }
    result = std::move(bits);
  }
  if (!result) {
    return std::nullopt;
  }
  const bool indel = params.channel == Channel::kIndel;
  if (indel ? indel_distance_bounded(*result, received, params.k) > params.k : !is_subsequence(received, *result)) {
    return std::nullopt;
  }
  if (stats != nullptr) {
    stats->failed_patterns = failed;
    auto it = votes.find(*result);
    stats->agreeing_patterns = it == votes.end() ? 0 : it->second;
  }
  return result;
}

bool is_pattern_preserving(const BitString& r, const DeletionPattern& deletions, std::uint64_t pattern, unsigned m) {
  const auto points = find_split_points(r, pattern, m);
  for (auto idx : deletions.indices) {
    for (auto a : points) {
      if (idx >= a && idx < a + m) {
        return false;
      }
    }
  }
  const auto y = apply_deletions(r, deletions);
  return find_split_points(y, pattern, m).size() == points.size();
}

}  // namespace delcode
