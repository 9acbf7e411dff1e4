#include "delcode/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "delcode/errors.hpp"
#include "delcode/pattern_hash.hpp"

namespace delcode {

BitString rep_encode(const BitString& x, unsigned f) {
  if (f == 0) {
    throw std::invalid_argument("repetition factor must be at least 1");
  }
  BitString out;
  out.reserve(x.size() * f);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (unsigned j = 0; j < f; ++j) {
      out.push_back(x[i]);
    }
  }
  return out;
}

std::optional<BitString> rep_decode_deletions(const BitString& y, unsigned f, std::size_t original_bits) {
  if (f == 0) {
    return std::nullopt;
  }
  const std::size_t full = f * original_bits;
  if (y.size() > full || y.size() + (f - 1) < full) {
    return std::nullopt;
  }
  BitString out(original_bits);
  for (std::size_t i = 0; i < original_bits; ++i) {
    out.set(i, y[f * i]);
  }
  return out;
}

std::optional<BitString> rep_decode_indel(const BitString& y, unsigned f, std::size_t original_bits, unsigned k) {
  if (f == 0) {
    return std::nullopt;
  }
  const std::size_t full = f * original_bits;
  if (y.size() > full + k || y.size() + k < full) {
    return std::nullopt;
  }
  BitString out(original_bits);
  for (std::size_t i = 0; i < original_bits; ++i) {
    const std::size_t lo = f * i;
    const std::size_t hi = std::min(lo + f, y.size());
    if (lo >= hi) {
      return std::nullopt;
    }
    std::size_t ones = 0;
    for (std::size_t p = lo; p < hi; ++p) {
      ones += y[p] ? 1 : 0;
    }
    const std::size_t zeros = (hi - lo) - ones;
    if (ones == zeros) {
      return std::nullopt;
    }
    out.set(i, ones > zeros);
  }
  return out;
}

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::kR:
      return "r";
    case Segment::kT:
      return "t";
    case Segment::kRepHashT:
      return "rep_hash_t";
    case Segment::kMixed:
      return "h_mixed";
    case Segment::kRepHashMixed:
      return "rep_hash_mixed";
  }
  return "unknown";
}

CodewordGeometry codeword_geometry(const ParameterSet& params) {
  CodewordGeometry g;
  g.rep_factor = params.rep_factor();
  const auto variant = params.variant();
  g.hash_t = hash2_layout(params.L, default_block_len(params.L, params.k), params.k, variant);
  const std::size_t mixed = params.mixed_hash_bits();
  g.hash_mixed = hash2_layout(mixed, default_block_len(mixed, params.k), params.k, variant);
  const std::array<std::size_t, kSegmentCount> lengths{params.n, params.L, g.rep_factor * g.hash_t.total_bits, mixed,
                                                       g.rep_factor * g.hash_mixed.total_bits};
  std::size_t offset = 0;
  for (std::size_t i = 0; i < kSegmentCount; ++i) {
    g.spans[i] = Span{offset, lengths[i]};
    offset += lengths[i];
  }
  g.total = offset;
  return g;
}

namespace {

Codeword assemble(const BitString& s, const ParameterSet& params) {
  if (s.size() != params.n) {
    throw std::invalid_argument("message has " + std::to_string(s.size()) + " bits, parameters expect " +
                                std::to_string(params.n));
  }
  Codeword cw;
  cw.geometry = codeword_geometry(params);
  const auto& g = cw.geometry;
  const auto t = template_search(s, params).t;
  const auto r = mu(s, t);
  const auto mixed = H_mixed(r, params);
  const auto variant = params.variant();

  cw.bits.reserve(g.total);
  cw.bits.append(r);
  cw.bits.append(t);
  cw.bits.append(rep_encode(hash2(t, g.hash_t.block_len, params.k, variant).to_bits(), g.rep_factor));
  cw.bits.append(mixed);
  cw.bits.append(rep_encode(hash2(mixed, g.hash_mixed.block_len, params.k, variant).to_bits(), g.rep_factor));
  if (cw.bits.size() != g.total) {
    throw InternalError("codeword length " + std::to_string(cw.bits.size()) + " differs from geometry " +
                        std::to_string(g.total));
  }
  return cw;
}

// Positional window for the deletion channel: y[a, b - delta) holds only
// bits of the segment [a, b).
BitString deletion_window(const BitString& y, const Span& sp, std::size_t delta) {
  return y.slice(sp.offset, sp.length - delta);
}

// Nominal slice for the insertion/deletion channel, clamped to y.
BitString nominal_window(const BitString& y, const Span& sp) {
  if (sp.offset >= y.size()) {
    return BitString();
  }
  return y.slice(sp.offset, std::min(sp.length, y.size() - sp.offset));
}

std::optional<BitString> decode_deletions_impl(const BitString& y, const ParameterSet& params) {
  const auto g = codeword_geometry(params);
  if (y.size() > g.total || y.size() + params.k < g.total) {
    return std::nullopt;
  }
  const std::size_t delta = g.total - y.size();

  auto side_hash = [&](Segment rep, Segment body, const Hash2Layout& layout) -> std::optional<BitString> {
    const auto bits = rep_decode_deletions(deletion_window(y, g.span(rep), delta), g.rep_factor, layout.total_bits);
    if (!bits) {
      return std::nullopt;
    }
    const auto digest = Hash2Digest::parse(*bits, layout);
    if (!digest) {
      return std::nullopt;
    }
    return hash2_decode(deletion_window(y, g.span(body), delta), *digest, layout.source_length);
  };

  const auto t = side_hash(Segment::kRepHashT, Segment::kT, g.hash_t);
  if (!t) {
    return std::nullopt;
  }
  const auto mixed = side_hash(Segment::kRepHashMixed, Segment::kMixed, g.hash_mixed);
  if (!mixed) {
    return std::nullopt;
  }
  const auto r = G_mixed(deletion_window(y, g.span(Segment::kR), delta), *mixed, params);
  if (!r) {
    return std::nullopt;
  }
  auto s = mu(*r, *t);
  if (!is_subsequence(y, assemble(s, params).bits)) {
    return std::nullopt;
  }
  return s;
}

std::optional<BitString> decode_indel_impl(const BitString& y, const ParameterSet& params) {
  const auto g = codeword_geometry(params);
  const std::size_t k = params.k;
  if (y.size() > g.total + k || y.size() + k < g.total) {
    return std::nullopt;
  }

  auto side_hash = [&](Segment rep, Segment body, const Hash2Layout& layout) -> std::optional<BitString> {
    const auto bits = rep_decode_indel(nominal_window(y, g.span(rep)), g.rep_factor, layout.total_bits, params.k);
    if (!bits) {
      return std::nullopt;
    }
    const auto digest = Hash2Digest::parse(*bits, layout);
    if (!digest) {
      return std::nullopt;
    }
    return hash2_decode_indel(nominal_window(y, g.span(body)), *digest, layout.source_length, params.k);
  };

  const auto t = side_hash(Segment::kRepHashT, Segment::kT, g.hash_t);
  if (!t) {
    return std::nullopt;
  }
  const auto mixed = side_hash(Segment::kRepHashMixed, Segment::kMixed, g.hash_mixed);
  if (!mixed) {
    return std::nullopt;
  }
  // The image of r is y[0, n + net insertions inside r); try the net count
  // nearest zero first and keep the first candidate whose re-encoding is
  // within budget.
  std::vector<BitString> tried;
  for (std::size_t step = 0; step <= 2 * k; ++step) {
    const auto shift = static_cast<std::ptrdiff_t>((step + 1) / 2) * (step % 2 == 1 ? -1 : 1);
    const auto len = static_cast<std::ptrdiff_t>(params.n) + shift;
    if (len < 0 || static_cast<std::size_t>(len) > y.size()) {
      continue;
    }
    const auto r = G_mixed(y.slice(0, static_cast<std::size_t>(len)), *mixed, params);
    if (!r || std::find(tried.begin(), tried.end(), *r) != tried.end()) {
      continue;
    }
    tried.push_back(*r);
    auto s = mu(*r, *t);
    if (indel_distance_bounded(assemble(s, params).bits, y, k) <= k) {
      return s;
    }
  }
  return std::nullopt;
}

unsigned ceil_log2(long double x) { return static_cast<unsigned>(std::ceil(std::log2(x))); }

// Upper bound on the color width of a length-len table.
std::size_t color_width_bound(std::size_t len, unsigned k) {
  // 2 len^(2k) + 1 colors, and never more than 2^len.
  long double colors = 2.0L;
  for (unsigned i = 0; i < 2 * k; ++i) {
    colors *= static_cast<long double>(len);
  }
  colors += 1.0L;
  return std::min<std::size_t>(len, ceil_log2(colors));
}

std::size_t hash2_bits_bound(std::size_t len, unsigned k) {
  const unsigned B = default_block_len(len, k);
  const std::size_t tail = len % B;
  std::size_t bits = kHash2HeaderBits + (len / B) * color_width_bound(B, k);
  if (tail > 0) {
    bits += tail <= k ? tail : color_width_bound(tail, k);
  }
  return bits;
}

}  // namespace

Codeword encode(const BitString& s, const ParameterSet& params) { return assemble(s, params); }

Codeword encode_indel(const BitString& s, const ParameterSet& params) {
  if (params.channel != Channel::kIndel) {
    throw std::invalid_argument("encode_indel needs indel-channel parameters");
  }
  return assemble(s, params);
}

std::optional<BitString> decode(const BitString& y, const ParameterSet& params) {
  if (params.channel == Channel::kIndel) {
    return decode_indel(y, params);
  }
  try {
    return decode_deletions_impl(y, params);
  } catch (const MixednessError&) {
    return std::nullopt;
  }
}

std::optional<BitString> decode_indel(const BitString& y, const ParameterSet& params) {
  if (params.channel != Channel::kIndel) {
    throw std::invalid_argument("decode_indel needs indel-channel parameters");
  }
  try {
    return decode_indel_impl(y, params);
  } catch (const MixednessError&) {
    return std::nullopt;
  }
}

AnalyticRedundancy analytic_redundancy(std::size_t n, unsigned k, Channel channel) {
  if (k < 2) {
    throw ParameterError("paper profile requires k >= 2");
  }
  if (n < 4) {
    throw ParameterError("n >= 4 violated");
  }
  AnalyticRedundancy a;
  a.n = n;
  a.k = k;
  const long double lk = std::log2(static_cast<long double>(k));
  const long double ln = std::log2(static_cast<long double>(n));
  a.m = paper_pattern_length(k);
  a.d = static_cast<std::size_t>(std::floor(20000.0L * k * lk * lk * ln));
  a.L = static_cast<std::size_t>(std::ceil(a.m * std::ldexp(1.0L, static_cast<int>(a.m)) * (ln + a.m + 1.0L)));
  const std::size_t need = n - a.m + 2 + 2 * std::size_t{k};
  a.w = kMinSymbolWidth;
  while (a.w < 64 && (std::uint64_t{1} << a.w) - 1 < need) {
    ++a.w;
  }
  const std::size_t digest = hash2_bits_bound(a.d, k) + static_cast<std::size_t>(std::bit_width(a.d));
  a.c = (digest + a.w - 1) / a.w;
  const std::size_t f = channel == Channel::kDeletion ? k + 1 : 3 * k + 1;
  const std::size_t mixed = (std::size_t{1} << a.m) * 2 * k * a.c * a.w;
  a.lengths = {n, a.L, f * hash2_bits_bound(a.L, k), mixed, f * hash2_bits_bound(mixed, k)};
  a.redundancy = 0;
  for (std::size_t i = 1; i < kSegmentCount; ++i) {
    a.redundancy += a.lengths[i];
  }
  a.ratio = static_cast<double>(a.redundancy / (static_cast<long double>(k) * k * lk * ln));
  return a;
}

}  // namespace delcode
