#include "delcode/block_hash.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "delcode/errors.hpp"

namespace delcode {

namespace {

std::uint64_t read_block(const BitString& s, std::size_t pos, unsigned len) {
  return len == 0 ? 0 : s.read_uint(pos, len);
}

void write_header(BitString& out, const Hash2Layout& layout) {
  out.append_uint(layout.block_len, 8);
  out.append_uint(layout.k, 8);
  out.append_uint(static_cast<std::uint64_t>(layout.variant), 4);
  out.push_back(layout.tail_verbatim);
}

}  // namespace

unsigned default_block_len(std::size_t source_length, unsigned k) {
  unsigned b = source_length <= 1 ? 1 : static_cast<unsigned>(std::bit_width(source_length - 1));
  b = std::min(b, kMaxDefaultBlockLen);
  return std::max(b, k + 1);
}

Hash2Layout hash2_layout(std::size_t source_length, unsigned block_len, unsigned k, TableVariant variant) {
  if (block_len <= k) {
    throw std::invalid_argument("block length " + std::to_string(block_len) + " must exceed k = " +
                                std::to_string(k));
  }
  if (block_len > kMaxTableLength) {
    throw CapacityError("block length " + std::to_string(block_len) + " exceeds color table cap " +
                        std::to_string(kMaxTableLength));
  }
  if (k > 255) {
    throw std::invalid_argument("k does not fit the 8-bit digest header");
  }
  Hash2Layout layout;
  layout.source_length = source_length;
  layout.block_len = block_len;
  layout.k = k;
  layout.variant = variant;
  layout.full_blocks = source_length / block_len;
  layout.tail_len = static_cast<unsigned>(source_length % block_len);
  layout.tail_verbatim = layout.tail_len > 0 && layout.tail_len <= k;
  layout.block_width = layout.full_blocks > 0 ? cached_table(block_len, k, variant).width : 0;
  if (layout.tail_verbatim) {
    layout.tail_width = layout.tail_len;
  } else if (layout.tail_len > 0) {
    layout.tail_width = cached_table(layout.tail_len, k, variant).width;
  }
  layout.total_bits = kHash2HeaderBits + layout.full_blocks * layout.block_width + layout.tail_width;
  return layout;
}

BitString Hash2Digest::to_bits() const {
  BitString out;
  out.reserve(layout.total_bits);
  write_header(out, layout);
  for (std::size_t i = 0; i < layout.full_blocks; ++i) {
    out.append_uint(colors[i], layout.block_width);
  }
  if (layout.tail_verbatim) {
    out.append(verbatim_tail);
  } else if (layout.tail_len > 0) {
    out.append_uint(colors.back(), layout.tail_width);
  }
  return out;
}

std::optional<Hash2Digest> Hash2Digest::parse(const BitString& bits, std::size_t source_length) {
  if (bits.size() < kHash2HeaderBits) {
    return std::nullopt;
  }
  const auto block_len = static_cast<unsigned>(bits.read_uint(0, 8));
  const auto k = static_cast<unsigned>(bits.read_uint(8, 8));
  const auto code = bits.read_uint(16, 4);
  const bool flag = bits[20];
  if (code > static_cast<std::uint64_t>(TableVariant::kIndel4k) || block_len <= k || block_len > kMaxTableLength) {
    return std::nullopt;
  }
  Hash2Digest d;
  d.layout = hash2_layout(source_length, block_len, k, static_cast<TableVariant>(code));
  if (d.layout.tail_verbatim != flag || d.layout.total_bits != bits.size()) {
    return std::nullopt;
  }
  std::size_t pos = kHash2HeaderBits;
  d.colors.reserve(d.layout.block_count());
  for (std::size_t i = 0; i < d.layout.full_blocks; ++i) {
    d.colors.push_back(static_cast<std::uint32_t>(bits.read_uint(pos, d.layout.block_width)));
    pos += d.layout.block_width;
  }
  if (d.layout.tail_verbatim) {
    d.verbatim_tail = bits.slice(pos, d.layout.tail_len);
  } else if (d.layout.tail_len > 0) {
    d.colors.push_back(static_cast<std::uint32_t>(bits.read_uint(pos, d.layout.tail_width)));
  }
  return d;
}

std::optional<Hash2Digest> Hash2Digest::parse(const BitString& bits, const Hash2Layout& expected) {
  if (bits.size() != expected.total_bits || bits.read_uint(0, 8) != expected.block_len ||
      bits.read_uint(8, 8) != expected.k || bits.read_uint(16, 4) != static_cast<std::uint64_t>(expected.variant) ||
      bits[20] != expected.tail_verbatim) {
    return std::nullopt;
  }
  return parse(bits, expected.source_length);
}

Hash2Digest hash2(const BitString& s, unsigned block_len, unsigned k, TableVariant variant) {
  Hash2Digest d;
  d.layout = hash2_layout(s.size(), block_len, k, variant);
  const auto& L = d.layout;
  d.colors.reserve(L.block_count());
  if (L.full_blocks > 0) {
    const auto& table = cached_table(block_len, k, variant);
    for (std::size_t i = 0; i < L.full_blocks; ++i) {
      d.colors.push_back(table.color_of(s.read_uint(i * block_len, block_len)));
    }
  }
  const std::size_t tail_pos = L.full_blocks * block_len;
  if (L.tail_verbatim) {
    d.verbatim_tail = s.slice(tail_pos, L.tail_len);
  } else if (L.tail_len > 0) {
    d.colors.push_back(cached_table(L.tail_len, k, variant).color_of(s.read_uint(tail_pos, L.tail_len)));
  }
  return d;
}

BitString hash2_padded_bits(const BitString& w, std::size_t padded_length, const Hash2Layout& layout) {
  if (w.size() > padded_length || layout.source_length != padded_length) {
    throw std::invalid_argument("hash2_padded_bits: inconsistent lengths");
  }
  const std::size_t zeros = padded_length - w.size();
  // Value of source bits [pos, pos + len) of 0^zeros w.
  auto value = [&](std::size_t pos, unsigned len) -> std::uint64_t {
    const std::size_t end = pos + len;
    if (end <= zeros) {
      return 0;
    }
    if (pos >= zeros) {
      return read_block(w, pos - zeros, len);
    }
    return read_block(w, 0, static_cast<unsigned>(end - zeros));
  };
  BitString out;
  out.reserve(layout.total_bits);
  write_header(out, layout);
  const unsigned B = layout.block_len;
  // Blocks entirely inside the zero prefix have the color of 0^B, which is 0.
  const std::size_t zero_blocks = std::min(layout.full_blocks, zeros / B);
  out.append_zeros(zero_blocks * layout.block_width);
  if (zero_blocks < layout.full_blocks) {
    const auto& table = cached_table(B, layout.k, layout.variant);
    for (std::size_t i = zero_blocks; i < layout.full_blocks; ++i) {
      out.append_uint(table.color_of(value(i * B, B)), layout.block_width);
    }
  }
  const std::size_t tail_pos = layout.full_blocks * B;
  if (layout.tail_verbatim) {
    out.append_uint(value(tail_pos, layout.tail_len), layout.tail_len);
  } else if (layout.tail_len > 0) {
    const auto& table = cached_table(layout.tail_len, layout.k, layout.variant);
    out.append_uint(table.color_of(value(tail_pos, layout.tail_len)), layout.tail_width);
  }
  return out;
}

std::optional<BitString> hash2_decode(const BitString& y, const Hash2Digest& digest, std::size_t source_length) {
  const auto& L = digest.layout;
  if (L.source_length != source_length || y.size() > source_length || y.size() + L.k < source_length ||
      digest.colors.size() != L.full_blocks + (L.tail_len > 0 && !L.tail_verbatim ? 1 : 0)) {
    return std::nullopt;
  }
  const std::size_t delta = source_length - y.size();
  BitString out;
  out.reserve(source_length);

  // Block [j, j + len) of the source contains y[j, j + len - delta): every
  // survivor at y-position p came from a source position in [p, p + delta].
  auto decode_block = [&](std::size_t j, unsigned len, const ColorTable& table,
                          std::uint32_t color) -> std::optional<std::uint64_t> {
    if (color >= table.color_count) {
      return std::nullopt;
    }
    // Every length-len substring of y covering the window is a supersequence
    // of it, and supersequences of the window are pairwise confusable.
    for (std::size_t s = 0; s <= delta; ++s) {
      if (j >= s && j - s + len <= y.size()) {
        const std::uint64_t cand = y.read_uint(j - s, len);
        if (table.colors[cand] == color) {
          return cand;
        }
      }
    }
    if (delta == 0) {
      return std::nullopt;
    }
    const auto wlen = static_cast<unsigned>(len - delta);
    return decode_supersequence_packed(read_block(y, j, wlen), wlen, color, table);
  };

  if (L.full_blocks > 0) {
    const auto& table = cached_table(L.block_len, L.k, L.variant);
    for (std::size_t i = 0; i < L.full_blocks; ++i) {
      auto block = decode_block(i * L.block_len, L.block_len, table, digest.colors[i]);
      if (!block) {
        return std::nullopt;
      }
      out.append_uint(*block, L.block_len);
    }
  }
  const std::size_t tail_pos = L.full_blocks * L.block_len;
  if (L.tail_verbatim) {
    out.append(digest.verbatim_tail);
  } else if (L.tail_len > 0) {
    const auto& table = cached_table(L.tail_len, L.k, L.variant);
    auto block = decode_block(tail_pos, L.tail_len, table, digest.colors.back());
    if (!block) {
      return std::nullopt;
    }
    out.append_uint(*block, L.tail_len);
  }
  return out;
}

std::optional<BitString> hash2_decode_indel(const BitString& y, const Hash2Digest& digest, std::size_t source_length,
                                            unsigned k) {
  const auto& L = digest.layout;
  if (L.source_length != source_length || L.k != k || L.variant == TableVariant::kDeletion ||
      y.size() + k < source_length || y.size() > source_length + k ||
      digest.colors.size() != L.full_blocks + (L.tail_len > 0 && !L.tail_verbatim ? 1 : 0)) {
    return std::nullopt;
  }
  BitString out;
  out.reserve(source_length);
  const auto ysize = static_cast<std::ptrdiff_t>(y.size());
  const auto ik = static_cast<std::ptrdiff_t>(k);

  // A y-bit at position p is either inserted or came from a source position
  // within k of p, so y[j + k, j + len - k) holds only bits of the block
  // plus at most k insertions.
  auto decode_block = [&](std::size_t j, unsigned len, const ColorTable& table,
                          std::uint32_t color) -> std::optional<std::uint64_t> {
    if (color >= table.color_count) {
      return std::nullopt;
    }
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const auto slen = static_cast<std::ptrdiff_t>(len);
    // Shifted copies of the block all contain the window as a substring.
    for (std::ptrdiff_t step = 0; step <= 2 * ik; ++step) {
      const std::ptrdiff_t s = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
      const std::ptrdiff_t start = sj + s;
      if (start >= 0 && start + slen <= ysize) {
        const std::uint64_t cand = y.read_uint(static_cast<std::size_t>(start), len);
        if (table.colors[cand] == color) {
          return cand;
        }
      }
    }
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(sj + ik, 0);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(sj + slen - ik, ysize);
    const auto wlen = static_cast<unsigned>(std::max<std::ptrdiff_t>(hi - lo, 0));
    const std::uint64_t window = wlen == 0 ? 0 : y.read_uint(static_cast<std::size_t>(lo), wlen);
    return decode_window_packed(window, wlen, k, color, table);
  };

  if (L.full_blocks > 0) {
    const auto& table = cached_table(L.block_len, L.k, L.variant);
    for (std::size_t i = 0; i < L.full_blocks; ++i) {
      auto block = decode_block(i * L.block_len, L.block_len, table, digest.colors[i]);
      if (!block) {
        return std::nullopt;
      }
      out.append_uint(*block, L.block_len);
    }
  }
  const std::size_t tail_pos = L.full_blocks * L.block_len;
  if (L.tail_verbatim) {
    out.append(digest.verbatim_tail);
  } else if (L.tail_len > 0) {
    const auto& table = cached_table(L.tail_len, L.k, L.variant);
    auto block = decode_block(tail_pos, L.tail_len, table, digest.colors.back());
    if (!block) {
      return std::nullopt;
    }
    out.append_uint(*block, L.tail_len);
  }
  return out;
}

}  // namespace delcode
