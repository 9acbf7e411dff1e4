#include "delcode/oracle.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "delcode/errors.hpp"

namespace delcode {

std::string to_string(TableVariant v) {
  switch (v) {
    case TableVariant::kDeletion:
      return "deletion";
    case TableVariant::kIndel3k:
      return "indel-3k";
    case TableVariant::kIndel4k:
      return "indel-4k";
    case TableVariant::kCustom:
      return "custom";
  }
  return "unknown";
}

TableVariant table_variant_from_string(const std::string& name) {
  if (name == "deletion") return TableVariant::kDeletion;
  if (name == "indel-3k") return TableVariant::kIndel3k;
  if (name == "indel-4k" || name == "indel") return TableVariant::kIndel4k;
  if (name == "custom") return TableVariant::kCustom;
  throw std::invalid_argument("unknown table variant '" + name + "'");
}

unsigned table_threshold(TableVariant v, unsigned k, unsigned custom_threshold) {
  switch (v) {
    case TableVariant::kDeletion:
      return k;
    case TableVariant::kIndel3k:
      return 3 * k;
    case TableVariant::kIndel4k:
      return 4 * k;
    case TableVariant::kCustom:
      return custom_threshold;
  }
  return k;
}

bool ColorTable::confusable(std::uint64_t a, std::uint64_t b) const noexcept {
  if (a == b) {
    return false;
  }
  if (threshold >= length) {
    return true;
  }
  return lcs_packed(a, length, b, length) + threshold >= length;
}

ColorTable build_color_table(unsigned length, unsigned k, TableVariant variant, unsigned custom_threshold) {
  if (length > kMaxTableLength) {
    throw CapacityError("color table length " + std::to_string(length) + " exceeds cap " +
                        std::to_string(kMaxTableLength));
  }
  ColorTable table;
  table.length = length;
  table.k = k;
  table.variant = variant;
  table.threshold = table_threshold(variant, k, custom_threshold);
  const std::uint64_t count = std::uint64_t{1} << length;
  table.colors.assign(count, 0);

  // stamp[c] == x + 1 marks color c as used by a neighbour of x.
  std::vector<std::uint64_t> stamp;
  std::uint32_t colors_used = 0;
  for (std::uint64_t x = 0; x < count; ++x) {
    for (std::uint64_t y = 0; y < x; ++y) {
      if (table.confusable(x, y)) {
        stamp[table.colors[y]] = x + 1;
      }
    }
    std::uint32_t c = 0;
    while (c < colors_used && stamp[c] == x + 1) {
      ++c;
    }
    table.colors[x] = c;
    if (c == colors_used) {
      ++colors_used;
      stamp.push_back(0);
    }
  }
  table.color_count = colors_used;
  table.width = colors_used <= 1 ? 0 : static_cast<unsigned>(std::bit_width(colors_used - 1));
  return table;
}

namespace {

std::filesystem::path table_file_name(unsigned length, unsigned k, TableVariant variant) {
  return "ct_L" + std::to_string(length) + "_k" + std::to_string(k) + "_" + to_string(variant) + ".bin";
}

}  // namespace

const ColorTable& cached_table(unsigned length, unsigned k, TableVariant variant) {
  static std::mutex mutex;
  static std::map<std::tuple<unsigned, unsigned, TableVariant>, std::unique_ptr<ColorTable>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{length, k, variant}];
  if (slot) {
    return *slot;
  }
  const char* dir = std::getenv("DELCODE_TABLE_DIR");
  if (dir != nullptr && *dir != '\0') {
    const auto path = std::filesystem::path(dir) / table_file_name(length, k, variant);
    if (std::filesystem::exists(path)) {
      try {
        auto loaded = std::make_unique<ColorTable>(read_table(path));
        if (loaded->length == length && loaded->k == k && loaded->variant == variant) {
          slot = std::move(loaded);
          return *slot;
        }
      } catch (const std::exception&) {
        // fall through to a fresh build
      }
    }
    slot = std::make_unique<ColorTable>(build_color_table(length, k, variant));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    try {
      write_table(path, *slot);
    } catch (const std::exception&) {
      // cache directory is best effort
    }
    return *slot;
  }
  slot = std::make_unique<ColorTable>(build_color_table(length, k, variant));
  return *slot;
}

Hash1Digest hash1(const BitString& s, const ColorTable& table) {
  if (s.size() != table.length) {
    throw std::invalid_argument("hash1: string length " + std::to_string(s.size()) + " does not match table length " +
                                std::to_string(table.length));
  }
  return {table.color_of(s.read_uint(0, table.length)), table.width};
}

std::optional<std::uint64_t> decode_supersequence_packed(std::uint64_t y, unsigned len_y, std::uint32_t color,
                                                         const ColorTable& table) {
  const unsigned n = table.length;
  if (len_y > n) {
    return std::nullopt;
  }
  std::optional<std::uint64_t> found;
  int matches = 0;
  // Each supersequence is generated once, through its leftmost embedding of y.
  auto gen = [&](auto&& self, unsigned i, std::uint64_t out, unsigned out_len, unsigned extra) -> void {
    if (matches > 1) {
      return;
    }
    if (out_len == n) {
      if (table.colors[out] == color) {
        ++matches;
        found = out;
      }
      return;
    }
    if (i < len_y) {
      const std::uint64_t bit = (y >> (len_y - 1 - i)) & 1U;
      self(self, i + 1, (out << 1) | bit, out_len + 1, extra);
      if (extra > 0) {
        self(self, i, (out << 1) | (bit ^ 1U), out_len + 1, extra - 1);
      }
    } else {
      self(self, i, out << 1, out_len + 1, extra - 1);
      self(self, i, (out << 1) | 1U, out_len + 1, extra - 1);
    }
  };
  gen(gen, 0, 0, 0, n - len_y);
  if (matches != 1) {
    return std::nullopt;
  }
  return found;
}

std::optional<std::uint64_t> decode_window_packed(std::uint64_t window, unsigned len_w, unsigned k,
                                                  std::uint32_t color, const ColorTable& table) {
  const unsigned n = table.length;
  const std::uint64_t count = std::uint64_t{1} << n;
  const unsigned need = len_w > k ? len_w - k : 0;
  std::optional<std::uint64_t> found;
  for (std::uint64_t c = 0; c < count; ++c) {
    if (table.colors[c] != color) {
      continue;
    }
    if (lcs_packed(c, n, window, len_w) >= need) {
      if (found) {
        return std::nullopt;
      }
      found = c;
    }
  }
  return found;
}

std::optional<BitString> hash1_decode(const BitString& y, const Hash1Digest& digest, unsigned length,
                                      const ColorTable& table) {
  if (length != table.length || y.size() > 64) {
    return std::nullopt;
  }
  const auto len_y = static_cast<unsigned>(y.size());
  const std::uint64_t packed = y.read_uint(0, len_y);
  if (table.variant == TableVariant::kDeletion) {
    if (len_y > length || len_y + table.k < length) {
      return std::nullopt;
    }
    auto hit = decode_supersequence_packed(packed, len_y, digest.color, table);
    if (!hit) {
      return std::nullopt;
    }
    return BitString::from_uint(*hit, length);
  }
  // Indel tables: candidates within k edits of y.
  if (len_y + table.k < length || len_y > length + table.k) {
    return std::nullopt;
  }
  const std::uint64_t count = std::uint64_t{1} << length;
  std::optional<BitString> found;
  for (std::uint64_t c = 0; c < count; ++c) {
    if (table.colors[c] != digest.color) {
      continue;
    }
    BitString cand = BitString::from_uint(c, length);
    if (indel_distance_bounded(cand, y, table.k) <= table.k) {
      if (found) {
        return std::nullopt;
      }
      found = std::move(cand);
    }
  }
  return found;
}

void write_table(const std::filesystem::path& path, const ColorTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  const unsigned bytes = table.width <= 8 ? 1 : (table.width + 7) / 8;
  out << "DELCODE-CT v1\n"
      << "length=" << table.length << "\n"
      << "k=" << table.k << "\n"
      << "variant=" << to_string(table.variant) << "\n"
      << "threshold=" << table.threshold << "\n"
      << "color_count=" << table.color_count << "\n"
      << "width=" << table.width << "\n"
      << "bytes_per_color=" << bytes << "\n"
      << "\n";
  for (auto c : table.colors) {
    for (unsigned b = bytes; b-- > 0;) {
      out.put(static_cast<char>((c >> (8 * b)) & 0xFF));
    }
  }
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

ColorTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::string line;
  std::getline(in, line);
  if (line != "DELCODE-CT v1") {
    throw std::runtime_error(path.string() + ": not a DELCODE-CT v1 file");
  }
  std::map<std::string, std::string> kv;
  while (std::getline(in, line) && !line.empty()) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path.string() + ": malformed header line '" + line + "'");
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto num = [&](const std::string& key) -> unsigned long {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::runtime_error(path.string() + ": missing header key " + key);
    }
    return std::stoul(it->second);
  };
  ColorTable table;
  table.length = static_cast<unsigned>(num("length"));
  table.k = static_cast<unsigned>(num("k"));
  table.variant = table_variant_from_string(kv.at("variant"));
  table.threshold = static_cast<unsigned>(num("threshold"));
  table.color_count = static_cast<std::uint32_t>(num("color_count"));
  table.width = static_cast<unsigned>(num("width"));
  const auto bytes = static_cast<unsigned>(num("bytes_per_color"));
  if (table.length > kMaxTableLength || bytes == 0 || bytes > 4) {
    throw std::runtime_error(path.string() + ": header values out of range");
  }
  table.colors.resize(std::size_t{1} << table.length);
  for (auto& c : table.colors) {
    std::uint32_t v = 0;
    for (unsigned b = 0; b < bytes; ++b) {
      const int ch = in.get();
      if (ch == EOF) {
        throw std::runtime_error(path.string() + ": truncated color block");
      }
      v = (v << 8) | static_cast<std::uint32_t>(ch);
    }
    if (v >= table.color_count) {
      throw std::runtime_error(path.string() + ": color id out of range");
    }
    c = v;
  }
  return table;
}

bool verify_deletion_code(const std::vector<BitString>& codebook, unsigned k) {
  if (codebook.empty()) {
    return true;
  }
  const std::size_t n = codebook.front().size();
  for (const auto& c : codebook) {
    if (c.size() != n) {
      throw std::invalid_argument("verify_deletion_code: codewords have unequal lengths");
    }
  }
  const bool packed = n <= 64;
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    for (std::size_t j = i + 1; j < codebook.size(); ++j) {
      std::size_t lcs = 0;
      if (packed) {
        const auto len = static_cast<unsigned>(n);
        lcs = lcs_packed(codebook[i].read_uint(0, len), len, codebook[j].read_uint(0, len), len);
      } else {
        lcs = lcs_length(codebook[i], codebook[j]);
      }
      if (lcs + k >= n) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace delcode
