#include "delcode/mixer.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "delcode/block_hash.hpp"
#include "delcode/errors.hpp"
#include "delcode/gf.hpp"

namespace delcode {

namespace {

constexpr unsigned kMaxPatternLength = 20;

// Fills B, w and c from n, k, m, d and the channel.
void fill_derived(ParameterSet& p) {
  p.B = default_block_len(p.d, p.k);
  const std::size_t need = p.frame_slots() + 2 * std::size_t{p.k};
  p.w = kMinSymbolWidth;
  while (p.w <= kMaxFieldWidth && need > (std::size_t{1} << p.w) - 1) {
    ++p.w;
  }
  if (p.w > kMaxFieldWidth) {
    throw CapacityError("RS frame of " + std::to_string(need) + " symbols needs a field wider than 2^" +
                        std::to_string(kMaxFieldWidth));
  }
  const std::size_t bits = segment_digest_bits(p.d, p.B, p.k, p.variant());
  p.c = (bits + p.w - 1) / p.w;
}

}  // namespace

std::string to_string(Profile p) {
  switch (p) {
    case Profile::kPaper:
      return "paper";
    case Profile::kDesk:
      return "desk";
    case Profile::kCustom:
      return "custom";
  }
  return "unknown";
}

std::string to_string(Channel c) { return c == Channel::kDeletion ? "deletion" : "indel"; }

Profile profile_from_string(const std::string& name) {
  if (name == "paper") return Profile::kPaper;
  if (name == "desk") return Profile::kDesk;
  if (name == "custom") return Profile::kCustom;
  throw std::invalid_argument("unknown profile '" + name + "' (expected paper, desk or custom)");
}

Channel channel_from_string(const std::string& name) {
  if (name == "deletion") return Channel::kDeletion;
  if (name == "indel") return Channel::kIndel;
  throw std::invalid_argument("unknown channel '" + name + "' (expected deletion or indel)");
}

unsigned ParameterSet::length_field_bits() const noexcept {
  return static_cast<unsigned>(std::bit_width(d));
}

unsigned min_pattern_length(unsigned k) {
  for (unsigned m = 1; m < 63; ++m) {
    if ((std::uint64_t{1} << m) > 2ULL * k * (2ULL * m - 1)) {
      return m;
    }
  }
  throw ParameterError("no pattern length satisfies 2^m > 2k(2m-1)");
}

unsigned paper_pattern_length(unsigned k) {
  const double v = std::log2(static_cast<double>(k)) + std::log2(std::log2(static_cast<double>(k) + 1.0)) + 5.0;
  return static_cast<unsigned>(std::ceil(v - 1e-12));
}

bool template_exists(std::size_t n, std::size_t L, unsigned m) {
  if (L == 0 || m == 0) {
    return false;
  }
  const std::size_t blocks = n / L;
  if (blocks == 0) {
    return true;
  }
  const double chunks = static_cast<double>(L / m);
  const double log_value = chunks * std::log1p(-std::ldexp(1.0, -static_cast<int>(m))) +
                           std::log(static_cast<double>(blocks)) + m * std::log(2.0);
  return log_value < 0.0;
}

std::size_t segment_digest_bits(std::size_t d, unsigned B, unsigned k, TableVariant variant) {
  return hash2_layout(d, B, k, variant).total_bits + static_cast<unsigned>(std::bit_width(d));
}

ParameterSet derive_params(std::size_t n, unsigned k, Profile profile, Channel channel) {
  if (k == 0) {
    throw ParameterError("k >= 1 violated");
  }
  ParameterSet p;
  p.n = n;
  p.k = k;
  p.profile = profile;
  p.channel = channel;
  if (profile == Profile::kPaper) {
    if (k < 2) {
      throw ParameterError("paper profile requires k >= 2");
    }
    const double lk = std::log2(static_cast<double>(k));
    const double ln = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    p.m = paper_pattern_length(k);
    p.d = static_cast<std::size_t>(std::floor(20000.0 * k * lk * lk * ln));
    p.L = static_cast<std::size_t>(
        std::ceil(p.m * std::ldexp(1.0, static_cast<int>(p.m)) * (ln + p.m + 1.0)));
  } else if (profile == Profile::kDesk) {
    p.m = min_pattern_length(k);
    std::size_t L = 2 * std::size_t{p.m};
    while (!template_exists(n, L, p.m)) {
      L += p.m;
      if (2 * L > n) {
        break;
      }
    }
    p.L = L;
    p.d = 2 * L;
  } else {
    throw ParameterError("custom profile needs explicit m, d and L; use custom_params");
  }
  if (p.d > n) {
    throw ParameterError("d <= n violated: d = " + std::to_string(p.d) + ", n = " + std::to_string(n));
  }
  fill_derived(p);
  validate(p);
  return p;
}

ParameterSet custom_params(std::size_t n, unsigned k, unsigned m, std::size_t d, std::size_t L, Channel channel) {
  ParameterSet p;
  p.n = n;
  p.k = k;
  p.m = m;
  p.d = d;
  p.L = L;
  p.profile = Profile::kCustom;
  p.channel = channel;
  if (k == 0) {
    throw ParameterError("k >= 1 violated");
  }
  if (d > n) {
    throw ParameterError("d <= n violated: d = " + std::to_string(d) + ", n = " + std::to_string(n));
  }
  if (m == 0 || m > kMaxPatternLength || m >= n) {
    throw ParameterError("1 <= m <= " + std::to_string(kMaxPatternLength) + " and m < n violated");
  }
  fill_derived(p);
  validate(p);
  return p;
}

void validate(const ParameterSet& p) {
  auto fail = [](const std::string& what) { throw ParameterError(what + " violated"); };
  if (p.k == 0) fail("k >= 1");
  if (p.m == 0 || p.m > kMaxPatternLength) fail("1 <= m <= " + std::to_string(kMaxPatternLength));
  if (!((std::uint64_t{1} << p.m) > 2ULL * p.k * (2ULL * p.m - 1))) fail("2^m > 2k(2m-1)");
  if (!(p.m < p.L)) fail("m < L");
  if (p.d < 2 * p.L) fail("d >= 2L");
  if (p.d > p.n) fail("d <= n");
  if (!template_exists(p.n, p.L, p.m)) fail("(1-2^-m)^floor(L/m) * floor(n/L) * 2^m < 1");
  if (!(p.B > p.k)) fail("B > k");
  if (p.B > kMaxTableLength) fail("B <= " + std::to_string(kMaxTableLength));
  if (p.w < kMinFieldWidth || p.w > kMaxFieldWidth) fail("symbol width in [2, 24]");
  if (p.frame_slots() + 2 * std::size_t{p.k} > (std::size_t{1} << p.w) - 1) fail("(n - m + 2) + 2k <= 2^w - 1");
  const std::size_t bits = segment_digest_bits(p.d, p.B, p.k, p.variant());
  if (p.c * p.w < bits || (p.c - 1) * p.w >= bits) fail("c = ceil(segment digest bits / w)");
}

void write_params(std::ostream& out, const ParameterSet& p) {
  out << "n = " << p.n << "\n"
      << "k = " << p.k << "\n"
      << "m = " << p.m << "\n"
      << "d = " << p.d << "\n"
      << "L = " << p.L << "\n"
      << "B = " << p.B << "\n"
      << "w = " << p.w << "\n"
      << "c = " << p.c << "\n"
      << "profile = " << to_string(p.profile) << "\n"
      << "channel = " << to_string(p.channel) << "\n";
}

ParameterSet read_params(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw std::invalid_argument("malformed parameter line '" + line + "'");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto num = [&](const std::string& key) -> std::uint64_t {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("parameter file is missing '" + key + "'");
    }
    std::size_t used = 0;
    const auto v = std::stoull(it->second, &used);
    if (used != it->second.size()) {
      throw std::invalid_argument("parameter '" + key + "' is not an integer");
    }
    return v;
  };
  ParameterSet p;
  p.n = num("n");
  p.k = static_cast<unsigned>(num("k"));
  p.m = static_cast<unsigned>(num("m"));
  p.d = num("d");
  p.L = num("L");
  p.B = static_cast<unsigned>(num("B"));
  p.w = static_cast<unsigned>(num("w"));
  p.c = num("c");
  if (!kv.count("profile")) {
    throw std::invalid_argument("parameter file is missing 'profile'");
  }
  p.profile = profile_from_string(kv["profile"]);
  p.channel = kv.count("channel") ? channel_from_string(kv["channel"]) : Channel::kDeletion;
  validate(p);
  return p;
}

ParameterSet read_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open parameter file " + path.string());
  }
  return read_params(in);
}

std::vector<std::size_t> find_split_points(const BitString& s, std::uint64_t pattern, unsigned m) {
  std::vector<std::size_t> out;
  if (m == 0 || m > 64 || m > s.size()) {
    return out;
  }
  const std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    v = ((v << 1) | (s[i] ? 1U : 0U)) & mask;
    if (i + 1 >= m && v == pattern) {
      out.push_back(i + 1 - m);
    }
  }
  return out;
}

std::vector<std::size_t> find_split_points(const BitString& s, const BitString& p) {
  if (p.empty() || p.size() > 64) {
    throw std::invalid_argument("pattern length must be in [1, 64]");
  }
  const auto m = static_cast<unsigned>(p.size());
  return find_split_points(s, p.read_uint(0, m), m);
}

MixedCheck is_mixed(const BitString& s, std::size_t d, unsigned m) {
  MixedCheck result;
  if (s.size() < d) {
    result.mixed = true;
    result.vacuous = true;
    return result;
  }
  if (m == 0 || m > kMaxPatternLength || d < m) {
    return result;
  }
  const std::size_t n = s.size();
  const std::size_t patterns = std::size_t{1} << m;
  const std::uint64_t mask = patterns - 1;
  // last[p] = start of the latest occurrence plus one (0 = none yet). Every
  // window [x, x + d) needs a start a with x <= a <= x + d - m.
  std::vector<std::size_t> last(patterns, 0);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v = ((v << 1) | (s[i] ? 1U : 0U)) & mask;
    if (i + 1 < m) {
      continue;
    }
    const std::size_t a = i + 1 - m;
    if (a + 1 - last[v] > d - m + 1) {
      result.first_missing_pattern = v;
      return result;
    }
    last[v] = a + 1;
  }
  for (std::size_t p = 0; p < patterns; ++p) {
    if (last[p] == 0 || last[p] - 1 < n - d) {
      result.first_missing_pattern = p;
      return result;
    }
  }
  result.mixed = true;
  return result;
}

MixedCheck is_mixed(const BitString& s, const ParameterSet& p) { return is_mixed(s, p.d, p.m); }

TemplateResult template_search(const BitString& s, const ParameterSet& p) {
  if (s.size() != p.n) {
    throw std::invalid_argument("template_search: message has " + std::to_string(s.size()) + " bits, expected " +
                                std::to_string(p.n));
  }
  const unsigned m = p.m;
  const std::size_t patterns = std::size_t{1} << m;
  const std::size_t blocks = p.n / p.L;
  const std::size_t chunks = p.L / m;
  const std::size_t words = (patterns + 63) / 64;

  // pending[i] is the set of patterns still missing from block i.
  std::vector<std::vector<std::uint64_t>> pending(blocks, std::vector<std::uint64_t>(words, ~std::uint64_t{0}));
  if (patterns % 64 != 0) {
    for (auto& set : pending) {
      set.back() = (std::uint64_t{1} << (patterns % 64)) - 1;
    }
  }

  TemplateResult result;
  result.t = BitString(p.L);
  std::uint64_t b = static_cast<std::uint64_t>(blocks) * patterns;
  result.obstruction_counts.push_back(b);
  std::vector<std::uint64_t> removed(patterns);
  std::vector<std::uint64_t> chunk(blocks);
  for (std::size_t j = 0; j < chunks; ++j) {
    std::fill(removed.begin(), removed.end(), 0);
    for (std::size_t i = 0; i < blocks; ++i) {
      chunk[i] = s.read_uint(i * p.L + j * m, m);
      for (std::size_t wi = 0; wi < words; ++wi) {
        std::uint64_t bits = pending[i][wi];
        while (bits != 0) {
          const std::size_t pat = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          ++removed[pat ^ chunk[i]];
        }
      }
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < patterns; ++c) {
      if (removed[c] > removed[best]) {
        best = c;
      }
    }
    for (std::size_t i = 0; i < blocks; ++i) {
      const std::size_t pat = chunk[i] ^ best;
      pending[i][pat / 64] &= ~(std::uint64_t{1} << (pat % 64));
    }
    const std::uint64_t next = b - removed[best];
    if (next * patterns > (patterns - 1) * b) {
      throw InternalError("template search: step " + std::to_string(j) + " left " + std::to_string(next) + " of " +
                          std::to_string(b) + " obstructions");
    }
    b = next;
    result.obstruction_counts.push_back(b);
    result.chunk_values.push_back(static_cast<std::uint32_t>(best));
    for (unsigned q = 0; q < m; ++q) {
      result.t.set(j * m + q, (best >> (m - 1 - q)) & 1U);
    }
  }
  if (b != 0) {
    throw InternalError("template search: " + std::to_string(b) + " obstructions remain after " +
                        std::to_string(chunks) + " chunks");
  }
  const auto check = is_mixed(mu(s, result.t), p);
  if (!check.mixed) {
    throw InternalError("template search: masked message misses pattern " +
                        std::to_string(check.first_missing_pattern) + " in some window of " + std::to_string(p.d) +
                        " bits");
  }
  return result;
}

}  // namespace delcode
