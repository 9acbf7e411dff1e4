// delcode: command-line front end.
//
// Payload files hold one line of '0'/'1'. Reports are key=value lines with
// sorted keys. Exit codes: 0 success, 1 decode failure, 2 bad arguments.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "delcode/codec.hpp"
#include "delcode/errors.hpp"
#include "delcode/mixer.hpp"
#include "delcode/oracle.hpp"
#include "delcode/vt.hpp"

namespace {

using delcode::BitString;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct DecodeFailure {};

class Report {
 public:
  template <typename T>
  void set(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    fields_[key] = os.str();
  }
  void print(std::ostream& out) const {
    for (const auto& [k, v] : fields_) {
      out << k << '=' << v << '\n';
    }
  }

 private:
  std::map<std::string, std::string> fields_;
};

BitString read_bits(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::getline(std::cin, text);
  } else {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("cannot open " + path);
    }
    std::getline(in, text);
  }
  if (!text.empty() && text.back() == '\r') {
    text.pop_back();
  }
  return BitString::from_string(text);
}

void write_bits(const std::string& path, const BitString& bits) {
  if (path.empty() || path == "-") {
    std::cout << bits.to_string() << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write " + path);
  }
  out << bits.to_string() << '\n';
}

void add_params(Report& r, const delcode::ParameterSet& p) {
  r.set("n", p.n);
  r.set("k", p.k);
  r.set("m", p.m);
  r.set("d", p.d);
  r.set("L", p.L);
  r.set("B", p.B);
  r.set("w", p.w);
  r.set("c", p.c);
  r.set("profile", delcode::to_string(p.profile));
  r.set("channel", delcode::to_string(p.channel));
}

void add_geometry(Report& r, const delcode::CodewordGeometry& g) {
  for (std::size_t i = 0; i < delcode::kSegmentCount; ++i) {
    const auto name = std::string("segment.") + delcode::segment_name(static_cast<delcode::Segment>(i));
    r.set(name + ".offset", g.spans[i].offset);
    r.set(name + ".length", g.spans[i].length);
  }
  r.set("N", g.total);
  r.set("redundancy", g.redundancy());
}

BitString random_message(std::size_t n, std::mt19937_64& rng) {
  BitString s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(rng() & 1U);
  }
  return s;
}

// Adversarial corruption: a run of k edits straddling one segment boundary,
// the boundary picked by the seed. Deletions for the deletion channel;
// insertions of the complement of the neighbouring bit for the indel channel.
BitString corrupt(const BitString& cw, const delcode::ParameterSet& p, unsigned k, bool adversarial,
                  std::uint64_t seed) {
  const bool indel = p.channel == delcode::Channel::kIndel;
  if (!adversarial) {
    return indel ? delcode::channel_indel(cw, k, seed) : delcode::channel_delete(cw, k, seed);
  }
  const auto g = delcode::codeword_geometry(p);
  std::mt19937_64 rng(seed);
  const std::size_t boundary = g.spans[rng() % delcode::kSegmentCount].offset;
  const std::size_t start = boundary >= k / 2 ? boundary - k / 2 : 0;
  if (indel) {
    delcode::EditScript script;
    for (unsigned i = 0; i < k; ++i) {
      const std::size_t pos = std::min(start + i, cw.size());
      const bool bit = pos < cw.size() ? !cw[pos] : true;
      script.ops.push_back({delcode::EditOp::Kind::kInsert, pos, bit});
    }
    return delcode::apply_edits(cw, script);
  }
  delcode::DeletionPattern pattern;
  for (unsigned i = 0; i < k && start + i < cw.size(); ++i) {
    pattern.indices.push_back(start + i);
  }
  return delcode::apply_deletions(cw, pattern);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-redundancy codes for k deletions and for k insertions/deletions"};
  app.require_subcommand(1);

  // params
  auto* params_cmd = app.add_subcommand("params", "derive a parameter set");
  std::size_t n = 0;
  unsigned k = 0;
  std::string profile = "desk";
  std::string channel = "deletion";
  unsigned custom_m = 0;
  std::size_t custom_d = 0;
  std::size_t custom_L = 0;
  std::string out_path;
  params_cmd->add_option("--n", n, "message length")->required();
  params_cmd->add_option("--k", k, "edit budget")->required();
  params_cmd->add_option("--profile", profile, "paper, desk or custom")->check(CLI::IsMember({"paper", "desk", "custom"}));
  params_cmd->add_option("--channel", channel, "deletion or indel")->check(CLI::IsMember({"deletion", "indel"}));
  params_cmd->add_option("--m", custom_m, "pattern length (custom)");
  params_cmd->add_option("--d", custom_d, "mixedness window (custom)");
  params_cmd->add_option("--L", custom_L, "template length (custom)");
  params_cmd->add_option("--out", out_path, "parameter file to write (default stdout)");

  // shared by the codec commands
  std::string params_path;
  std::string in_path = "-";
  std::uint64_t seed = 1;
  bool timing = false;

  auto* encode_cmd = app.add_subcommand("encode", "encode a message");
  encode_cmd->add_option("--params", params_path)->required();
  encode_cmd->add_option("--in", in_path, "message file, - for stdin");
  encode_cmd->add_option("--out", out_path, "codeword file (default stdout)");

  auto* decode_cmd = app.add_subcommand("decode", "decode a received string");
  decode_cmd->add_option("--params", params_path)->required();
  decode_cmd->add_option("--in", in_path, "received file, - for stdin");
  decode_cmd->add_option("--out", out_path, "message file (default stdout)");

  auto* corrupt_cmd = app.add_subcommand("corrupt", "pass a codeword through the channel");
  std::string mode = "random";
  unsigned edits = 0;
  corrupt_cmd->add_option("--params", params_path)->required();
  corrupt_cmd->add_option("--k", edits, "number of edits")->required();
  corrupt_cmd->add_option("--mode", mode)->check(CLI::IsMember({"random", "adversarial"}));
  corrupt_cmd->add_option("--seed", seed);
  corrupt_cmd->add_option("--in", in_path, "codeword file, - for stdin");
  corrupt_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* stress_cmd = app.add_subcommand("stress", "random roundtrips through the channel");
  std::size_t trials = 100;
  stress_cmd->add_option("--params", params_path)->required();
  stress_cmd->add_option("--trials", trials);
  stress_cmd->add_option("--seed", seed);
  stress_cmd->add_option("--mode", mode)->check(CLI::IsMember({"random", "adversarial"}));
  stress_cmd->add_flag("--timing", timing, "include wall-clock timing");

  // vt
  auto* vt_cmd = app.add_subcommand("vt", "Varshamov-Tenengolts baseline");
  vt_cmd->require_subcommand(1);
  auto* vt_syn = vt_cmd->add_subcommand("syndrome", "syndrome of a string");
  vt_syn->add_option("--in", in_path);
  auto* vt_dec = vt_cmd->add_subcommand("decode", "recover a codeword from one deletion");
  vt_dec->add_option("--in", in_path);
  vt_dec->add_option("--n", n)->required();
  vt_dec->add_option("--out", out_path);
  auto* vt_census = vt_cmd->add_subcommand("census", "count codewords of length n");
  vt_census->add_option("--n", n)->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "color tables");
  oracle_cmd->require_subcommand(1);
  auto* build_cmd = oracle_cmd->add_subcommand("build-table", "build or check a color table file");
  unsigned len = 0;
  std::string variant = "deletion";
  bool check = false;
  build_cmd->add_option("--len", len)->required();
  build_cmd->add_option("--k", k)->required();
  build_cmd->add_option("--variant", variant, "deletion, indel3k or indel4k");
  build_cmd->add_option("--out", out_path)->required();
  build_cmd->add_flag("--check", check, "verify an existing file against a fresh build");

  auto* census_cmd = app.add_subcommand("census", "greedy k-deletion code size");
  census_cmd->add_option("--n", n)->required();
  census_cmd->add_option("--k", k)->required();

  auto* linear_cmd = app.add_subcommand("linear", "best linear k-deletion code");
  linear_cmd->add_option("--n", n)->required();
  linear_cmd->add_option("--k", k)->required();

  auto* red_cmd = app.add_subcommand("redundancy", "redundancy table");
  unsigned k_min = 2;
  unsigned k_max = 8;
  unsigned e_min = 20;
  unsigned e_max = 60;
  unsigned e_step = 10;
  std::vector<std::size_t> desk_ns;
  red_cmd->add_option("--profile", profile)->check(CLI::IsMember({"paper", "desk"}));
  red_cmd->add_option("--k-min", k_min);
  red_cmd->add_option("--k-max", k_max);
  red_cmd->add_option("--log-n-min", e_min, "paper profile: smallest log2 n");
  red_cmd->add_option("--log-n-max", e_max, "paper profile: largest log2 n");
  red_cmd->add_option("--log-n-step", e_step);
  red_cmd->add_option("--n", desk_ns, "desk profile: message lengths");
  red_cmd->add_option("--channel", channel)->check(CLI::IsMember({"deletion", "indel"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (params_cmd->parsed()) {
      const auto ch = delcode::channel_from_string(channel);
      const auto p = profile == "custom" ? delcode::custom_params(n, k, custom_m, custom_d, custom_L, ch)
                                         : delcode::derive_params(n, k, delcode::profile_from_string(profile), ch);
      if (out_path.empty()) {
        delcode::write_params(std::cout, p);
      } else {
        std::ofstream out(out_path);
        if (!out) {
          throw std::invalid_argument("cannot write " + out_path);
        }
        delcode::write_params(out, p);
      }
    } else if (encode_cmd->parsed()) {
      const auto p = delcode::read_params_file(params_path);
      const auto cw = delcode::encode(read_bits(in_path), p);
      write_bits(out_path, cw.bits);
      if (!out_path.empty() && out_path != "-") {
        Report r;
        r.set("command", "encode");
        add_geometry(r, cw.geometry);
        r.print(std::cout);
      }
    } else if (decode_cmd->parsed()) {
      const auto p = delcode::read_params_file(params_path);
      const auto s = delcode::decode(read_bits(in_path), p);
      if (!s) {
        throw DecodeFailure{};
      }
      write_bits(out_path, *s);
    } else if (corrupt_cmd->parsed()) {
      const auto p = delcode::read_params_file(params_path);
      write_bits(out_path, corrupt(read_bits(in_path), p, edits, mode == "adversarial", seed));
    } else if (stress_cmd->parsed()) {
      const auto p = delcode::read_params_file(params_path);
      std::mt19937_64 rng(seed);
      std::size_t failures = 0;
      std::size_t wrong = 0;
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t i = 0; i < trials; ++i) {
        const auto s = random_message(p.n, rng);
        const auto cw = delcode::encode(s, p);
        const auto y = corrupt(cw.bits, p, static_cast<unsigned>(rng() % (p.k + 1)), mode == "adversarial", rng());
        const auto out = delcode::decode(y, p);
        if (!out) {
          ++failures;
        } else if (*out != s) {
          ++wrong;
        }
      }
      Report r;
      r.set("command", "stress");
      add_params(r, p);
      add_geometry(r, delcode::codeword_geometry(p));
      r.set("mode", mode);
      r.set("seed", seed);
      r.set("trials", trials);
      r.set("failures", failures);
      r.set("wrong_decodes", wrong);
      if (timing) {
        r.set("elapsed_ms", elapsed_ms(start));
      }
      r.print(std::cout);
      if (failures + wrong > 0) {
        return kExitFail;
      }
    } else if (vt_syn->parsed()) {
      const auto syn = delcode::vt_syndrome(read_bits(in_path));
      Report r;
      r.set("n", syn.n);
      r.set("residue", syn.residue);
      r.print(std::cout);
    } else if (vt_dec->parsed()) {
      const auto x = delcode::vt_decode(read_bits(in_path), n);
      if (!x) {
        throw DecodeFailure{};
      }
      write_bits(out_path, *x);
    } else if (vt_census->parsed()) {
      if (n == 0 || n > delcode::kMaxVtEnumeration) {
        throw std::invalid_argument("vt census needs 1 <= n <= " + std::to_string(delcode::kMaxVtEnumeration));
      }
      const auto members = delcode::vt_members(static_cast<unsigned>(n));
      Report r;
      r.set("n", n);
      r.set("size", members.size());
      r.set("bound_2n_over_n_plus_1", std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(n + 1));
      r.print(std::cout);
    } else if (build_cmd->parsed()) {
      const auto v = delcode::table_variant_from_string(variant);
      const auto fresh = delcode::build_color_table(len, k, v);
      Report r;
      r.set("length", fresh.length);
      r.set("k", fresh.k);
      r.set("variant", delcode::to_string(fresh.variant));
      r.set("threshold", fresh.threshold);
      r.set("color_count", fresh.color_count);
      r.set("width", fresh.width);
      r.set("path", out_path);
      if (check) {
        const bool same = delcode::read_table(out_path) == fresh;
        r.set("check", same ? "match" : "mismatch");
        r.print(std::cout);
        return same ? 0 : kExitFail;
      }
      delcode::write_table(out_path, fresh);
      r.print(std::cout);
    } else if (census_cmd->parsed()) {
      const auto size = delcode::greedy_code_census(static_cast<unsigned>(n), k);
      Report r;
      r.set("n", n);
      r.set("k", k);
      r.set("greedy_size", size);
      r.set("vt_bound_2n_over_n_plus_1", std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(n + 1));
      r.set("coloring_bound", std::ldexp(1.0, static_cast<int>(n)) /
                                  (2.0 * std::pow(static_cast<double>(n), 2.0 * k) + 1.0));
      r.print(std::cout);
    } else if (linear_cmd->parsed()) {
      const auto ex = delcode::linear_code_experiment(static_cast<unsigned>(n), k);
      Report r;
      r.set("n", ex.n);
      r.set("k", ex.k);
      r.set("max_dimension", ex.max_dimension);
      r.set("repetition_dimension", n / (k + 1));
      r.set("upper_bound", static_cast<double>(n) / (k + 1) + (k + 1) * (k + 1));
      r.set("subspaces_visited", ex.subspaces_visited);
      r.set("passing_codes", ex.passing_codes);
      r.set("shift_pairs_checked", ex.shift_pairs_checked);
      r.set("shift_intersection_bound", ex.shift_intersection_bound_holds ? "holds" : "violated");
      r.print(std::cout);
    } else if (red_cmd->parsed()) {
      const auto ch = delcode::channel_from_string(channel);
      if (profile == "paper") {
        for (unsigned kk = k_min; kk <= k_max; ++kk) {
          for (unsigned e = e_min; e <= e_max; e += std::max(e_step, 1U)) {
            const auto a = delcode::analytic_redundancy(std::size_t{1} << e, kk, ch);
            std::cout << "k=" << a.k << " log2_n=" << e << " profile=paper ratio=" << a.ratio
                      << " redundancy=" << a.redundancy << '\n';
          }
        }
      } else {
        if (desk_ns.empty()) {
          throw std::invalid_argument("desk redundancy needs --n");
        }
        for (unsigned kk = k_min; kk <= k_max; ++kk) {
          for (auto nn : desk_ns) {
            const auto p = delcode::derive_params(nn, kk, delcode::Profile::kDesk, ch);
            const auto g = delcode::codeword_geometry(p);
            const double norm = kk * kk * std::max(std::log2(static_cast<double>(kk)), 1.0) *
                                std::log2(static_cast<double>(nn));
            std::cout << "k=" << kk << " n=" << nn << " profile=desk ratio=" << g.redundancy() / norm
                      << " redundancy=" << g.redundancy() << '\n';
          }
        }
      }
    }
  } catch (const DecodeFailure&) {
    std::cerr << "decode failed\n";
    return kExitFail;
  } catch (const delcode::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const delcode::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return 0;
}
