// End-to-end acceptance suite. Each numbered criterion prints exactly one
// PASS/FAIL line with its pinned tolerances; the process exits with the
// number of failed criteria. Statistical criteria run with fixed seeds, so
// every run of this binary sees the same numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "crcscatter/backscatter.hpp"
#include "crcscatter/bitseq.hpp"
#include "crcscatter/crc.hpp"
#include "crcscatter/frame.hpp"
#include "crcscatter/receiver.hpp"
#include "crcscatter/simlab.hpp"

using namespace crcscatter;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& text) {
  std::printf("[%s] %d: %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << v;
  return ss.str();
}

// ---------------------------------------------------------------------------

void criterion_1_reverse_inverts() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  const int total = 100000;
  int bad = 0;
  for (int iter = 0; iter < total; ++iter) {
    const std::uint32_t r0 = static_cast<std::uint32_t>(rng());
    const BitSeq data = BitSeq::random(rng() % 257, rng);
    if (crc_reverse(crc_raw(r0, data), data) != r0) ++bad;
  }
  const double dt = seconds_since(t0);
  std::ostringstream ss;
  ss << "reverse recursion inverts the forward recursion; " << (total - bad) << "/" << total
     << " random register/data cases (lengths 0..256), " << fmt(dt, 3) << " s (limit 10 s)";
  report(1, bad == 0 && dt < 10.0, ss.str());
}

void criterion_2_affine_commutes() {
  const CrcParams p8 = CrcParams::for_width(8);
  std::uint64_t checked = 0;
  std::uint64_t bad = 0;

  std::vector<std::uint32_t> reg_part(256), data_part(256);
  for (std::uint32_t r = 0; r < 256; ++r) reg_part[r] = crc_raw(r, BitSeq::from_word(0, 8), p8);
  for (std::uint32_t a = 0; a < 256; ++a) data_part[a] = crc_raw(0, BitSeq::from_word(a, 8), p8);
  for (std::uint32_t r = 0; r < 256; ++r) {
    for (std::uint32_t a = 0; a < 256; ++a) {
      const std::uint32_t fwd = crc_raw(r, BitSeq::from_word(a, 8), p8);
      const std::uint32_t swp = crc_raw(a, BitSeq::from_word(r, 8), p8);
      ++checked;
      if (fwd != swp || fwd != (reg_part[r] ^ data_part[a])) ++bad;
    }
  }
  const std::uint64_t exhaustive = checked;

  std::mt19937_64 rng(202);
  for (int iter = 0; iter < 100000; ++iter) {
    const std::uint32_t r1 = static_cast<std::uint32_t>(rng());
    const std::uint32_t r2 = static_cast<std::uint32_t>(rng());
    const std::uint32_t a1 = static_cast<std::uint32_t>(rng());
    const std::uint32_t a2 = static_cast<std::uint32_t>(rng());
    const bool commutes =
        crc_raw(r1, BitSeq::from_word(a1, 32)) == crc_raw(a1, BitSeq::from_word(r1, 32));
    const bool additive = crc_raw(r1 ^ r2, BitSeq::from_word(a1 ^ a2, 32)) ==
                          (crc_raw(r1, BitSeq::from_word(a1, 32)) ^
                           crc_raw(r2, BitSeq::from_word(a2, 32)));
    ++checked;
    if (!commutes || !additive) ++bad;
  }

  std::ostringstream ss;
  ss << "register/data words commute and the word map is affine; width 8 exhaustive ("
     << exhaustive << " pairs) plus 100000 randomized width-32 cases, " << bad << " violations";
  report(2, bad == 0, ss.str());
}

void criterion_3_solution_counts() {
  const CrcParams p8 = CrcParams::for_width(8);
  std::mt19937_64 rng(303);
  std::uint64_t checked = 0;
  std::uint64_t bad = 0;

  for (unsigned length = 4; length <= 12; ++length) {
    const std::uint64_t expect_long = 1ull << (length - 8 < 32 ? length - 8 : 0);

    // targets constructed from a known word are reachable at every length
    for (int iter = 0; iter < 300; ++iter) {
      const std::uint32_t r0 = static_cast<std::uint32_t>(rng()) & 0xFF;
      const BitSeq wanted = BitSeq::random(length, rng);
      const std::uint32_t target = crc_raw(r0, wanted, p8);
      const auto sols = enumerate_solutions(target, r0, length, p8);
      ++checked;
      bool ok = true;
      for (const auto& s : sols) ok = ok && crc_raw(r0, s, p8) == target;
      if (length <= 8) {
        ok = ok && sols.size() == 1 && sols[0] == wanted;
      } else {
        ok = ok && sols.size() == expect_long;
      }
      if (!ok) ++bad;
    }

    // past the register width every target is reachable, count is exact
    if (length > 8) {
      for (int iter = 0; iter < 100; ++iter) {
        const std::uint32_t r0 = static_cast<std::uint32_t>(rng()) & 0xFF;
        const std::uint32_t target = static_cast<std::uint32_t>(rng()) & 0xFF;
        ++checked;
        if (enumerate_solutions(target, r0, length, p8).size() != expect_long) ++bad;
      }
    }
  }

  std::ostringstream ss;
  ss << "exhaustive solution counts at width 8, lengths 4..12: exactly 1 at or below the "
     << "register width, exactly 2^(l-8) beyond it; " << checked << " enumerations, " << bad
     << " wrong counts";
  report(3, bad == 0, ss.str());
}

void criterion_4_decoder_agreement() {
  std::mt19937_64 rng(404);
  std::uint64_t mismatches = 0;
  std::uint64_t frames = 0;
  for (unsigned n : {4u, 8u, 12u, 16u}) {
    for (int iter = 0; iter < 1000; ++iter) {
      std::vector<std::uint8_t> header(kDefaultHeaderLen);
      for (auto& b : header) b = static_cast<std::uint8_t>(rng() & 0xFF);
      const BitSeq body = BitSeq::random(n, rng);
      const MacFrame frame = build_frame(header, body);
      const MacFrame captured = substitute_body(frame, BitSeq::random(n, rng));
      const BitSeq via_reverse = reverse_original(captured);
      const BitSeq via_brute = brute_force_decode(captured, 1ull << 24);
      ++frames;
      if (via_reverse != body || via_brute != body) ++mismatches;
    }
  }

  ChannelConfig clean;
  clean.snr_db = std::numeric_limits<double>::infinity();
  clean.spreading = 11;
  clean.samples_per_chip = 4;
  clean.snr_ref = SnrReference::chip;
  std::uint64_t tag_bit_errors = 0;
  std::uint64_t body_mismatches = 0;
  std::uint64_t trials = 0;
  for (unsigned n : {8u, 16u, 24u, 32u}) {
    std::mt19937_64 trial_rng(mix_seed(505, n));
    for (int iter = 0; iter < 10000; ++iter) {
      std::vector<std::uint8_t> header(kDefaultHeaderLen);
      for (auto& b : header) b = static_cast<std::uint8_t>(trial_rng() & 0xFF);
      const BitSeq body = BitSeq::random(n, trial_rng);
      const BitSeq tag = BitSeq::random(n, trial_rng);
      const MacFrame sent = build_frame(header, body);
      const MacFrame captured = transmit_through_channel(sent, tag, clean, trial_rng);
      const DecodeResult decoded = decode_frame(captured, 0);
      ++trials;
      tag_bit_errors += decoded.tag_data.hamming_distance(tag);
      if (decoded.original_body != body) ++body_mismatches;
    }
  }

  std::ostringstream ss;
  ss << "reverse and brute force decoders agree on " << frames
     << " substituted frames (lengths 4/8/12/16, " << mismatches << " mismatches); noiseless "
     << "channel end to end over " << trials << " frame/tag/seed triples (lengths 8/16/24/32): "
     << tag_bit_errors << " tag bit errors, " << body_mismatches << " body mismatches";
  report(4, mismatches == 0 && tag_bit_errors == 0 && body_mismatches == 0, ss.str());
}

void criterion_5_ber_curves() {
  const std::vector<double> grid{-15.0, -13.0, -10.0, -7.5, -5.0};
  const std::vector<unsigned> lengths{8, 16, 24, 32};

  TrialConfig cfg;
  cfg.trials = 20000;
  cfg.redundancy = 0;
  cfg.threads = 1;
  cfg.channel.spreading = 11;
  cfg.channel.samples_per_chip = 4;
  cfg.channel.snr_ref = SnrReference::chip;
  cfg.channel.seed = 42;

  std::vector<std::vector<BerRecord>> curves;
  for (unsigned n : lengths) {
    cfg.tag_len_n = n;
    cfg.body_len = n;
    curves.push_back(run_ber_sweep(cfg, grid));
  }

  bool knee_ok = true;
  bool plateau_ok = true;
  bool overlap_ok = true;
  bool counted_ok = true;
  std::ostringstream knees;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    const BerRecord& knee = curve[3];  // -7.5 dB
    knee_ok = knee_ok && knee.ber >= 3e-3 && knee.ber <= 3e-2;
    knees << (c ? "/" : "") << fmt(knee.ber, 3);
    for (std::size_t i = 0; i < 2; ++i) {  // -15 and -13 dB
      plateau_ok = plateau_ok && curve[i].ber_lo <= 0.5 && curve[i].ber_hi >= 0.4;
    }
    for (const BerRecord& rec : curve) {
      counted_ok = counted_ok && rec.counted_bits == cfg.trials * lengths[c] &&
                   rec.frames_rejected == 0;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double max_lo = 0.0, min_hi = 1.0, max_ber = 0.0, min_ber = 1.0;
    for (const auto& curve : curves) {
      max_lo = std::max(max_lo, curve[i].ber_lo);
      min_hi = std::min(min_hi, curve[i].ber_hi);
      max_ber = std::max(max_ber, curve[i].ber);
      min_ber = std::min(min_ber, curve[i].ber);
    }
    // Interval intersection where sampling noise dominates. On the steep part
    // of the curve 20000 trials resolve the residual body length effect (a
    // short body leaves 32-N solved header bits whose corruption is harmless,
    // so garbage rates scale with 192+N+32 lethal bits, a factor of at most
    // 224/200 across these lengths); estimates within 1.25x are the same
    // curve at plot resolution, while a decode defect distorts a curve far
    // beyond that.
    const bool same_by_interval = max_lo <= min_hi;
    const bool same_by_ratio = max_ber > 0.0 && max_ber <= 1.25 * min_ber;
    overlap_ok = overlap_ok && (same_by_interval || same_by_ratio);
  }

  std::ostringstream ss;
  ss << "bit error rate curves (chip referenced, spreading 11, 4 samples/chip, 20000 "
     << "trials/point, seed 42): knee at -7.5 dB in [3e-3, 3e-2] for lengths 8/16/24/32 "
     << "(measured " << knees.str() << "), plateau at -15/-13 dB intersects [0.4, 0.5] "
     << "within Wilson 95%, all four curves coincide at every point (Wilson overlap, or "
     << "within the derived 1.25x body length allowance on the waterfall)";
  report(5, knee_ok && plateau_ok && overlap_ok && counted_ok, ss.str());
}

void criterion_6_timing() {
  const std::vector<unsigned> grid{4, 6, 8, 10, 12, 14, 16};
  const auto records = run_timing_bench(grid, 100, 1ull << 24, 7);

  bool none_refused = true;
  double crc_min = 1e9, crc_max = 0.0;
  for (const auto& rec : records) {
    none_refused = none_refused && !rec.brute_refused;
    crc_min = std::min(crc_min, rec.t_crc_s);
    crc_max = std::max(crc_max, rec.t_crc_s);
  }
  const double crc_spread = crc_max / crc_min;

  bool growth_ok = true;
  std::ostringstream growth;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].n_bits < 10) continue;
    const double ratio = records[i + 1].t_brute_s / records[i].t_brute_s;
    growth << (growth.tellp() > 0 ? "/" : "") << fmt(ratio, 3);
    growth_ok = growth_ok && ratio >= 4.0;
  }

  unsigned crossover = 0;
  for (const auto& rec : records) {
    if (rec.t_brute_s >= rec.t_crc_s) {
      crossover = rec.n_bits;
      break;
    }
  }

  const auto refused = run_timing_bench(std::vector<unsigned>{12}, 10, 1ull << 10, 7);
  const bool refusal_ok = refused.size() == 1 && refused[0].brute_refused &&
                          refused[0].t_brute_s == 0.0;

  std::ostringstream ss;
  ss << "decode timing: reverse decode varies " << fmt(crc_spread, 3)
     << "x across lengths 4..16 (limit 2x); brute force grows " << growth.str()
     << "x per +2 bits above length 10 (floor 4x); brute overtakes reverse at length "
     << crossover << " (limit 10); oversized search space refused under a 2^10 budget";
  report(6, none_refused && crc_spread < 2.0 && growth_ok && crossover != 0 &&
                crossover <= 10 && refusal_ok,
         ss.str());
}

void criterion_7_redundancy() {
  TrialConfig cfg;
  cfg.tag_len_n = 16;
  cfg.body_len = 16;
  cfg.trials = 20000;
  cfg.threads = 1;
  cfg.channel.spreading = 11;
  cfg.channel.samples_per_chip = 4;
  cfg.channel.snr_ref = SnrReference::chip;
  cfg.channel.seed = 42;

  const RedundancyResult low = run_redundancy_experiment(cfg, -10.0);
  const double ratio = low.plain.ber > 0.0 ? low.redundant.ber / low.plain.ber : -1.0;
  const bool ratio_ok = ratio >= 0.05 && ratio <= 0.30;
  const bool rejects_ok = low.redundant.frames_rejected > 0;

  cfg.trials = 10000;
  const RedundancyResult high = run_redundancy_experiment(cfg, -5.0);
  const bool zero_ok = high.redundant.bit_errors == 0;

  std::ostringstream ss;
  ss << "4 parity bits in a 16 bit tag at -10 dB (20000 paired trials, seed 42): accepted "
     << "frame error rate drops to " << fmt(ratio, 3) << "x the unprotected rate (window "
     << "[0.05, 0.30], " << low.redundant.frames_rejected << " frames rejected); at -5 dB "
     << "the protected arm delivers 0 bit errors in 10000 trials (measured "
     << high.redundant.bit_errors << ")";
  report(7, ratio_ok && rejects_ok && zero_ok, ss.str());
}

bool records_identical(const std::vector<BerRecord>& a, const std::vector<BerRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].snr_db != b[i].snr_db || a[i].n_bits != b[i].n_bits || a[i].trials != b[i].trials ||
        a[i].bit_errors != b[i].bit_errors || a[i].ber != b[i].ber ||
        a[i].ber_lo != b[i].ber_lo || a[i].ber_hi != b[i].ber_hi ||
        a[i].frames_rejected != b[i].frames_rejected ||
        a[i].mean_decode_time_s != b[i].mean_decode_time_s ||
        a[i].counted_bits != b[i].counted_bits) {
      return false;
    }
  }
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_8_reproducibility() {
  TrialConfig cfg;
  cfg.tag_len_n = 16;
  cfg.body_len = 16;
  cfg.trials = 400;
  cfg.threads = 1;
  cfg.channel.spreading = 11;
  cfg.channel.samples_per_chip = 4;
  cfg.channel.snr_ref = SnrReference::chip;
  cfg.channel.seed = 4242;
  const std::vector<double> grid{-12.0, -8.0};
  const auto serial = run_ber_sweep(cfg, grid);
  cfg.threads = 2;
  const auto threaded = run_ber_sweep(cfg, grid);
  const bool core_ok = records_identical(serial, threaded);

  const std::string base = "/tmp/crcscatter_acc_" + std::to_string(getpid());
  const std::string f1 = base + "_1.csv";
  const std::string f2 = base + "_2.csv";
  const std::string f3 = base + "_3.csv";
  const std::string common = std::string(CLI_BIN_PATH) +
                             " simlab ber --snr -12,-9 --n 8 --trials 300 --seed 97 --out ";
  bool cli_ok = true;
  for (const auto& [file, extra] :
       {std::pair{f1, std::string{}}, {f2, std::string{}}, {f3, std::string(" --threads 2")}}) {
    const int status = std::system((common + file + extra + " 2>/dev/null").c_str());
    cli_ok = cli_ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  const std::string c1 = slurp(f1);
  cli_ok = cli_ok && !c1.empty() && c1 == slurp(f2) && c1 == slurp(f3);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(f3.c_str());

  std::ostringstream ss;
  ss << "same seed, same results: sweep records identical for 1 vs 2 worker threads, and "
     << "three command line runs (serial twice, 2 threads once) write byte identical CSV";
  report(8, core_ok && cli_ok, ss.str());
}

}  // namespace

int main() {
  criterion_1_reverse_inverts();
  criterion_2_affine_commutes();
  criterion_3_solution_counts();
  criterion_4_decoder_agreement();
  criterion_5_ber_curves();
  criterion_6_timing();
  criterion_7_redundancy();
  criterion_8_reproducibility();
  std::printf("acceptance: %d/8 criteria passed\n", 8 - g_failures);
  return g_failures;
}
