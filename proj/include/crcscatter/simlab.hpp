#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "crcscatter/backscatter.hpp"
#include "crcscatter/bitseq.hpp"
#include "crcscatter/frame.hpp"
#include "crcscatter/receiver.hpp"

namespace crcscatter {

enum class SnrReference { chip, bit };

// Baseband channel settings. snr_db is interpreted per snr_ref:
//   chip: ratio of per-sample signal power to per-sample noise power. With
//         unit-energy bit symbols this makes Eb/N0 equal to
//         snr_db + 10*log10(spreading * samples_per_chip); at one sample per
//         chip that is the chip SNR plus the 10.4 dB spreading gain.
//   bit:  Eb/N0 directly, no offset.
// snr_db = +infinity disables noise entirely.
struct ChannelConfig {
  double snr_db = 0.0;
  unsigned spreading = 11;
  std::uint64_t seed = 0;
  unsigned samples_per_chip = 1;
  SnrReference snr_ref = SnrReference::chip;
};

extern const std::array<int, 11> kBarker11;

// Antipodal chips on the real axis, unit average energy per bit symbol.
// spreading == 11 uses the Barker sequence, otherwise plain repetition.
std::vector<std::complex<double>> modulate(const DiffStream& stream, const ChannelConfig& cfg);

// Noise power per complex sample implied by the config (both quadratures
// together). 0 when snr_db is +infinity.
double noise_variance(const ChannelConfig& cfg);

// Circularly symmetric complex Gaussian noise. The copying overload seeds its
// generator from cfg.seed, so equal configs give equal noise.
std::vector<std::complex<double>> awgn(std::span<const std::complex<double>> samples,
                                       const ChannelConfig& cfg);
void awgn_in_place(std::span<std::complex<double>> samples, const ChannelConfig& cfg,
                   std::mt19937_64& rng);

// Correlates each bit window against the spreading sequence and hard-decides
// the sign. Ideal timing and phase, no sync loop. Sample count must be a
// whole number of bit windows.
DiffStream demodulate(std::span<const std::complex<double>> samples, const ChannelConfig& cfg);

// One frame through tag and channel: differential encode, apply the tag over
// the body window, spread, add noise, despread, differential decode,
// reassemble. Corrupted frames come back as they decode; garbage in is
// tolerated downstream.
MacFrame transmit_through_channel(const MacFrame& original, const BitSeq& tag,
                                  const ChannelConfig& cfg, std::mt19937_64& noise_rng);

struct TrialConfig {
  unsigned tag_len_n = 32;  // equals body_len
  unsigned body_len = 32;
  unsigned redundancy = 0;  // 0 or 4 parity bits inside the tag
  std::uint64_t trials = 1000;
  unsigned header_len = 24;
  unsigned threads = 1;
  bool measure_time = false;  // wall-clock decode times are not reproducible
  ChannelConfig channel;
};

struct BerRecord {
  double snr_db = 0.0;
  unsigned n_bits = 0;
  std::uint64_t trials = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  double ber_lo = 0.0;
  double ber_hi = 0.0;
  std::uint64_t frames_rejected = 0;
  double mean_decode_time_s = 0.0;
  // denominator behind ber: every tag bit of every frame without redundancy,
  // information bits of accepted frames with it
  std::uint64_t counted_bits = 0;
};

// One record per grid entry. Per-trial generators are derived from
// (seed, grid index, trial index), so results do not depend on the thread
// count and repeat runs are identical.
std::vector<BerRecord> run_ber_sweep(const TrialConfig& cfg, std::span<const double> snr_grid);

struct BenchRecord {
  unsigned n_bits = 0;
  double t_crc_s = 0.0;    // median reverse_original wall time
  double t_brute_s = 0.0;  // median brute_force_decode wall time
  bool brute_refused = false;
};

std::vector<BenchRecord> run_timing_bench(std::span<const unsigned> n_grid, std::uint64_t trials,
                                          std::uint64_t budget, std::uint64_t seed);

struct RedundancyResult {
  BerRecord plain;      // redundancy 0, every tag bit counted
  BerRecord redundant;  // redundancy 4, accepted frames' information bits
  double redundant_ber_all_frames = 0.0;
};

// Both arms share frame and noise randomness (same seed derivation), so the
// comparison is paired.
RedundancyResult run_redundancy_experiment(const TrialConfig& cfg, double snr_db);

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t total);

std::uint64_t mix_seed(std::uint64_t x, std::uint64_t y);

}  // namespace crcscatter
