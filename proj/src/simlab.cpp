#include "crcscatter/simlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace crcscatter {

const std::array<int, 11> kBarker11 = {+1, -1, +1, +1, -1, +1, +1, +1, -1, -1, -1};

namespace {

void validate_channel(const ChannelConfig& cfg) {
  if (cfg.spreading == 0) throw std::invalid_argument("channel: spreading must be positive");
  if (cfg.samples_per_chip == 0) {
    throw std::invalid_argument("channel: samples_per_chip must be positive");
  }
  if (std::isnan(cfg.snr_db)) throw std::invalid_argument("channel: snr_db is NaN");
}

int chip_value(const ChannelConfig& cfg, unsigned chip) {
  return cfg.spreading == 11 ? kBarker11[chip] : +1;
}

double sample_amplitude(const ChannelConfig& cfg) {
  return 1.0 / std::sqrt(static_cast<double>(cfg.spreading) * cfg.samples_per_chip);
}

}  // namespace

std::vector<std::complex<double>> modulate(const DiffStream& stream, const ChannelConfig& cfg) {
  validate_channel(cfg);
  const double amp = sample_amplitude(cfg);
  std::vector<std::complex<double>> out;
  out.reserve(stream.bits.size() * cfg.spreading * cfg.samples_per_chip);
  for (std::size_t i = 0; i < stream.bits.size(); ++i) {
    const double sym = stream.bits[i] ? -1.0 : +1.0;
    for (unsigned c = 0; c < cfg.spreading; ++c) {
      const double v = sym * amp * chip_value(cfg, c);
      for (unsigned s = 0; s < cfg.samples_per_chip; ++s) out.emplace_back(v, 0.0);
    }
  }
  return out;
}

double noise_variance(const ChannelConfig& cfg) {
  validate_channel(cfg);
  if (std::isinf(cfg.snr_db) && cfg.snr_db > 0) return 0.0;
  const double snr_lin = std::pow(10.0, cfg.snr_db / 10.0);
  switch (cfg.snr_ref) {
    case SnrReference::chip: {
      const double amp = sample_amplitude(cfg);
      return amp * amp / snr_lin;
    }
    case SnrReference::bit:
      // unit energy per bit symbol, so N0 = 1 / (Eb/N0)
      return 1.0 / snr_lin;
  }
  throw std::invalid_argument("channel: bad snr_ref");
}

void awgn_in_place(std::span<std::complex<double>> samples, const ChannelConfig& cfg,
                   std::mt19937_64& rng) {
  const double var = noise_variance(cfg);
  if (var == 0.0) return;
  std::normal_distribution<double> dist(0.0, std::sqrt(var / 2.0));
  for (auto& s : samples) {
    const double re = dist(rng);
    const double im = dist(rng);
    s += std::complex<double>(re, im);
  }
}

std::vector<std::complex<double>> awgn(std::span<const std::complex<double>> samples,
                                       const ChannelConfig& cfg) {
  std::vector<std::complex<double>> out(samples.begin(), samples.end());
  std::mt19937_64 rng(cfg.seed);
  awgn_in_place(out, cfg, rng);
  return out;
}

DiffStream demodulate(std::span<const std::complex<double>> samples, const ChannelConfig& cfg) {
  validate_channel(cfg);
  const std::size_t per_bit =
      static_cast<std::size_t>(cfg.spreading) * cfg.samples_per_chip;
  if (per_bit == 0 || samples.size() % per_bit != 0) {
    throw std::invalid_argument("demodulate: sample count is not a whole number of bits");
  }
  DiffStream out;
  out.reference = 0;
  const std::size_t nbits = samples.size() / per_bit;
  for (std::size_t i = 0; i < nbits; ++i) {
    double corr = 0.0;
    std::size_t k = i * per_bit;
    for (unsigned c = 0; c < cfg.spreading; ++c) {
      const int ref = chip_value(cfg, c);
      for (unsigned s = 0; s < cfg.samples_per_chip; ++s, ++k) {
        corr += samples[k].real() * ref;
      }
    }
    out.bits.push_back(corr < 0.0 ? 1u : 0u);
  }
  return out;
}

MacFrame transmit_through_channel(const MacFrame& original, const BitSeq& tag,
                                  const ChannelConfig& cfg, std::mt19937_64& noise_rng) {
  const std::size_t header_bits = original.header.size() * 8;
  const BitSeq bits = frame_bits(original);
  const DiffStream clean = diff_encode(bits, 0);
  const DiffStream tagged =
      apply_tag_to_frame_stream(clean, tag, header_bits, original.body.size());
  std::vector<std::complex<double>> samples = modulate(tagged, cfg);
  awgn_in_place(samples, cfg, noise_rng);
  const BitSeq received = diff_decode(demodulate(samples, cfg));

  std::vector<std::uint8_t> header = received.slice(0, header_bits).to_bytes();
  BitSeq body = received.slice(header_bits, original.body.size());
  const std::uint32_t fcs =
      received.slice(header_bits + original.body.size(), 32).to_word(32);
  return assemble_frame(std::move(header), std::move(body), fcs);
}

std::uint64_t mix_seed(std::uint64_t x, std::uint64_t y) {
  std::uint64_t z = x ^ (y + 0x9E3779B97F4A7C15ull + (x << 6) + (x >> 2));
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t total) {
  if (total == 0) return {0.0, 1.0};
  if (errors > total) throw std::invalid_argument("wilson_interval: errors > total");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // at the edges the exact bound is the point estimate itself; rounding in the
  // sqrt otherwise leaves a stray 1e-20 on the wrong side
  const double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = errors == total ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

struct Tally {
  std::uint64_t bit_errors = 0;
  std::uint64_t counted_bits = 0;
  std::uint64_t frames_rejected = 0;
  std::uint64_t all_bit_errors = 0;
  std::uint64_t all_counted_bits = 0;
  double decode_seconds = 0.0;

  void merge(const Tally& o) {
    bit_errors += o.bit_errors;
    counted_bits += o.counted_bits;
    frames_rejected += o.frames_rejected;
    all_bit_errors += o.all_bit_errors;
    all_counted_bits += o.all_counted_bits;
    decode_seconds += o.decode_seconds;
  }
};

void validate_trial_config(const TrialConfig& cfg) {
  validate_channel(cfg.channel);
  if (cfg.body_len < kMinBodyBits || cfg.body_len > kMaxBodyBits) {
    throw std::invalid_argument("trial: body_len must be 1..32");
  }
  if (cfg.tag_len_n != cfg.body_len) {
    throw std::invalid_argument("trial: tag length must equal body length");
  }
  if (cfg.redundancy != 0 && cfg.redundancy != 4) {
    throw std::invalid_argument("trial: redundancy must be 0 or 4");
  }
  if (cfg.redundancy >= cfg.tag_len_n) {
    throw std::invalid_argument("trial: tag shorter than its parity tail");
  }
  if (cfg.trials == 0) throw std::invalid_argument("trial: trials must be positive");
  if (cfg.threads == 0) throw std::invalid_argument("trial: threads must be positive");
  if (cfg.header_len * 8 + cfg.body_len < 32) {
    throw std::invalid_argument("trial: header too short to decode against");
  }
}

void run_one_trial(const TrialConfig& cfg, double snr_db, std::uint64_t point_index,
                   std::uint64_t trial_index, Tally& tally) {
  const std::uint64_t base = mix_seed(cfg.channel.seed, point_index);
  const std::uint64_t key = mix_seed(base, trial_index);
  std::mt19937_64 rng_frame(mix_seed(key, 0));
  std::mt19937_64 rng_tag(mix_seed(key, 1));
  std::mt19937_64 rng_noise(mix_seed(key, 2));

  std::vector<std::uint8_t> header(cfg.header_len);
  for (auto& b : header) b = static_cast<std::uint8_t>(rng_frame() & 0xFF);
  const BitSeq body = BitSeq::random(cfg.body_len, rng_frame);

  BitSeq tag;
  if (cfg.redundancy == 4) {
    tag = attach_redundancy(BitSeq::random(cfg.tag_len_n - 4, rng_tag)).data;
  } else {
    tag = BitSeq::random(cfg.tag_len_n, rng_tag);
  }

  ChannelConfig ch = cfg.channel;
  ch.snr_db = snr_db;
  const MacFrame original = build_frame(std::move(header), body);
  const MacFrame received = transmit_through_channel(original, tag, ch, rng_noise);

  DecodeResult result;
  if (cfg.measure_time) {
    const auto t0 = std::chrono::steady_clock::now();
    result = decode_frame(received, cfg.redundancy);
    const auto t1 = std::chrono::steady_clock::now();
    tally.decode_seconds += std::chrono::duration<double>(t1 - t0).count();
  } else {
    result = decode_frame(received, cfg.redundancy);
  }

  const unsigned info_bits = cfg.tag_len_n - cfg.redundancy;
  const BitSeq sent_info = tag.slice(0, info_bits);
  const BitSeq got_info = result.tag_data.slice(0, info_bits);
  const std::size_t errors = sent_info.hamming_distance(got_info);

  tally.all_bit_errors += errors;
  tally.all_counted_bits += info_bits;
  if (!result.accepted) {
    ++tally.frames_rejected;
  } else {
    tally.bit_errors += errors;
    tally.counted_bits += info_bits;
  }
}

Tally run_point(const TrialConfig& cfg, double snr_db, std::uint64_t point_index) {
  Tally total;
  if (cfg.threads <= 1) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      run_one_trial(cfg, snr_db, point_index, t, total);
    }
    return total;
  }
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, cfg.trials));
  std::vector<Tally> parts(nthreads);
  std::vector<std::thread> workers;
  workers.reserve(nthreads);
  const std::uint64_t chunk = (cfg.trials + nthreads - 1) / nthreads;
  for (unsigned w = 0; w < nthreads; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, lo + chunk);
    workers.emplace_back([&, w, lo, hi] {
      for (std::uint64_t t = lo; t < hi; ++t) {
        run_one_trial(cfg, snr_db, point_index, t, parts[w]);
      }
    });
  }
  for (auto& th : workers) th.join();
  // integer tallies commute, so the merge order does not affect results
  for (const auto& p : parts) total.merge(p);
  return total;
}

BerRecord record_from_tally(const TrialConfig& cfg, double snr_db, const Tally& tally) {
  BerRecord rec;
  rec.snr_db = snr_db;
  rec.n_bits = cfg.tag_len_n;
  rec.trials = cfg.trials;
  rec.bit_errors = tally.bit_errors;
  rec.counted_bits = tally.counted_bits;
  rec.frames_rejected = tally.frames_rejected;
  rec.ber = tally.counted_bits ? static_cast<double>(tally.bit_errors) / tally.counted_bits : 0.0;
  const auto [lo, hi] = wilson_interval(tally.bit_errors, tally.counted_bits);
  rec.ber_lo = lo;
  rec.ber_hi = hi;
  rec.mean_decode_time_s =
      cfg.measure_time ? tally.decode_seconds / static_cast<double>(cfg.trials) : 0.0;
  return rec;
}

}  // namespace

std::vector<BerRecord> run_ber_sweep(const TrialConfig& cfg, std::span<const double> snr_grid) {
  validate_trial_config(cfg);
  if (snr_grid.empty()) throw std::invalid_argument("run_ber_sweep: empty SNR grid");
  std::vector<BerRecord> out;
  out.reserve(snr_grid.size());
  for (std::size_t p = 0; p < snr_grid.size(); ++p) {
    const Tally tally = run_point(cfg, snr_grid[p], p);
    out.push_back(record_from_tally(cfg, snr_grid[p], tally));
  }
  return out;
}

RedundancyResult run_redundancy_experiment(const TrialConfig& cfg, double snr_db) {
  TrialConfig plain_cfg = cfg;
  plain_cfg.redundancy = 0;
  TrialConfig red_cfg = cfg;
  red_cfg.redundancy = 4;
  validate_trial_config(plain_cfg);
  validate_trial_config(red_cfg);

  RedundancyResult out;
  const Tally plain = run_point(plain_cfg, snr_db, 0);
  out.plain = record_from_tally(plain_cfg, snr_db, plain);
  const Tally red = run_point(red_cfg, snr_db, 0);
  out.redundant = record_from_tally(red_cfg, snr_db, red);
  out.redundant_ber_all_frames =
      red.all_counted_bits ? static_cast<double>(red.all_bit_errors) / red.all_counted_bits : 0.0;
  return out;
}

std::vector<BenchRecord> run_timing_bench(std::span<const unsigned> n_grid, std::uint64_t trials,
                                          std::uint64_t budget, std::uint64_t seed) {
  if (n_grid.empty()) throw std::invalid_argument("run_timing_bench: empty grid");
  if (trials == 0) throw std::invalid_argument("run_timing_bench: trials must be positive");
  using clock = std::chrono::steady_clock;

  std::vector<BenchRecord> out;
  out.reserve(n_grid.size());
  std::uint64_t sink = 0;  // keeps the timed calls observable
  for (const unsigned n : n_grid) {
    if (n < kMinBodyBits || n > kMaxBodyBits) {
      throw std::invalid_argument("run_timing_bench: body length must be 1..32");
    }
    BenchRecord rec;
    rec.n_bits = n;
    rec.brute_refused = (1ull << n) > budget;

    std::mt19937_64 rng(mix_seed(seed, n));
    std::vector<MacFrame> frames;
    frames.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
      std::vector<std::uint8_t> header(kDefaultHeaderLen);
      for (auto& b : header) b = static_cast<std::uint8_t>(rng() & 0xFF);
      const MacFrame original = build_frame(std::move(header), BitSeq::random(n, rng));
      frames.push_back(substitute_body(original, BitSeq::random(n, rng)));
    }

    sink += reverse_original(frames[0]).to_word(n);  // warm caches
    std::vector<double> t_crc;
    t_crc.reserve(trials);
    for (const auto& f : frames) {
      const auto t0 = clock::now();
      const BitSeq body = reverse_original(f);
      const auto t1 = clock::now();
      sink += body[0];
      t_crc.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::nth_element(t_crc.begin(), t_crc.begin() + t_crc.size() / 2, t_crc.end());
    rec.t_crc_s = t_crc[t_crc.size() / 2];

    if (!rec.brute_refused) {
      sink += brute_force_decode(frames[0], budget).to_word(n);
      std::vector<double> t_brute;
      t_brute.reserve(trials);
      for (const auto& f : frames) {
        const auto t0 = clock::now();
        const BitSeq body = brute_force_decode(f, budget);
        const auto t1 = clock::now();
        sink += body[0];
        t_brute.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      std::nth_element(t_brute.begin(), t_brute.begin() + t_brute.size() / 2, t_brute.end());
      rec.t_brute_s = t_brute[t_brute.size() / 2];
    }
    out.push_back(rec);
  }
  volatile std::uint64_t guard = sink;
  (void)guard;
  return out;
}

}  // namespace crcscatter
