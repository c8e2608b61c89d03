#include "crcscatter.h"

#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crcscatter/backscatter.hpp"
#include "crcscatter/bitseq.hpp"
#include "crcscatter/crc.hpp"
#include "crcscatter/frame.hpp"
#include "crcscatter/receiver.hpp"
#include "crcscatter/simlab.hpp"

struct cs_bits {
  crcscatter::BitSeq v;
};

struct cs_frame {
  crcscatter::MacFrame v;
};

namespace {

using namespace crcscatter;

thread_local std::string g_last_error;

struct NoSpaceError {};

cs_status fail(cs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs the body and folds every failure into a status code. invalid_argument
// maps to parse_as so textual entry points can report CS_EPARSE.
template <class F>
cs_status run(F&& body, cs_status parse_as = CS_EINVAL) {
  try {
    body();
    g_last_error.clear();
    return CS_OK;
  } catch (const BudgetExceeded& e) {
    return fail(CS_EBUDGET, e.what());
  } catch (const NoSpaceError&) {
    return fail(CS_ENOSPACE, "output buffer too small");
  } catch (const std::out_of_range& e) {
    return fail(CS_ELENGTH, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(parse_as, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CS_EINTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CS_EINTERNAL, e.what());
  } catch (...) {
    return fail(CS_EINTERNAL, "unknown failure");
  }
}

cs_status null_arg(const char* name) {
  return fail(CS_EINVAL, std::string(name) + " must not be null");
}

CrcParams to_params(const cs_crc_params* p) {
  if (p == nullptr) return CrcParams{};
  CrcParams out;
  out.width = p->width;
  out.poly = p->poly;
  out.init_xor = p->init_xor;
  out.final_xor = p->final_xor;
  out.validate();
  return out;
}

SnrReference to_snr_ref(int value) {
  switch (value) {
    case CS_SNR_PER_SAMPLE:
      return SnrReference::chip;
    case CS_SNR_PER_BIT:
      return SnrReference::bit;
  }
  throw std::invalid_argument("snr_ref must be 0 (per sample) or 1 (per bit)");
}

ChannelConfig to_channel(const cs_channel_config& c) {
  ChannelConfig out;
  out.snr_db = c.snr_db;
  out.spreading = c.spreading;
  out.seed = c.seed;
  out.samples_per_chip = c.samples_per_chip;
  out.snr_ref = to_snr_ref(c.snr_ref);
  return out;
}

TrialConfig to_trial(const cs_trial_config& c) {
  TrialConfig out;
  out.tag_len_n = c.tag_len_n;
  out.body_len = c.body_len;
  out.redundancy = c.redundancy;
  out.trials = c.trials;
  out.header_len = c.header_len;
  out.threads = c.threads;
  out.measure_time = c.measure_time != 0;
  out.channel = to_channel(c.channel);
  return out;
}

cs_ber_record to_c_record(const BerRecord& r) {
  cs_ber_record out;
  out.snr_db = r.snr_db;
  out.n_bits = r.n_bits;
  out.trials = r.trials;
  out.bit_errors = r.bit_errors;
  out.ber = r.ber;
  out.ber_lo = r.ber_lo;
  out.ber_hi = r.ber_hi;
  out.frames_rejected = r.frames_rejected;
  out.mean_decode_time_s = r.mean_decode_time_s;
  out.counted_bits = r.counted_bits;
  return out;
}

void copy_string(const std::string& text, char* buf, size_t cap) {
  if (cap < text.size() + 1) throw NoSpaceError{};
  std::memcpy(buf, text.c_str(), text.size() + 1);
}

cs_bits* wrap(BitSeq v) { return new cs_bits{std::move(v)}; }

}  // namespace

extern "C" {

const char* cs_status_message(cs_status status) {
  switch (status) {
    case CS_OK:
      return "ok";
    case CS_EINVAL:
      return "invalid argument";
    case CS_ELENGTH:
      return "position or length out of range";
    case CS_EBUDGET:
      return "candidate space exceeds budget";
    case CS_EPARSE:
      return "malformed input text";
    case CS_ENOSPACE:
      return "output buffer too small";
    case CS_EINTERNAL:
      return "internal failure";
  }
  return "unknown status";
}

const char* cs_last_error(void) { return g_last_error.c_str(); }

const char* cs_version(void) { return "0.1.0"; }

cs_status cs_self_check(void) {
  return run([] {
    const std::vector<std::uint8_t> digits{'1', '2', '3', '4', '5', '6', '7', '8', '9'};
    const BitSeq bits = BitSeq::from_bytes(digits);
    if (crc_full(bits) != 0xFC891918u) throw std::runtime_error("self check: width 32");
    if (crc_full(bits, CrcParams::for_width(16)) != 0xD64Eu) {
      throw std::runtime_error("self check: width 16");
    }
    if (crc_full(bits, CrcParams::for_width(8)) != 0x04u) {
      throw std::runtime_error("self check: width 8");
    }
    if (crc_full(bits, CrcParams::for_width(4)) != 0xBu) {
      throw std::runtime_error("self check: width 4");
    }
    if (crc_full(BitSeq::zeros(224)) != 0x97EE0E01u) {
      throw std::runtime_error("self check: zero run");
    }
    const MacFrame frame = build_frame(default_header(), BitSeq::from_hex("DEADBEEF"));
    if (frame.fcs != 0xFA98AFE1u) throw std::runtime_error("self check: frame checksum");
    const MacFrame swapped = substitute_body(frame, BitSeq::from_hex("CAFEBABE"));
    if (reverse_original(swapped) != BitSeq::from_hex("DEADBEEF")) {
      throw std::runtime_error("self check: reverse decode");
    }
  });
}

/* ---- bit sequences ---- */

cs_status cs_bits_create(const uint8_t* bits, size_t len, cs_bits** out) {
  if (out == nullptr) return null_arg("out");
  if (bits == nullptr && len > 0) return null_arg("bits");
  return run([&] {
    *out = wrap(BitSeq(std::vector<std::uint8_t>(bits, bits + len)));
  });
}

cs_status cs_bits_from_hex(const char* hex, cs_bits** out) {
  if (out == nullptr) return null_arg("out");
  if (hex == nullptr) return null_arg("hex");
  return run([&] { *out = wrap(BitSeq::from_hex(hex)); }, CS_EPARSE);
}

cs_status cs_bits_from_bit_string(const char* text, cs_bits** out) {
  if (out == nullptr) return null_arg("out");
  if (text == nullptr) return null_arg("text");
  return run([&] { *out = wrap(BitSeq::from_bit_string(text)); }, CS_EPARSE);
}

cs_status cs_bits_from_word(uint32_t value, unsigned width, cs_bits** out) {
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = wrap(BitSeq::from_word(value, width)); });
}

void cs_bits_free(cs_bits* bits) { delete bits; }

cs_status cs_bits_len(const cs_bits* bits, size_t* out) {
  if (bits == nullptr) return null_arg("bits");
  if (out == nullptr) return null_arg("out");
  *out = bits->v.size();
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_bits_copy(const cs_bits* bits, uint8_t* buf, size_t cap) {
  if (bits == nullptr) return null_arg("bits");
  if (buf == nullptr && bits->v.size() > 0) return null_arg("buf");
  return run([&] {
    if (cap < bits->v.size()) throw NoSpaceError{};
    for (size_t i = 0; i < bits->v.size(); ++i) buf[i] = bits->v[i];
  });
}

cs_status cs_bits_to_hex(const cs_bits* bits, char* buf, size_t cap) {
  if (bits == nullptr) return null_arg("bits");
  if (buf == nullptr) return null_arg("buf");
  return run([&] { copy_string(bits->v.to_hex(), buf, cap); });
}

cs_status cs_bits_to_bit_string(const cs_bits* bits, char* buf, size_t cap) {
  if (bits == nullptr) return null_arg("bits");
  if (buf == nullptr) return null_arg("buf");
  return run([&] { copy_string(bits->v.to_bit_string(), buf, cap); });
}

cs_status cs_bits_to_word(const cs_bits* bits, unsigned width, uint32_t* out) {
  if (bits == nullptr) return null_arg("bits");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = bits->v.to_word(width); });
}

cs_status cs_bits_equal(const cs_bits* a, const cs_bits* b, int* out) {
  if (a == nullptr || b == nullptr) return null_arg("bits");
  if (out == nullptr) return null_arg("out");
  *out = (a->v == b->v) ? 1 : 0;
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_bits_hamming(const cs_bits* a, const cs_bits* b, size_t* out) {
  if (a == nullptr || b == nullptr) return null_arg("bits");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = a->v.hamming_distance(b->v); });
}

/* ---- checksum register ---- */

cs_status cs_crc_params_default(unsigned width, cs_crc_params* out) {
  if (out == nullptr) return null_arg("out");
  return run([&] {
    const CrcParams p = CrcParams::for_width(width);
    out->width = p.width;
    out->poly = p.poly;
    out->init_xor = p.init_xor;
    out->final_xor = p.final_xor;
  });
}

cs_status cs_crc_raw(const cs_crc_params* params, uint32_t r_init, const cs_bits* data,
                     uint32_t* out) {
  if (data == nullptr) return null_arg("data");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = crc_raw(r_init, data->v, to_params(params)); });
}

cs_status cs_crc_full(const cs_crc_params* params, const cs_bits* data, uint32_t* out) {
  if (data == nullptr) return null_arg("data");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = crc_full(data->v, to_params(params)); });
}

cs_status cs_crc_reverse(const cs_crc_params* params, uint32_t r_final,
                         const cs_bits* data, uint32_t* out) {
  if (data == nullptr) return null_arg("data");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = crc_reverse(r_final, data->v, to_params(params)); });
}

cs_status cs_crc_solve_word(const cs_crc_params* params, uint32_t r_final,
                            uint32_t r_init, cs_bits** out) {
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = wrap(solve_unknown_word(r_final, r_init, to_params(params))); });
}

cs_status cs_crc_enumerate(const cs_crc_params* params, uint32_t r_final,
                           uint32_t r_init, unsigned length, uint64_t budget,
                           cs_bits*** out_array, size_t* out_count) {
  if (out_array == nullptr) return null_arg("out_array");
  if (out_count == nullptr) return null_arg("out_count");
  return run([&] {
    const std::vector<BitSeq> sols =
        enumerate_solutions(r_final, r_init, length, to_params(params), budget);
    cs_bits** array = new cs_bits*[sols.size()];
    size_t built = 0;
    try {
      for (; built < sols.size(); ++built) array[built] = wrap(sols[built]);
    } catch (...) {
      for (size_t i = 0; i < built; ++i) delete array[i];
      delete[] array;
      throw;
    }
    *out_array = array;
    *out_count = sols.size();
  });
}

void cs_bits_array_free(cs_bits** array, size_t count) {
  if (array == nullptr) return;
  for (size_t i = 0; i < count; ++i) delete array[i];
  delete[] array;
}

/* ---- frames ---- */

cs_status cs_default_header(uint8_t* buf, size_t len) {
  if (buf == nullptr && len > 0) return null_arg("buf");
  if (len == 0) {
    g_last_error.clear();
    return CS_OK;
  }
  return run([&] {
    const std::vector<std::uint8_t> header = default_header(len);
    std::memcpy(buf, header.data(), header.size());
  });
}

cs_status cs_frame_build(const uint8_t* header, size_t header_len, const cs_bits* body,
                         cs_frame** out) {
  if (out == nullptr) return null_arg("out");
  if (header == nullptr && header_len > 0) return null_arg("header");
  if (body == nullptr) return null_arg("body");
  return run([&] {
    *out = new cs_frame{
        build_frame(std::vector<std::uint8_t>(header, header + header_len), body->v)};
  });
}

cs_status cs_frame_assemble(const uint8_t* header, size_t header_len,
                            const cs_bits* body, uint32_t fcs, cs_frame** out) {
  if (out == nullptr) return null_arg("out");
  if (header == nullptr && header_len > 0) return null_arg("header");
  if (body == nullptr) return null_arg("body");
  return run([&] {
    *out = new cs_frame{assemble_frame(
        std::vector<std::uint8_t>(header, header + header_len), body->v, fcs)};
  });
}

void cs_frame_free(cs_frame* frame) { delete frame; }

cs_status cs_frame_header_len(const cs_frame* frame, size_t* out) {
  if (frame == nullptr) return null_arg("frame");
  if (out == nullptr) return null_arg("out");
  *out = frame->v.header.size();
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_frame_copy_header(const cs_frame* frame, uint8_t* buf, size_t cap) {
  if (frame == nullptr) return null_arg("frame");
  if (buf == nullptr && !frame->v.header.empty()) return null_arg("buf");
  return run([&] {
    if (cap < frame->v.header.size()) throw NoSpaceError{};
    std::memcpy(buf, frame->v.header.data(), frame->v.header.size());
  });
}

cs_status cs_frame_body(const cs_frame* frame, cs_bits** out) {
  if (frame == nullptr) return null_arg("frame");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = wrap(frame->v.body); });
}

cs_status cs_frame_fcs(const cs_frame* frame, uint32_t* out) {
  if (frame == nullptr) return null_arg("frame");
  if (out == nullptr) return null_arg("out");
  *out = frame->v.fcs;
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_frame_validate_fcs(const cs_frame* frame, int* ok) {
  if (frame == nullptr) return null_arg("frame");
  if (ok == nullptr) return null_arg("ok");
  return run([&] { *ok = validate_fcs(frame->v) ? 1 : 0; });
}

cs_status cs_frame_substitute_body(const cs_frame* frame, const cs_bits* body,
                                   cs_frame** out) {
  if (frame == nullptr) return null_arg("frame");
  if (body == nullptr) return null_arg("body");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = new cs_frame{substitute_body(frame->v, body->v)}; });
}

cs_status cs_frame_to_hex(const cs_frame* frame, char* buf, size_t cap) {
  if (frame == nullptr) return null_arg("frame");
  if (buf == nullptr) return null_arg("buf");
  return run([&] { copy_string(frame_to_hex(frame->v), buf, cap); });
}

cs_status cs_frame_from_hex(const char* hex, size_t header_len, size_t body_len,
                            cs_frame** out) {
  if (hex == nullptr) return null_arg("hex");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = new cs_frame{frame_from_hex(hex, header_len, body_len)}; },
             CS_EPARSE);
}

cs_status cs_packet_to_hex(const cs_frame* frame, char* buf, size_t cap) {
  if (frame == nullptr) return null_arg("frame");
  if (buf == nullptr) return null_arg("buf");
  return run([&] { copy_string(packet_to_hex(frame->v), buf, cap); });
}

cs_status cs_packet_from_hex(const char* hex, size_t header_len, size_t body_len,
                             cs_frame** out) {
  if (hex == nullptr) return null_arg("hex");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = new cs_frame{packet_from_hex(hex, header_len, body_len)}; },
             CS_EPARSE);
}

/* ---- differential coding and tag modulation ---- */

cs_status cs_diff_encode(const cs_bits* data, int reference, cs_bits** out) {
  if (data == nullptr) return null_arg("data");
  if (out == nullptr) return null_arg("out");
  if (reference != 0 && reference != 1) return fail(CS_EINVAL, "reference must be 0 or 1");
  return run([&] {
    *out = wrap(diff_encode(data->v, static_cast<std::uint8_t>(reference)).bits);
  });
}

cs_status cs_diff_decode(const cs_bits* stream, int reference, cs_bits** out) {
  if (stream == nullptr) return null_arg("stream");
  if (out == nullptr) return null_arg("out");
  if (reference != 0 && reference != 1) return fail(CS_EINVAL, "reference must be 0 or 1");
  return run([&] {
    *out = wrap(diff_decode(DiffStream{stream->v, static_cast<std::uint8_t>(reference)}));
  });
}

cs_status cs_tag_modulate(const cs_bits* stream, const cs_bits* tag, size_t offset,
                          cs_bits** out) {
  if (stream == nullptr) return null_arg("stream");
  if (tag == nullptr) return null_arg("tag");
  if (out == nullptr) return null_arg("out");
  return run([&] {
    *out = wrap(tag_modulate(DiffStream{stream->v, 0}, tag->v, offset).bits);
  });
}

cs_status cs_tag_apply_to_frame(const cs_bits* stream, const cs_bits* tag,
                                size_t body_offset, size_t body_len, cs_bits** out) {
  if (stream == nullptr) return null_arg("stream");
  if (tag == nullptr) return null_arg("tag");
  if (out == nullptr) return null_arg("out");
  return run([&] {
    *out = wrap(
        apply_tag_to_frame_stream(DiffStream{stream->v, 0}, tag->v, body_offset, body_len)
            .bits);
  });
}

cs_status cs_attach_redundancy(const cs_bits* data, cs_bits** out) {
  if (data == nullptr) return null_arg("data");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = wrap(attach_redundancy(data->v).data); });
}

cs_status cs_check_redundancy(const cs_bits* payload, unsigned redundancy, int* ok) {
  if (payload == nullptr) return null_arg("payload");
  if (ok == nullptr) return null_arg("ok");
  return run([&] { *ok = check_redundancy(payload->v, redundancy) ? 1 : 0; });
}

/* ---- receiver ---- */

cs_status cs_reverse_original(const cs_frame* frame, cs_bits** body_out,
                              int* prefix_consistent) {
  if (frame == nullptr) return null_arg("frame");
  if (body_out == nullptr) return null_arg("body_out");
  return run([&] {
    ReversedBody rev = reverse_original_checked(frame->v);
    *body_out = wrap(std::move(rev.body));
    if (prefix_consistent != nullptr) *prefix_consistent = rev.prefix_consistent ? 1 : 0;
  });
}

cs_status cs_decode_tag(const cs_bits* backscatter_body, const cs_bits* original_body,
                        cs_bits** out) {
  if (backscatter_body == nullptr) return null_arg("backscatter_body");
  if (original_body == nullptr) return null_arg("original_body");
  if (out == nullptr) return null_arg("out");
  return run([&] { *out = wrap(decode_tag(backscatter_body->v, original_body->v)); });
}

cs_status cs_decode_frame(const cs_frame* frame, unsigned redundancy,
                          cs_bits** original_out, cs_bits** tag_out, int* accepted,
                          int* prefix_consistent) {
  if (frame == nullptr) return null_arg("frame");
  return run([&] {
    DecodeResult res = decode_frame(frame->v, redundancy);
    cs_bits* original = nullptr;
    if (original_out != nullptr) original = wrap(std::move(res.original_body));
    cs_bits* tag = nullptr;
    if (tag_out != nullptr) {
      try {
        tag = wrap(std::move(res.tag_data));
      } catch (...) {
        delete original;
        throw;
      }
    }
    if (original_out != nullptr) *original_out = original;
    if (tag_out != nullptr) *tag_out = tag;
    if (accepted != nullptr) *accepted = res.accepted ? 1 : 0;
    if (prefix_consistent != nullptr) *prefix_consistent = res.prefix_consistent ? 1 : 0;
  });
}

cs_status cs_brute_force_decode(const cs_frame* frame, uint64_t budget, cs_bits** out) {
  if (frame == nullptr) return null_arg("frame");
  if (out == nullptr) return null_arg("out");
  return run([&] {
    *out = wrap(budget == 0 ? brute_force_decode(frame->v)
                            : brute_force_decode(frame->v, budget));
  });
}

/* ---- simulation lab ---- */

cs_status cs_channel_config_default(cs_channel_config* out) {
  if (out == nullptr) return null_arg("out");
  const ChannelConfig d;
  out->snr_db = d.snr_db;
  out->spreading = d.spreading;
  out->seed = d.seed;
  out->samples_per_chip = d.samples_per_chip;
  out->snr_ref = (d.snr_ref == SnrReference::chip) ? CS_SNR_PER_SAMPLE : CS_SNR_PER_BIT;
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_trial_config_default(cs_trial_config* out) {
  if (out == nullptr) return null_arg("out");
  const TrialConfig d;
  out->tag_len_n = d.tag_len_n;
  out->body_len = d.body_len;
  out->redundancy = d.redundancy;
  out->trials = d.trials;
  out->header_len = d.header_len;
  out->threads = d.threads;
  out->measure_time = d.measure_time ? 1 : 0;
  cs_channel_config channel;
  cs_channel_config_default(&channel);
  out->channel = channel;
  return CS_OK;
}

cs_status cs_sim_ber_sweep(const cs_trial_config* cfg, const double* snr_grid,
                           size_t grid_len, cs_ber_record* out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (snr_grid == nullptr) return null_arg("snr_grid");
  if (out == nullptr) return null_arg("out");
  return run([&] {
    const std::vector<BerRecord> records =
        run_ber_sweep(to_trial(*cfg), std::span<const double>(snr_grid, grid_len));
    for (size_t i = 0; i < records.size(); ++i) out[i] = to_c_record(records[i]);
  });
}

cs_status cs_sim_timing_bench(const unsigned* n_grid, size_t grid_len, uint64_t trials,
                              uint64_t budget, uint64_t seed, cs_bench_record* out) {
  if (n_grid == nullptr) return null_arg("n_grid");
  if (out == nullptr) return null_arg("out");
  return run([&] {
    const std::vector<BenchRecord> records =
        run_timing_bench(std::span<const unsigned>(n_grid, grid_len), trials, budget, seed);
    for (size_t i = 0; i < records.size(); ++i) {
      out[i].n_bits = records[i].n_bits;
      out[i].t_crc_s = records[i].t_crc_s;
      out[i].t_brute_s = records[i].t_brute_s;
      out[i].brute_refused = records[i].brute_refused ? 1 : 0;
    }
  });
}

cs_status cs_sim_redundancy(const cs_trial_config* cfg, double snr_db,
                            cs_redundancy_result* out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (out == nullptr) return null_arg("out");
  return run([&] {
    const RedundancyResult res = run_redundancy_experiment(to_trial(*cfg), snr_db);
    out->plain = to_c_record(res.plain);
    out->redundant = to_c_record(res.redundant);
    out->redundant_ber_all_frames = res.redundant_ber_all_frames;
  });
}

cs_status cs_wilson_interval(uint64_t errors, uint64_t total, double* lo, double* hi) {
  if (lo == nullptr || hi == nullptr) return null_arg("lo/hi");
  return run([&] {
    const auto [l, h] = wilson_interval(errors, total);
    *lo = l;
    *hi = h;
  });
}

}  // extern "C"
