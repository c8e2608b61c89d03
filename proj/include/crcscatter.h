#ifndef CRCSCATTER_H
#define CRCSCATTER_H

/* C interface to the crcscatter library.
 *
 * Conventions:
 *  - every function returns a cs_status; results leave through out pointers
 *  - objects created by *_create / *_from_* / functions with a ** out
 *    parameter are owned by the caller and released with the matching free
 *  - bit buffers are one byte per bit, each 0 or 1, transmission order
 *  - string buffers are written NUL terminated; CS_ENOSPACE means the
 *    capacity was too small and nothing useful was written
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CS_API __declspec(dllexport)
#else
#define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_EINVAL = 1,    /* argument rejected */
  CS_ELENGTH = 2,   /* position or length out of range */
  CS_EBUDGET = 3,   /* candidate space larger than the allowed budget */
  CS_EPARSE = 4,    /* malformed textual input */
  CS_ENOSPACE = 5,  /* output buffer too small */
  CS_EINTERNAL = 6  /* unexpected failure inside the library */
} cs_status;

/* Static description of a status code. */
CS_API const char* cs_status_message(cs_status status);

/* Explanation of the most recent failure on this thread, empty string if the
 * last call succeeded. The buffer is thread local and overwritten by the
 * next failing call. */
CS_API const char* cs_last_error(void);

/* Library version string, e.g. "0.1.0". */
CS_API const char* cs_version(void);

/* Recomputes a set of frozen reference checksums. CS_OK means the library
 * arithmetic in this build agrees with them. */
CS_API cs_status cs_self_check(void);

/* ---- bit sequences ---- */

typedef struct cs_bits cs_bits;

CS_API cs_status cs_bits_create(const uint8_t* bits, size_t len, cs_bits** out);
CS_API cs_status cs_bits_from_hex(const char* hex, cs_bits** out);
CS_API cs_status cs_bits_from_bit_string(const char* text, cs_bits** out);
CS_API cs_status cs_bits_from_word(uint32_t value, unsigned width, cs_bits** out);
CS_API void cs_bits_free(cs_bits* bits);

CS_API cs_status cs_bits_len(const cs_bits* bits, size_t* out);
/* One byte per bit. cap must be at least the sequence length. */
CS_API cs_status cs_bits_copy(const cs_bits* bits, uint8_t* buf, size_t cap);
/* Length must be a multiple of 4. */
CS_API cs_status cs_bits_to_hex(const cs_bits* bits, char* buf, size_t cap);
CS_API cs_status cs_bits_to_bit_string(const cs_bits* bits, char* buf, size_t cap);
/* Length must equal width (at most 32). */
CS_API cs_status cs_bits_to_word(const cs_bits* bits, unsigned width, uint32_t* out);
CS_API cs_status cs_bits_equal(const cs_bits* a, const cs_bits* b, int* out);
CS_API cs_status cs_bits_hamming(const cs_bits* a, const cs_bits* b, size_t* out);

/* ---- checksum register ---- */

typedef struct cs_crc_params {
  unsigned width;      /* 1..32 */
  uint32_t poly;       /* without the leading term; must be odd */
  uint32_t init_xor;
  uint32_t final_xor;
} cs_crc_params;

/* Default parameter set for width 4, 8, 16 or 32. */
CS_API cs_status cs_crc_params_default(unsigned width, cs_crc_params* out);

/* params == NULL means the width 32 default everywhere below. */
CS_API cs_status cs_crc_raw(const cs_crc_params* params, uint32_t r_init,
                            const cs_bits* data, uint32_t* out);
CS_API cs_status cs_crc_full(const cs_crc_params* params, const cs_bits* data,
                             uint32_t* out);
CS_API cs_status cs_crc_reverse(const cs_crc_params* params, uint32_t r_final,
                                const cs_bits* data, uint32_t* out);
/* The width-bit data word leading the register from r_init to r_final. */
CS_API cs_status cs_crc_solve_word(const cs_crc_params* params, uint32_t r_final,
                                   uint32_t r_init, cs_bits** out);
/* All length-bit sequences leading from r_init to r_final, by exhaustive
 * scan. Refuses with CS_EBUDGET when 2^length exceeds budget. The array and
 * every element belong to the caller; release with cs_bits_array_free. */
CS_API cs_status cs_crc_enumerate(const cs_crc_params* params, uint32_t r_final,
                                  uint32_t r_init, unsigned length, uint64_t budget,
                                  cs_bits*** out_array, size_t* out_count);
CS_API void cs_bits_array_free(cs_bits** array, size_t count);

/* ---- frames ---- */

typedef struct cs_frame cs_frame;

/* Fills buf with the default header pattern (octets 0x00, 0x01, ...). */
CS_API cs_status cs_default_header(uint8_t* buf, size_t len);

/* Computes the checksum over header and body. Body length 1..32 bits. */
CS_API cs_status cs_frame_build(const uint8_t* header, size_t header_len,
                                const cs_bits* body, cs_frame** out);
/* Caller supplied checksum, e.g. captured off the air. */
CS_API cs_status cs_frame_assemble(const uint8_t* header, size_t header_len,
                                   const cs_bits* body, uint32_t fcs, cs_frame** out);
CS_API void cs_frame_free(cs_frame* frame);

CS_API cs_status cs_frame_header_len(const cs_frame* frame, size_t* out);
CS_API cs_status cs_frame_copy_header(const cs_frame* frame, uint8_t* buf, size_t cap);
CS_API cs_status cs_frame_body(const cs_frame* frame, cs_bits** out);
CS_API cs_status cs_frame_fcs(const cs_frame* frame, uint32_t* out);
CS_API cs_status cs_frame_validate_fcs(const cs_frame* frame, int* ok);
/* New body, same checksum: the in-flight rewrite a tag performs. */
CS_API cs_status cs_frame_substitute_body(const cs_frame* frame, const cs_bits* body,
                                          cs_frame** out);

CS_API cs_status cs_frame_to_hex(const cs_frame* frame, char* buf, size_t cap);
CS_API cs_status cs_frame_from_hex(const char* hex, size_t header_len, size_t body_len,
                                   cs_frame** out);
/* Same serialization with the radio preamble and PLCP header in front. */
CS_API cs_status cs_packet_to_hex(const cs_frame* frame, char* buf, size_t cap);
CS_API cs_status cs_packet_from_hex(const char* hex, size_t header_len, size_t body_len,
                                    cs_frame** out);

/* ---- differential coding and tag modulation ---- */

CS_API cs_status cs_diff_encode(const cs_bits* data, int reference, cs_bits** out);
CS_API cs_status cs_diff_decode(const cs_bits* stream, int reference, cs_bits** out);
/* XOR of the tag onto stream positions [offset, offset + tag_len). */
CS_API cs_status cs_tag_modulate(const cs_bits* stream, const cs_bits* tag,
                                 size_t offset, cs_bits** out);
/* Packet level application: the tag acts across the body window and its
 * final state is held to the end of the stream. */
CS_API cs_status cs_tag_apply_to_frame(const cs_bits* stream, const cs_bits* tag,
                                       size_t body_offset, size_t body_len,
                                       cs_bits** out);
/* Appends the 4 interleaved parity bits. */
CS_API cs_status cs_attach_redundancy(const cs_bits* data, cs_bits** out);
CS_API cs_status cs_check_redundancy(const cs_bits* payload, unsigned redundancy,
                                     int* ok);

/* ---- receiver ---- */

/* Recovers the pre-substitution body from header and checksum alone.
 * prefix_consistent (nullable) reports whether the solved register window
 * agreed with the received header bits it overlaps. */
CS_API cs_status cs_reverse_original(const cs_frame* frame, cs_bits** body_out,
                                     int* prefix_consistent);
CS_API cs_status cs_decode_tag(const cs_bits* backscatter_body,
                               const cs_bits* original_body, cs_bits** out);
/* Two stage decode. redundancy is 0 or 4; accepted reflects the parity
 * verdict. original_out / tag_out / accepted / prefix_consistent may each be
 * NULL when the caller does not need them. */
CS_API cs_status cs_decode_frame(const cs_frame* frame, unsigned redundancy,
                                 cs_bits** original_out, cs_bits** tag_out,
                                 int* accepted, int* prefix_consistent);
/* Reference decoder scanning every candidate body. CS_EBUDGET when
 * 2^body_len exceeds budget (pass 0 for the default budget). */
CS_API cs_status cs_brute_force_decode(const cs_frame* frame, uint64_t budget,
                                       cs_bits** out);

/* ---- simulation lab ---- */

typedef enum cs_snr_reference {
  CS_SNR_PER_SAMPLE = 0, /* snr_db measured against per-sample signal power */
  CS_SNR_PER_BIT = 1     /* snr_db is Eb/N0 */
} cs_snr_reference;

typedef struct cs_channel_config {
  double snr_db;
  unsigned spreading;        /* 11 engages the standard spreading code */
  uint64_t seed;
  unsigned samples_per_chip;
  int snr_ref;               /* cs_snr_reference */
} cs_channel_config;

CS_API cs_status cs_channel_config_default(cs_channel_config* out);

typedef struct cs_trial_config {
  unsigned tag_len_n;
  unsigned body_len;
  unsigned redundancy;  /* 0 or 4 */
  uint64_t trials;
  size_t header_len;
  unsigned threads;
  int measure_time;     /* nonzero: fill mean_decode_time_s from wall clock */
  cs_channel_config channel;
} cs_trial_config;

CS_API cs_status cs_trial_config_default(cs_trial_config* out);

typedef struct cs_ber_record {
  double snr_db;
  unsigned n_bits;
  uint64_t trials;
  uint64_t bit_errors;
  double ber;
  double ber_lo;
  double ber_hi;
  uint64_t frames_rejected;
  double mean_decode_time_s;
  uint64_t counted_bits;
} cs_ber_record;

/* One record per grid entry; out must hold grid_len records. */
CS_API cs_status cs_sim_ber_sweep(const cs_trial_config* cfg, const double* snr_grid,
                                  size_t grid_len, cs_ber_record* out);

typedef struct cs_bench_record {
  unsigned n_bits;
  double t_crc_s;
  double t_brute_s;
  int brute_refused;
} cs_bench_record;

/* Median per-frame decode times for both decoders; out holds grid_len
 * records. The exhaustive decoder is skipped (brute_refused set) where its
 * candidate space exceeds budget. */
CS_API cs_status cs_sim_timing_bench(const unsigned* n_grid, size_t grid_len,
                                     uint64_t trials, uint64_t budget, uint64_t seed,
                                     cs_bench_record* out);

typedef struct cs_redundancy_result {
  cs_ber_record plain;
  cs_ber_record redundant;
  /* error rate of the parity-protected tag with no frames screened out */
  double redundant_ber_all_frames;
} cs_redundancy_result;

/* Same trials with and without the parity tail, common random numbers. */
CS_API cs_status cs_sim_redundancy(const cs_trial_config* cfg, double snr_db,
                                   cs_redundancy_result* out);

/* 95% score interval for a count of errors out of total. */
CS_API cs_status cs_wilson_interval(uint64_t errors, uint64_t total, double* lo,
                                    double* hi);

#ifdef __cplusplus
}
#endif

#endif /* CRCSCATTER_H */
