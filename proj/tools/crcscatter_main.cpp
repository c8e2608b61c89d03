#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crcscatter.h"

namespace {

[[noreturn]] void fail_with(cs_status status, const std::string& context) {
  const char* detail = cs_last_error();
  std::cerr << "error: " << context << ": "
            << (detail != nullptr && detail[0] != '\0' ? detail
                                                       : cs_status_message(status))
            << "\n";
  std::exit(1);
}

void check(cs_status status, const std::string& context) {
  if (status != CS_OK) fail_with(status, context);
}

using BitsPtr = std::unique_ptr<cs_bits, void (*)(cs_bits*)>;
using FramePtr = std::unique_ptr<cs_frame, void (*)(cs_frame*)>;

BitsPtr own(cs_bits* p) { return BitsPtr(p, &cs_bits_free); }
FramePtr own(cs_frame* p) { return FramePtr(p, &cs_frame_free); }

BitsPtr bits_from_hex(const std::string& text, const std::string& context) {
  cs_bits* b = nullptr;
  check(cs_bits_from_hex(text.c_str(), &b), context);
  return own(b);
}

BitsPtr bits_from_string(const std::string& text, const std::string& context) {
  cs_bits* b = nullptr;
  check(cs_bits_from_bit_string(text.c_str(), &b), context);
  return own(b);
}

std::string bits_to_string(const cs_bits* bits) {
  size_t len = 0;
  check(cs_bits_len(bits, &len), "bit length");
  std::vector<char> buf(len + 1);
  check(cs_bits_to_bit_string(bits, buf.data(), buf.size()), "formatting bits");
  return std::string(buf.data());
}

// Accepts hex register values with or without a 0x prefix.
std::uint32_t parse_reg(const std::string& text, const std::string& context) {
  std::string t = text;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  if (t.empty() || t.size() > 8) fail_with(CS_EPARSE, context + ": bad hex value");
  std::uint32_t value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value, 16);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    fail_with(CS_EPARSE, context + ": bad hex value '" + text + "'");
  }
  return value;
}

std::string format_reg(std::uint32_t value, unsigned width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%0*X", static_cast<int>((width + 3) / 4), value);
  return buf;
}

// Plain integers plus the power shorthand base^exp.
std::uint64_t parse_budget(const std::string& text) {
  const auto caret = text.find('^');
  const auto parse_int = [&](const std::string& part) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v, 10);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
      fail_with(CS_EPARSE, "budget: bad integer '" + part + "'");
    }
    return v;
  };
  if (caret == std::string::npos) return parse_int(text);
  const std::uint64_t base = parse_int(text.substr(0, caret));
  const std::uint64_t exp = parse_int(text.substr(caret + 1));
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) {
      fail_with(CS_EPARSE, "budget: value overflows 64 bits");
    }
    out *= base;
  }
  return out;
}

// Locale independent shortest decimal form, identical on every run.
std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_u64(std::uint64_t value) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

struct CrcOptions {
  unsigned width = 32;
  std::string poly, init, final_xor;
  std::string hex, bits;

  void attach(CLI::App* cmd, bool with_data) {
    cmd->add_option("--width", width, "Register width: 4, 8, 16 or 32")
        ->default_val(32);
    cmd->add_option("--poly", poly, "Override polynomial (hex)");
    cmd->add_option("--init", init, "Override initial XOR value (hex)");
    cmd->add_option("--final", final_xor, "Override final XOR value (hex)");
    if (with_data) {
      auto* h = cmd->add_option("--hex", hex, "Data as a hex string (4 bits per digit)");
      cmd->add_option("--bits", bits, "Data as a 0/1 string")->excludes(h);
    }
  }

  cs_crc_params params() const {
    cs_crc_params p;
    check(cs_crc_params_default(width, &p), "crc parameters");
    if (!poly.empty()) p.poly = parse_reg(poly, "--poly");
    if (!init.empty()) p.init_xor = parse_reg(init, "--init");
    if (!final_xor.empty()) p.final_xor = parse_reg(final_xor, "--final");
    return p;
  }

  BitsPtr data() const {
    if (!hex.empty()) return bits_from_hex(hex, "--hex");
    if (!bits.empty()) return bits_from_string(bits, "--bits");
    fail_with(CS_EINVAL, "data required: pass --hex or --bits");
  }
};

std::vector<std::uint8_t> resolve_header(const std::string& header_hex,
                                         std::size_t header_len) {
  if (header_hex.empty()) {
    std::vector<std::uint8_t> header(header_len);
    check(cs_default_header(header.data(), header.size()), "default header");
    return header;
  }
  BitsPtr bits = bits_from_hex(header_hex, "--header");
  size_t nbits = 0;
  check(cs_bits_len(bits.get(), &nbits), "--header");
  if (nbits % 8 != 0) fail_with(CS_EPARSE, "--header: whole octets required");
  std::vector<std::uint8_t> packed(nbits);
  check(cs_bits_copy(bits.get(), packed.data(), packed.size()), "--header");
  std::vector<std::uint8_t> header(nbits / 8);
  for (size_t i = 0; i < header.size(); ++i) {
    std::uint8_t b = 0;
    for (size_t j = 0; j < 8; ++j) b = static_cast<std::uint8_t>((b << 1) | packed[8 * i + j]);
    header[i] = b;
  }
  return header;
}

FramePtr frame_from_text(const std::string& hex, std::size_t header_len,
                         std::size_t body_len, bool packet) {
  cs_frame* f = nullptr;
  if (packet) {
    check(cs_packet_from_hex(hex.c_str(), header_len, body_len, &f), "parsing packet");
  } else {
    check(cs_frame_from_hex(hex.c_str(), header_len, body_len, &f), "parsing frame");
  }
  return own(f);
}

std::string frame_to_text(const cs_frame* frame, bool packet) {
  for (size_t cap = 256;; cap *= 2) {
    std::vector<char> buf(cap);
    const cs_status st = packet ? cs_packet_to_hex(frame, buf.data(), buf.size())
                                : cs_frame_to_hex(frame, buf.data(), buf.size());
    if (st == CS_OK) return std::string(buf.data());
    if (st != CS_ENOSPACE) fail_with(st, "serializing frame");
  }
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::out | std::ios::trunc);
    if (!file_.is_open()) {
      std::cerr << "error: cannot open " << path << " for writing\n";
      std::exit(1);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Options shared by every simulation subcommand.
struct SimOptions {
  unsigned n = 32;
  unsigned body_len = 0;  // 0: same as n
  std::uint64_t trials = 20000;
  std::uint64_t seed = 42;
  unsigned redundancy = 0;
  unsigned threads = 1;
  unsigned spreading = 11;
  unsigned samples_per_chip = 4;
  std::string snr_ref = "chip";
  bool measure_time = false;
  std::size_t header_len = 24;
  std::string out;

  void attach(CLI::App* cmd, bool with_n = true) {
    if (with_n) cmd->add_option("--n", n, "Tag length in bits")->default_val(32);
    cmd->add_option("--body-len", body_len,
                    "Frame body length in bits (default: tag length)");
    cmd->add_option("--trials", trials, "Monte-Carlo trials per point")
        ->default_val(20000);
    cmd->add_option("--seed", seed, "Master RNG seed")->default_val(42);
    cmd->add_option("--threads", threads, "Worker threads")->default_val(1);
    cmd->add_option("--spreading", spreading, "Chips per bit")->default_val(11);
    cmd->add_option("--samples-per-chip", samples_per_chip, "Samples per chip")
        ->default_val(4);
    cmd->add_option("--snr-ref", snr_ref, "SNR reference: chip (per sample) or bit (Eb/N0)")
        ->default_val("chip")
        ->check(CLI::IsMember({"chip", "bit"}));
    cmd->add_option("--header-len", header_len, "Header length in octets")
        ->default_val(24);
    cmd->add_flag("--measure-time", measure_time,
                  "Fill mean_decode_time_s from the wall clock (output is then "
                  "no longer byte reproducible)");
    cmd->add_option("--out", out, "Output CSV path, - for stdout")->default_val("-");
  }

  cs_trial_config trial_config(unsigned redundancy_bits) const {
    cs_trial_config cfg;
    check(cs_trial_config_default(&cfg), "trial defaults");
    cfg.tag_len_n = n;
    cfg.body_len = body_len == 0 ? n : body_len;
    cfg.redundancy = redundancy_bits;
    cfg.trials = trials;
    cfg.header_len = header_len;
    cfg.threads = threads;
    cfg.measure_time = measure_time ? 1 : 0;
    cfg.channel.seed = seed;
    cfg.channel.spreading = spreading;
    cfg.channel.samples_per_chip = samples_per_chip;
    cfg.channel.snr_ref = (snr_ref == "bit") ? CS_SNR_PER_BIT : CS_SNR_PER_SAMPLE;
    return cfg;
  }

  void echo(const std::string& what) const {
    std::cerr << "# " << what << ": n=" << n << " body_len=" << (body_len == 0 ? n : body_len)
              << " trials=" << trials << " seed=" << seed << " threads=" << threads
              << " spreading=" << spreading << " samples_per_chip=" << samples_per_chip
              << " snr_ref=" << snr_ref << " header_len=" << header_len << "\n";
  }
};

const char kBerHeader[] =
    "snr_db,n_bits,trials,bit_errors,ber,ber_lo,ber_hi,frames_rejected,mean_decode_time_s";

void write_ber_row(std::ostream& os, const cs_ber_record& r) {
  os << format_double(r.snr_db) << ',' << r.n_bits << ',' << format_u64(r.trials) << ','
     << format_u64(r.bit_errors) << ',' << format_double(r.ber) << ','
     << format_double(r.ber_lo) << ',' << format_double(r.ber_hi) << ','
     << format_u64(r.frames_rejected) << ',' << format_double(r.mean_decode_time_s)
     << '\n';
}

int run_crc_compute(const CrcOptions& opts, bool raw, const std::string& start_reg) {
  const cs_crc_params params = opts.params();
  const BitsPtr data = opts.data();
  std::uint32_t result = 0;
  if (raw) {
    const std::uint32_t r0 =
        start_reg.empty() ? 0u : parse_reg(start_reg, "--start-reg");
    check(cs_crc_raw(&params, r0, data.get(), &result), "crc raw");
  } else {
    check(cs_crc_full(&params, data.get(), &result), "crc compute");
  }
  std::cout << format_reg(result, params.width) << "\n";
  return 0;
}

int run_crc_reverse(const CrcOptions& opts, const std::string& reg) {
  const cs_crc_params params = opts.params();
  const BitsPtr data = opts.data();
  std::uint32_t result = 0;
  check(cs_crc_reverse(&params, parse_reg(reg, "--reg"), data.get(), &result),
        "crc reverse");
  std::cout << format_reg(result, params.width) << "\n";
  return 0;
}

int run_crc_solve(const CrcOptions& opts, const std::string& final_reg,
                  const std::string& init_reg) {
  const cs_crc_params params = opts.params();
  cs_bits* word = nullptr;
  check(cs_crc_solve_word(&params, parse_reg(final_reg, "--reg-final"),
                          parse_reg(init_reg, "--reg-init"), &word),
        "crc solve");
  const BitsPtr owned = own(word);
  std::uint32_t value = 0;
  check(cs_bits_to_word(owned.get(), params.width, &value), "crc solve");
  std::cout << format_reg(value, params.width) << "\n";
  return 0;
}

struct DecodeOptions {
  std::string frame_hex, packet_hex;
  std::size_t header_len = 24;
  std::size_t body_len = 32;
  std::string mode = "reverse";
  std::string budget = "2^24";
  unsigned redundancy = 0;
};

int decode_one(const std::string& hex, bool packet, const DecodeOptions& opts) {
  const FramePtr frame = frame_from_text(hex, opts.header_len, opts.body_len, packet);
  cs_bits* body_raw = nullptr;
  check(cs_frame_body(frame.get(), &body_raw), "frame body");
  const BitsPtr body = own(body_raw);

  BitsPtr original = own(static_cast<cs_bits*>(nullptr));
  BitsPtr tag = own(static_cast<cs_bits*>(nullptr));
  int accepted = 0;
  std::string prefix_text;

  if (opts.mode == "brute") {
    cs_bits* orig_raw = nullptr;
    check(cs_brute_force_decode(frame.get(), parse_budget(opts.budget), &orig_raw),
          "brute force decode");
    original = own(orig_raw);
    cs_bits* tag_raw = nullptr;
    check(cs_decode_tag(body.get(), original.get(), &tag_raw), "tag extraction");
    tag = own(tag_raw);
    check(cs_check_redundancy(tag.get(), opts.redundancy, &accepted), "parity check");
    prefix_text = "na";
  } else {
    cs_bits* orig_raw = nullptr;
    cs_bits* tag_raw = nullptr;
    int prefix = 0;
    check(cs_decode_frame(frame.get(), opts.redundancy, &orig_raw, &tag_raw, &accepted,
                          &prefix),
          "decode");
    original = own(orig_raw);
    tag = own(tag_raw);
    prefix_text = prefix ? "yes" : "no";
  }

  std::cout << "original=" << bits_to_string(original.get())
            << " tag=" << bits_to_string(tag.get())
            << " accepted=" << (accepted ? "yes" : "no")
            << " prefix_consistent=" << prefix_text << " mode=" << opts.mode << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CRC-based backscatter decoding lab"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Config file with key = value lines; command line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", [] {
    const cs_status st = cs_self_check();
    std::string line = std::string("crcscatter ") + cs_version();
    line += (st == CS_OK) ? " (self check passed)" : " (SELF CHECK FAILED)";
    return line;
  });

  // ---- crc ----
  auto* crc = app.add_subcommand("crc", "Checksum register operations");
  crc->require_subcommand(1);

  CrcOptions compute_opts;
  bool compute_raw = false;
  std::string compute_start;
  auto* compute = crc->add_subcommand("compute", "Checksum of a data sequence");
  compute_opts.attach(compute, true);
  compute->add_flag("--raw", compute_raw,
                    "Bare register recursion, no initial or final XOR");
  compute->add_option("--start-reg", compute_start,
                      "Starting register for --raw (hex, default 0)");

  CrcOptions reverse_opts;
  std::string reverse_reg;
  auto* reverse = crc->add_subcommand(
      "reverse", "Run the register recursion backwards over known data");
  reverse_opts.attach(reverse, true);
  reverse->add_option("--reg", reverse_reg, "Final register value (hex)")->required();

  CrcOptions solve_opts;
  std::string solve_final, solve_init;
  auto* solve = crc->add_subcommand(
      "solve", "Data word taking the register from one state to another");
  solve_opts.attach(solve, false);
  solve->add_option("--reg-final", solve_final, "Final register value (hex)")->required();
  solve->add_option("--reg-init", solve_init, "Initial register value (hex)")->required();

  // ---- frame ----
  auto* frame = app.add_subcommand("frame", "MAC frame construction and parsing");
  frame->require_subcommand(1);

  std::string build_header, build_body_hex, build_body_bits;
  std::size_t build_header_len = 24;
  bool build_packet = false;
  auto* build = frame->add_subcommand("build", "Compute the checksum and serialize");
  build->add_option("--header", build_header, "Header octets as hex (default: ramp)");
  build->add_option("--header-len", build_header_len,
                    "Default header length in octets")->default_val(24);
  auto* bh = build->add_option("--body-hex", build_body_hex, "Body as hex");
  build->add_option("--body-bits", build_body_bits, "Body as a 0/1 string")->excludes(bh);
  build->add_flag("--packet", build_packet, "Wrap with the radio markers");

  std::string parse_hex;
  std::size_t parse_header_len = 24, parse_body_len = 32;
  bool parse_packet = false;
  auto* parse = frame->add_subcommand("parse", "Split a hex dump into fields");
  parse->add_option("--hex", parse_hex, "Serialized frame")->required();
  parse->add_option("--header-len", parse_header_len, "Header octets")->default_val(24);
  parse->add_option("--body-len", parse_body_len, "Body bits")->required();
  parse->add_flag("--packet", parse_packet, "Input carries the radio markers");

  std::string validate_hex;
  std::size_t validate_header_len = 24, validate_body_len = 32;
  bool validate_packet = false;
  auto* validate = frame->add_subcommand(
      "validate", "Exit 0 when the stored checksum matches, 1 otherwise");
  validate->add_option("--hex", validate_hex, "Serialized frame")->required();
  validate->add_option("--header-len", validate_header_len, "Header octets")
      ->default_val(24);
  validate->add_option("--body-len", validate_body_len, "Body bits")->required();
  validate->add_flag("--packet", validate_packet, "Input carries the radio markers");

  // ---- decode ----
  DecodeOptions dec;
  auto* decode = app.add_subcommand(
      "decode", "Recover original body and tag bits from a captured frame");
  auto* dec_frame = decode->add_option("--frame", dec.frame_hex, "Frame hex dump");
  decode->add_option("--packet", dec.packet_hex, "Packet hex dump with radio markers")
      ->excludes(dec_frame);
  decode->add_option("--header-len", dec.header_len, "Header octets")->default_val(24);
  decode->add_option("--body-len", dec.body_len, "Body bits")->required();
  decode->add_option("--mode", dec.mode, "Decoder: reverse or brute")
      ->default_val("reverse")
      ->check(CLI::IsMember({"reverse", "brute"}));
  decode->add_option("--budget", dec.budget,
                     "Candidate budget for brute mode, e.g. 2^24")->default_val("2^24");
  decode->add_option("--redundancy", dec.redundancy, "Parity tail length: 0 or 4")
      ->default_val(0);

  // ---- simlab ----
  auto* simlab = app.add_subcommand("simlab", "Monte-Carlo channel experiments");
  simlab->require_subcommand(1);

  SimOptions ber_opts;
  double snr_from = -15.0, snr_to = -5.0, snr_step = 0.5;
  std::vector<double> snr_list;
  auto* ber = simlab->add_subcommand("ber", "Tag error rate across an SNR sweep");
  ber_opts.attach(ber);
  ber->add_option("--redundancy", ber_opts.redundancy, "Parity tail length: 0 or 4")
      ->default_val(0);
  ber->add_option("--snr-from", snr_from, "Sweep start, dB")->default_val(-15.0);
  ber->add_option("--snr-to", snr_to, "Sweep end, dB (inclusive)")->default_val(-5.0);
  ber->add_option("--snr-step", snr_step, "Sweep step, dB")->default_val(0.5);
  ber->add_option("--snr", snr_list, "Explicit SNR points, overrides the sweep range")
      ->delimiter(',');

  SimOptions bench_opts;
  std::vector<unsigned> bench_grid{4, 6, 8, 10, 12, 14, 16};
  std::string bench_budget = "2^24";
  auto* bench = simlab->add_subcommand(
      "bench", "Median decode times for both decoders across tag lengths");
  bench->add_option("--n", bench_grid, "Tag lengths, comma separated")->delimiter(',');
  bench->add_option("--budget", bench_budget, "Brute-force candidate budget, e.g. 2^24")
      ->default_val("2^24");
  bench->add_option("--trials", bench_opts.trials, "Frames per tag length")
      ->default_val(100);
  bench->add_option("--seed", bench_opts.seed, "Master RNG seed")->default_val(42);
  bench->add_option("--out", bench_opts.out, "Output CSV path, - for stdout")
      ->default_val("-");

  SimOptions red_opts;
  double red_snr = -10.0;
  auto* redundancy = simlab->add_subcommand(
      "redundancy", "Plain and parity-protected arms on common random numbers");
  red_opts.attach(redundancy);
  redundancy->add_option("--snr", red_snr, "Channel SNR, dB")->default_val(-10.0);

  CLI11_PARSE(app, argc, argv);

  if (compute->parsed()) return run_crc_compute(compute_opts, compute_raw, compute_start);
  if (reverse->parsed()) return run_crc_reverse(reverse_opts, reverse_reg);
  if (solve->parsed()) return run_crc_solve(solve_opts, solve_final, solve_init);

  if (build->parsed()) {
    const std::vector<std::uint8_t> header = resolve_header(build_header, build_header_len);
    BitsPtr body = own(static_cast<cs_bits*>(nullptr));
    if (!build_body_hex.empty()) {
      body = bits_from_hex(build_body_hex, "--body-hex");
    } else if (!build_body_bits.empty()) {
      body = bits_from_string(build_body_bits, "--body-bits");
    } else {
      fail_with(CS_EINVAL, "body required: pass --body-hex or --body-bits");
    }
    cs_frame* f = nullptr;
    check(cs_frame_build(header.data(), header.size(), body.get(), &f), "frame build");
    const FramePtr owned = own(f);
    std::uint32_t fcs = 0;
    check(cs_frame_fcs(owned.get(), &fcs), "frame fcs");
    std::cerr << "# fcs=" << format_reg(fcs, 32) << "\n";
    std::cout << frame_to_text(owned.get(), build_packet) << "\n";
    return 0;
  }

  if (parse->parsed() || validate->parsed()) {
    const bool validating = validate->parsed();
    const FramePtr f = frame_from_text(validating ? validate_hex : parse_hex,
                                       validating ? validate_header_len : parse_header_len,
                                       validating ? validate_body_len : parse_body_len,
                                       validating ? validate_packet : parse_packet);
    int ok = 0;
    check(cs_frame_validate_fcs(f.get(), &ok), "checksum validation");
    if (validating) {
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? 0 : 1;
    }
    size_t header_len = 0;
    check(cs_frame_header_len(f.get(), &header_len), "header length");
    std::vector<std::uint8_t> header(header_len);
    check(cs_frame_copy_header(f.get(), header.data(), header.size()), "header bytes");
    std::string header_hex;
    for (std::uint8_t b : header) {
      char buf[3];
      std::snprintf(buf, sizeof buf, "%02X", b);
      header_hex += buf;
    }
    cs_bits* body_raw = nullptr;
    check(cs_frame_body(f.get(), &body_raw), "frame body");
    const BitsPtr body = own(body_raw);
    std::uint32_t fcs = 0;
    check(cs_frame_fcs(f.get(), &fcs), "frame fcs");
    std::cout << "header=" << header_hex << " body=" << bits_to_string(body.get())
              << " fcs=" << format_reg(fcs, 32) << " fcs_valid=" << (ok ? "yes" : "no")
              << "\n";
    return 0;
  }

  if (decode->parsed()) {
    if (!dec.frame_hex.empty()) return decode_one(dec.frame_hex, false, dec);
    if (!dec.packet_hex.empty()) return decode_one(dec.packet_hex, true, dec);
    // no inline dump: read one hex dump per line from stdin
    std::string line;
    while (std::getline(std::cin, line)) {
      if (line.empty()) continue;
      decode_one(line, false, dec);
    }
    return 0;
  }

  if (ber->parsed()) {
    std::vector<double> grid = snr_list;
    if (grid.empty()) {
      if (snr_step <= 0.0) fail_with(CS_EINVAL, "--snr-step must be positive");
      if (snr_to < snr_from) fail_with(CS_EINVAL, "--snr-to must be >= --snr-from");
      for (double v = snr_from; v <= snr_to + snr_step * 1e-9; v += snr_step) {
        grid.push_back(v);
      }
    }
    const cs_trial_config cfg = ber_opts.trial_config(ber_opts.redundancy);
    std::vector<cs_ber_record> records(grid.size());
    check(cs_sim_ber_sweep(&cfg, grid.data(), grid.size(), records.data()), "ber sweep");
    ber_opts.echo("ber");
    std::cerr << "# redundancy=" << ber_opts.redundancy << " points=" << grid.size()
              << "\n";
    OutputFile out(ber_opts.out);
    out.stream() << kBerHeader << '\n';
    for (const auto& r : records) write_ber_row(out.stream(), r);
    return 0;
  }

  if (bench->parsed()) {
    const std::uint64_t budget = parse_budget(bench_budget);
    std::vector<cs_bench_record> records(bench_grid.size());
    check(cs_sim_timing_bench(bench_grid.data(), bench_grid.size(), bench_opts.trials,
                              budget, bench_opts.seed, records.data()),
          "timing bench");
    std::cerr << "# bench: trials=" << bench_opts.trials << " budget=" << budget
              << " seed=" << bench_opts.seed << "\n";
    OutputFile out(bench_opts.out);
    out.stream() << "n_bits,t_crc_s,t_brute_s\n";
    for (const auto& r : records) {
      out.stream() << r.n_bits << ',' << format_double(r.t_crc_s) << ',';
      if (r.brute_refused) {
        out.stream() << "refused";
      } else {
        out.stream() << format_double(r.t_brute_s);
      }
      out.stream() << '\n';
    }
    return 0;
  }

  if (redundancy->parsed()) {
    const cs_trial_config cfg = red_opts.trial_config(0);
    cs_redundancy_result result;
    check(cs_sim_redundancy(&cfg, red_snr, &result), "redundancy experiment");
    red_opts.echo("redundancy");
    std::cerr << "# snr=" << format_double(red_snr) << "\n";
    OutputFile out(red_opts.out);
    const auto strip_newline = [](std::string row) {
      row.pop_back();
      return row;
    };
    std::ostringstream plain_row, red_row;
    write_ber_row(plain_row, result.plain);
    write_ber_row(red_row, result.redundant);
    out.stream() << "arm,redundancy," << kBerHeader << ",ber_all_frames\n";
    // the plain arm screens nothing out, so its all-frames rate is its rate
    out.stream() << "plain,0," << strip_newline(plain_row.str()) << ','
                 << format_double(result.plain.ber) << '\n';
    out.stream() << "redundant,4," << strip_newline(red_row.str()) << ','
                 << format_double(result.redundant_ber_all_frames) << '\n';
    return 0;
  }

  return 0;
}
