// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cghw/analysis.hpp"
#include "cghw/chaotic_map.hpp"
#include "cghw/cipher.hpp"
#include "cghw/errors.hpp"
#include "cghw/io.hpp"
#include "cghw/key_schedule.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kFormat = 3,
  kDimension = 4,
  kDegenerate = 5,
  kDomain = 6,
};

struct EncryptArgs {
  std::string in, out, keyout, key, payload_pgm;
  std::string mode = "lossless16";
  bool strict_eq14 = false;
  bool data_sort = false;
};

struct DecryptArgs {
  std::string in, key, out;
};

struct AnalyzeArgs {
  std::string in, ref, out, json;
  std::uint64_t seed = cghw::kDefaultSeed;
  std::size_t pairs = cghw::kDefaultPairs;
};

struct KeystreamArgs {
  double x0 = 0.6;
  double a = 2.0;
  std::size_t n = 16;
  std::size_t burn_in = 0;
  int degree = 2;
  std::optional<int> decimals;
};

void write_text(const std::string& text, const std::filesystem::path& path) {
  cghw::write_file_atomic(
      path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int run_encrypt(const EncryptArgs& args) {
  const cghw::GrayImage plain = cghw::read_pgm(args.in);
  cghw::KeyMaterial keys;
  if (!args.key.empty()) {
    keys = cghw::read_key(args.key);
  } else {
    cghw::DeriveOptions options;
    options.strict_eq14 = args.strict_eq14;
    options.permutation =
        args.data_sort ? cghw::PermutationVariant::kDataSort : cghw::PermutationVariant::kKeyed;
    keys = cghw::derive_all(plain, options);
  }
  const cghw::CipherMode mode =
      args.mode == "paper8" ? cghw::CipherMode::kPaper8 : cghw::CipherMode::kLossless16;
  const cghw::CipherEnvelope env = cghw::encrypt(plain, keys, mode);

  if (!args.payload_pgm.empty() && mode != cghw::CipherMode::kPaper8) {
    throw cghw::DomainError("--payload-pgm needs --mode paper8");
  }
  cghw::write_envelope(env, args.out);
  try {
    if (!args.keyout.empty()) {
      cghw::write_key(keys, args.keyout);
    }
    if (!args.payload_pgm.empty()) {
      cghw::write_pgm(cghw::payload_image(env), args.payload_pgm);
    }
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(args.out, ec);
    if (!args.keyout.empty()) std::filesystem::remove(args.keyout, ec);
    throw;
  }
  return kOk;
}

int run_decrypt(const DecryptArgs& args) {
  const cghw::KeyMaterial keys = cghw::read_key(args.key);
  const cghw::CipherEnvelope env = cghw::read_envelope(args.in);
  cghw::write_pgm(cghw::decrypt(env, keys), args.out);
  return kOk;
}

int run_analyze(const AnalyzeArgs& args) {
  const cghw::GrayImage img = cghw::read_pgm(args.in);
  std::optional<cghw::GrayImage> ref;
  if (!args.ref.empty()) {
    ref = cghw::read_pgm(args.ref);
  }
  const cghw::MetricsReport report =
      cghw::analyze(img, ref ? &*ref : nullptr, args.seed, args.pairs);
  write_text(cghw::to_text(report), args.out);
  if (!args.json.empty()) {
    write_text(cghw::to_json(report), args.json);
  }
  return kOk;
}

int run_keystream(const KeystreamArgs& args) {
  cghw::ChaoticParams params{args.x0, args.a, args.degree};
  cghw::OrbitOptions options;
  options.burn_in = args.burn_in;
  options.quality_gate = false;
  const cghw::KeyStream stream = cghw::orbit(params, args.n, options);
  for (std::size_t t = 0; t < stream.size(); ++t) {
    char buf[48];
    if (args.decimals) {
      std::snprintf(buf, sizeof buf, "%.*f", *args.decimals, stream[t]);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", stream[t]);
    }
    std::cout << 's' << (t + 1) << ' ' << buf << '\n';
  }
  if (stream.degeneracy_remaps() > 0) {
    std::cerr << "cghw: note: degeneracy rule fired " << stream.degeneracy_remaps()
              << " time(s)\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic gradient Haar wavelet image cipher"};
  app.require_subcommand(1);

  EncryptArgs enc;
  auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a binary PGM image");
  enc_cmd->add_option("--in", enc.in, "Plain image (P5 PGM)")->required();
  enc_cmd->add_option("--out", enc.out, "Ciphertext container")->required();
  enc_cmd->add_option("--keyout", enc.keyout, "Where to write the derived key");
  enc_cmd->add_option("--key", enc.key, "Use this key file instead of deriving one");
  enc_cmd->add_option("--mode", enc.mode, "Quantization mode")
      ->check(CLI::IsMember({"lossless16", "paper8"}));
  enc_cmd->add_flag("--strict-eq14", enc.strict_eq14, "Use a = N(1+x) for the control parameter");
  enc_cmd->add_flag("--data-sort", enc.data_sort,
                    "Sort sub-bands by row/column means (not decryptable)");
  enc_cmd->add_option("--payload-pgm", enc.payload_pgm, "Also write the paper8 payload as PGM");

  DecryptArgs dec;
  auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt a ciphertext container");
  dec_cmd->add_option("--in", dec.in, "Ciphertext container")->required();
  dec_cmd->add_option("--key", dec.key, "Key file")->required();
  dec_cmd->add_option("--out", dec.out, "Decrypted image (P5 PGM)")->required();

  AnalyzeArgs ana;
  auto* ana_cmd = app.add_subcommand("analyze", "Security metrics of an 8-bit image");
  ana_cmd->add_option("--in", ana.in, "Image (P5 PGM)")->required();
  ana_cmd->add_option("--ref", ana.ref, "Second image for NPCR/UACI");
  ana_cmd->add_option("--seed", ana.seed, "Seed for adjacent-pair sampling");
  ana_cmd->add_option("--pairs", ana.pairs, "Adjacent pairs per direction");
  ana_cmd->add_option("--out", ana.out, "Text report")->required();
  ana_cmd->add_option("--json", ana.json, "Optional JSON report");

  KeystreamArgs ks;
  auto* ks_cmd = app.add_subcommand("keystream", "Print an orbit of the rational order map");
  ks_cmd->add_option("--x0", ks.x0, "Seed in (0,1)");
  ks_cmd->add_option("--a", ks.a, "Control parameter > 0");
  ks_cmd->add_option("--n", ks.n, "Number of values")->check(CLI::PositiveNumber);
  ks_cmd->add_option("--burn-in", ks.burn_in, "Iterations discarded first");
  ks_cmd->add_option("--degree", ks.degree, "Map degree N")->check(CLI::PositiveNumber);
  ks_cmd->add_option("--decimals", ks.decimals, "Round output to this many decimals")
      ->check(CLI::Range(0, 17));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*enc_cmd) return run_encrypt(enc);
    if (*dec_cmd) return run_decrypt(dec);
    if (*ana_cmd) return run_analyze(ana);
    if (*ks_cmd) return run_keystream(ks);
  } catch (const cghw::IoError& e) {
    std::cerr << "cghw: I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const cghw::FormatError& e) {
    std::cerr << "cghw: format error: " << e.what() << '\n';
    return kFormat;
  } catch (const cghw::DimensionError& e) {
    std::cerr << "cghw: dimension error: " << e.what() << '\n';
    return kDimension;
  } catch (const cghw::DegenerateStreamError& e) {
    std::cerr << "cghw: degenerate stream: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "cghw: error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
