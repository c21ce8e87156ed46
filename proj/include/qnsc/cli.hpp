#pragma once

#include "qnsc/encoding.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnsc {

// Exit codes: usage and domain errors are distinguishable from I/O failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2; // bad flags, constraint violations, domain errors
inline constexpr int kExitIo = 3;    // unwritable/unreadable files

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parsed experiment configuration; one subcommand per run.
struct RunConfig {
    std::string command;           // demo | sweep | attack | otp-check
    unsigned M = 32;
    double mean_photons = 10000.0;
    std::uint64_t pulses = 10000;
    std::string seed_key_hex = "ace1";
    std::string taps_csv = "16,15,13,4";
    ChannelModel channel = ChannelModel::photon_counting;
    std::uint64_t rng_seed = 0;    // mandatory on the command line
    std::uint64_t known_plaintext_len = 64;
    std::string output_path;       // empty -> stdout
    bool majority_vote = false;
};

// Parses argv-style arguments (no program name). Flags override config-file
// values. Throws CLI11 parse errors out through the return code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Executes a parsed configuration, writing reports to `out` (or to
// config.output_path when set).
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace qnsc
