#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "isosing/annulus2d.hpp"
#include "isosing/radial.hpp"

namespace isosing::cli {

// File-system failures; the CLI maps them to exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string join_path(const std::string& dir, const std::string& name);
void ensure_directory(const std::string& dir);

// Columns t, r, w, w_t, u, u_r; %.17g so a round trip is exact.
std::string profile_csv(const RadialProfile& prof);
// Columns t, r, theta, w, w_t, u.
std::string field_csv(const Field2D& f);

// Parses profile_csv output back. The branch and params come from the run
// configuration; r and u must agree with t and w under that branch, which is
// how a truncated, corrupted or mismatched file is rejected (InvalidInput).
RadialProfile parse_profile_csv(const std::string& text, const ProblemParams& p, const Branch& br, bool emden);

// Fixed-precision JSON dump: numbers go through %.17g and non-finite values
// become null, so reports are reproducible byte for byte.
std::string dump_json(const nlohmann::json& j);

}  // namespace isosing::cli
