#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "x0iso/pipeline.hpp"

namespace x0iso {

// Malformed documents, labels, schema drift: CLI exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Network failures and offline cache misses: CLI exit 3, alongside
// ResourceCapError from enumeration limits.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputDocument {
  GaloisImageInput input;
  std::string comment;             // preserved free text
  nlohmann::json expected;         // regression block, null if absent
  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

inline constexpr const char* kInputSchema = "galois-image-input/1";
inline constexpr const char* kReportSchema = "isolation-report/1";

bool valid_label(const std::string& label);  // e.g. "50.a3"

InputDocument parse_input(const std::string& json_text);
InputDocument load_input_file(const std::filesystem::path& path);
std::string emit_input(const InputDocument& doc);  // normalized, stable keys

// indent -1 emits one compact line (batch mode).
std::string emit_report_json(const Report& r, bool include_timings = true,
                             int indent = 2);
std::string emit_report_text(const Report& r);
Report parse_report_json(const std::string& json_text);

// Canonical serialization with timings stripped; byte-equal fingerprints mean
// equivalent reports.
std::string report_fingerprint(const Report& r);

std::filesystem::path default_cache_dir();  // X0ISO_CACHE_DIR overrides

GaloisImageInput parse_lmfdb_response(const std::string& body,
                                      const std::string& label);

// Cached HTTPS lookup of the mod-N image generators for an LMFDB curve label.
// Cache files hold the raw response body; offline mode never touches the
// network and requires a cached record.
GaloisImageInput fetch_lmfdb(
    const std::string& label, bool offline = false,
    const std::filesystem::path& cache_dir = default_cache_dir());

}  // namespace x0iso
