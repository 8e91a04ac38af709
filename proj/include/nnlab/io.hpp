#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "nnlab/oscillation.hpp"
#include "nnlab/simplex.hpp"
#include "nnlab/synthesizer.hpp"
#include "nnlab/words.hpp"

namespace nnlab {

inline constexpr const char* kVersion = "0.1.0";

/// Run-wide configuration; hashed into every output manifest.
struct RunConfig {
    bool exact = true;                          // exact | float arithmetic
    std::uint64_t exact_cap = 5000;             // max n for exact Cesaro levels
    std::uint64_t tower_bit_cap = 1u << 24;     // bit cap for tower()
    double checkpoint_rho = 1.25;               // geometric checkpoint ratio
    std::uint64_t seed = 1;

    std::string canonical() const;  // deterministic key=value serialization
};

std::uint64_t fnv1a64(const std::string& text);

using json = nlohmann::json;

json make_manifest(const RunConfig& config);

json word_to_json(const Word& w);
Word word_from_json(const json& j);  // accepts [1,2,...] or {"word": [...]}

json freq_to_json(const FreqVector& fv);
FreqVector freq_from_json(const json& j);

json simplex_to_json(const SimplexVector& q);
SimplexVector simplex_from_json(const json& j);  // runs validate

json stage_to_json(const Stage& s);
Stage stage_from_json(const json& j);
json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

json witness_to_json(const Witness& w);
json witnesses_to_json(const std::vector<Witness>& ws);

json lift_report_to_json(const LiftReport& r);

/// CSV rows (block, r, n0, n1, lo_num, lo_den, hi_num, hi_den, per, shortfall).
void write_analyze_csv(const OscillationReport& report, std::ostream& os,
                       const std::string& manifest_comment);

/// Reads a whole file as JSON; converts parse errors to UsageError with the
/// byte position.
json load_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nnlab
