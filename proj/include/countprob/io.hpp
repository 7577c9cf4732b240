#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "countprob/model.hpp"
#include "countprob/montecarlo.hpp"

namespace countprob::io {

/// {"l_max": int, "c": [C_1, ...], "n": int|null}
nlohmann::json model_to_json(const CorrelationModel& model);
CorrelationModel model_from_json(const nlohmann::json& j);

/// "2.0,0.5" -> {2.0, 0.5}
std::vector<double> parse_coefficients(std::string_view text);
/// "0.2:0.5,0.8:0.5" -> atoms (p, weight)
MixtureSpec parse_mixture(std::string_view text);
/// "start:stop:count", endpoint-inclusive when count > 1.
std::vector<double> parse_grid(std::string_view text);

/// One count per line, or CSV "sample_index,count" with a header row.
std::vector<std::int64_t> read_counts(std::istream& in);

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

void write_pmf_csv(std::ostream& out, const Pmf& pmf);
nlohmann::json pmf_to_json(const Pmf& pmf);
void write_cf_csv(std::ostream& out, const CfGrid& grid);
nlohmann::json cf_to_json(const CfGrid& grid);
nlohmann::json report_to_json(const EstimateReport& report);

}  // namespace countprob::io
