/*
   Copyright 2026 The r2reduce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

// Serialization of rule descriptors and verification records.

#include <string>
#include <vector>

#include "json.hpp"
#include "r2/catalog.hpp"
#include "r2/reducer.hpp"

namespace r2 {

enum class Format { Human, Json, Csv };
/// "human", "json" or "csv"; throws DomainError otherwise.
Format parse_format(const std::string& name);

/// 15 significant digits.
std::string format_number(double x);

nlohmann::ordered_json rule_to_json(const Rule& rule);
nlohmann::ordered_json record_to_json(const VerificationRecord& rec);
nlohmann::ordered_json quad_to_json(const QuadResult& r);

struct SweepSummary {
    std::int64_t total = 0, passed = 0, failed = 0, not_converged = 0;
};
SweepSummary summarize(const std::vector<VerificationRecord>& records);
/// 0 all pass, 3 any non-converged evaluation, otherwise 1 when something failed.
int sweep_exit_code(const SweepSummary& summary);

std::string render_rules(const std::vector<const Rule*>& rules, Format format);
std::string render_sweep(const SweepConfig& config, const std::vector<VerificationRecord>& records, Format format);
std::string summary_line(const SweepSummary& summary, std::uint64_t seed);

/// Fixed CSV header for records.
extern const char* const kRecordCsvHeader;
std::string record_to_csv(const VerificationRecord& rec);

}  // namespace r2
