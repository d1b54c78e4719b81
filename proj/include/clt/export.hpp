#pragma once

#include <string>
#include <vector>

#include "clt/metrics.hpp"
#include "clt/scenario.hpp"
#include "clt/sweep.hpp"

namespace clt {

/// Run CSV header, in the fixed column order.
const std::vector<std::string>& run_csv_columns();

/// Values are printed with 17 significant digits so the text is a faithful
/// image of the doubles.
std::string run_csv(const RunLog& log);
void export_run(const RunLog& log, const std::string& path);

/// Metrics, config hash, seed and online check verdicts.
std::string run_summary_json(const RunLog& log, const MetricsReport& m);

std::string table_csv(const std::vector<CellResult>& table);
std::string table_json(const std::vector<CellResult>& table);
void export_table(const std::vector<CellResult>& table, const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace clt
