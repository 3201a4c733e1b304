#pragma once

// CSV input/output and the JSON run manifest.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmd/approx.hpp"
#include "gmd/simkit.hpp"

namespace gmd {

// 17 significant digits, so written values read back exactly.
std::string format_number(double v);

// Numbers from one CSV column. Without a header the first column is used
// and `column` must be empty. DataError on unparsable or missing fields.
std::vector<double> read_csv_column(const std::string& path, bool has_header,
                                    const std::string& column = "");

// Long format: q,row_label,value,stderr,excluded_count.
void write_quantile_table(std::ostream& os, const QuantileTable& table);
void write_approximation_report(std::ostream& os, const ApproximationReport& report);

// p_over_N,row_label,value,stderr,excluded_count with labels bias_<method>
// and rmse_<method>; values are scaled by 10.
void write_bias_mse_report(std::ostream& os, const BiasMseReport& report);

}  // namespace gmd
