#ifndef IBCRB_CSV_HPP
#define IBCRB_CSV_HPP

#include <string>
#include <vector>

#include "ibcrb/experiments.hpp"

namespace ibcrb {

// 17 significant digits, enough to reproduce any double exactly.
std::string format_double(double v);

// Fixed, versioned schema:
//   mode,metric,series,nu,p,n,value,std_err,n_trials,seed,rng_algo
// Rows are emitted in canonical (series, metric, n) order so equal inputs
// produce byte-identical files.
extern const char* const k_summary_csv_header;

std::string summary_csv(std::vector<SummaryRow> rows, const std::string& rng_algo);

void write_file(const std::string& path, const std::string& content);

} // namespace ibcrb

#endif
