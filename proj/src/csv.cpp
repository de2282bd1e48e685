#include "ibcrb/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <tuple>

namespace ibcrb {

const char* const k_summary_csv_header =
    "mode,metric,series,nu,p,n,value,std_err,n_trials,seed,rng_algo";

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string summary_csv(std::vector<SummaryRow> rows, const std::string& rng_algo) {
    std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
        return std::make_tuple(std::string_view(a.series),
                               std::string_view(metric_name(a.metric)), a.n) <
               std::make_tuple(std::string_view(b.series),
                               std::string_view(metric_name(b.metric)), b.n);
    });
    std::string out = k_summary_csv_header;
    out += '\n';
    for (const SummaryRow& r : rows) {
        out += mode_name(r.mode);
        out += ',';
        out += metric_name(r.metric);
        out += ',';
        out += r.series;
        out += ',';
        out += format_double(r.nu);
        out += ',';
        out += std::to_string(r.p);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += format_double(r.value);
        out += ',';
        out += format_double(r.std_err);
        out += ',';
        out += std::to_string(r.n_trials);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += rng_algo;
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw ConfigError("cannot open output file: " + path);
    }
    os << content;
    if (!os) {
        throw ConfigError("failed writing output file: " + path);
    }
}

} // namespace ibcrb
