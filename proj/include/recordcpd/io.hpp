#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "recordcpd/series.hpp"

namespace recordcpd {

// One dated observation from a station file. Temperatures are stored
// in degrees Celsius (ECA&D files carry tenths). Quality: 0 valid,
// 1 suspect, 9 missing.
struct station_record {
    int year = 0;
    int month = 0;
    int day = 0;
    double value = 0.0; // meaningless when quality == 9
    int quality = 0;
};

enum class station_format { csv, ecad };

struct ingest_result {
    std::vector<station_record> records;
    std::size_t suspect_count = 0; // quality == 1, kept by default
    std::size_t missing_count = 0; // quality == 9
};

ingest_result ingest(const std::string& path, station_format format);
ingest_result ingest_stream(std::istream& in, station_format format);

enum class pipeline_kind { annual_max, annual_mean, daily_matrix, raw };

const char* to_string(pipeline_kind p);
pipeline_kind pipeline_from_string(const std::string& s);

struct aggregate_options {
    // annual pipelines: true = keep only years with all 365 non-leap
    // days present; false = aggregate whatever days each year has.
    bool strict_years = false;
    // daily_matrix: a year is usable if at most this many of its 365
    // slots are missing (remaining gaps stay masked).
    int max_missing_days = 0;
    // drop quality-1 records instead of keeping them
    bool drop_suspect = false;
};

struct aggregated_series {
    series_matrix matrix;
    std::vector<int> years;     // per row
    std::vector<int> day_index; // per column, daily_matrix only (1..365)
};

aggregated_series aggregate(const std::vector<station_record>& records, pipeline_kind pipeline,
                            const aggregate_options& options = {});

// Plain matrix CSV: one row per time step, empty cell = missing. Values
// are written with 17 significant digits so a round trip is bit-exact.
void write_matrix_csv(std::ostream& out, const series_matrix& m);
series_matrix read_matrix_csv(std::istream& in);

// Calendar helpers (Feb 29 is dropped from day-of-year indexing).
bool is_leap_year(int year);
int days_in_month(int year, int month);
// 1..365, or 0 for Feb 29.
int day_of_year_365(int month, int day);

} // namespace recordcpd
