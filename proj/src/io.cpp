#include "recordcpd/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace recordcpd {

const char* to_string(pipeline_kind p) {
    switch (p) {
    case pipeline_kind::annual_max: return "annual-max";
    case pipeline_kind::annual_mean: return "annual-mean";
    case pipeline_kind::daily_matrix: return "daily";
    case pipeline_kind::raw: return "raw";
    }
    return "?";
}

pipeline_kind pipeline_from_string(const std::string& s) {
    if (s == "annual-max") return pipeline_kind::annual_max;
    if (s == "annual-mean") return pipeline_kind::annual_mean;
    if (s == "daily") return pipeline_kind::daily_matrix;
    if (s == "raw") return pipeline_kind::raw;
    throw config_error("unknown pipeline: " + s);
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

int day_of_year_365(int month, int day) {
    static constexpr int offsets[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    if (month == 2 && day == 29) return 0;
    return offsets[month - 1] + day;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

bool parse_int(const std::string& s, int& out) {
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !s.empty();
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

void validate_date(int year, int month, int day, std::size_t line_no) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        throw parse_error("invalid date", line_no);
}

ingest_result ingest_csv(std::istream& in) {
    ingest_result out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (!header_seen) {
            if (fields.size() < 2 || trim(fields[0]) != "date" || trim(fields[1]) != "value")
                throw parse_error("expected header 'date,value'", line_no);
            header_seen = true;
            continue;
        }
        if (fields.size() < 2) throw parse_error("expected 'date,value'", line_no);
        const std::string& ds = fields[0];
        int y = 0, m = 0, d = 0;
        if (ds.size() != 10 || ds[4] != '-' || ds[7] != '-' || !parse_int(ds.substr(0, 4), y) ||
            !parse_int(ds.substr(5, 2), m) || !parse_int(ds.substr(8, 2), d))
            throw parse_error("invalid date '" + ds + "'", line_no);
        validate_date(y, m, d, line_no);
        station_record rec{y, m, d, 0.0, 0};
        if (fields[1].empty()) {
            rec.quality = 9;
            ++out.missing_count;
        } else if (!parse_double(fields[1], rec.value)) {
            throw parse_error("invalid value '" + fields[1] + "'", line_no);
        }
        out.records.push_back(rec);
    }
    if (out.records.empty()) throw empty_input("csv input has no data rows");
    return out;
}

ingest_result ingest_ecad(std::istream& in) {
    ingest_result out;
    std::string line;
    std::size_t line_no = 0;
    int date_col = -1, value_col = -1, quality_col = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (date_col < 0) {
            // Header lines precede the column header; find the line that
            // names DATE, the element column (TX/TG/TN/...) and its Q_ flag.
            const auto fields = split_csv(t);
            int dc = -1, qc = -1;
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "DATE") dc = static_cast<int>(i);
                if (fields[i].rfind("Q_", 0) == 0) qc = static_cast<int>(i);
            }
            if (dc >= 0 && qc >= 0) {
                date_col = dc;
                quality_col = qc;
                const std::string element = fields[static_cast<std::size_t>(qc)].substr(2);
                for (std::size_t i = 0; i < fields.size(); ++i)
                    if (fields[i] == element) value_col = static_cast<int>(i);
                if (value_col < 0)
                    throw parse_error("ECA&D header names no value column for Q_" + element,
                                      line_no);
            }
            continue;
        }
        const auto fields = split_csv(t);
        const std::size_t need = static_cast<std::size_t>(
            std::max(date_col, std::max(value_col, quality_col)));
        if (fields.size() <= need) throw parse_error("short ECA&D data row", line_no);
        const std::string& ds = fields[static_cast<std::size_t>(date_col)];
        int ymd = 0;
        if (ds.size() != 8 || !parse_int(ds, ymd))
            throw parse_error("invalid DATE '" + ds + "'", line_no);
        const int y = ymd / 10000, m = (ymd / 100) % 100, d = ymd % 100;
        validate_date(y, m, d, line_no);
        int q = 0;
        if (!parse_int(fields[static_cast<std::size_t>(quality_col)], q) ||
            (q != 0 && q != 1 && q != 9))
            throw parse_error("invalid quality flag", line_no);
        station_record rec{y, m, d, 0.0, q};
        if (q == 9) {
            ++out.missing_count;
        } else {
            int tenths = 0;
            if (!parse_int(fields[static_cast<std::size_t>(value_col)], tenths))
                throw parse_error("invalid value field", line_no);
            rec.value = static_cast<double>(tenths) / 10.0;
            if (q == 1) ++out.suspect_count;
        }
        out.records.push_back(rec);
    }
    if (date_col < 0) throw parse_error("no ECA&D column header found", line_no ? line_no : 1);
    if (out.records.empty()) throw empty_input("ECA&D input has no data rows");
    return out;
}

} // namespace

ingest_result ingest_stream(std::istream& in, station_format format) {
    return format == station_format::csv ? ingest_csv(in) : ingest_ecad(in);
}

ingest_result ingest(const std::string& path, station_format format) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open input file: " + path);
    return ingest_stream(in, format);
}

namespace {

struct year_bucket {
    // slot 0 unused; 1..365 per day-of-year
    std::vector<double> values = std::vector<double>(366, 0.0);
    std::vector<std::uint8_t> present = std::vector<std::uint8_t>(366, 0);
};

} // namespace

aggregated_series aggregate(const std::vector<station_record>& records, pipeline_kind pipeline,
                            const aggregate_options& options) {
    if (records.empty()) throw empty_input("aggregate: no records");

    if (pipeline == pipeline_kind::raw) {
        std::vector<double> values;
        std::vector<std::uint8_t> missing;
        for (const auto& r : records) {
            const bool miss = r.quality == 9 || (options.drop_suspect && r.quality == 1);
            values.push_back(miss ? 0.0 : r.value);
            missing.push_back(miss ? 1 : 0);
        }
        if (values.size() < 2) throw too_short("aggregate: need at least 2 observations");
        aggregated_series out{series_matrix(values.size(), 1, std::move(values),
                                            std::move(missing)),
                              {}, {}};
        return out;
    }

    std::map<int, year_bucket> by_year;
    for (const auto& r : records) {
        if (r.quality == 9 || (options.drop_suspect && r.quality == 1)) continue;
        const int doy = day_of_year_365(r.month, r.day);
        if (doy == 0) continue; // Feb 29
        auto& bucket = by_year[r.year];
        bucket.values[static_cast<std::size_t>(doy)] = r.value;
        bucket.present[static_cast<std::size_t>(doy)] = 1;
    }

    auto year_day_count = [](const year_bucket& b) {
        int n = 0;
        for (int d = 1; d <= 365; ++d) n += b.present[static_cast<std::size_t>(d)];
        return n;
    };

    if (pipeline == pipeline_kind::daily_matrix) {
        std::vector<int> years;
        for (const auto& [year, bucket] : by_year)
            if (365 - year_day_count(bucket) <= options.max_missing_days)
                years.push_back(year);
        if (years.size() < 2)
            throw insufficient_years("aggregate: fewer than 2 usable years for the daily matrix");
        const std::size_t T = years.size();
        std::vector<double> values(T * 365, 0.0);
        std::vector<std::uint8_t> missing(T * 365, 0);
        for (std::size_t t = 0; t < T; ++t) {
            const auto& bucket = by_year[years[t]];
            for (int d = 1; d <= 365; ++d) {
                const std::size_t idx = t * 365 + static_cast<std::size_t>(d - 1);
                if (bucket.present[static_cast<std::size_t>(d)])
                    values[idx] = bucket.values[static_cast<std::size_t>(d)];
                else
                    missing[idx] = 1;
            }
        }
        aggregated_series out{series_matrix(T, 365, std::move(values), std::move(missing)),
                              std::move(years), {}};
        out.day_index.resize(365);
        for (int d = 1; d <= 365; ++d) out.day_index[static_cast<std::size_t>(d - 1)] = d;
        return out;
    }

    // annual_max / annual_mean
    std::vector<int> years;
    std::vector<double> values;
    for (const auto& [year, bucket] : by_year) {
        const int n = year_day_count(bucket);
        if (n == 0) continue;
        if (options.strict_years && n < 365) continue;
        double acc = pipeline == pipeline_kind::annual_max
                         ? -std::numeric_limits<double>::infinity()
                         : 0.0;
        for (int d = 1; d <= 365; ++d) {
            if (!bucket.present[static_cast<std::size_t>(d)]) continue;
            const double v = bucket.values[static_cast<std::size_t>(d)];
            if (pipeline == pipeline_kind::annual_max)
                acc = std::max(acc, v);
            else
                acc += v;
        }
        if (pipeline == pipeline_kind::annual_mean) acc /= static_cast<double>(n);
        years.push_back(year);
        values.push_back(acc);
    }
    if (years.size() < 2)
        throw insufficient_years("aggregate: fewer than 2 usable years");
    aggregated_series out{series_matrix(std::move(values)), std::move(years), {}};
    return out;
}

void write_matrix_csv(std::ostream& out, const series_matrix& m) {
    char buf[64];
    for (std::size_t t = 0; t < m.rows(); ++t) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            if (!m.is_missing(t, c)) {
                std::snprintf(buf, sizeof buf, "%.17g", m.at(t, c));
                out << buf;
            }
        }
        out << '\n';
    }
}

series_matrix read_matrix_csv(std::istream& in) {
    std::vector<double> values;
    std::vector<std::uint8_t> missing;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (cols == 0)
            cols = fields.size();
        else if (fields.size() != cols)
            throw parse_error("ragged matrix row", line_no);
        for (const auto& f : fields) {
            if (f.empty()) {
                values.push_back(0.0);
                missing.push_back(1);
            } else {
                double v = 0.0;
                if (!parse_double(f, v)) throw parse_error("invalid number '" + f + "'", line_no);
                values.push_back(v);
                missing.push_back(0);
            }
        }
        ++rows;
    }
    if (rows == 0) throw empty_input("matrix csv has no rows");
    return series_matrix(rows, cols, std::move(values), std::move(missing));
}

} // namespace recordcpd
