// sequence_io.hpp - CSV reading and writing of (multi-)sequences.
//
// Single observable:  header `t,value`, rows `<t>,<value>`.
// Several observables: header `t,a1,...,am`.
// t must start at 0 and increase by one per row. Values are printed with the
// shortest decimal representation that parses back to the same double.
#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"
#include "sequences.hpp"

namespace delaydim {

inline std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw Error(ErrorCode::InvalidParameter, "cannot format value");
    return std::string(buf, ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": not a number: '" + std::string(s) + "'");
    return v;
}

inline long long parse_int(std::string_view s, std::size_t line_no) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": not an integer: '" + std::string(s) + "'");
    return v;
}

// Returns the columns after `t`, one vector per column.
inline std::vector<std::vector<double>> read_columns(std::istream& in,
                                                     std::vector<std::string>& header_out) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::vector<double>> cols;
    long long expected_t = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        const auto fields = split_commas(view);
        if (!have_header) {
            if (fields.size() < 2 || fields[0] != "t")
                throw Error(ErrorCode::ParseError, "expected header starting with 't,'");
            for (std::size_t i = 1; i < fields.size(); ++i) header_out.emplace_back(fields[i]);
            cols.resize(fields.size() - 1);
            have_header = true;
            continue;
        }
        if (fields.size() != cols.size() + 1)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                   std::to_string(cols.size() + 1) + " fields");
        const long long t = parse_int(fields[0], line_no);
        if (t != expected_t)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected t=" +
                                                   std::to_string(expected_t) + ", got " +
                                                   std::to_string(t));
        ++expected_t;
        for (std::size_t c = 0; c < cols.size(); ++c)
            cols[c].push_back(parse_double(fields[c + 1], line_no));
    }
    if (!have_header) throw Error(ErrorCode::ParseError, "empty sequence file");
    if (expected_t == 0) throw Error(ErrorCode::ParseError, "sequence file has no data rows");
    return cols;
}

}  // namespace detail

inline RealSequence read_sequence_csv(std::istream& in) {
    std::vector<std::string> header;
    auto cols = detail::read_columns(in, header);
    if (header.size() != 1 || header[0] != "value")
        throw Error(ErrorCode::ParseError, "expected header 't,value'");
    return RealSequence(std::move(cols[0]));
}

inline MultiSequence read_multi_sequence_csv(std::istream& in) {
    std::vector<std::string> header;
    auto cols = detail::read_columns(in, header);
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] != "a" + std::to_string(i + 1))
            throw Error(ErrorCode::ParseError, "expected header 't,a1,...,am'");
    std::vector<RealSequence> rows;
    for (auto& c : cols) rows.emplace_back(std::move(c));
    return MultiSequence::from_rows(rows);
}

inline void write_sequence_csv(std::ostream& out, const RealSequence& seq) {
    out << "t,value\n";
    for (std::size_t t = 0; t < seq.size(); ++t) out << t << ',' << format_double(seq[t]) << '\n';
}

inline void write_multi_sequence_csv(std::ostream& out, const MultiSequence& mseq) {
    out << 't';
    for (std::size_t a = 0; a < mseq.observable_count(); ++a) out << ",a" << (a + 1);
    out << '\n';
    for (std::size_t t = 0; t < mseq.size(); ++t) {
        out << t;
        for (std::size_t a = 0; a < mseq.observable_count(); ++a)
            out << ',' << format_double(mseq(a, t));
        out << '\n';
    }
}

inline RealSequence load_sequence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    return read_sequence_csv(in);
}

inline void save_sequence_csv(const std::string& path, const RealSequence& seq) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    write_sequence_csv(out, seq);
}

}  // namespace delaydim
