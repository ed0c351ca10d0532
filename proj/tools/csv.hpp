#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace conflab::cli {

// Input rejected: config, CSV, or flag problems. Mapped to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Environment problems (unwritable output, IO failures). Exit code 1.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All floating-point output uses 12 significant digits.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError(where + ": not a number: '" + text + "'");
    }
}

// Strict CSV: exact header, fixed column count, row numbers in messages
// (header is row 1).
class CsvReader {
public:
    CsvReader(const std::string& path, const std::string& expected_header) : path_(path) {
        std::ifstream in(path);
        if (!in) throw InputError(path + ": cannot open file");
        std::string line;
        std::size_t row = 0;
        while (std::getline(in, line)) {
            ++row;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (row == 1) {
                if (line != expected_header) {
                    throw InputError(path + ": row 1: expected header '" + expected_header +
                                     "', got '" + line + "'");
                }
                columns_ = split_fields(expected_header).size();
                continue;
            }
            if (line.empty()) continue;
            auto fields = split_fields(line);
            if (fields.size() != columns_) {
                throw InputError(path + ": row " + std::to_string(row) + ": expected " +
                                 std::to_string(columns_) + " fields, got " +
                                 std::to_string(fields.size()));
            }
            rows_.push_back(std::move(fields));
            row_numbers_.push_back(row);
        }
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }
    std::string location(std::size_t i) const {
        return path_ + ": row " + std::to_string(row_numbers_[i]);
    }

private:
    std::string path_;
    std::size_t columns_ = 0;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> row_numbers_;
};

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header) : out_(path) {
        if (!out_) throw IoError(path + ": cannot open for writing");
        out_ << header << "\n";
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << "\n";
    }

    void close(const std::string& path) {
        out_.flush();
        if (!out_) throw IoError(path + ": write failed");
        out_.close();
    }

private:
    std::ofstream out_;
};

}  // namespace conflab::cli
