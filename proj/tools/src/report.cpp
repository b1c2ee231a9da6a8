// Copyright 2026 The entcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace entcert::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : file_(open_output(path)), columns_(header.size()) {
    for (const auto& h : header) cell(h);
    end_row();
}

CsvWriter& CsvWriter::cell(std::string_view text) {
    if (in_row_++ > 0) file_ << ',';
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        file_ << text;
    } else {
        file_ << '"';
        for (char c : text) {
            if (c == '"') file_ << '"';
            file_ << c;
        }
        file_ << '"';
    }
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v)); }

CsvWriter& CsvWriter::cell(std::optional<double> v) { return v ? cell(*v) : cell(std::string_view{}); }

CsvWriter& CsvWriter::cell(std::uint64_t v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(bool v) { return cell(std::string_view(v ? "true" : "false")); }

void CsvWriter::end_row() {
    if (in_row_ != columns_) throw std::logic_error("CsvWriter: row width does not match header");
    file_ << '\n';
    in_row_ = 0;
    if (!file_) throw std::runtime_error("CsvWriter: write failed");
}

}  // namespace entcert::cli
