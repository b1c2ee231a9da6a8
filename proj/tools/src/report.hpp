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

#ifndef ENTCERT_TOOLS_REPORT_HPP
#define ENTCERT_TOOLS_REPORT_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entcert::cli {

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

/// Comma separated, LF terminated, '.' decimal separator.
class CsvWriter {
   public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

    CsvWriter& cell(std::string_view text);
    CsvWriter& cell(const char* text) { return cell(std::string_view(text)); }
    CsvWriter& cell(const std::string& text) { return cell(std::string_view(text)); }
    CsvWriter& cell(double v);
    CsvWriter& cell(std::optional<double> v);
    CsvWriter& cell(std::uint64_t v);
    CsvWriter& cell(bool v);
    void end_row();

   private:
    std::ofstream file_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

/// Opens `path` for binary writing, throwing std::runtime_error on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace entcert::cli

#endif  // ENTCERT_TOOLS_REPORT_HPP
