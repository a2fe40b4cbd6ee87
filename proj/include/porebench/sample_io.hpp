#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace porebench::io {

// Trace sample files: raw little-endian IEEE-754 binary32, picoamperes.
// In memory samples are amperes; the conversion happens here only.
void write_samples_f32le(const std::filesystem::path& path, std::span<const double> amperes);
std::vector<double> read_samples_f32le(const std::filesystem::path& path);

// Shortest text that round-trips the double exactly ("0" for zero).
std::string format_number(double value);

// Strict parse of a whole field; throws ParseError naming `row`.
double parse_number(std::string_view field, std::size_t row);
std::uint64_t parse_unsigned(std::string_view field, std::size_t row);

std::vector<std::string_view> split_csv_line(std::string_view line);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace porebench::io
