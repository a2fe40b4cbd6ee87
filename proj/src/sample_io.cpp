#include "porebench/sample_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "porebench/errors.hpp"

namespace porebench::io {

static_assert(std::endian::native == std::endian::little, "sample files assume a little-endian host");

void write_samples_f32le(const std::filesystem::path& path, std::span<const double> amperes) {
    std::vector<float> buffer(amperes.size());
    for (std::size_t i = 0; i < amperes.size(); ++i) buffer[i] = static_cast<float>(amperes[i] * 1e12);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(buffer.size() * sizeof(float)));
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<double> read_samples_f32le(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    if (bytes % sizeof(float) != 0) {
        throw ValidationError(path.string() + ": size " + std::to_string(bytes) + " is not a multiple of 4 bytes");
    }
    std::vector<float> buffer(bytes / sizeof(float));
    in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw IoError("read failed: " + path.string());
    std::vector<double> amperes(buffer.size());
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        if (!std::isfinite(buffer[i])) {
            throw ValidationError(path.string() + ": non-finite sample at index " + std::to_string(i));
        }
        amperes[i] = static_cast<double>(buffer[i]) * 1e-12;
    }
    return amperes;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_number: to_chars failed");
    return std::string(buf, end);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_number(std::string_view field, std::size_t row) {
    const std::string_view s = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("not a number: '" + std::string(s) + "'", row);
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view field, std::size_t row) {
    const std::string_view s = trim(field);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("not a non-negative integer: '" + std::string(s) + "'", row);
    }
    return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace porebench::io
