#include "json_io.hpp"

#include "helicity/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace helicity::cli {

std::string JsonWriter::format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void JsonWriter::comma() {
    if (need_comma_) out_ += ',';
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
    comma();
    out_ += '"' + key + "\":{";
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma();
    out_ += '"' + key + "\":[";
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key_value(const std::string& key, double value) {
    comma();
    out_ += '"' + key + "\":" + format_double(value);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key_value(const std::string& key, int value) {
    comma();
    out_ += '"' + key + "\":" + std::to_string(value);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key_value(const std::string& key, long long value) {
    comma();
    out_ += '"' + key + "\":" + std::to_string(value);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key_value(const std::string& key, bool value) {
    comma();
    out_ += '"' + key + "\":" + (value ? "true" : "false");
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key_value(const std::string& key, const std::string& value) {
    comma();
    out_ += '"' + key + "\":\"" + value + '"';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::array_value(double value) {
    comma();
    out_ += format_double(value);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::array_values(const std::vector<int>& values) {
    for (int v : values) {
        comma();
        out_ += std::to_string(v);
        need_comma_ = true;
    }
    return *this;
}

std::string JsonWriter::take() { return std::move(out_); }

FourierSpectrum read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(ErrorCode::IoError, "cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw DomainError(ErrorCode::IoError, "bad JSON in '" + path + "': " + err.what());
    }
    if (!doc.contains("N") || !doc.contains("coeffs"))
        throw DomainError(ErrorCode::IoError, "spectrum file needs fields N and coeffs");
    const int max_index = doc["N"].get<int>();
    const auto& coeffs = doc["coeffs"];
    if (!coeffs.is_array() || coeffs.size() != 2 * static_cast<std::size_t>(max_index) + 1)
        throw DomainError(ErrorCode::IoError, "coeffs must hold 2N+1 [re, im] pairs");
    FourierSpectrum out(max_index);
    for (int n = -max_index; n <= max_index; ++n) {
        const auto& pair = coeffs[static_cast<std::size_t>(n + max_index)];
        if (!pair.is_array() || pair.size() != 2)
            throw DomainError(ErrorCode::IoError, "each coefficient must be [re, im]");
        out.set(n, {pair[0].get<double>(), pair[1].get<double>()});
    }
    return out;
}

std::string spectrum_to_json(const FourierSpectrum& spectrum) {
    std::string out = "{\"N\":" + std::to_string(spectrum.max_index()) + ",\"coeffs\":[";
    for (std::size_t i = 0; i < spectrum.coeffs().size(); ++i) {
        if (i) out += ',';
        out += '[' + JsonWriter::format_double(spectrum.coeffs()[i].real()) + ',' +
               JsonWriter::format_double(spectrum.coeffs()[i].imag()) + ']';
    }
    out += "]}";
    return out;
}

} // namespace helicity::cli
