#pragma once

#include "helicity/fourier.hpp"

#include <string>
#include <vector>

namespace helicity::cli {

/// Deterministic JSON text builder: insertion order preserved, doubles
/// formatted with 17 significant digits so identical runs are byte-identical.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& begin_object(const std::string& key);
    JsonWriter& key_value(const std::string& key, double value);
    JsonWriter& key_value(const std::string& key, int value);
    JsonWriter& key_value(const std::string& key, long long value);
    JsonWriter& key_value(const std::string& key, bool value);
    JsonWriter& key_value(const std::string& key, const std::string& value);
    JsonWriter& array_value(double value);
    JsonWriter& array_values(const std::vector<int>& values);

    std::string take();

    static std::string format_double(double value);

private:
    void comma();
    std::string out_;
    bool need_comma_ = false;
};

/// {"N": int, "coeffs": [[re, im], ...]} ordered n = -N..N.
FourierSpectrum read_spectrum_file(const std::string& path);
std::string spectrum_to_json(const FourierSpectrum& spectrum);

} // namespace helicity::cli
