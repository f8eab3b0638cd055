#pragma once

#include <string>

namespace stingray {

/// Schema tag stamped into every JSON document this project writes.
inline constexpr const char* kSchema = "stingray-kneser/1";

void write_text_file(const std::string& path, const std::string& content);

std::string csv_escape(const std::string& s);

}  // namespace stingray
