#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tto/experiments.hpp"

namespace tto {

/// Flat "section.key" -> raw value view of an INI-style config file.
using ConfigDocument = std::map<std::string, std::string>;

/// Every accepted "section.key".
const std::vector<std::string>& config_keys();

/// Reads sectioned key = value text. ';' and '#' start comments, inline ones only after
/// whitespace. Throws kConfig on syntax errors, keys outside a section, duplicates and
/// unknown keys.
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument load_config_document(const std::filesystem::path& path);

/// Sets one key, rejecting unknown ones.
void set_config_value(ConfigDocument& doc, const std::string& key, const std::string& value);

/// Fills defaults and validates; errors carry the key path.
ExperimentConfig build_config(const ConfigDocument& doc);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Canonical text: fixed section and key order, defaults written out, numbers in
/// shortest round-trip form. Parsing it yields the same config.
std::string canonical_config(const ExperimentConfig& cfg);

/// Hex SHA-256 of the canonical text.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace tto
