#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "otsp/instance.hpp"

namespace otsp {

// What a document holds before it is turned into an Instance or ChainInstance.
// Metric validation happens at that conversion, not here.
struct InstanceDocument {
  CostMatrix costs;
  std::optional<std::vector<Vertex>> order;
  std::optional<std::vector<std::vector<Vertex>>> chains;

  bool is_chain() const { return chains.has_value(); }
  Instance instance(bool apply_closure = false) const;
  ChainInstance chain_instance(bool apply_closure = false) const;
  bool operator==(const InstanceDocument&) const = default;
};

// { "scale": int, "costs": [[...]], "order": [...] } or "chains": [[...], ...].
InstanceDocument parse_instance_json(std::string_view text);
// DIMENSION / EDGE_WEIGHT_SECTION / ORDER_SECTION | CHAIN_SECTION / EOF.
InstanceDocument parse_instance_text(std::string_view text);
// Picks the format from the first non-blank character ('{' means JSON).
InstanceDocument parse_instance(std::string_view text);
InstanceDocument load_instance(const std::filesystem::path& path);

std::string to_json(const InstanceDocument& doc);
std::string to_text(const InstanceDocument& doc);
InstanceDocument document(const Instance& inst);
InstanceDocument document(const ChainInstance& inst);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace otsp
