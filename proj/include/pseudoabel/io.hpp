#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pseudoabel/foliation.hpp"
#include "pseudoabel/jseries.hpp"
#include "pseudoabel/mellin.hpp"

namespace pseudoabel {

inline constexpr std::string_view kSchema = "pseudoabel/1";

// JSON documents carry "schema" and "kind".  Parse failures throw Config.
std::string series_to_json(const JSeries& sigma, int indent = 2);
JSeries parse_series(std::string_view text);

std::string mellin_to_json(const MellinRep& g, int indent = 2);
MellinRep parse_mellin(std::string_view text);

// "jseries", "mellin", "system" or "" when absent.
std::string document_kind(std::string_view text);
// Throws Config unless the document declares the current schema.
void check_schema(std::string_view text);

struct SystemInput {
  DarbouxSystem system;
  std::optional<AdmissibleForm> omega;
};

// {polys:[[[i,j,c],...],...], exponents:[...], omega:{dx,dy,denomPowers}, box:[...]}
SystemInput parse_system(std::string_view text);

// "geometric:a:b:n", "linear:a:b:n" or a comma separated list.
std::vector<double> parse_t_grid(std::string_view spec);

// Shortest text that reads back to the same double.
std::string format_double(double v);

std::string read_file(const std::string& path);

}  // namespace pseudoabel
