#pragma once

#include <json.hpp>

#include "hasseforge/interval.hpp"

namespace hf {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "hasseforge/1";

ojson j_int(const Int& n);                        // decimal string
ojson j_rat(const Rat& q);                        // "num/den"
ojson j_interval(const RatInterval& iv, int digits = 12);
Int int_from_json(const ojson& j);
Rat rat_from_json(const ojson& j);

// canonical bytes: stable key order, 2-space indent, trailing newline
std::string dump_report(const ojson& j);

u64 fnv1a(const std::string& bytes);

}  // namespace hf
