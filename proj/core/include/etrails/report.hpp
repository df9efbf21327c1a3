#pragma once

#include <string>

#include <json.hpp>

#include "etrails/chain.hpp"
#include "etrails/enumerate_gadgets.hpp"
#include "etrails/signature.hpp"

namespace etrails {

using Json = nlohmann::json;

std::string decimal(const BigCount& c);
std::string fraction(const mpq_class& q);  // "p/q" (or "p" when q = 1)

Json json_count(const std::string& mode, const BigCount& count);
Json json_vr_table(const VRTable& t);  // entries sorted by canonical type
Json json_signature(const Signature& s);
Json json_mixing(const MixingReport& r);
Json json_region_class(RegionClass c, double margin);
Json json_region_scan(const RegionScanReport& r);
Json json_closure(const ClosureSampleReport& r);
Json json_verify(const VerifyReport& r);

std::string csv_region_scan(const RegionScanReport& r);   // alpha,beta,gamma,class rows
std::string csv_closure(const ClosureSampleReport& r);

// stable key ordering, no trailing newline
std::string render(const Json& j);

}  // namespace etrails
