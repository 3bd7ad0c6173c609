#pragma once

#include <string>

#include <json.hpp>

#include "superloc/homspace.hpp"
#include "superloc/locverify.hpp"
#include "superloc/qrep.hpp"

namespace superloc::io {

using nlohmann::json;

json to_json(const ComplexRational& c);           // [re, im] as rational strings
ComplexRational complex_from_json(const json& j);  // accepts strings or integers

json to_json(const ExactScalar& s);  // {"text": ..., "terms": [{"pi", "re", "im"}]}
ExactScalar exact_from_json(const json& j);

json to_json(const qrep::CSRep& rep);
qrep::CSRep csrep_from_json(const json& j);
qrep::CSRep load_csrep(const std::string& path);

json to_json(const locverify::VerificationReport& r);
json to_json(const locverify::DistReport& r);

json to_json(const homspace::WeylElement& w);
homspace::WeylElement weyl_from_json(const json& j);

json to_json(const homspace::FlagRootData& d);
homspace::FlagRootData flag_data_from_json(const json& j);
homspace::FlagRootData load_flag_data(const std::string& path);

json to_json(const homspace::VolumeResult& v);
json to_json(const homspace::ChainReport& r);

/// {tool_version, seed?, convention: {kappa, berezin_sign}}
json report_header(std::optional<unsigned long> seed = std::nullopt);

}  // namespace superloc::io
