#pragma once

#include <string>

#include "json.hpp"

#include "biapn/apn.hpp"
#include "biapn/biproj.hpp"
#include "biapn/enumerate.hpp"
#include "biapn/equiv.hpp"
#include "biapn/walsh.hpp"

namespace biapn {

nlohmann::json field_info_json(const FieldCtx& ctx);
nlohmann::json pair_json(const BiprojectivePair& p);
nlohmann::json family_json(const FamilyInstance& inst);
nlohmann::json diff_json(const DiffSpectrum& d);
nlohmann::json walsh_json(const WalshSpectrum& w);
nlohmann::json image_json(const ImageProfile& p);
nlohmann::json orbit_json(const OrbitInfo& o);
nlohmann::json centralizer_json(const CentralizerReport& c);
nlohmann::json equiv_json(const EquivResult& r);
nlohmann::json classify_json(const ClassifyReport& r);
nlohmann::json sweep_json(const SweepReport& r);

std::string classify_csv(const ClassifyReport& r);
std::string sweep_csv(const SweepReport& r);

}  // namespace biapn
