#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lipa/embedding.hpp"
#include "lipa/kkdl.hpp"
#include "lipa/majorant.hpp"
#include "lipa/smoothness.hpp"
#include "lipa/trigpoly.hpp"

namespace lipa {

using json = nlohmann::json;

/// %.17g
std::string format_double(double v);

/// {"kind":"power-log","a","b","scale"} or {"kind":"tabulated","values":[...]}.
json to_json(const Majorant& m);
Majorant majorant_from_json(const json& j);

/// {"mu","labels","lambda","r","nmax"}.
json to_json(const DiscretizingSequence& s);
DiscretizingSequence sequence_from_json(const json& j);

/// {"d","N","real","rows":[[k_1..k_d, re, im], ...]}, nonzero rows in
/// lexicographic k order.
json to_json(const TrigPoly& f);
TrigPoly trigpoly_from_json(const json& j);

/// Line 1 "d,N,real", line 2 the values, line 3 "k_1,..,k_d,re,im", then
/// the nonzero rows.
std::string trigpoly_to_csv(const TrigPoly& f);
TrigPoly trigpoly_from_csv(std::string_view text);

/// JSON if the file starts with '{', CSV otherwise. Throws ErrorKind::io.
TrigPoly load_trigpoly(const std::filesystem::path& path);

/// t,value,h_1..h_d,alpha_1..alpha_d
std::string modulus_csv(const std::vector<ModulusPoint>& pts, int d);
json to_json(const std::vector<ModulusPoint>& pts, int d);

json to_json(const ConstructionReport& rep);
/// t,sup_ratio,l2_ratio
std::string ratio_csv(const ConstructionReport& rep);

json to_json(const Estimate& e);
json to_json(const EmbeddingReport& rep);
/// Nmax,ap_norm,lip_functional
std::string growth_csv(const std::vector<GrowthRow>& rows);

/// Majorant mini-language: pow(a), log(b), pow(a)*log(b), table:FILE. The
/// exponent may be a number, "r", or "c*r" / "c·r" with the given r. A table
/// file holds either a majorant JSON object or whitespace-separated values
/// ('#' starts a comment).
Majorant parse_majorant(std::string_view spec, double r);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lipa
