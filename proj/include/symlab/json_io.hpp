#pragma once

#include <json.hpp>

#include "symlab/certificate.hpp"
#include "symlab/discrete_dist.hpp"
#include "symlab/skorokhod.hpp"
#include "symlab/symmetrizer.hpp"

namespace symlab {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const DiscreteDist& d);
DiscreteDist dist_from_json(const ordered_json& j);

ordered_json to_json(const SymmetrizerSolution& sol);
ordered_json to_json(const CertificateReport& report);
ordered_json to_json(const EmbeddingReport& report);
ordered_json to_json(const ItoReport& report);
ordered_json to_json(const ConditioningReport& report);

} // namespace symlab
