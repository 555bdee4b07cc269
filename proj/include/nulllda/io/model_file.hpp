#pragma once

#include "nulllda/fit.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace nulllda::io {

inline constexpr int kModelFormatVersion = 1;

/// Model as persisted on disk: a single JSON document.
///
/// The orientation W is stored column-major. Loading rejects unknown format
/// versions and inconsistent shapes; `validate_model` additionally rejects a
/// W that has a zero column or lacks full column rank.
nlohmann::json model_to_json(const NullLdaModel<double>& model);
NullLdaModel<double> model_from_json(const nlohmann::json& doc);

void save_model(std::ostream& out, const NullLdaModel<double>& model);
void save_model_file(const std::string& path, const NullLdaModel<double>& model);
NullLdaModel<double> load_model(std::istream& in);
NullLdaModel<double> load_model_file(const std::string& path);

/// Throws ErrorKind::DegenerateModel for an unusable orientation.
void validate_model(const NullLdaModel<double>& model);

}  // namespace nulllda::io
