#include <fstream>

#include "dietbot/errors.hpp"
#include "dietbot/nlg.hpp"

namespace dietbot {

namespace embedded {
extern const std::string_view kTemplates;
}

TemplateCatalog TemplateCatalog::from_json(const nlohmann::json& doc) {
  TemplateCatalog cat;
  try {
    for (const auto& [key, value] : doc.at("emoji").items()) {
      cat.emoji_.emplace(key, value.get<std::string>());
    }
    for (const auto& rec : doc.at("templates")) {
      Template t{rec.at("kind").get<std::string>(), rec.at("variant").get<std::string>(),
                 rec.at("patterns").get<std::vector<std::string>>()};
      if (t.patterns.empty()) {
        throw ParseError("template " + t.kind + "/" + t.variant + " has no patterns");
      }
      if (cat.has(t.kind, t.variant)) {
        throw ParseError("template " + t.kind + "/" + t.variant + " is defined twice");
      }
      cat.templates_.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("template catalog: ") + e.what());
  }
  return cat;
}

const TemplateCatalog& TemplateCatalog::bundled() {
  static const TemplateCatalog cat = from_json(nlohmann::json::parse(embedded::kTemplates));
  return cat;
}

TemplateCatalog TemplateCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open template catalog " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

bool TemplateCatalog::has(std::string_view kind, std::string_view variant) const {
  for (const auto& t : templates_) {
    if (t.kind == kind && t.variant == variant) return true;
  }
  return false;
}

const Template& TemplateCatalog::get(std::string_view kind, std::string_view variant) const {
  for (const auto& t : templates_) {
    if (t.kind == kind && t.variant == variant) return t;
  }
  throw Error("no template for " + std::string(kind) + "/" + std::string(variant));
}

std::string TemplateCatalog::emoji(std::string_view key) const {
  auto it = emoji_.find(key);
  return it == emoji_.end() ? std::string{} : it->second;
}

}  // namespace dietbot
