#include "schurlab/catalog.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

namespace schurlab {

namespace {

std::string violation_summary(const std::string& group, const std::vector<ConsistencyViolation>& v) {
    std::string s = "presentation '" + group + "' is inconsistent (" + std::to_string(v.size()) + " violations)";
    for (size_t k = 0; k < v.size() && k < 5; ++k) s += "\n  " + v[k].describe();
    if (v.size() > 5) s += "\n  ...";
    return s;
}

std::vector<CatalogEntry> checked_entries(const std::string& text, CatalogSource source) {
    std::vector<CatalogEntry> out;
    std::set<std::string> names;
    for (auto& p : parse_catalog(text)) {
        if (!names.insert(p.name).second)
            throw CatalogError(p.source_line, "duplicate group name '" + p.name + "'");
        auto v = check_consistency(p);
        if (!v.empty()) throw InconsistentPresentation(p.name, std::move(v));
        CatalogEntry e;
        e.tags = tags_for_name(p.name);
        e.presentation = std::move(p);
        e.source = source;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

InconsistentPresentation::InconsistentPresentation(std::string group, std::vector<ConsistencyViolation> v)
    : std::runtime_error(violation_summary(group, v)), group_(std::move(group)), violations_(std::move(v)) {}

std::set<std::string> tags_for_name(const std::string& name) {
    auto starts = [&](const char* prefix) { return name.rfind(prefix, 0) == 0; };
    std::set<std::string> t;
    if (starts("cyclic_")) t = {"abelian", "cyclic"};
    else if (starts("elementary_")) t = {"abelian", "elementary"};
    else if (starts("abelian_") && name.find("dihedral") == std::string::npos) t = {"abelian"};
    else if (name.find("dihedral") != std::string::npos && !starts("semidihedral_")) t = {"dihedral"};
    else if (starts("semidihedral_")) t = {"semidihedral"};
    else if (starts("quaternion_")) t = {"quaternion"};
    else if (starts("modular_")) t = {"modular"};
    else if (starts("heisenberg_")) t = {"heisenberg"};
    else if (starts("wreath_")) t = {"wreath", "maximal-class"};
    else if (starts("maxclass_")) t = {"maximal-class"};
    return t;
}

const std::vector<CatalogEntry>& load_bundled() {
    static std::once_flag once;
    static std::vector<CatalogEntry> entries;
    std::call_once(once, [] { entries = checked_entries(bundled_catalog_text(), CatalogSource::bundled); });
    return entries;
}

std::vector<CatalogEntry> import_text(const std::string& text) {
    return checked_entries(text, CatalogSource::imported);
}

std::vector<CatalogEntry> import_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("error reading catalog file '" + path + "'");
    return import_text(buf.str());
}

std::vector<CatalogEntry> merge_catalogs(const std::vector<CatalogEntry>& base,
                                         const std::vector<CatalogEntry>& extra) {
    std::vector<CatalogEntry> out = base;
    std::set<std::string> names;
    for (const auto& e : base) names.insert(e.name());
    for (const auto& e : extra) {
        if (!names.insert(e.name()).second)
            throw CatalogError(e.presentation.source_line, "group name '" + e.name() + "' is already defined");
        out.push_back(e);
    }
    return out;
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& name) {
    for (const auto& e : entries)
        if (e.name() == name) return &e;
    return nullptr;
}

}  // namespace schurlab
