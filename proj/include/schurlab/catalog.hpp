#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurlab/pcgroup.hpp"

namespace schurlab {

enum class CatalogSource { bundled, imported };

struct CatalogEntry {
    PcPresentation presentation;
    std::set<std::string> tags;  // abelian, cyclic, dihedral, heisenberg, ...
    CatalogSource source = CatalogSource::bundled;

    const std::string& name() const { return presentation.name; }
};

// An entry that parsed but failed the overlap checks.
class InconsistentPresentation : public std::runtime_error {
public:
    InconsistentPresentation(std::string group, std::vector<ConsistencyViolation> v);
    const std::string& group() const { return group_; }
    const std::vector<ConsistencyViolation>& violations() const { return violations_; }

private:
    std::string group_;
    std::vector<ConsistencyViolation> violations_;
};

const char* bundled_catalog_text();

// Parsed once; every entry is consistency checked on first use.
const std::vector<CatalogEntry>& load_bundled();

// CatalogError on syntax, InconsistentPresentation on a failed check.
std::vector<CatalogEntry> import_text(const std::string& text);
// Adds std::runtime_error for I/O failures.
std::vector<CatalogEntry> import_file(const std::string& path);

// Tags implied by the naming scheme of the bundle.
std::set<std::string> tags_for_name(const std::string& name);

// Bundled entries followed by the imported ones; throws CatalogError on a
// duplicate name.
std::vector<CatalogEntry> merge_catalogs(const std::vector<CatalogEntry>& base,
                                         const std::vector<CatalogEntry>& extra);

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& name);

}  // namespace schurlab
