#pragma once

// Versioned textual formats. Objects serialize to JSON with a stable field
// and element order, so identical inputs produce byte-identical output.
//
// Face indices are 0-based throughout (the classical 1-based cap (eps, i),
// i in {1..n}, corresponds to (eps, i-1) here).

#include <string>

#include "cubix/chain.hpp"
#include "cubix/enriched.hpp"
#include "cubix/presheaf.hpp"

namespace cubix {

std::string presheaf_to_json(const Presheaf& x);
PshPtr presheaf_from_json(const std::string& text);

std::string map_to_json(const PresheafMap& f);
PresheafMap map_from_json(const std::string& text);
/// Re-target a map onto an existing source object (used to glue maps loaded
/// from separate files); requires structural equality of the sources.
PresheafMap rebase_map(PresheafMap f, const PshPtr& src, const PshPtr& tgt);
bool presheaves_structurally_equal(const Presheaf& a, const Presheaf& b);

std::string chain_to_json(const FinChainComplex& a);
ChPtr chain_from_json(const std::string& text);

std::string category_to_json(const CubicalCategory& c);
CatPtr category_from_json(const std::string& text);

std::string homology_to_text(const FinChainComplex& a);
std::string homology_to_json(const FinChainComplex& a);

std::string summary_to_text(const Presheaf& x);
std::string summary_to_json(const Presheaf& x);

/// The "kind" field of a serialized object.
std::string json_kind(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace cubix
