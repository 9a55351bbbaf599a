#pragma once

#include "torcal/adams.hpp"
#include "torcal/corpus.hpp"

#include <string>

namespace torcal::serialize {

std::string poset_to_json(const lattice::SubgroupPoset& poset);

// module literals: stalk normal forms (+ optional torus stalk and overrides)
std::string module_to_json(const diagram::DiagramModule& m);
// parse a literal against a diagram; throws std::invalid_argument on errors
diagram::ModuleSpec module_spec_from_json(const diagram::RingDiagram& diag,
                                          const std::string& text);

std::string qce_report_to_json(const diagram::DiagramModule& m, const diagram::QceReport& rep);

std::string ext_table_to_tsv(const homalg::ExtTable& table);
std::string ext_table_to_json(const homalg::ExtTable& table);
std::string e2_page_to_json(const adams::E2Page& page, const adams::DegeneracyReport& rep);

std::string ring_tables_to_json(const diagram::RingDiagram& ra, const diagram::RingDiagram& rinv,
                                const diagram::RingDiagram& rtw);

}  // namespace torcal::serialize
