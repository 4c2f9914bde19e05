#pragma once

// Line-oriented text formats. Blank lines and text after '#' are ignored on
// input. Parsers throw ParseError (with the line number) on bad syntax and
// PreconditionError when well-formed input describes an invalid object.

#include <boolpres/algebra.hpp>
#include <boolpres/products.hpp>
#include <boolpres/sampler.hpp>
#include <boolpres/theorem_b.hpp>
#include <boolpres/theory_t.hpp>
#include <boolpres/valuation.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace boolpres {

// gens: 0 1 2
// forbid 0=1 2=0
Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);

// Sorted assignment bitstrings in generator order, comma separated; "-" is 0.
Element parse_element(const std::shared_ptr<const Algebra>& algebra, std::string_view text);
std::string format_element(const Element& a);

// geq i j / perp i j
RelationSet parse_relations(std::string_view text);
std::string format_relations(const RelationSet& r);

// dom: 0 1 2
// 0 1 GEQ
ValuationFunction parse_valuation(std::string_view text);
std::string format_valuation(const ValuationFunction& p);

// dom 3
// dense 4 0=1 2=0
// Repeated indices in a dense line are a PreconditionError.
std::vector<DenseRequest> parse_schedule(std::string_view text);
std::string format_schedule(const std::vector<DenseRequest>& requests);

// trivial | principal i0 | member lines of factor indices.
FilterOnFinite parse_filter(std::string_view text, std::size_t size);
std::string format_filter(const FilterOnFinite& f);

// A presentation followed by
//   block: mu
//   L: l0 l1 ...          (in <=_L order)
//   class: l l ...        (one line per ~ class)
//   x l <element>
//   v <element> l         (elements without a line get no level)
TModelFragment parse_model(std::string_view text);
std::string format_model(const TModelFragment& m);

// One branch per line: comma or space separated values.
std::vector<Branch> parse_branches(std::string_view text);
std::string format_branches(const std::vector<Branch>& branches);

// Comma separated naturals, as in --widths 2,2.
std::vector<std::size_t> parse_list(std::string_view text);

}  // namespace boolpres
