#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ihf/complex.hpp"
#include "ihf/hypercube.hpp"
#include "ihf/involutive.hpp"
#include "ihf/knots.hpp"

namespace ihf {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")" : what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_, column_;
};

Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);
std::string dump_json(const Json& j);

Json complex_to_json(const FreeComplex& c);
ComplexPtr complex_from_json(const Json& j);

// Map block: degree, equivariance, entries; source and target come from the context.
Json map_to_json(const ChainMap& f);
ChainMap map_from_json(const Json& j, const ComplexPtr& source, const ComplexPtr& target);

Json iota_complex_to_json(const IotaComplex& c);
IotaComplex iota_complex_from_json(const Json& j);

Json knot_to_json(const KnotComplex& k);
KnotComplex knot_from_json(const Json& j);

Json hyperbox_to_json(const Hyperbox& h);
Hyperbox hyperbox_from_json(const Json& j);

Json homology_to_json(const GradedHomology& h);

}  // namespace ihf
