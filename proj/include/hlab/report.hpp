#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hlab/checks.hpp"
#include "hlab/entropy.hpp"
#include "hlab/geometry.hpp"
#include "hlab/hastings.hpp"

namespace hlab {

using Json = nlohmann::json;  // std::map backed, so keys serialize sorted

Json to_json(const Region& r);
Json to_json(const Check& c);
Json to_json(const CheckList& checks);
Json to_json(const EntropyReport& r);
Json to_json(const EntropyBound& b);
Json to_json(const SigmaVerdict& v);
Json to_json(const DivisionVerdict& v);
Json to_json(const WindowSearch& w);
Json to_json(const AreaSweep& s);

/// Scalars, regions and diagnostics; the operators themselves are left out.
template <typename Scalar>
Json to_json(const FactorizationResult<Scalar>& r);

const char* to_string(DivisionStatus s);

/// Pretty-printed with two-space indent and a trailing newline.
void write_json(const std::string& path, const Json& j);

/// Rows of text cells; numbers are printed with %.17g so outputs round-trip and diff exactly.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  static std::string format(double x);
  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  const std::vector<std::string>& header() const { return header_; }
  size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace hlab
