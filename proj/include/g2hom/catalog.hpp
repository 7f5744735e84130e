#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "g2hom/gstruct.hpp"
#include "g2hom/invariants.hpp"
#include "g2hom/liealg.hpp"

namespace g2hom {

using Json = nlohmann::ordered_json;

namespace detail {
struct EmbeddedCase {
  const char* name;
  const char* text;
};
// Generated at configure time from data/.
extern const char* const kCaseSchema;
const std::vector<EmbeddedCase>& embedded_cases();
}  // namespace detail

enum class CaseSource { MatrixBasis, StructureConstants, PartialHomogeneous };
std::string source_name(CaseSource s);

struct ExpectedCheck {
  std::string check;
  Json args;
  Json value;
  std::string cite;
};

struct CrossCheck {
  std::string label;
  std::map<std::string, Rational> parameters;
  std::vector<ExpectedCheck> checks;
};

/// A symbol standing for numerator / denominator; it is replaced by its
/// value once every parameter it uses is instantiated.
struct Quotient {
  std::string name;
  Poly numerator, denominator;
};

struct ReferenceForm {
  std::string name;
  int dimension = 0;
  int degree = 0;
  std::string value;
};

struct StructureConstant {
  int i, j, k;
  Poly value;
};

struct CaseRecord {
  std::string id;
  std::string description;
  CaseSource source = CaseSource::PartialHomogeneous;
  int dimension = 0;
  std::vector<std::string> basis_names;
  /// Default instantiation, in file order.
  std::vector<std::pair<std::string, Rational>> parameters;
  std::vector<Quotient> quotients;
  /// Parameter symbols followed by quotient symbols; every payload scalar lives here.
  ContextPtr context;

  bool complex_field = false;
  std::vector<std::pair<PolyMatrix, PolyMatrix>> matrices;  // (re, im)
  std::vector<StructureConstant> structure_constants;
  std::vector<PolyMatrix> isotropy;
  std::vector<StructureConstant> projected_bracket;
  std::vector<int> h_indices, m_indices;
  bool adjoin_central_line = false;

  std::vector<std::string> reference_symbols;
  std::vector<ReferenceForm> reference_forms;
  std::vector<CrossCheck> cross_checks;
  std::vector<ExpectedCheck> expected;

  /// The parsed document, for canonical re-serialization.
  Json document;

  /// Dimension of the space the 3-form checks run on (m, plus the central line).
  int form_dimension() const;
  const ReferenceForm* reference_form(const std::string& name) const;
};

/// Parses and validates a case document. Errors name the offending field;
/// malformed JSON or scalars raise ParseError, everything else ValidationError
/// (including a failed Jacobi identity and a non-reductive split).
CaseRecord parse_case(const std::string& text, const std::string& origin = "<case>");
CaseRecord load_case(const std::filesystem::path& path);

std::vector<std::string> bundled_case_ids();
/// Throws UnknownCase.
const CaseRecord& bundled_case(const std::string& id);
const char* case_schema();

/// Instantiated algebraic data of a case.
struct CaseInstance {
  std::optional<LieAlgebra> algebra;
  /// m itself.
  HomogeneousSpaceData base;
  /// m + central line when requested, else a copy of base.
  HomogeneousSpaceData space;
};

/// Parameters not listed in `keep` take their values from `overrides` or the
/// defaults; quotients touching a kept symbol stay symbolic. Matrix cases
/// need every parameter instantiated.
CaseInstance instantiate(const CaseRecord& rec, const std::map<std::string, Rational>& overrides = {},
                         const std::vector<std::string>& keep = {});

enum class CheckStatus { Match, SpanMatch, Mismatch, Skipped };
std::string status_name(CheckStatus s);

struct CheckResult {
  std::string scope;  // cross-check label, empty for the main instantiation
  std::string check;
  Json args;
  std::string label;  // e.g. "dphi(e3,e5,e6,e7)"
  CheckStatus status = CheckStatus::Skipped;
  std::string expected;
  std::string computed;
  std::string cite;
  std::string note;
};

struct PipelineSummary {
  std::optional<std::size_t> invariant_dim;
  std::optional<std::size_t> closed_dim;
  std::string verdict;
  std::string certificate;
};

struct CaseReport {
  std::string id;
  std::string description;
  std::string source;
  bool partial = false;
  std::vector<CheckResult> checks;
  PipelineSummary pipeline;
  /// Set when the pipeline itself failed; checks may then be incomplete.
  std::string error;
  double timing_ms = 0;

  bool ok() const;
};

CaseReport verify_record(const CaseRecord& rec);
/// Throws UnknownCase.
CaseReport verify_case(const std::string& id);
/// Bundled cases whose id matches the glob, verified concurrently and
/// returned in id order.
std::vector<CaseReport> verify_all(const std::string& filter = "*", unsigned threads = 0);

Json report_to_json(const CaseReport& r, bool with_timing = true);
std::string render_text(const CaseReport& r);

/// Two-space indentation; arrays go on one line when every element is a
/// scalar or a two-scalar array. tools/casegen.py writes the same layout.
std::string write_canonical(const Json& j);

}  // namespace g2hom
