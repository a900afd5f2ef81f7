#pragma once

// JSON shapes for fields, groups, reports, curve/form files and claims.
// Objects keep insertion order so repeated runs print identical bytes.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apcong/abelian.hpp"
#include "apcong/classify.hpp"
#include "apcong/discover.hpp"
#include "apcong/eigendata.hpp"
#include "apcong/ffield.hpp"
#include "apcong/matgrp.hpp"

namespace apcong {

using Json = nlohmann::ordered_json;

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

/// {"p": 3, "r": 2, "modulus": [1, 0, 1]}; the modulus is optional.
Json to_json(const FieldSpec& F);
FieldSpec field_from_json(const Json& j);

/// An integer over a prime field, a low-to-high coefficient vector otherwise.
/// Input accepts either form for any field.
Json to_json(const FieldSpec& F, Elt x);
Elt elt_from_json(const FieldSpec& F, const Json& j);
Json to_json(const FieldSpec& F, const Mat2& m);
Mat2 mat_from_json(const FieldSpec& F, const Json& j);

struct GroupFile {
  FieldSpec field;
  std::vector<Mat2> generators;
};

GroupFile group_file_from_json(const Json& j);
Json to_json(const GroupFile& g);

/// Order, generators and the trace multiset.
Json group_summary(const MatGroup& G);
Json to_json(const MatGroup& G, const DicksonClass& cls);
std::string to_string(const Rational& c);
Json to_json(const AbelianReport& r);
Json to_json(const CongruenceReport& rep);
Json to_json(const ModulusBound& b);

EllipticCurve curve_from_json(const Json& j);
ModularForm form_from_json(const Json& j);
std::vector<EllipticCurve> read_curves_jsonl(std::istream& in);
std::vector<ModularForm> read_forms_jsonl(std::istream& in);

Claim claim_from_json(const Json& j);
/// A top-level array, or an object with a "claims" array.
std::vector<Claim> claims_from_json(const Json& j);
Json to_json(const ClaimResult& r);

}  // namespace apcong
