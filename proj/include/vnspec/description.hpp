#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vnspec/constructors.hpp"

namespace vnspec {

/// ParseError carries a line and column, ValidationError a field path such as
/// "dynamics.W" or "B.weights[2]".
class DescriptionError : public Error {
 public:
  DescriptionError(ErrorCode code, std::string where, const std::string& message)
      : Error(code, where + ": " + message), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct SubsystemDoc {
  enum class Kind { Trivial, Full, Generated };
  Kind kind = Kind::Trivial;
  std::vector<CMatrix> generators;
};

struct GroupDoc {
  std::optional<int> cyclic;  // emitted as {"cyclic": n} when set
  GroupTable table;
};

struct ExplicitDoc {
  Eigen::Index ambient_dim = 0;
  std::vector<CMatrix> generators;
  CMatrix density;
  std::optional<CMatrix> W;  // identity dynamics when absent
  SubsystemDoc subsystem;
};

struct ClassicalDoc {
  std::vector<double> weights;
  std::vector<int> permutation;
  SubsystemDoc subsystem;
};

struct GroupVnDoc {
  GroupDoc group;
  std::vector<int> automorphism;
  SubsystemDoc subsystem;
};

/// A tensor factor: explicit, classical or group_vn without a subsystem.
struct FactorDoc {
  std::string kind;
  std::variant<ExplicitDoc, ClassicalDoc, GroupVnDoc> params;
};

struct TensorDoc {
  FactorDoc B;
  FactorDoc C;
};

struct SkewProductDoc {
  std::vector<double> weights;
  std::vector<int> S;
  GroupDoc group;
  std::vector<int> T;
  std::vector<int> k;
};

struct ExtensionBlockDoc {
  Eigen::Index ambient_dim = 0;
  std::vector<CMatrix> generators;
  CMatrix density;
};

struct FiniteExtensionDoc {
  std::optional<ExtensionBlockDoc> B1;  // absent means the zero algebra
  std::optional<ExtensionBlockDoc> B2;
  double s = 0.5;
  CMatrix v1, v2, v3, v4;
};

struct ToleranceOverrides {
  std::optional<double> eps_rank;
  std::optional<double> eps_assert;
  std::optional<int> cesaro_n_max;

  bool empty() const { return !eps_rank && !eps_assert && !cesaro_n_max; }
  ToleranceConfig apply(ToleranceConfig base) const;
};

struct SystemDescription {
  int format_version = 1;
  std::string name;
  std::string kind;  // explicit, classical, group_vn, tensor, skew_product, finite_extension
  std::string note;
  ToleranceOverrides tolerances;
  std::map<std::string, CMatrix> elements;
  std::variant<ExplicitDoc, ClassicalDoc, GroupVnDoc, TensorDoc, SkewProductDoc, FiniteExtensionDoc> params;
};

/// Parses and validates: the document is built once with the resulting
/// tolerances so every constructor check has run. Throws DescriptionError.
SystemDescription parse_system(const std::string& text);
SystemDescription parse_system_file(const std::string& path);

/// Canonical JSON text (2-space indent, trailing newline).
std::string to_json(const SystemDescription& desc);

ToleranceConfig effective_tolerances(const SystemDescription& desc);

/// Runs the constructor for the description. Constructor validation errors
/// are rethrown as ValidationError naming the offending field.
ConstructedSystem build_system(const SystemDescription& desc, const ToleranceConfig& tol);

}  // namespace vnspec
