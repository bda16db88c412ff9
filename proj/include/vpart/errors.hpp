#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpart {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  NotAUnit,
  NegativePoleResidue,
  IndexInBasis,
  RhsOutsideSpan,
  Infeasible,
  DegenerateRhs,
  NotPointed,
  NotUnimodular,
  OnChamberBoundary,
  OutsideCone,
  PoleAtEvaluationPoint,
  EmptyBasisList,
  TopDegreeNotOneDimensional,
  ZeroGamma,
  CannotSample,
  RankDeficientSystem,
  HoldoutMismatch,
  MarginMismatch,
  NotInCone,
  ResourceCap,
  InvariantViolation,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::NotAUnit: return "not_a_unit";
    case ErrorCode::NegativePoleResidue: return "negative_pole_residue";
    case ErrorCode::IndexInBasis: return "index_in_basis";
    case ErrorCode::RhsOutsideSpan: return "rhs_outside_span";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::DegenerateRhs: return "degenerate_rhs";
    case ErrorCode::NotPointed: return "not_pointed";
    case ErrorCode::NotUnimodular: return "not_unimodular";
    case ErrorCode::OnChamberBoundary: return "on_chamber_boundary";
    case ErrorCode::OutsideCone: return "outside_cone";
    case ErrorCode::PoleAtEvaluationPoint: return "pole_at_evaluation_point";
    case ErrorCode::EmptyBasisList: return "empty_basis_list";
    case ErrorCode::TopDegreeNotOneDimensional: return "top_degree_not_one_dimensional";
    case ErrorCode::ZeroGamma: return "zero_gamma";
    case ErrorCode::CannotSample: return "cannot_sample";
    case ErrorCode::RankDeficientSystem: return "rank_deficient_system";
    case ErrorCode::HoldoutMismatch: return "holdout_mismatch";
    case ErrorCode::MarginMismatch: return "margin_mismatch";
    case ErrorCode::NotInCone: return "not_in_cone";
    case ErrorCode::ResourceCap: return "resource_cap";
    case ErrorCode::InvariantViolation: return "invariant_violation";
  }
  return "unknown";
}

/// Process exit status used by the command-line tool for each error family.
inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Infeasible:
    case ErrorCode::OutsideCone:
    case ErrorCode::NotInCone:
      return 3;
    case ErrorCode::DegenerateRhs:
    case ErrorCode::OnChamberBoundary:
      return 4;
    case ErrorCode::ResourceCap:
      return 5;
    case ErrorCode::InvariantViolation:
    case ErrorCode::NegativePoleResidue:
    case ErrorCode::ZeroGamma:
    case ErrorCode::HoldoutMismatch:
    case ErrorCode::TopDegreeNotOneDimensional:
      return 6;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace vpart
