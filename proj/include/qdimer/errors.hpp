#pragma once

#include <stdexcept>
#include <string>

namespace qdimer {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// algebra
struct AlignmentError : Error { using Error::Error; };
struct DivisibilityError : Error { using Error::Error; };
struct EvaluationError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// graphs and moves
struct StructureError : Error { using Error::Error; };
struct FaceLabelError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct ContractibilityError : Error { using Error::Error; };
struct FrozenError : Error { using Error::Error; };
struct TopologyError : Error { using Error::Error; };
struct InductionError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct BuilderDefect : Error { using Error::Error; };
struct SingularOrbitError : Error { using Error::Error; };

// malformed input files; `key` names the offending field
struct InputError : Error {
    std::string key;
    InputError(std::string k, const std::string& msg) : Error(msg), key(std::move(k)) {}
};

} // namespace qdimer
