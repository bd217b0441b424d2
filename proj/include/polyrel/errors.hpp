#pragma once

#include <stdexcept>
#include <string>

namespace polyrel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};

struct InvalidVertex : Error {
    explicit InvalidVertex(const std::string& what) : Error("invalid vertex: " + what) {}
};

struct DuplicateLabel : Error {
    explicit DuplicateLabel(const std::string& what) : Error("duplicate label: " + what) {}
};

struct DuplicateIndex : Error {
    explicit DuplicateIndex(const std::string& what) : Error("duplicate index: " + what) {}
};

struct DuplicateParameter : Error {
    explicit DuplicateParameter(const std::string& what) : Error("duplicate parameter: " + what) {}
};

struct LegMismatch : Error {
    explicit LegMismatch(const std::string& what) : Error("leg mismatch: " + what) {}
};

struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& what) : Error("zero denominator: " + what) {}
};

struct BadPositions : Error {
    explicit BadPositions(const std::string& what) : Error("bad positions: " + what) {}
};

struct InvalidFace : Error {
    explicit InvalidFace(const std::string& what) : Error("invalid face: " + what) {}
};

struct NonGenericParameters : Error {
    explicit NonGenericParameters(const std::string& what)
        : Error("non-generic parameters: " + what) {}
};

struct SingularInputBlock : Error {
    explicit SingularInputBlock(const std::string& what) : Error("singular input block: " + what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what) : Error("singular matrix: " + what) {}
};

struct NotConverged : Error {
    explicit NotConverged(const std::string& what) : Error("run not converged: " + what) {}
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& what) : Error("non-finite value: " + what) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error("schema error: " + what) {}
};

} // namespace polyrel
