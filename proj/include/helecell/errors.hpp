#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helecell {

/// Base of every failure the library reports. Pipeline stages throw these and
/// the evolution driver turns them into an abort reason.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure tied to one vertex, edge or point of the curve.
class IndexedError : public Error {
public:
    IndexedError(const std::string& what, std::size_t index)
        : Error(what + " (index " + std::to_string(index) + ")"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class CurveError : public Error {
public:
    using Error::Error;
};
class CuspError : public IndexedError {
public:
    using IndexedError::IndexedError;
};
class DegenerateEdgeError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class SingularMatrixError : public IndexedError {
public:
    using IndexedError::IndexedError;
};
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class PlacementError : public IndexedError {
public:
    using IndexedError::IndexedError;
};
class EvaluationAtSingularityError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

class EmptyInteriorError : public Error {
public:
    using Error::Error;
};

class SpecError : public IndexedError {
public:
    using IndexedError::IndexedError;
};

/// A failure inside the per-step velocity pipeline, tagged with the stage
/// that raised it.
class PipelineError : public Error {
public:
    PipelineError(const std::string& stage, const std::string& what)
        : Error(stage + ": " + what), stage_(stage) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

class ParseError : public Error {
public:
    using Error::Error;
};
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace helecell
