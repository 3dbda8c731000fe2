#pragma once

#include <stdexcept>
#include <string>

namespace calp {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be read (missing, unreadable).
struct IoError : Error {
    using Error::Error;
};

/// File content could not be decoded or uses an unsupported pixel format.
struct FormatError : Error {
    using Error::Error;
};

/// Corpus-level failure (empty root, no decodable images, bad store file).
struct DatasetError : Error {
    using Error::Error;
};

/// Image/vector shape violation (too small for a ring distance, length mismatch,
/// out-of-range coordinates).
struct DimensionError : Error {
    using Error::Error;
};

/// Caller-supplied parameter outside its documented domain.
struct ParameterError : Error {
    using Error::Error;
};

/// Evaluation protocol cannot proceed (empty gallery, singleton class where a
/// ground-truth match is required, probe class absent from gallery).
struct EvaluationError : Error {
    using Error::Error;
};

} // namespace calp
