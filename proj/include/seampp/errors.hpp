#pragma once

#include <stdexcept>
#include <string>

namespace seampp {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Problems with the input data or its volume (CLI exit code 2).
struct DataError : Error {
	using Error::Error;
};

// Contract violations in numerical routines (CLI exit code 3).
struct NumericError : Error {
	using Error::Error;
};

struct EmptyDesign : DataError {
	using DataError::DataError;
};

struct NoPredictor : DataError {
	using DataError::DataError;
};

struct TooFewRows : DataError {
	using DataError::DataError;
};

struct TooFewYears : DataError {
	using DataError::DataError;
};

struct InvalidProfile : DataError {
	using DataError::DataError;
};

struct ConfigError : DataError {
	using DataError::DataError;
};

struct ColumnMismatch : NumericError {
	using NumericError::NumericError;
};

struct MissingPredictor : NumericError {
	using NumericError::NumericError;
};

struct LengthMismatch : NumericError {
	using NumericError::NumericError;
};

struct EmptyInput : NumericError {
	using NumericError::NumericError;
};

struct ZeroReference : NumericError {
	using NumericError::NumericError;
};

} // namespace seampp
