#pragma once

#include <stdexcept>
#include <string>

namespace bmr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A name is used as more than one of individual / concept / role.
class SortClashError : public Error {
public:
    using Error::Error;
};

// A name that does not belong to the vocabulary in use.
class VocabularyError : public Error {
public:
    using Error::Error;
};

// The input uses a construct the compilation pipeline cannot handle
// (currently only the universal role).
class UnsupportedConstruct : public Error {
public:
    using Error::Error;
};

// The exhaustive oracle was asked to enumerate a search space above its cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class UnsafeRuleError : public Error {
public:
    using Error::Error;
};

// The program falls outside what either answer-set engine accepts.
class SolverContractError : public Error {
public:
    using Error::Error;
};

} // namespace bmr
