#pragma once

#include <stdexcept>
#include <string>

namespace symdisk {

enum class ErrorKind {
    InvalidInput,   // violated precondition on caller data
    Numerical,      // a numerical check failed (ill-placed contour, residual, ...)
    NoCertificate,  // a requested certificate (active kernel, ...) was not found
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

class InputError : public Error {
   public:
    explicit InputError(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class NumericalError : public Error {
   public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class NoCertificateError : public Error {
   public:
    explicit NoCertificateError(const std::string& what) : Error(ErrorKind::NoCertificate, what) {}
};

}  // namespace symdisk
