#pragma once

#include <stdexcept>
#include <string>

namespace qcells {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WeightOutsideAlcove : public Error {
public:
    using Error::Error;
};

class UnknownGraph : public Error {
public:
    using Error::Error;
};

class NotConnected : public Error {
public:
    using Error::Error;
};

class AltitudeMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NegativeEntry : public Error {
public:
    NegativeEntry(int lambda, int mu, int a, int b, long long value)
        : Error("negative entry " + std::to_string(value) + " at (" + std::to_string(a) + "," +
                std::to_string(b) + ") of weight (" + std::to_string(lambda) + "," +
                std::to_string(mu) + ")"),
          lambda(lambda), mu(mu), a(a), b(b) {}
    int lambda, mu, a, b;
};

class MissingCell : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class NotAdjacent : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class UnsupportedGraph : public Error {
public:
    using Error::Error;
};

}  // namespace qcells
