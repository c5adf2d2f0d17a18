#pragma once

#include <stdexcept>
#include <string>

namespace elicit {

/// Malformed or out-of-range user input (data files, specs, parameters).
class InputError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce an answer to the requested accuracy.
class NumericalError : public std::runtime_error {
public:
	NumericalError(const std::string &what, double best_iterate)
	    : std::runtime_error(what), best_iterate_(best_iterate) {}

	double best_iterate() const noexcept { return best_iterate_; }

private:
	double best_iterate_;
};

/// A map or function was evaluated outside its domain.
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

} // namespace elicit
