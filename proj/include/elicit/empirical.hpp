#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace elicit {

struct Atom {
	double value = 0.0;
	double weight = 0.0;

	friend bool operator==(const Atom &, const Atom &) = default;
};

/// Finite discrete distribution: sorted, merged atoms with probabilities.
///
/// Construction validates, sorts ascending, merges atoms whose values compare
/// equal (exact double equality) and normalizes the weights. Zero-weight atoms
/// are kept, so they still count towards the support hull. Instances are
/// immutable.
class WeightedSample {
public:
	/// Throws InputError on an empty list, non-finite values, negative or
	/// non-finite weights, or a zero total weight.
	static WeightedSample from_atoms(std::vector<Atom> atoms);
	/// Equal weights on every value.
	static WeightedSample uniform(std::span<const double> values);
	static WeightedSample uniform(std::initializer_list<double> values);
	/// The degenerate distribution at c.
	static WeightedSample point_mass(double c);

	std::span<const Atom> atoms() const noexcept { return atoms_; }
	std::size_t size() const noexcept { return atoms_.size(); }
	double min() const noexcept { return atoms_.front().value; }
	double max() const noexcept { return atoms_.back().value; }

	/// F(z) = P(X <= z), right-continuous.
	double cdf(double z) const noexcept;
	/// P(X < z), the left limit F(z-).
	double cdf_left(double z) const noexcept;
	/// Left-continuous generalized inverse inf{x : F(x) >= alpha}.
	double quantile(double alpha) const;

	double mean() const noexcept;
	double moment(int k) const noexcept;
	double variance() const noexcept;

	/// Pushforward of the distribution through ell. Throws DomainError if ell
	/// produces a non-finite value on any atom.
	WeightedSample transform(const std::function<double(double)> &ell) const;
	WeightedSample shifted(double c) const;
	WeightedSample scaled(double lambda) const;

	friend bool operator==(const WeightedSample &, const WeightedSample &) = default;

private:
	WeightedSample() = default;

	std::vector<Atom> atoms_;
	// cumulative_[i] = P(X <= atoms_[i].value), computed from the raw weights
	// before normalization so that k/n style levels are correctly rounded.
	std::vector<double> cumulative_;
};

struct PairedAtom {
	double x = 0.0;
	double y = 0.0;
	double weight = 0.0;
};

/// Joint distribution of (X, Y) on a common finite probability space.
class PairedSample {
public:
	static PairedSample from_atoms(std::vector<PairedAtom> atoms);

	std::span<const PairedAtom> atoms() const noexcept { return atoms_; }

	WeightedSample marginal_x() const;
	WeightedSample marginal_y() const;
	/// Distribution of lambda * X + (1 - lambda) * Y.
	WeightedSample mix(double lambda) const;

private:
	PairedSample() = default;
	std::vector<PairedAtom> atoms_;
};

/// Reads a sample from a CSV file with a header row. Without a weight column
/// every row gets weight one. Errors name the file and line.
WeightedSample read_sample_csv(const std::string &path, const std::string &value_column = "value",
                               const std::optional<std::string> &weight_column = std::nullopt);

} // namespace elicit
