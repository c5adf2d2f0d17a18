#include "elicit/empirical.hpp"

#include "elicit/csv.hpp"
#include "elicit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace elicit {

WeightedSample WeightedSample::from_atoms(std::vector<Atom> atoms) {
	if (atoms.empty()) {
		throw InputError("sample has no atoms");
	}
	for (const auto &a : atoms) {
		if (!std::isfinite(a.value)) {
			throw InputError("sample value is not finite");
		}
		if (!std::isfinite(a.weight) || a.weight < 0.0) {
			throw InputError("sample weight must be finite and non-negative, got " + std::to_string(a.weight));
		}
	}
	std::stable_sort(atoms.begin(), atoms.end(), [](const Atom &a, const Atom &b) { return a.value < b.value; });

	std::vector<Atom> merged;
	merged.reserve(atoms.size());
	for (const auto &a : atoms) {
		if (!merged.empty() && merged.back().value == a.value) {
			merged.back().weight += a.weight;
		} else {
			merged.push_back(a);
		}
	}

	double total = 0.0;
	for (const auto &a : merged) {
		total += a.weight;
	}
	if (!(total > 0.0) || !std::isfinite(total)) {
		throw InputError("sample total weight must be positive");
	}

	WeightedSample s;
	s.cumulative_.reserve(merged.size());
	double running = 0.0;
	for (auto &a : merged) {
		running += a.weight;
		s.cumulative_.push_back(std::min(running / total, 1.0));
		a.weight /= total;
	}
	s.cumulative_.back() = 1.0;
	s.atoms_ = std::move(merged);
	return s;
}

WeightedSample WeightedSample::uniform(std::span<const double> values) {
	std::vector<Atom> atoms;
	atoms.reserve(values.size());
	for (double v : values) {
		atoms.push_back({v, 1.0});
	}
	return from_atoms(std::move(atoms));
}

WeightedSample WeightedSample::uniform(std::initializer_list<double> values) {
	return uniform(std::span<const double>(values.begin(), values.size()));
}

WeightedSample WeightedSample::point_mass(double c) {
	return from_atoms({{c, 1.0}});
}

double WeightedSample::cdf(double z) const noexcept {
	const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), z,
	                                 [](double v, const Atom &a) { return v < a.value; });
	if (it == atoms_.begin()) {
		return 0.0;
	}
	return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double WeightedSample::cdf_left(double z) const noexcept {
	const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), z,
	                                 [](const Atom &a, double v) { return a.value < v; });
	if (it == atoms_.begin()) {
		return 0.0;
	}
	return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double WeightedSample::quantile(double alpha) const {
	if (!(alpha > 0.0 && alpha < 1.0)) {
		throw InputError("quantile level must lie in (0,1), got " + std::to_string(alpha));
	}
	const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), alpha);
	return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].value;
}

double WeightedSample::mean() const noexcept {
	return moment(1);
}

double WeightedSample::moment(int k) const noexcept {
	double m = 0.0;
	for (const auto &a : atoms_) {
		m += a.weight * std::pow(a.value, k);
	}
	return m;
}

double WeightedSample::variance() const noexcept {
	const double m = mean();
	double v = 0.0;
	for (const auto &a : atoms_) {
		v += a.weight * (a.value - m) * (a.value - m);
	}
	return v;
}

WeightedSample WeightedSample::transform(const std::function<double(double)> &ell) const {
	std::vector<Atom> mapped;
	mapped.reserve(atoms_.size());
	for (const auto &a : atoms_) {
		const double v = ell(a.value);
		if (!std::isfinite(v)) {
			throw DomainError("transform produced a non-finite value at x = " + std::to_string(a.value));
		}
		mapped.push_back({v, a.weight});
	}
	return from_atoms(std::move(mapped));
}

WeightedSample WeightedSample::shifted(double c) const {
	return transform([c](double x) { return x + c; });
}

WeightedSample WeightedSample::scaled(double lambda) const {
	return transform([lambda](double x) { return lambda * x; });
}

PairedSample PairedSample::from_atoms(std::vector<PairedAtom> atoms) {
	if (atoms.empty()) {
		throw InputError("paired sample has no atoms");
	}
	double total = 0.0;
	for (const auto &a : atoms) {
		if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
			throw InputError("paired sample value is not finite");
		}
		if (!std::isfinite(a.weight) || a.weight < 0.0) {
			throw InputError("paired sample weight must be finite and non-negative");
		}
		total += a.weight;
	}
	if (!(total > 0.0)) {
		throw InputError("paired sample total weight must be positive");
	}
	for (auto &a : atoms) {
		a.weight /= total;
	}
	PairedSample p;
	p.atoms_ = std::move(atoms);
	return p;
}

WeightedSample PairedSample::marginal_x() const {
	return mix(1.0);
}

WeightedSample PairedSample::marginal_y() const {
	return mix(0.0);
}

WeightedSample PairedSample::mix(double lambda) const {
	std::vector<Atom> atoms;
	atoms.reserve(atoms_.size());
	for (const auto &a : atoms_) {
		double v;
		if (lambda == 1.0) {
			v = a.x;
		} else if (lambda == 0.0) {
			v = a.y;
		} else {
			v = lambda * a.x + (1.0 - lambda) * a.y;
		}
		atoms.push_back({v, a.weight});
	}
	return WeightedSample::from_atoms(std::move(atoms));
}

WeightedSample read_sample_csv(const std::string &path, const std::string &value_column,
                               const std::optional<std::string> &weight_column) {
	const auto table = read_csv_table(path);
	const auto &values = table.column(value_column);
	std::vector<Atom> atoms;
	atoms.reserve(values.size());
	if (weight_column) {
		const auto &weights = table.column(*weight_column);
		for (std::size_t i = 0; i < values.size(); ++i) {
			if (weights[i] < 0.0) {
				throw InputError(path + ":" + std::to_string(table.line_numbers[i]) + ": negative weight");
			}
			atoms.push_back({values[i], weights[i]});
		}
	} else {
		for (double v : values) {
			atoms.push_back({v, 1.0});
		}
	}
	try {
		return WeightedSample::from_atoms(std::move(atoms));
	} catch (const InputError &e) {
		throw InputError(path + ": " + e.what());
	}
}

} // namespace elicit
