#include "seampp/emos.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <numbers>

#include "seampp/csvio.hpp"
#include "seampp/errors.hpp"

namespace seampp {

EmosFit fit_emos(const DesignMatrix& dm, const FitOptions& opts)
{
	const std::size_t n = dm.n_rows();
	const std::size_t p = dm.n_cols();
	if (n == 0 || p == 0)
		throw TooFewRows("empty design for " + dm.station + " lead " + std::to_string(dm.lead_h));
	if (n < p)
		throw TooFewRows(std::to_string(n) + " rows < " + std::to_string(p) + " columns for " + dm.station +
		                 " lead " + std::to_string(dm.lead_h));

	Eigen::MatrixXd X(n, p);
	for (std::size_t c = 0; c < p; ++c)
		for (std::size_t r = 0; r < n; ++r)
			X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = dm.cols[c][r];
	Eigen::VectorXd y(n);
	for (std::size_t r = 0; r < n; ++r)
		y(static_cast<Eigen::Index>(r)) = dm.target[r];

	Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
	const Eigen::Index rank = qr.rank();
	Eigen::VectorXd beta;
	if (rank == static_cast<Eigen::Index>(p)) {
		beta = qr.solve(y);
	} else {
		// solve() trusts the factorization-time pivot count, which can keep a
		// roundoff-sized diagonal that rank() rejects and then amplify it into
		// huge mutually cancelling coefficients.  Re-solve on the rank-revealed
		// basis instead: the pivoted-out columns get coefficient 0 exactly.
		const auto& perm = qr.colsPermutation().indices();
		Eigen::MatrixXd Xr(static_cast<Eigen::Index>(n), rank);
		for (Eigen::Index j = 0; j < rank; ++j)
			Xr.col(j) = X.col(perm(j));
		const Eigen::VectorXd br = Xr.householderQr().solve(y);
		beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
		for (Eigen::Index j = 0; j < rank; ++j)
			beta(perm(j)) = br(j);
	}

	const Eigen::VectorXd resid = y - X * beta;
	const double ssr = resid.squaredNorm();
	const double sigma = std::max(std::sqrt(ssr / static_cast<double>(n)), opts.sigma_floor);

	EmosFit fit;
	fit.station = dm.station;
	fit.lead_h = dm.lead_h;
	for (std::size_t c = 0; c < p; ++c)
		fit.coefficients[dm.columns[c]] = beta(static_cast<Eigen::Index>(c));
	fit.sigma = sigma;
	fit.n_train = n;
	fit.rank_deficient = rank < static_cast<Eigen::Index>(p);
	return fit;
}

namespace {

void check_columns(const EmosFit& fit, const DesignMatrix& dm)
{
	if (fit.coefficients.size() != dm.n_cols())
		throw ColumnMismatch("fit has " + std::to_string(fit.coefficients.size()) + " columns, design has " +
		                     std::to_string(dm.n_cols()));
	for (const auto& name : dm.columns)
		if (!fit.coefficients.count(name))
			throw ColumnMismatch("design column '" + name + "' missing from fit");
}

} // namespace

double nll(const EmosFit& fit, const DesignMatrix& dm)
{
	check_columns(fit, dm);
	const double s2 = fit.sigma * fit.sigma;
	const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi * s2);
	double acc = 0.0;
	for (std::size_t r = 0; r < dm.n_rows(); ++r) {
		double mu = 0.0;
		for (std::size_t c = 0; c < dm.n_cols(); ++c)
			mu += fit.coefficients.at(dm.columns[c]) * dm.cols[c][r];
		const double e = dm.target[r] - mu;
		acc += log_norm + e * e / (2.0 * s2);
	}
	return acc;
}

GaussianPrediction predict(const EmosFit& fit, const std::map<std::string, double>& row)
{
	double mu = 0.0;
	for (const auto& [name, beta] : fit.coefficients) {
		const auto it = row.find(name);
		if (it == row.end())
			throw MissingPredictor("predictor '" + name + "' missing from row");
		mu += beta * it->second;
	}
	return {mu, fit.sigma};
}

GaussianPrediction predict_row(const EmosFit& fit, const DesignMatrix& dm, std::size_t row)
{
	check_columns(fit, dm);
	double mu = 0.0;
	for (std::size_t c = 0; c < dm.n_cols(); ++c)
		mu += fit.coefficients.at(dm.columns[c]) * dm.cols[c][row];
	return {mu, fit.sigma};
}

void write_fits_csv(const std::filesystem::path& path, const std::vector<EmosFit>& fits)
{
	std::ofstream outf(path);
	if (!outf)
		throw DataError("cannot write " + path.string());
	outf << "station,mode,lead_h,n_train,sigma,beta_intercept,beta_pers,beta_aro,beta_det,beta_ensmu,"
	        "beta_sin1,beta_cos1,beta_sin2,beta_cos2\n";
	for (const auto& fit : fits) {
		outf << fit.station << ',' << fit.mode.label() << ',' << fit.lead_h << ',' << fit.n_train << ','
		     << format_double(fit.sigma);
		for (const char* col : kCanonicalColumns) {
			const auto it = fit.coefficients.find(col);
			outf << ',';
			if (it != fit.coefficients.end())
				outf << format_double(it->second);
		}
		outf << '\n';
	}
}

} // namespace seampp
