#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "seampp/assembly.hpp"

namespace seampp {

struct GaussianPrediction {
	double mu = 0.0;    // degC
	double sigma = 0.0; // degC, > 0
};

struct FitOptions {
	// Lower clamp on the fitted scale; keeps noise-free designs away from a
	// degenerate likelihood.
	double sigma_floor = 0.01;
};

// One fitted homoscedastic Gaussian regression cell. The coefficient key set
// equals the design's column set; sigma is the maximum-likelihood scale
// (divisor n), clamped to the floor.
struct EmosFit {
	std::string station;
	PredictorMode mode;
	int lead_h = 0;
	std::map<std::string, double> coefficients;
	double sigma = 0.0;
	std::size_t n_train = 0;
	bool rank_deficient = false;
};

// Maximum-likelihood fit of the constant-scale Gaussian regression. The
// optimum has closed form: least squares for the location coefficients and
// mean squared residual for sigma^2. Collinear columns detected by the
// pivoted QR get coefficient 0 and flag the fit.
EmosFit fit_emos(const DesignMatrix& dm, const FitOptions& opts = {});

// Negative Gaussian log-likelihood of dm's target under the fit.
double nll(const EmosFit& fit, const DesignMatrix& dm);

GaussianPrediction predict(const EmosFit& fit, const std::map<std::string, double>& row);

// Row i of a design whose column set matches the fit.
GaussianPrediction predict_row(const EmosFit& fit, const DesignMatrix& dm, std::size_t row);

// One CSV row per cell:
// station,mode,lead_h,n_train,sigma,beta_intercept,beta_pers,beta_aro,
// beta_det,beta_ensmu,beta_sin1,beta_cos1,beta_sin2,beta_cos2
// with empty fields for columns absent from the mode.
void write_fits_csv(const std::filesystem::path& path, const std::vector<EmosFit>& fits);

} // namespace seampp
