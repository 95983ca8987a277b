#include "uavdeploy/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavdeploy {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
    }
}

constexpr double kSpeedOfLight = 299792458.0;

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double carrier_to_wavelength(double carrier_hz)
{
    require_positive(carrier_hz, "carrier frequency");
    return kSpeedOfLight / carrier_hz;
}

double reference_gain_from_wavelength(double wavelength_m)
{
    require_positive(wavelength_m, "wavelength");
    const double r = wavelength_m / (4.0 * std::numbers::pi * SystemParams::kReferenceDistance);
    return r * r;
}

SystemParams::SystemParams(double transmit_power_w, double altitude_m, double ref_gain,
                           double noise_power_w, double wavelength_m)
    : transmit_power_(transmit_power_w),
      altitude_(altitude_m),
      ref_gain_(ref_gain),
      noise_power_(noise_power_w),
      wavelength_(wavelength_m),
      link_budget_(transmit_power_w * ref_gain / noise_power_w)
{
    require_positive(transmit_power_, "transmit power");
    require_positive(altitude_, "altitude");
    require_positive(ref_gain_, "reference gain");
    require_positive(noise_power_, "noise power");
    require_positive(wavelength_, "wavelength");
    require_positive(link_budget_, "link budget");
}

SystemParams SystemParams::from_linear(double transmit_power_w, double altitude_m,
                                       double ref_gain, double noise_power_w)
{
    require_positive(ref_gain, "reference gain");
    // theta = (nu / (4 pi d))^2  =>  nu = 4 pi d sqrt(theta)
    const double wavelength = 4.0 * std::numbers::pi * kReferenceDistance * std::sqrt(ref_gain);
    return SystemParams(transmit_power_w, altitude_m, ref_gain, noise_power_w, wavelength);
}

SystemParams SystemParams::from_wavelength(double transmit_power_w, double altitude_m,
                                           double wavelength_m, double noise_power_w)
{
    return SystemParams(transmit_power_w, altitude_m, reference_gain_from_wavelength(wavelength_m),
                        noise_power_w, wavelength_m);
}

SystemParams SystemParams::from_engineering(double tx_power_mw, double altitude_m,
                                            double theta_db, double noise_dbm)
{
    require_positive(tx_power_mw, "tx power");
    return from_linear(tx_power_mw * 1e-3, altitude_m, db_to_linear(theta_db),
                       dbm_to_watts(noise_dbm));
}

SystemParams SystemParams::reference() { return from_engineering(10.0, 100.0, -47.0, -110.0); }

CellGeometry::CellGeometry(Dimension dim, double half_width, double density)
    : dimension_(dim), half_width_(half_width), density_(density)
{
    require_positive(half_width, "cell half-width");
    if (!(density >= 0.0) || !std::isfinite(density)) {
        throw std::invalid_argument("user density must be finite and >= 0");
    }
    mean_load_ = dim == Dimension::OneD ? 2.0 * density * half_width
                                        : 4.0 * half_width * half_width * density;
}

CellGeometry CellGeometry::one_d(double half_width, double density)
{
    return CellGeometry(Dimension::OneD, half_width, density);
}

CellGeometry CellGeometry::two_d(double half_width, double density)
{
    return CellGeometry(Dimension::TwoD, half_width, density);
}

CellGeometry CellGeometry::from_mean_load(Dimension dim, double half_width, double mean_load)
{
    require_positive(half_width, "cell half-width");
    const double density = dim == Dimension::OneD ? mean_load / (2.0 * half_width)
                                                  : mean_load / (4.0 * half_width * half_width);
    CellGeometry cell(dim, half_width, density);
    cell.mean_load_ = mean_load;  // keep the caller's value exactly
    return cell;
}

Point anchor_point(int anchor, double beta, const CellGeometry& cell)
{
    const double d = beta * cell.half_width();
    if (cell.dimension() == Dimension::OneD) {
        switch (anchor) {
        case 0: return {0.0, 0.0};
        case 1: return {-d, 0.0};
        case 2: return {d, 0.0};
        }
    } else {
        switch (anchor) {
        case 0: return {0.0, 0.0};
        case 1: return {d, d};
        case 2: return {-d, d};
        case 3: return {-d, -d};
        case 4: return {d, -d};
        }
    }
    throw std::out_of_range("anchor index out of range for cell dimension");
}

double snr(const SystemParams& params, double horizontal_dist)
{
    const double h = params.altitude();
    return params.link_budget() / (horizontal_dist * horizontal_dist + h * h);
}

double throughput(double snr) { return std::log2(1.0 + snr); }

CoverageRadius coverage_radius(const SystemParams& params, double gamma_th)
{
    if (!(gamma_th > 0.0)) throw std::invalid_argument("SNR threshold must be > 0");
    const double h = params.altitude();
    const double radicand = params.link_budget() / gamma_th - h * h;
    if (radicand < 0.0) return ZeroCoverage{};
    return std::sqrt(radicand);
}

}  // namespace uavdeploy
