#ifndef UAVDEPLOY_CORE_MODEL_HPP
#define UAVDEPLOY_CORE_MODEL_HPP

#include <optional>
#include <variant>

namespace uavdeploy {

// Unit conversions. Everything past construction is linear.
double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double carrier_to_wavelength(double carrier_hz);
// Free-space reference gain (wavelength / (4 pi d))^2 at the fixed 1 m reference distance.
double reference_gain_from_wavelength(double wavelength_m);

/**
 * Radio link constants of the LoS air-to-ground channel.
 *
 * The link budget a = P_t * theta / sigma^2 is the numerator of the SNR,
 * gamma = a / (d^2 + h^2), with d the horizontal UAV-user distance.
 * Instances are immutable once built.
 */
class SystemParams {
public:
    static constexpr double kReferenceDistance = 1.0;

    static SystemParams from_linear(double transmit_power_w, double altitude_m,
                                    double ref_gain, double noise_power_w);
    static SystemParams from_wavelength(double transmit_power_w, double altitude_m,
                                        double wavelength_m, double noise_power_w);
    // Engineering units: mW, m, dB, dBm.
    static SystemParams from_engineering(double tx_power_mw, double altitude_m,
                                         double theta_db, double noise_dbm);
    // 10 mW at 100 m, theta = -47 dB, sigma^2 = -110 dBm.
    static SystemParams reference();

    double transmit_power() const { return transmit_power_; }
    double altitude() const { return altitude_; }
    double ref_gain() const { return ref_gain_; }
    double noise_power() const { return noise_power_; }
    double wavelength() const { return wavelength_; }
    double link_budget() const { return link_budget_; }

private:
    SystemParams(double transmit_power_w, double altitude_m, double ref_gain,
                 double noise_power_w, double wavelength_m);

    double transmit_power_;
    double altitude_;
    double ref_gain_;
    double noise_power_;
    double wavelength_;
    double link_budget_;
};

enum class Dimension { OneD, TwoD };

/// Square (2D) or segment (1D) cell of half-width R centred at the origin.
class CellGeometry {
public:
    static CellGeometry one_d(double half_width, double density);
    static CellGeometry two_d(double half_width, double density);
    static CellGeometry from_mean_load(Dimension dim, double half_width, double mean_load);

    double half_width() const { return half_width_; }
    double density() const { return density_; }
    Dimension dimension() const { return dimension_; }
    int sectors() const { return dimension_ == Dimension::OneD ? 2 : 4; }
    double mean_load() const { return mean_load_; }

private:
    CellGeometry(Dimension dim, double half_width, double density);

    Dimension dimension_;
    double half_width_;
    double density_;
    double mean_load_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// UAV ground position chosen among the anchors U_0..U_M for a displacement factor beta.
struct Placement {
    int anchor = 0;
    Point ground;
    double beta = 0.0;
};

// Anchor U_j. 1D: U_0 = 0, U_1 = -beta R, U_2 = +beta R.
// 2D: U_0 = origin, U_1..U_4 = (+,+), (-,+), (-,-), (+,-) times beta R.
Point anchor_point(int anchor, double beta, const CellGeometry& cell);

double snr(const SystemParams& params, double horizontal_dist);
double throughput(double snr);

struct ZeroCoverage {};
using CoverageRadius = std::variant<double, ZeroCoverage>;

// rho = sqrt(a / gamma_th - h^2); ZeroCoverage when the target is unreachable even at d = 0.
CoverageRadius coverage_radius(const SystemParams& params, double gamma_th);

inline bool is_zero_coverage(const CoverageRadius& r) { return std::holds_alternative<ZeroCoverage>(r); }
inline std::optional<double> radius_meters(const CoverageRadius& r)
{
    if (auto* m = std::get_if<double>(&r)) return *m;
    return std::nullopt;
}

}  // namespace uavdeploy

#endif
