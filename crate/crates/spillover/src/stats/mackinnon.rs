//! MacKinnon response-surface p-values for unit-root and cointegration
//! t-statistics.
//!
//! The approximation maps a Dickey-Fuller style t-ratio to a p-value via
//! Phi(poly(t)) with regime-specific polynomial coefficients, switching
//! between a small-p cubic-free fit and a large-p cubic fit at a
//! tabulated threshold. `n_series = 1` covers the plain unit-root case;
//! `n_series >= 2` covers residual-based cointegration tests.

use statrs::distribution::{ContinuousCDF, Normal};

use super::Deterministic;

// Tabulated ranges and switch points, indexed by n_series - 1.
const TAU_MAX_NC: [f64; 6] = [f64::INFINITY, 1.51, 0.86, 0.88, 1.05, 1.24];
const TAU_MIN_NC: [f64; 6] = [-19.04, -19.62, -21.21, -23.25, -21.63, -25.74];
const TAU_STAR_NC: [f64; 6] = [-1.04, -1.53, -2.68, -3.09, -3.07, -3.77];
const TAU_MAX_C: [f64; 6] = [2.74, 0.92, 0.55, 0.61, 0.79, 1.0];
const TAU_MIN_C: [f64; 6] = [-18.83, -18.86, -23.48, -28.07, -25.96, -23.27];
const TAU_STAR_C: [f64; 6] = [-1.61, -2.62, -3.13, -3.47, -3.78, -3.93];
const TAU_MAX_CT: [f64; 6] = [0.7, 0.63, 0.71, 0.93, 1.19, 1.42];
const TAU_MIN_CT: [f64; 6] = [-16.18, -21.15, -25.37, -26.63, -26.53, -26.18];
const TAU_STAR_CT: [f64; 6] = [-2.89, -3.19, -3.5, -3.65, -3.8, -4.36];

// Polynomial coefficients in ascending order: p = Phi(c0 + c1 t + c2 t^2 [+ c3 t^3]).
const TAU_NC_SMALLP: [[f64; 3]; 6] = [
    [0.6344, 1.2378, 3.2496e-2],
    [1.9129, 1.3857, 3.5322e-2],
    [2.7648, 1.4502, 3.4186e-2],
    [3.4336, 1.4835, 3.19e-2],
    [4.0999, 1.5533, 3.59e-2],
    [4.5388, 1.5344, 2.9807e-2],
];
const TAU_C_SMALLP: [[f64; 3]; 6] = [
    [2.1659, 1.4412, 3.8269e-2],
    [2.92, 1.5012, 3.9796e-2],
    [3.4699, 1.4856, 3.164e-2],
    [3.9673, 1.4777, 2.6315e-2],
    [4.5509, 1.5338, 2.9545e-2],
    [5.1399, 1.6036, 3.4445e-2],
];
const TAU_CT_SMALLP: [[f64; 3]; 6] = [
    [3.2512, 1.6047, 4.9588e-2],
    [3.6646, 1.5419, 3.6448e-2],
    [4.0983, 1.5173, 2.9898e-2],
    [4.5844, 1.5338, 2.8796e-2],
    [5.0722, 1.5634, 2.9472e-2],
    [5.53, 1.5914, 3.0392e-2],
];
const TAU_NC_LARGEP: [[f64; 4]; 6] = [
    [0.4797, 9.3557e-1, -6.999e-2, 3.3066e-2],
    [1.5578, 8.558e-1, -2.083e-1, -3.3549e-2],
    [2.2268, 6.8093e-1, -3.2362e-1, -5.4448e-2],
    [2.7654, 6.4502e-1, -3.0811e-1, -4.4946e-2],
    [3.2684, 6.8051e-1, -2.6778e-1, -3.4972e-2],
    [3.7268, 7.167e-1, -2.3648e-1, -2.8288e-2],
];
const TAU_C_LARGEP: [[f64; 4]; 6] = [
    [1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2],
    [2.1945, 6.4695e-1, -2.9198e-1, -4.2377e-2],
    [2.5893, 4.5168e-1, -3.6529e-1, -5.0074e-2],
    [3.0387, 4.5452e-1, -3.3666e-1, -4.1921e-2],
    [3.5049, 5.2098e-1, -2.9158e-1, -3.3468e-2],
    [3.9489, 5.8933e-1, -2.5359e-1, -2.721e-2],
];
const TAU_CT_LARGEP: [[f64; 4]; 6] = [
    [2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2],
    [2.85, 5.272e-1, -3.6622e-1, -5.1695e-2],
    [3.221, 5.255e-1, -3.2685e-1, -4.1501e-2],
    [3.652, 5.9758e-1, -2.7483e-1, -3.2081e-2],
    [4.0712, 6.6428e-1, -2.3464e-1, -2.546e-2],
    [4.4735, 7.1757e-1, -2.0681e-1, -2.1196e-2],
];

/// Outcome of the response-surface lookup.
pub(crate) enum SurfaceP {
    Exact(f64),
    /// Statistic below the tabulated range; true p is at most this.
    BelowRange(f64),
    /// Statistic above the tabulated range; true p is at least this.
    AboveRange(f64),
}

impl SurfaceP {
    pub fn value(&self) -> f64 {
        match self {
            SurfaceP::Exact(p) | SurfaceP::BelowRange(p) | SurfaceP::AboveRange(p) => *p,
        }
    }
}

/// Approximate asymptotic p-value for a Dickey-Fuller t-statistic.
///
/// `n_series` is the number of I(1) series in the (cointegrating)
/// regression: 1 for a plain unit-root test, 2 for a bivariate
/// cointegration residual test, up to 6.
pub(crate) fn p_value(stat: f64, deterministic: Deterministic, n_series: usize) -> SurfaceP {
    assert!(
        (1..=6).contains(&n_series),
        "n_series must be in 1..=6, got {n_series}"
    );
    let idx = n_series - 1;
    let (max, min, star) = match deterministic {
        Deterministic::None => (TAU_MAX_NC[idx], TAU_MIN_NC[idx], TAU_STAR_NC[idx]),
        Deterministic::Constant => (TAU_MAX_C[idx], TAU_MIN_C[idx], TAU_STAR_C[idx]),
        Deterministic::ConstantTrend => (TAU_MAX_CT[idx], TAU_MIN_CT[idx], TAU_STAR_CT[idx]),
    };
    if stat > max {
        return SurfaceP::AboveRange(1.0);
    }
    if stat < min {
        return SurfaceP::BelowRange(0.0);
    }
    let z = if stat <= star {
        let c = match deterministic {
            Deterministic::None => TAU_NC_SMALLP[idx],
            Deterministic::Constant => TAU_C_SMALLP[idx],
            Deterministic::ConstantTrend => TAU_CT_SMALLP[idx],
        };
        c[0] + c[1] * stat + c[2] * stat * stat
    } else {
        let c = match deterministic {
            Deterministic::None => TAU_NC_LARGEP[idx],
            Deterministic::Constant => TAU_C_LARGEP[idx],
            Deterministic::ConstantTrend => TAU_CT_LARGEP[idx],
        };
        c[0] + c[1] * stat + c[2] * stat * stat + c[3] * stat * stat * stat
    };
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    SurfaceP::Exact(normal.cdf(z))
}
