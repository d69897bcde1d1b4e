//! Scenario engine: reproducible full-horizon uncertainty scenarios for
//! demand, heating, mobility, renewables and grid availability, all driven by
//! seeded stochastic models.
//!
//! Everything here is a pure function of (parameters, seed); identical inputs
//! give bit-identical outputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{month_of_year, season_of_month, Season, StudyConfig, DAYS_IN_MONTH};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid GBM parameters: {0}")]
    InvalidGbm(String),
    #[error("capacity factor {0} outside (0,1)")]
    InvalidCf(f64),
}

/// Geometric Brownian motion parameters.
///
/// `x` evolves as `X^t = X^0 exp((mu - sigma^2/2) t + sigma W_t)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GbmParams {
    /// Initial value (units of the modeled variable).
    pub x0: f64,
    /// Drift per year.
    pub mu: f64,
    /// Volatility per sqrt-year.
    pub sigma: f64,
    /// Step size in years.
    pub dt: f64,
}

impl GbmParams {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.x0 > 0.0) {
            return Err(ScenarioError::InvalidGbm(format!("x0 = {} must be > 0", self.x0)));
        }
        if !(self.dt > 0.0) {
            return Err(ScenarioError::InvalidGbm(format!("dt = {} must be > 0", self.dt)));
        }
        if self.sigma < 0.0 {
            return Err(ScenarioError::InvalidGbm(format!(
                "sigma = {} must be >= 0",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// Exact exponentiated-Wiener GBM discretization: `n_steps + 1` values
/// starting at `x0`, with no Euler drift error.
pub fn gbm_path(p: &GbmParams, n_steps: usize, rng_seed: u64) -> Result<Vec<f64>, ScenarioError> {
    p.validate()?;
    assert!(n_steps >= 1, "n_steps must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let drift = (p.mu - 0.5 * p.sigma * p.sigma) * p.dt;
    let diffusion = p.sigma * p.dt.sqrt();
    let mut path = Vec::with_capacity(n_steps + 1);
    path.push(p.x0);
    let mut x = p.x0;
    for _ in 0..n_steps {
        let z: f64 = rng.sample(StandardNormal);
        x *= (drift + diffusion * z).exp();
        path.push(x);
    }
    Ok(path)
}

/// A 24-hour demand weight profile for one mobility season.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HourlyShape {
    values: [f64; 24],
    pub season: Season,
}

impl HourlyShape {
    /// Normalizes the weights to sum to 1. All weights must be nonnegative
    /// and not all zero.
    pub fn new(raw: [f64; 24], season: Season) -> Self {
        assert!(raw.iter().all(|v| *v >= 0.0), "shape weights must be nonnegative");
        let sum: f64 = raw.iter().sum();
        assert!(sum > 0.0, "shape weights must not all be zero");
        let mut values = raw;
        for v in &mut values {
            *v /= sum;
        }
        Self { values, season }
    }

    pub fn weight(&self, hour_of_day: usize) -> f64 {
        self.values[hour_of_day]
    }

    pub fn values(&self) -> &[f64; 24] {
        &self.values
    }
}

/// One full-horizon realization of all stochastic drivers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioPath {
    pub seed: u64,
    pub months: usize,
    /// Per-ger electricity demand per month (kWh).
    pub ed_monthly: Vec<f64>,
    /// Per-ger heating demand per month (kWh).
    pub hd_monthly: Vec<f64>,
    /// Cluster radius per month (km).
    pub r_cluster_monthly: Vec<f64>,
    /// Multiplicative renewable noise per simulated hour, max(0, 1 + N(0, sigma)).
    pub pv_noise: Vec<f64>,
    pub wind_noise: Vec<f64>,
    /// Grid availability per simulated hour (always false in MS1 months).
    pub grid_up: Vec<bool>,
}

fn sub_seed(seed: u64, stream: u64) -> u64 {
    // splitmix64 over (seed, stream) so driver streams are independent.
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Annual GBM multipliers normalized to 1.0 in year 0.
fn annual_multipliers(mu: f64, sigma: f64, n_years: usize, seed: u64) -> Vec<f64> {
    let p = GbmParams {
        x0: 1.0,
        mu,
        sigma,
        dt: 1.0,
    };
    gbm_path(&p, n_years.max(1), seed).expect("unit GBM params are valid")
}

/// Monthly electricity and heating demand series (kWh per ger).
///
/// The seasonal baseline is scaled by the year's GBM multiplier; heating
/// months are weighted by the configured heating-degree shape (summer zero).
pub fn build_demand_series(
    ed0_summer: f64,
    ed0_winter: f64,
    hd0_annual: f64,
    gbm_ed: &GbmParams,
    gbm_hd: &GbmParams,
    hd_month_weights: &[f64; 12],
    months: usize,
    seed: u64,
) -> (Vec<f64>, Vec<f64>) {
    assert!(ed0_summer > 0.0 && ed0_winter > 0.0 && hd0_annual > 0.0);
    let n_years = months.div_ceil(12);
    let ed_mult = annual_multipliers(gbm_ed.mu, gbm_ed.sigma, n_years, sub_seed(seed, 1));
    let hd_mult = annual_multipliers(gbm_hd.mu, gbm_hd.sigma, n_years, sub_seed(seed, 2));
    let wsum: f64 = hd_month_weights.iter().sum();
    assert!(wsum > 0.0, "heating weights must not all be zero");

    let mut ed = Vec::with_capacity(months);
    let mut hd = Vec::with_capacity(months);
    for m in 0..months {
        let year = m / 12;
        let base = match season_of_month(m) {
            Season::Ms1 => ed0_summer,
            Season::Ms2 => ed0_winter,
        };
        ed.push(base * ed_mult[year]);
        hd.push(hd0_annual * hd_mult[year] * hd_month_weights[month_of_year(m)] / wsum);
    }
    (ed, hd)
}

/// Monthly cluster radius (km): r0 x seasonal multiplier x annual GBM.
pub fn build_mobility_series(
    r0: f64,
    seasonal_mult: &[f64; 4],
    gbm: &GbmParams,
    months: usize,
    seed: u64,
) -> Vec<f64> {
    assert!(r0 > 0.0);
    let n_years = months.div_ceil(12);
    let mult = annual_multipliers(gbm.mu, gbm.sigma, n_years, sub_seed(seed, 3));
    (0..months)
        .map(|m| {
            let season4 = match month_of_year(m) {
                2..=4 => 0, // spring
                5..=7 => 1, // summer
                8..=10 => 2, // autumn
                _ => 3,     // winter
            };
            r0 * seasonal_mult[season4] * mult[m / 12]
        })
        .collect()
}

/// Cabling ring circumference (km) for a cluster radius (km).
pub fn cabling_length_km(r_cluster_km: f64) -> f64 {
    2.0 * std::f64::consts::PI * r_cluster_km
}

/// Deterministic diurnal/seasonal renewable base profiles, scaled so the
/// annual (full-calendar) mean capacity factor hits the configured targets.
/// Substitutes the external trace platform; users with real traces can import
/// them via the scenario CSV cache.
#[derive(Debug, Clone)]
pub struct ResBaseProfiles {
    pv_scale: f64,
    wind_scale: f64,
}

fn pv_shape(day_of_year: u32, hour: u32) -> f64 {
    let d = day_of_year as f64;
    let phase = 2.0 * std::f64::consts::PI * (d - 172.0) / 365.0;
    let half_width = 6.0 + 2.0 * phase.cos();
    let amp = 1.0 + 0.2 * phase.cos();
    let x = (hour as f64 + 0.5 - 12.75) / half_width;
    if x.abs() >= 1.0 {
        0.0
    } else {
        amp * (std::f64::consts::FRAC_PI_2 * x).cos()
    }
}

fn wind_shape(day_of_year: u32, hour: u32) -> f64 {
    let d = day_of_year as f64;
    let seasonal = 1.0 + 0.25 * (2.0 * std::f64::consts::PI * (d - 15.0) / 365.0).cos();
    let diurnal = 1.0 + 0.15 * (2.0 * std::f64::consts::PI * (hour as f64 - 15.0) / 24.0).cos();
    seasonal * diurnal
}

impl ResBaseProfiles {
    pub fn new(cf_pv: f64, cf_wind: f64) -> Result<Self, ScenarioError> {
        for cf in [cf_pv, cf_wind] {
            if !(cf > 0.0 && cf < 1.0) {
                return Err(ScenarioError::InvalidCf(cf));
            }
        }
        let hours_per_year = 365 * 24;
        let mut pv_sum = 0.0;
        let mut wind_sum = 0.0;
        for d in 0..365 {
            for h in 0..24 {
                pv_sum += pv_shape(d, h);
                wind_sum += wind_shape(d, h);
            }
        }
        Ok(Self {
            pv_scale: cf_pv * hours_per_year as f64 / pv_sum,
            wind_scale: cf_wind * hours_per_year as f64 / wind_sum,
        })
    }

    pub fn pv(&self, day_of_year: u32, hour: u32) -> f64 {
        (self.pv_scale * pv_shape(day_of_year, hour)).min(1.0)
    }

    pub fn wind(&self, day_of_year: u32, hour: u32) -> f64 {
        (self.wind_scale * wind_shape(day_of_year, hour)).min(1.0)
    }
}

/// Per-hour multiplicative noise streams: max(0, 1 + N(0, sigma)).
pub fn build_res_noise(sigma_pv: f64, sigma_wind: f64, hours: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    assert!(sigma_pv >= 0.0 && sigma_wind >= 0.0);
    let draw = |stream: u64, sigma: f64| -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, stream));
        (0..hours)
            .map(|_| {
                let z: f64 = rng.sample(StandardNormal);
                (1.0 + sigma * z).max(0.0)
            })
            .collect()
    };
    (draw(4, sigma_pv), draw(5, sigma_wind))
}

/// Grid availability flags from explicit per-month blackout probabilities.
/// `month_hours[m]` gives the simulated hours of month m.
fn grid_flags_from_qs(qs: &[f64], month_hours: &[usize], seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 7));
    let mut flags = Vec::with_capacity(month_hours.iter().sum());
    for (m, &hours) in month_hours.iter().enumerate() {
        let q = qs[m];
        let ms2 = season_of_month(m) == Season::Ms2;
        for _ in 0..hours {
            let r: f64 = rng.gen();
            flags.push(ms2 && r >= q);
        }
    }
    flags
}

/// Grid availability: per MS2 month a blackout probability q ~ Beta(a, b),
/// then hourly Bernoulli(1 - q). MS1 months have no grid access.
pub fn build_grid_availability(a: f64, b: f64, month_hours: &[usize], seed: u64) -> Vec<bool> {
    assert!(a > 0.0 && b > 0.0);
    let beta = Beta::new(a, b).expect("valid beta parameters");
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 6));
    let qs: Vec<f64> = (0..month_hours.len()).map(|_| beta.sample(&mut rng)).collect();
    grid_flags_from_qs(&qs, month_hours, seed)
}

/// Deterministic scenario assembly from (config, seed).
pub fn assemble_scenario(cfg: &StudyConfig, seed: u64) -> ScenarioPath {
    let months = cfg.system.horizon_months;
    let sc = &cfg.scenario;
    let gbm_ed = GbmParams {
        x0: 1.0,
        mu: sc.mu_ed,
        sigma: sc.sigma_ed,
        dt: 1.0,
    };
    let gbm_hd = GbmParams {
        x0: 1.0,
        mu: sc.mu_hd,
        sigma: sc.sigma_hd,
        dt: 1.0,
    };
    let gbm_mig = GbmParams {
        x0: 1.0,
        mu: sc.mu_migration,
        sigma: sc.sigma_migration,
        dt: 1.0,
    };
    let (ed_monthly, hd_monthly) = build_demand_series(
        sc.ed0_summer_kwh,
        sc.ed0_winter_kwh,
        sc.hd0_annual_kwh,
        &gbm_ed,
        &gbm_hd,
        &sc.hd_month_weights,
        months,
        seed,
    );
    let r_cluster_monthly =
        build_mobility_series(sc.r0_km, &sc.radius_season_mult, &gbm_mig, months, seed);
    let month_hours: Vec<usize> = (0..months).map(|m| cfg.system.sim_hours(m)).collect();
    let hours = month_hours.iter().sum();
    let (pv_noise, wind_noise) = build_res_noise(sc.sigma_pv, sc.sigma_wind, hours, seed);
    let grid_up = build_grid_availability(sc.grid_beta_a, sc.grid_beta_b, &month_hours, seed);
    ScenarioPath {
        seed,
        months,
        ed_monthly,
        hd_monthly,
        r_cluster_monthly,
        pv_noise,
        wind_noise,
        grid_up,
    }
}

/// n scenarios with consecutive seeds base_seed..base_seed+n, so train and
/// test sets stay disjoint by seed range.
pub fn scenario_set(cfg: &StudyConfig, n: usize, base_seed: u64) -> Vec<ScenarioPath> {
    (0..n as u64).map(|k| assemble_scenario(cfg, base_seed + k)).collect()
}

/// Calendar geometry of one simulated month inside the hourly streams.
#[derive(Debug, Clone, Copy)]
pub struct MonthSlice {
    /// First index of this month in the hourly streams.
    pub start: usize,
    /// Simulated hours in this month.
    pub hours: usize,
    /// Multiplier taking simulated energy to calendar-month energy.
    pub scale: f64,
}

/// Fully realized hourly traces for one scenario: per-ger demand in W,
/// renewable capacity factors in [0,1], and grid flags, for every simulated
/// hour of the horizon.
#[derive(Debug, Clone)]
pub struct HourlyTraces {
    pub months: Vec<MonthSlice>,
    /// Per-ger electricity demand (W).
    pub ed_w: Vec<f64>,
    /// Per-ger heating demand (W).
    pub hd_w: Vec<f64>,
    pub pv_cf: Vec<f64>,
    pub wind_cf: Vec<f64>,
    pub grid_up: Vec<bool>,
}

/// First day-of-year of each calendar month.
fn month_start_doy(moy: usize) -> u32 {
    DAYS_IN_MONTH[..moy].iter().sum()
}

/// Evenly spaced representative day indices (0-based within the month).
fn representative_days(days_in_month: u32, sim_days: u32) -> impl Iterator<Item = u32> {
    (0..sim_days).map(move |i| i * days_in_month / sim_days)
}

/// Realize a scenario into hourly traces under a config's calendar and shapes.
pub fn realize_traces(cfg: &StudyConfig, path: &ScenarioPath, bases: &ResBaseProfiles) -> HourlyTraces {
    let sc = &cfg.scenario;
    let ed_shape_ms1 = HourlyShape::new(sc.ed_hour_shape_ms1, Season::Ms1);
    let ed_shape_ms2 = HourlyShape::new(sc.ed_hour_shape_ms2, Season::Ms2);
    let hd_shape = HourlyShape::new(sc.hd_hour_shape, Season::Ms2);

    let total_hours = cfg.system.total_sim_hours();
    let mut months = Vec::with_capacity(path.months);
    let mut ed_w = Vec::with_capacity(total_hours);
    let mut hd_w = Vec::with_capacity(total_hours);
    let mut pv_cf = Vec::with_capacity(total_hours);
    let mut wind_cf = Vec::with_capacity(total_hours);

    let mut start = 0usize;
    for m in 0..path.months {
        let moy = month_of_year(m);
        let days = DAYS_IN_MONTH[moy];
        let (sim_days, scale) = cfg.system.sim_days(m);
        let hours = (sim_days * 24) as usize;
        months.push(MonthSlice { start, hours, scale });

        let ed_shape = match season_of_month(m) {
            Season::Ms1 => &ed_shape_ms1,
            Season::Ms2 => &ed_shape_ms2,
        };
        // Daily energy is monthly energy over calendar days; each simulated
        // hour carries shape-weighted daily energy at 1 kWh = 1000 Wh.
        let ed_day_wh = path.ed_monthly[m] * 1000.0 / days as f64;
        let hd_day_wh = path.hd_monthly[m] * 1000.0 / days as f64;
        for day in representative_days(days, sim_days) {
            let doy = month_start_doy(moy) + day;
            for h in 0..24u32 {
                let idx = ed_w.len();
                ed_w.push(ed_day_wh * ed_shape.weight(h as usize));
                hd_w.push(hd_day_wh * hd_shape.weight(h as usize));
                pv_cf.push((bases.pv(doy, h) * path.pv_noise[idx]).clamp(0.0, 1.0));
                wind_cf.push((bases.wind(doy, h) * path.wind_noise[idx]).clamp(0.0, 1.0));
            }
        }
        start += hours;
    }

    HourlyTraces {
        months,
        ed_w,
        hd_w,
        pv_cf,
        wind_cf,
        grid_up: path.grid_up.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk_cfg() -> StudyConfig {
        let mut cfg = StudyConfig::default();
        cfg.system.horizon_months = 24;
        cfg.system.n_gers = 3;
        cfg.system.representative_days = Some(2);
        cfg
    }

    #[test]
    fn gbm_degenerate_is_constant() {
        let p = GbmParams { x0: 1.0, mu: 0.0, sigma: 0.0, dt: 1.0 };
        let path = gbm_path(&p, 17, 42).unwrap();
        assert_eq!(path.len(), 18);
        assert!(path.iter().all(|x| (*x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn gbm_zero_volatility_closed_form() {
        // mu_ED = 3.14 %/yr over 30 years: X^30 = 100 e^0.942
        let p = GbmParams { x0: 100.0, mu: 0.0314, sigma: 0.0, dt: 1.0 };
        let path = gbm_path(&p, 30, 7).unwrap();
        let expected = 100.0 * (0.942f64).exp();
        assert!((path[30] - expected).abs() < 1e-9, "{} vs {expected}", path[30]);
        assert!((expected - 256.55).abs() < 0.01);
    }

    #[test]
    fn gbm_log_moment_monte_carlo() {
        // mean of ln X^10 over 1e5 paths within 3 SE of (mu - sigma^2/2) * 10
        let p = GbmParams { x0: 1.0, mu: 0.05, sigma: 0.2, dt: 1.0 };
        let n = 100_000;
        let t = 10usize;
        let mut sum = 0.0;
        for seed in 0..n {
            let path = gbm_path(&p, t, seed as u64).unwrap();
            sum += path[t].ln();
        }
        let mean = sum / n as f64;
        let expected = (0.05 - 0.02) * 10.0;
        let se = 0.2 * (t as f64).sqrt() / (n as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * se,
            "mean {mean} expected {expected} +- {}",
            3.0 * se
        );
    }

    #[test]
    fn gbm_rejects_bad_params() {
        let p = GbmParams { x0: 0.0, mu: 0.0, sigma: 0.1, dt: 1.0 };
        assert!(gbm_path(&p, 1, 0).is_err());
        let p = GbmParams { x0: 1.0, mu: 0.0, sigma: 0.1, dt: 0.0 };
        assert!(gbm_path(&p, 1, 0).is_err());
        let p = GbmParams { x0: 1.0, mu: 0.0, sigma: -0.1, dt: 1.0 };
        assert!(gbm_path(&p, 1, 0).is_err());
    }

    #[test]
    fn gbm_seed_determinism() {
        let p = GbmParams { x0: 2.0, mu: 0.03, sigma: 0.25, dt: 0.5 };
        let a = gbm_path(&p, 40, 99).unwrap();
        let b = gbm_path(&p, 40, 99).unwrap();
        assert_eq!(a, b);
        let c = gbm_path(&p, 40, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn demand_baselines_without_uncertainty() {
        let gbm0 = GbmParams { x0: 1.0, mu: 0.0, sigma: 0.0, dt: 1.0 };
        let weights = StudyConfig::default().scenario.hd_month_weights;
        let (ed, hd) = build_demand_series(63.0, 6.0, 11_500.0, &gbm0, &gbm0, &weights, 24, 0);
        // January is winter (MS2): 6 kWh; July is summer (MS1): 63 kWh.
        assert!((ed[0] - 6.0).abs() < 1e-12);
        assert!((ed[6] - 63.0).abs() < 1e-12);
        let wsum: f64 = weights.iter().sum();
        assert!((hd[0] - 11_500.0 * weights[0] / wsum).abs() < 1e-9);
        // July weight is zero in the default heating shape.
        assert_eq!(hd[6], 0.0);
        assert_eq!(hd[18], 0.0);
        // Annual heating sums to the yearly baseline.
        let year0: f64 = hd[..12].iter().sum();
        assert!((year0 - 11_500.0).abs() < 1e-6);
    }

    #[test]
    fn demand_zero_vol_growth() {
        // year-30 annual HD = 11,500 e^{0.30} with mu = 1 %/yr, sigma = 0
        let gbm0 = GbmParams { x0: 1.0, mu: 0.0, sigma: 0.0, dt: 1.0 };
        let gbm_hd = GbmParams { x0: 1.0, mu: 0.01, sigma: 0.0, dt: 1.0 };
        let weights = StudyConfig::default().scenario.hd_month_weights;
        let (_, hd) = build_demand_series(63.0, 6.0, 11_500.0, &gbm0, &gbm_hd, &weights, 31 * 12, 0);
        let year30: f64 = hd[360..372].iter().sum();
        let expected = 11_500.0 * (0.30f64).exp();
        assert!((year30 - expected).abs() < 1e-6, "{year30} vs {expected}");
        assert!((expected - 15_524.0).abs() < 1.0);
    }

    #[test]
    fn mobility_series_baseline_and_growth() {
        let gbm0 = GbmParams { x0: 1.0, mu: 0.0, sigma: 0.0, dt: 1.0 };
        let r = build_mobility_series(6.85, &[1.0; 4], &gbm0, 12, 3);
        assert!(r.iter().all(|x| (*x - 6.85).abs() < 1e-12));
        assert!((cabling_length_km(6.85) - 43.04).abs() < 0.01);

        let gbm = GbmParams { x0: 1.0, mu: 0.005, sigma: 0.0, dt: 1.0 };
        let r = build_mobility_series(6.85, &[1.0; 4], &gbm, 31 * 12, 3);
        let expected = 6.85 * (0.15f64).exp();
        assert!((r[360] - expected).abs() < 1e-9);
        assert!((expected - 7.96).abs() < 0.01);
    }

    #[test]
    fn mobility_seasonal_multiplier() {
        let gbm = GbmParams { x0: 1.0, mu: 0.02, sigma: 0.1, dt: 1.0 };
        let full = build_mobility_series(6.85, &[1.0, 1.0, 1.0, 1.0], &gbm, 24, 11);
        let half_summer = build_mobility_series(6.85, &[1.0, 0.5, 1.0, 1.0], &gbm, 24, 11);
        // June..August exactly halved, other months untouched.
        for m in 0..24 {
            let expect = if (5..=7).contains(&month_of_year(m)) { 0.5 } else { 1.0 };
            assert!((half_summer[m] - full[m] * expect).abs() < 1e-12);
        }
    }

    #[test]
    fn res_base_profiles_hit_target_means() {
        let bases = ResBaseProfiles::new(0.198, 0.222).unwrap();
        let mut pv_sum = 0.0;
        let mut wind_sum = 0.0;
        for d in 0..365 {
            for h in 0..24 {
                pv_sum += bases.pv(d, h);
                wind_sum += bases.wind(d, h);
            }
        }
        let n = (365 * 24) as f64;
        assert!((pv_sum / n - 0.198).abs() < 1e-6, "pv mean {}", pv_sum / n);
        assert!((wind_sum / n - 0.222).abs() < 1e-6, "wind mean {}", wind_sum / n);
    }

    #[test]
    fn res_profiles_bounded_and_cf_validated() {
        assert!(ResBaseProfiles::new(1.2, 0.2).is_err());
        assert!(ResBaseProfiles::new(0.2, 0.0).is_err());
        let bases = ResBaseProfiles::new(0.198, 0.222).unwrap();
        for d in [0, 90, 172, 300] {
            for h in 0..24 {
                let pv = bases.pv(d, h);
                let wind = bases.wind(d, h);
                assert!((0.0..=1.0).contains(&pv));
                assert!((0.0..=1.0).contains(&wind));
            }
        }
    }

    #[test]
    fn res_noise_moment() {
        // sample std of the noise multiplier over 1e5 hours within 5% of sigma
        let (pv, _) = build_res_noise(0.193, 0.142, 100_000, 9);
        let mean: f64 = pv.iter().sum::<f64>() / pv.len() as f64;
        let var: f64 = pv.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / pv.len() as f64;
        let std = var.sqrt();
        assert!((std - 0.193).abs() < 0.05 * 0.193, "std {std}");
    }

    #[test]
    fn grid_availability_beta_mean() {
        // Long-run mean blackout fraction over MS2 hours ~ Beta(1,9) mean = 0.1.
        // 1200 full-calendar months gives about 1e6 hours, half of them MS2.
        let month_hours: Vec<usize> =
            (0..1200).map(|m| (DAYS_IN_MONTH[month_of_year(m)] * 24) as usize).collect();
        let flags = build_grid_availability(1.0, 9.0, &month_hours, 123);
        let mut ms2_hours = 0usize;
        let mut ms2_down = 0usize;
        let mut idx = 0usize;
        for (m, &hours) in month_hours.iter().enumerate() {
            for _ in 0..hours {
                if season_of_month(m) == Season::Ms2 {
                    ms2_hours += 1;
                    if !flags[idx] {
                        ms2_down += 1;
                    }
                }
                idx += 1;
            }
        }
        let frac = ms2_down as f64 / ms2_hours as f64;
        assert!((frac - 0.1).abs() < 0.01, "blackout fraction {frac}");
    }

    #[test]
    fn grid_blackout_certain_means_all_down() {
        let month_hours = vec![720usize; 12];
        let qs = vec![1.0; 12];
        let flags = grid_flags_from_qs(&qs, &month_hours, 5);
        assert!(flags.iter().all(|f| !f));
    }

    #[test]
    fn grid_ms1_always_down() {
        let month_hours = vec![720usize; 12];
        let qs = vec![0.0; 12]; // grid nominally perfect
        let flags = grid_flags_from_qs(&qs, &month_hours, 5);
        let mut idx = 0;
        for (m, &hours) in month_hours.iter().enumerate() {
            for _ in 0..hours {
                if season_of_month(m) == Season::Ms1 {
                    assert!(!flags[idx]);
                } else {
                    assert!(flags[idx]);
                }
                idx += 1;
            }
        }
    }

    #[test]
    fn scenario_assembly_determinism_and_disjoint_seeds() {
        let cfg = desk_cfg();
        let a = assemble_scenario(&cfg, 17);
        let b = assemble_scenario(&cfg, 17);
        assert_eq!(a, b);

        let train = scenario_set(&cfg, 10, 0);
        let test = scenario_set(&cfg, 10, 1000);
        let train_seeds: Vec<u64> = train.iter().map(|s| s.seed).collect();
        let test_seeds: Vec<u64> = test.iter().map(|s| s.seed).collect();
        assert!(train_seeds.iter().all(|s| !test_seeds.contains(s)));
        assert_eq!(train_seeds.len(), 10);
    }

    #[test]
    fn scenario_set_distinct_seeds() {
        let cfg = desk_cfg();
        let set = scenario_set(&cfg, 50, 7);
        let mut seeds: Vec<u64> = set.iter().map(|s| s.seed).collect();
        seeds.dedup();
        assert_eq!(seeds.len(), 50);
    }

    #[test]
    fn scenario_series_positive_and_sized() {
        let cfg = desk_cfg();
        let s = assemble_scenario(&cfg, 3);
        assert_eq!(s.ed_monthly.len(), 24);
        assert!(s.ed_monthly.iter().all(|x| *x > 0.0));
        assert!(s.r_cluster_monthly.iter().all(|x| *x > 0.0));
        assert!(s.hd_monthly.iter().all(|x| *x >= 0.0));
        let hours = cfg.system.total_sim_hours();
        assert_eq!(s.pv_noise.len(), hours);
        assert_eq!(s.wind_noise.len(), hours);
        assert_eq!(s.grid_up.len(), hours);
    }

    #[test]
    fn realized_traces_preserve_monthly_energy() {
        let mut cfg = desk_cfg();
        cfg.system.representative_days = None; // full calendar
        let s = assemble_scenario(&cfg, 21);
        let bases = ResBaseProfiles::new(cfg.scenario.cf_pv, cfg.scenario.cf_wind).unwrap();
        let traces = realize_traces(&cfg, &s, &bases);
        for (m, slice) in traces.months.iter().enumerate() {
            let ed_kwh: f64 = traces.ed_w[slice.start..slice.start + slice.hours]
                .iter()
                .sum::<f64>()
                * slice.scale
                / 1000.0;
            assert!(
                (ed_kwh - s.ed_monthly[m]).abs() < 1e-9,
                "month {m}: {ed_kwh} vs {}",
                s.ed_monthly[m]
            );
        }
    }

    #[test]
    fn representative_days_cover_month_when_full() {
        let days: Vec<u32> = representative_days(31, 31).collect();
        assert_eq!(days, (0..31).collect::<Vec<_>>());
        let days: Vec<u32> = representative_days(30, 3).collect();
        assert_eq!(days.len(), 3);
        assert!(days.windows(2).all(|w| w[0] < w[1]));
    }
}
