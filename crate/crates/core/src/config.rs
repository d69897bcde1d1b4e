//! Study configuration: every model parameter with its documented default,
//! TOML parsing with unknown-key rejection, and the config hash embedded in
//! all output artifacts.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

use crate::error::ConfigError;

/// Mobility season. MS1 is decentralized rural operation (April–September),
/// MS2 is centralized operation with possible grid access (October–March).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Season {
    Ms1,
    Ms2,
}

/// Calendar month lengths (non-leap year, fixed for the whole horizon).
pub const DAYS_IN_MONTH: [u32; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];

/// Month index within the year (0 = January) for an absolute month index.
pub fn month_of_year(month: usize) -> usize {
    month % 12
}

/// MS2 runs October–March, MS1 April–September.
pub fn season_of_month(month: usize) -> Season {
    match month_of_year(month) {
        3..=8 => Season::Ms1,
        _ => Season::Ms2,
    }
}

/// Technology index for the four expandable components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tech {
    Pv,
    Wind,
    Bess,
    Eh,
}

impl Tech {
    pub const ALL: [Tech; 4] = [Tech::Pv, Tech::Wind, Tech::Bess, Tech::Eh];

    pub fn index(self) -> usize {
        match self {
            Tech::Pv => 0,
            Tech::Wind => 1,
            Tech::Bess => 2,
            Tech::Eh => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tech::Pv => "pv",
            Tech::Wind => "wind",
            Tech::Bess => "bess",
            Tech::Eh => "eh",
        }
    }
}

fn default_true() -> bool {
    true
}

/// System-level study parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemConfig {
    /// Planning horizon in months (360 = 30 years).
    pub horizon_months: usize,
    /// Number of ger nanogrid nodes in the community.
    pub n_gers: usize,
    /// Simulated days per month: `None` simulates the full calendar month,
    /// `Some(k)` simulates k evenly spaced representative days and scales
    /// monthly energy aggregates by days_in_month/k.
    pub representative_days: Option<u32>,
    /// Annual financial discount rate.
    pub lambda_annual: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            horizon_months: 360,
            n_gers: 18,
            representative_days: Some(3),
            lambda_annual: 0.05,
        }
    }
}

impl SystemConfig {
    /// Monthly discount rate: (1+λ)^(1/12) − 1.
    pub fn lambda_monthly(&self) -> f64 {
        (1.0 + self.lambda_annual).powf(1.0 / 12.0) - 1.0
    }

    /// Simulated days and the energy scale factor for a calendar month.
    pub fn sim_days(&self, month: usize) -> (u32, f64) {
        let days = DAYS_IN_MONTH[month_of_year(month)];
        match self.representative_days {
            Some(k) if k < days => (k, days as f64 / k as f64),
            _ => (days, 1.0),
        }
    }

    /// Simulated hours in one month.
    pub fn sim_hours(&self, month: usize) -> usize {
        (self.sim_days(month).0 * 24) as usize
    }

    /// Total simulated hours over the horizon.
    pub fn total_sim_hours(&self) -> usize {
        (0..self.horizon_months).map(|m| self.sim_hours(m)).sum()
    }
}

/// Stochastic scenario generation parameters (§ GBM table plus demand/RES/grid models).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// Starting per-ger electricity demand, summer months (kWh/month).
    pub ed0_summer_kwh: f64,
    /// Starting per-ger electricity demand, winter months (kWh/month).
    pub ed0_winter_kwh: f64,
    /// Starting per-ger heating demand (kWh/year).
    pub hd0_annual_kwh: f64,
    /// Starting cluster radius (km).
    pub r0_km: f64,
    /// Seasonal radius multipliers [spring, summer, autumn, winter].
    pub radius_season_mult: [f64; 4],
    /// GBM drift/volatility per driver (per year / per sqrt-year).
    pub mu_ed: f64,
    pub sigma_ed: f64,
    pub mu_hd: f64,
    pub sigma_hd: f64,
    pub mu_migration: f64,
    pub sigma_migration: f64,
    /// Renewable capacity-factor targets (annual means) and noise levels.
    pub cf_pv: f64,
    pub cf_wind: f64,
    pub sigma_pv: f64,
    pub sigma_wind: f64,
    /// Grid availability beta parameters (monthly blackout rate ~ Beta(a, b)).
    pub grid_beta_a: f64,
    pub grid_beta_b: f64,
    /// Monthly heating-demand weights (Jan..Dec), normalized in code.
    /// Defaults follow an Ulaanbaatar heating-degree-day proxy, zero in July.
    pub hd_month_weights: [f64; 12],
    /// Hourly electricity shapes per season (24 weights each, normalized).
    pub ed_hour_shape_ms1: [f64; 24],
    pub ed_hour_shape_ms2: [f64; 24],
    /// Hourly heating shape (24 weights, normalized). Default flat.
    pub hd_hour_shape: [f64; 24],
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            ed0_summer_kwh: 63.0,
            ed0_winter_kwh: 6.0,
            hd0_annual_kwh: 11_500.0,
            r0_km: 6.85,
            radius_season_mult: [1.0, 1.0, 1.0, 1.0],
            mu_ed: 0.0314,
            sigma_ed: 0.15,
            mu_hd: 0.01,
            sigma_hd: 0.065,
            mu_migration: 0.005,
            sigma_migration: 0.05,
            cf_pv: 0.198,
            cf_wind: 0.222,
            sigma_pv: 0.193,
            sigma_wind: 0.142,
            grid_beta_a: 1.0,
            grid_beta_b: 9.0,
            // UB heating-degree days, base 18 C, long-run monthly normals.
            hd_month_weights: [
                1209.0, 980.0, 806.0, 480.0, 248.0, 60.0, 0.0, 62.0, 270.0, 558.0, 900.0, 1147.0,
            ],
            // Summer: lamp plus refrigerator (flat base, evening bump).
            ed_hour_shape_ms1: [
                2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 3.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0,
                5.0, 6.0, 8.0, 9.0, 9.0, 7.0, 4.0, 3.0,
            ],
            // Winter: lamp only, concentrated in dark hours.
            ed_hour_shape_ms2: [
                1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0, 5.0, 4.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0,
                4.0, 7.0, 9.0, 9.0, 8.0, 6.0, 3.0, 1.0,
            ],
            hd_hour_shape: [1.0; 24],
        }
    }
}

/// One technology's cost/lifetime/mass parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TechParams {
    /// Investment constant K (USD/W^alpha, MS1 value; MS2 uses k_ms2_factor).
    pub k_inv: f64,
    /// Maximum functional life (months).
    pub life_max_months: u32,
    /// O&M rate (USD/kW/month).
    pub om_rate: f64,
    /// Unit mass (kg/kW, or kg/kWh for storage).
    pub unit_mass_per_kw: f64,
}

impl Default for TechParams {
    fn default() -> Self {
        Self {
            k_inv: 1.0,
            life_max_months: 120,
            om_rate: 0.0,
            unit_mass_per_kw: 10.0,
        }
    }
}

/// Economics: Appendix-table cost constants, constraints, EoS exponents.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CostConfig {
    pub pv: TechParams,
    pub wind: TechParams,
    pub bess: TechParams,
    pub eh: TechParams,
    /// EoS exponents per mobility season.
    pub alpha_ms1: f64,
    pub alpha_ms2: f64,
    /// K_MS2 = k_ms2_factor * K_MS1 (direction from the cost model; magnitude configured).
    pub k_ms2_factor: f64,
    /// Power electronics: cost (USD/W), sizing ratio, safety factor, life, O&M, mass.
    pub c_pe: f64,
    pub eps_pe: f64,
    pub sf_pe: f64,
    pub pe_life_months: u32,
    pub om_pe: f64,
    pub pe_mass_per_kw: f64,
    /// Salvage depreciation factor.
    pub k_salv: f64,
    /// Communication cost on new monthly distribution maxima (USD/kWh).
    pub c_cc: f64,
    /// Cabling cost per meter of new ring circumference (USD/m).
    pub c_ic: f64,
    /// Cable mass (kg/km of circumference owned).
    pub cable_mass_per_km: f64,
    /// Coal: price (USD/tonne), stove efficiency, energy density (kWh/kg).
    pub c_coal_per_tonne: f64,
    pub eta_stove: f64,
    pub mu_coal_kwh_per_kg: f64,
    /// Coal stove replacement: USD per ger, period in months.
    pub stove_replace_usd: f64,
    pub stove_replace_months: u32,
    /// Unmet-load fee (USD/kWh) and allowed monthly shortage fraction of ED.
    pub c_ul: f64,
    pub ul_allowance: f64,
    /// Grid tariff / feed-in price (USD/kWh).
    pub c_grid: f64,
    pub p_grid: f64,
    /// Emission factors: grid (tCO2eq/MWh), coal (tCO2eq/tonne).
    pub ef_grid_t_per_mwh: f64,
    pub ef_coal_t_per_tonne: f64,
    /// Carbon price (USD/tCO2eq); the emissions term of the monthly cost.
    pub carbon_price: f64,
    /// Monthly budget cap (USD per ger) and mass cap (kg per ger).
    pub budget_per_ger: f64,
    pub mass_per_ger_kg: f64,
    /// Credit remaining-life salvage in the final month of each trajectory.
    pub salvage_at_horizon_end: bool,
}

impl Default for CostConfig {
    fn default() -> Self {
        Self {
            pv: TechParams {
                k_inv: 2.64,
                life_max_months: 300,
                om_rate: 0.0048,
                unit_mass_per_kw: 12.0,
            },
            wind: TechParams {
                k_inv: 1.91,
                life_max_months: 240,
                om_rate: 0.0032,
                unit_mass_per_kw: 20.0,
            },
            bess: TechParams {
                k_inv: 0.7,
                life_max_months: 120,
                om_rate: 0.0,
                unit_mass_per_kw: 7.0,
            },
            eh: TechParams {
                k_inv: 1.52,
                life_max_months: 156,
                om_rate: 0.0,
                unit_mass_per_kw: 3.0,
            },
            alpha_ms1: 0.95,
            alpha_ms2: 0.85,
            k_ms2_factor: 0.97,
            c_pe: 0.352,
            eps_pe: 0.769,
            sf_pe: 1.3,
            pe_life_months: 180,
            om_pe: 0.0001,
            pe_mass_per_kw: 4.0,
            k_salv: 0.7,
            c_cc: 0.04,
            c_ic: 5.2,
            cable_mass_per_km: 40.0,
            c_coal_per_tonne: 40.0,
            eta_stove: 0.25,
            mu_coal_kwh_per_kg: 14.6 / 3.6,
            stove_replace_usd: 15.0,
            stove_replace_months: 84,
            c_ul: 0.3417,
            ul_allowance: 0.05,
            c_grid: 0.041,
            p_grid: 0.17,
            ef_grid_t_per_mwh: 0.711,
            ef_coal_t_per_tonne: 1.37,
            carbon_price: 0.0,
            budget_per_ger: 110.0,
            mass_per_ger_kg: 120.0,
            salvage_at_horizon_end: false,
        }
    }
}

impl CostConfig {
    pub fn tech(&self, tech: Tech) -> &TechParams {
        match tech {
            Tech::Pv => &self.pv,
            Tech::Wind => &self.wind,
            Tech::Bess => &self.bess,
            Tech::Eh => &self.eh,
        }
    }

    pub fn alpha(&self, season: Season) -> f64 {
        match season {
            Season::Ms1 => self.alpha_ms1,
            Season::Ms2 => self.alpha_ms2,
        }
    }

    pub fn k_inv(&self, tech: Tech, season: Season) -> f64 {
        let k = self.tech(tech).k_inv;
        match season {
            Season::Ms1 => k,
            Season::Ms2 => k * self.k_ms2_factor,
        }
    }
}

/// Dispatch and distribution-network parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PowerflowConfig {
    /// Inverter efficiency applied to RES generation.
    pub eta_inv: f64,
    /// Battery round-trip efficiency (split sqrt/sqrt between charge/discharge).
    pub eta_batt: f64,
    /// Battery charge/discharge C-rates (fraction of capacity per hour).
    pub c_in: f64,
    pub c_out: f64,
    /// Minimum state of charge as a fraction of capacity.
    pub soc_min_frac: f64,
    /// PP microgrid distribution capacity (W) and share-of-load cap.
    pub theta_ppmg_w: f64,
    pub dist_cap_frac: f64,
    /// Main grid connection capacity (W, system level).
    pub theta_grid_w: f64,
    /// Line parameters: resistivity (Ohm·m), cross-section (m^2),
    /// temperature coefficient (1/degC), reference/actual temperature (degC),
    /// distribution voltage (V).
    pub rho_cb: f64,
    pub a_cs_m2: f64,
    pub alpha_cb_per_c: f64,
    pub t_ref_c: f64,
    pub t_actual_c: f64,
    pub v_dist: f64,
}

impl Default for PowerflowConfig {
    fn default() -> Self {
        Self {
            eta_inv: 0.90,
            eta_batt: 0.75,
            c_in: 0.5,
            c_out: 0.5,
            soc_min_frac: 0.0,
            // 3 phases x 220 V x 16 A (1.5 mm^2 copper ampacity)
            theta_ppmg_w: 10_560.0,
            dist_cap_frac: 0.3,
            theta_grid_w: 2_000.0,
            rho_cb: 1.678e-8,
            a_cs_m2: 1.5e-6,
            alpha_cb_per_c: 0.00393,
            t_ref_c: 20.0,
            t_actual_c: 20.0,
            v_dist: 220.0,
        }
    }
}

/// Genetic-algorithm settings for the rigid baselines.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub stall_generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    pub mutation_prob: f64,
    /// Gaussian mutation sigma as a fraction of each gene's range.
    pub mutation_sigma_frac: f64,
    /// Per-ger capacity bounds (W / Wh).
    pub max_gen_w: f64,
    pub max_bess_wh: f64,
    /// Penalty per expected constraint-violating month (USD).
    pub penalty_per_violation: f64,
    /// Scenarios used for fitness evaluation.
    pub n_scenarios: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 64,
            generations: 200,
            stall_generations: 30,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_prob: 0.25,
            mutation_sigma_frac: 0.1,
            max_gen_w: 5_000.0,
            max_bess_wh: 10_000.0,
            penalty_per_violation: 1_000.0,
            n_scenarios: 200,
        }
    }
}

/// Actor-critic learner settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AcerConfig {
    /// Hidden layer sizes.
    pub hidden: Vec<usize>,
    pub learning_rate: f64,
    pub momentum: f64,
    /// Running-average policy decay.
    pub avg_tau: f64,
    /// Trust-region bound on the linearized KL constraint.
    pub trust_delta: f64,
    /// Importance-weight truncation for the gradient correction term.
    pub correction_c: f64,
    /// Discount; defaults to the financial (1+lambda)^(-1/12).
    pub gamma: f64,
    /// Environment steps per policy update (rollout length).
    pub rollout_steps: usize,
    /// Parallel actor streams.
    pub n_actors: usize,
    /// Average replay updates per on-policy update (Poisson rate).
    pub replay_ratio: f64,
    /// Transitions stored before replay kicks in.
    pub replay_start: usize,
    /// Replay capacity in trajectories.
    pub replay_capacity: usize,
    /// Total environment steps of training.
    pub total_steps: usize,
    /// Entropy bonus coefficient (0 disables).
    pub entropy_coef: f64,
    /// Rewards are divided by this scale inside the learner.
    pub reward_scale: f64,
    /// Training-mode penalty per violated constraint (USD).
    pub violation_penalty: f64,
    /// Scenarios simulated by the normalization-bounds pre-pass.
    pub bounds_scenarios: usize,
    /// Allow the capacity-abandonment action (4-way heads).
    pub allow_abandonment: bool,
}

impl Default for AcerConfig {
    fn default() -> Self {
        Self {
            hidden: vec![64; 6],
            learning_rate: 7e-4,
            momentum: 0.9,
            avg_tau: 0.995,
            trust_delta: 1.0,
            correction_c: 12.3,
            gamma: 1.0 / 1.05_f64.powf(1.0 / 12.0),
            rollout_steps: 50,
            n_actors: 4,
            replay_ratio: 5.0,
            replay_start: 20_000,
            replay_capacity: 2_000,
            total_steps: 6_000_000,
            entropy_coef: 0.01,
            reward_scale: 1_000.0,
            violation_penalty: 1_000.0,
            bounds_scenarios: 10_000,
            allow_abandonment: false,
        }
    }
}

/// Planning-environment settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvConfig {
    /// Expansion module size (W or Wh).
    pub module_w: f64,
    /// Zero-stage per-ger capacities [pv W, wind W, bess Wh, eh W].
    pub initial_capacity_per_ger: [f64; 4],
    /// Enable plug-and-play distribution.
    #[serde(default = "default_true")]
    pub pp_enabled: bool,
    /// Allow electric-heater investment/operation.
    #[serde(default = "default_true")]
    pub eh_allowed: bool,
}

impl Default for EnvConfig {
    fn default() -> Self {
        Self {
            module_w: 500.0,
            initial_capacity_per_ger: [0.0; 4],
            pp_enabled: true,
            eh_allowed: true,
        }
    }
}

/// Analysis settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisConfig {
    /// Out-of-sample evaluation set size and base seed.
    pub eval_scenarios: usize,
    pub eval_base_seed: u64,
    /// Training scenarios draw seeds starting here (disjoint from eval).
    pub train_base_seed: u64,
    /// Radius sweep grid (km): start, stop, step.
    pub sweep_r_start_km: f64,
    pub sweep_r_stop_km: f64,
    pub sweep_r_step_km: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            eval_scenarios: 200,
            eval_base_seed: 1_000_000,
            train_base_seed: 0,
            sweep_r_start_km: 2.0,
            sweep_r_stop_km: 16.0,
            sweep_r_step_km: 1.0,
        }
    }
}

/// The complete study configuration.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StudyConfig {
    pub system: SystemConfig,
    pub scenario: ScenarioConfig,
    pub costs: CostConfig,
    pub powerflow: PowerflowConfig,
    pub ga: GaConfig,
    pub acer: AcerConfig,
    pub env: EnvConfig,
    pub analysis: AnalysisConfig,
}

impl StudyConfig {
    /// Parse a TOML config file. Unknown keys are rejected, missing keys take
    /// the documented defaults.
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: StudyConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Hash of the resolved configuration; embedded in every artifact.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_toml_string().as_bytes());
        let digest = hasher.finalize();
        let mut s = String::with_capacity(16);
        for byte in digest.iter().take(8) {
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let c = |ok: bool, what: &str| -> Result<(), ConfigError> {
            if ok {
                Ok(())
            } else {
                Err(ConfigError::Invalid(what.to_string()))
            }
        };
        c(self.system.horizon_months >= 1, "horizon_months must be >= 1")?;
        c(self.system.n_gers >= 1, "n_gers must be >= 1")?;
        c(
            self.system.lambda_annual >= 0.0,
            "lambda_annual must be >= 0",
        )?;
        c(
            self.scenario.ed0_summer_kwh > 0.0 && self.scenario.ed0_winter_kwh > 0.0,
            "ed0 baselines must be positive",
        )?;
        c(self.scenario.hd0_annual_kwh > 0.0, "hd0_annual_kwh must be positive")?;
        c(self.scenario.r0_km > 0.0, "r0_km must be positive")?;
        c(
            self.scenario.cf_pv > 0.0 && self.scenario.cf_pv < 1.0,
            "cf_pv must be in (0,1)",
        )?;
        c(
            self.scenario.cf_wind > 0.0 && self.scenario.cf_wind < 1.0,
            "cf_wind must be in (0,1)",
        )?;
        c(
            self.scenario.sigma_pv >= 0.0 && self.scenario.sigma_wind >= 0.0,
            "RES noise sigmas must be >= 0",
        )?;
        c(
            self.scenario.grid_beta_a > 0.0 && self.scenario.grid_beta_b > 0.0,
            "grid beta parameters must be positive",
        )?;
        c(
            self.costs.alpha_ms1 > 0.0
                && self.costs.alpha_ms1 <= 1.0
                && self.costs.alpha_ms2 > 0.0
                && self.costs.alpha_ms2 <= 1.0,
            "EoS exponents must be in (0,1]",
        )?;
        c(
            self.costs.k_salv > 0.0 && self.costs.k_salv < 1.0,
            "k_salv must be in (0,1)",
        )?;
        c(
            self.powerflow.eta_inv > 0.0 && self.powerflow.eta_inv <= 1.0,
            "eta_inv must be in (0,1]",
        )?;
        c(
            self.powerflow.eta_batt > 0.0 && self.powerflow.eta_batt <= 1.0,
            "eta_batt must be in (0,1]",
        )?;
        c(self.powerflow.v_dist > 0.0, "v_dist must be positive")?;
        c(self.powerflow.a_cs_m2 > 0.0, "a_cs_m2 must be positive")?;
        c(
            self.powerflow.soc_min_frac >= 0.0 && self.powerflow.soc_min_frac < 1.0,
            "soc_min_frac must be in [0,1)",
        )?;
        c(self.ga.population >= 2, "GA population must be >= 2")?;
        c(self.acer.rollout_steps >= 1, "rollout_steps must be >= 1")?;
        c(
            self.acer.gamma > 0.0 && self.acer.gamma <= 1.0,
            "gamma must be in (0,1]",
        )?;
        c(self.env.module_w > 0.0, "module_w must be positive")?;
        Ok(())
    }
}
