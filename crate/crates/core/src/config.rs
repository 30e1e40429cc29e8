//! Scenario configuration: every physical and algorithmic constant of a run.
//!
//! The file format is flat TOML (`key = value`, one key per line). Every key
//! carries its unit in its name; unknown keys are rejected. Missing keys take
//! the defaults below.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::baselines::GaConfig;
use crate::error::{Error, Result};
use crate::model::{
    db_to_linear, dbm_to_watts, ComputeParams, MaritimeChannelParams, SatLinkParams, SatelliteGeometry, SlotSchedule,
};
use crate::solver::{InitStrategy, SolverMode, ToleranceConfig};

/// Bits in one (decimal) gigabyte.
pub const GIGABYTE_BITS: f64 = 8e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Jcorm,
    Atsm,
    Ga,
    NoOffload,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Jcorm, Algorithm::Ga, Algorithm::Atsm, Algorithm::NoOffload];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Jcorm => "jcorm",
            Algorithm::Atsm => "atsm",
            Algorithm::Ga => "ga",
            Algorithm::NoOffload => "no-offload",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jcorm" => Ok(Algorithm::Jcorm),
            "atsm" => Ok(Algorithm::Atsm),
            "ga" => Ok(Algorithm::Ga),
            "no-offload" => Ok(Algorithm::NoOffload),
            _ => Err(Error::config(format!("unknown algorithm `{s}` (expected jcorm|atsm|ga|no-offload)"))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// Near-square grid of cell centres over the area, plus optional jitter.
    Grid,
    /// Independent uniform positions over the area.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    // Network layout
    pub num_uavs: usize,
    pub area_x_m: f64,
    pub area_y_m: f64,
    pub uav_altitude_m: f64,
    pub placement: Placement,
    pub placement_jitter_m: f64,
    /// Radius of the disc around each UAV's ground point holding its devices.
    pub device_radius_m: f64,
    pub ds_devices_min: usize,
    pub ds_devices_max: usize,
    pub dt_devices_min: usize,
    pub dt_devices_max: usize,
    pub ds_task_min_bits: f64,
    pub ds_task_max_bits: f64,

    // Satellite geometry
    pub sat_altitude_m: f64,
    pub earth_radius_m: f64,
    pub elevation_deg: f64,
    pub sat_speed_mps: f64,
    pub light_speed_mps: f64,

    // Time
    pub slot_len_s: f64,
    pub num_slots: usize,

    // Radio
    pub uav_bandwidth_hz: f64,
    pub leo_bandwidth_hz: f64,
    pub pmax_w: f64,
    pub dt_uplink_power_w: f64,
    pub ds_device_power_w: f64,
    pub dt_device_power_w: f64,
    pub beta: f64,
    pub rician_k0: f64,
    pub pathloss_coeff: f64,
    pub pathloss_exp: f64,
    pub noise_dbm: f64,
    pub ref_gain_db: f64,
    pub antenna_gain_db: f64,
    /// Distance at which `ref_gain_db` is specified.
    pub sat_ref_distance_m: f64,

    // Compute
    pub cycles_per_bit: f64,
    pub uav_cpu_hz: f64,
    pub leo_cpu_hz: f64,
    pub kappa: f64,

    // Utility and storage
    pub omega: f64,
    pub storage_capacity_bits: f64,
    pub initial_remaining_bits: f64,

    // Solver
    pub r_max: usize,
    pub j_max: usize,
    pub i_max: usize,
    pub eps: f64,
    pub xi: f64,
    pub tau: f64,
    pub step_a: f64,
    pub step_b: f64,
    pub mode: SolverMode,
    pub init: InitStrategy,
    pub algo: Algorithm,
    pub seed: u64,

    // Genetic algorithm baseline
    pub ga_population: usize,
    pub ga_generations: usize,
    pub ga_crossover: f64,
    pub ga_mutation: f64,
    pub ga_sigma_frac: f64,
    pub ga_elitism: usize,
    pub ga_tournament: usize,
    pub ga_penalty: f64,

    // Sweep descriptors (CLI flags override these)
    pub sweep_axis: Option<String>,
    pub sweep_values: Vec<f64>,
    pub sweep_seeds: Vec<u64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            num_uavs: 6,
            area_x_m: 2000.0,
            area_y_m: 2000.0,
            uav_altitude_m: 500.0,
            placement: Placement::Grid,
            placement_jitter_m: 0.0,
            device_radius_m: 300.0,
            ds_devices_min: 1,
            ds_devices_max: 5,
            dt_devices_min: 5,
            dt_devices_max: 10,
            ds_task_min_bits: 1e6,
            ds_task_max_bits: 3e6,
            sat_altitude_m: 780e3,
            earth_radius_m: 6371e3,
            elevation_deg: 20.0,
            sat_speed_mps: 7.5e3,
            light_speed_mps: 3e8,
            slot_len_s: 10.0,
            num_slots: 10,
            uav_bandwidth_hz: 10e6,
            leo_bandwidth_hz: 40e6,
            pmax_w: 1.0,
            dt_uplink_power_w: 1.0,
            ds_device_power_w: 0.3,
            dt_device_power_w: 0.3,
            beta: 0.6,
            rician_k0: 10.0,
            pathloss_coeff: 1.0,
            pathloss_exp: 2.0,
            noise_dbm: -80.0,
            ref_gain_db: -30.0,
            antenna_gain_db: 10.0,
            sat_ref_distance_m: 1e3,
            cycles_per_bit: 400.0,
            uav_cpu_hz: 2e9,
            leo_cpu_hz: 10e9,
            kappa: 1e-28,
            omega: 10.0,
            storage_capacity_bits: 1.5 * GIGABYTE_BITS,
            initial_remaining_bits: 1.0 * GIGABYTE_BITS,
            r_max: 50,
            j_max: 50,
            i_max: 50,
            eps: 0.01,
            xi: 0.01,
            tau: 0.01,
            step_a: 0.1,
            step_b: 1.0,
            mode: SolverMode::Strict,
            init: InitStrategy::DeadlineTight,
            algo: Algorithm::Jcorm,
            seed: 1,
            ga_population: 60,
            ga_generations: 100,
            ga_crossover: 0.9,
            ga_mutation: 0.1,
            ga_sigma_frac: 0.05,
            ga_elitism: 2,
            ga_tournament: 3,
            ga_penalty: 1e5,
            sweep_axis: None,
            sweep_values: Vec::new(),
            sweep_seeds: Vec::new(),
        }
    }
}

/// Sweepable parameters and the config key each one writes.
pub const SWEEP_AXES: &[(&str, &str)] = &[
    ("b_leo", "leo_bandwidth_hz"),
    ("leo_bandwidth_hz", "leo_bandwidth_hz"),
    ("ds_size", "ds_task_bits"),
    ("ds_task_bits", "ds_task_bits"),
    ("storage", "storage_capacity_bits"),
    ("storage_capacity_bits", "storage_capacity_bits"),
    ("initial_remaining_bits", "initial_remaining_bits"),
    ("k0", "rician_k0"),
    ("rician_k0", "rician_k0"),
    ("omega", "omega"),
    ("beta", "beta"),
    ("pmax", "pmax_w"),
    ("pmax_w", "pmax_w"),
    ("uav_bandwidth_hz", "uav_bandwidth_hz"),
];

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn geometry(&self) -> SatelliteGeometry {
        SatelliteGeometry {
            altitude_m: self.sat_altitude_m,
            earth_radius_m: self.earth_radius_m,
            elevation_rad: self.elevation_deg.to_radians(),
            sat_speed_mps: self.sat_speed_mps,
            light_speed_mps: self.light_speed_mps,
        }
    }

    pub fn maritime(&self) -> MaritimeChannelParams {
        MaritimeChannelParams {
            pathloss_coeff: self.pathloss_coeff,
            pathloss_exp: self.pathloss_exp,
            rician_k0: self.rician_k0,
            noise_power_w: dbm_to_watts(self.noise_dbm),
            uav_bandwidth_hz: self.uav_bandwidth_hz,
            ds_bandwidth_fraction: self.beta,
            ds_device_power_w: self.ds_device_power_w,
            dt_device_power_w: self.dt_device_power_w,
        }
    }

    pub fn sat_link(&self) -> SatLinkParams {
        SatLinkParams {
            ref_gain: db_to_linear(self.ref_gain_db),
            antenna_gain: db_to_linear(self.antenna_gain_db),
            ref_distance_m: self.sat_ref_distance_m,
            leo_bandwidth_hz: self.leo_bandwidth_hz,
            max_tx_power_w: self.pmax_w,
            dt_uplink_power_w: self.dt_uplink_power_w,
            noise_power_w: dbm_to_watts(self.noise_dbm),
        }
    }

    pub fn compute(&self) -> ComputeParams {
        ComputeParams {
            cycles_per_bit: self.cycles_per_bit,
            uav_cpu_hz: self.uav_cpu_hz,
            leo_cpu_hz: self.leo_cpu_hz,
            kappa: self.kappa,
        }
    }

    pub fn schedule(&self) -> SlotSchedule {
        SlotSchedule { slot_len_s: self.slot_len_s, num_slots: self.num_slots, omega: self.omega }
    }

    pub fn tolerances(&self) -> ToleranceConfig {
        ToleranceConfig {
            eps: self.eps,
            xi: self.xi,
            tau: self.tau,
            r_max: self.r_max,
            j_max: self.j_max,
            i_max: self.i_max,
            step_a: self.step_a,
            step_b: self.step_b,
        }
    }

    pub fn ga(&self) -> GaConfig {
        GaConfig {
            population_size: self.ga_population,
            generations: self.ga_generations,
            crossover_rate: self.ga_crossover,
            mutation_rate: self.ga_mutation,
            mutation_sigma_frac: self.ga_sigma_frac,
            elitism_count: self.ga_elitism,
            tournament_size: self.ga_tournament,
            penalty_weight: self.ga_penalty,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::config(msg));
        if self.num_uavs == 0 {
            return fail("num_uavs must be >= 1".into());
        }
        if self.ds_devices_min == 0 {
            return fail("ds_devices_min must be >= 1 (every UAV serves DS traffic)".into());
        }
        if self.ds_devices_min > self.ds_devices_max || self.dt_devices_min > self.dt_devices_max {
            return fail("device count ranges must satisfy min <= max".into());
        }
        if !(self.ds_task_min_bits >= 0.0 && self.ds_task_min_bits <= self.ds_task_max_bits) {
            return fail("DS task range must satisfy 0 <= min <= max".into());
        }
        if !(self.area_x_m >= 0.0 && self.area_y_m >= 0.0) {
            return fail("area extents must be >= 0".into());
        }
        if !(self.uav_altitude_m > 0.0) {
            return fail("uav_altitude_m must be > 0".into());
        }
        if !(self.device_radius_m >= 0.0 && self.placement_jitter_m >= 0.0) {
            return fail("device_radius_m and placement_jitter_m must be >= 0".into());
        }
        if !(self.storage_capacity_bits > 0.0) {
            return fail("storage_capacity_bits must be > 0".into());
        }
        if !(self.initial_remaining_bits >= 0.0 && self.initial_remaining_bits <= self.storage_capacity_bits) {
            return fail("initial_remaining_bits must lie in [0, storage_capacity_bits]".into());
        }
        if self.elevation_deg >= 90.0 {
            return fail("elevation_deg must be < 90 (no slant path at zenith)".into());
        }
        let geom = self.geometry();
        geom.validate()?;
        self.maritime().validate()?;
        self.sat_link().validate()?;
        self.compute().validate()?;
        self.schedule().validate(geom.visibility_window())?;
        self.tolerances().validate()?;
        self.ga().validate()?;
        Ok(())
    }

    /// Sets the parameter behind a sweep axis name.
    pub fn set_axis(&mut self, axis: &str, value: f64) -> Result<()> {
        let key = SWEEP_AXES
            .iter()
            .find(|(name, _)| name.eq_ignore_ascii_case(axis))
            .map(|(_, key)| *key)
            .ok_or_else(|| {
                let names: Vec<_> = SWEEP_AXES.iter().map(|(n, _)| *n).collect();
                Error::config(format!("unknown sweep axis `{axis}` (expected one of {})", names.join(", ")))
            })?;
        match key {
            "leo_bandwidth_hz" => self.leo_bandwidth_hz = value,
            "ds_task_bits" => {
                self.ds_task_min_bits = value;
                self.ds_task_max_bits = value;
            }
            "storage_capacity_bits" => {
                self.storage_capacity_bits = value;
                self.initial_remaining_bits = self.initial_remaining_bits.min(value);
            }
            "initial_remaining_bits" => self.initial_remaining_bits = value,
            "rician_k0" => self.rician_k0 = value,
            "omega" => self.omega = value,
            "beta" => self.beta = value,
            "pmax_w" => {
                self.pmax_w = value;
                self.dt_uplink_power_w = self.dt_uplink_power_w.min(value);
            }
            "uav_bandwidth_hz" => self.uav_bandwidth_hz = value,
            _ => unreachable!("axis table and match arms agree"),
        }
        Ok(())
    }
}
