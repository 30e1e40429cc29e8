//! Seeded scenario generation.
//!
//! Placement uses one ChaCha stream per seed; each slot's fading samples and
//! DS task sizes come from their own stream, so the draws of slot `t` do not
//! depend on the horizon length. Task sizes are stored as unit-interval
//! samples and scaled at use, and fading as raw `CN(0,1)` samples, so sweeps
//! over task size or Rician factor see common random numbers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::{Placement, ScenarioConfig};
use crate::error::Result;
use crate::model::{
    device_uav_gain, device_uav_rate, uav_leo_gain, leo_rate_from_gain, Point3, SlotContext, StorageState, TaskKind,
    UavSlotState,
};

#[derive(Debug, Clone, PartialEq)]
pub struct UavSite {
    pub position: Point3,
    pub ds_devices: Vec<Point3>,
    pub dt_devices: Vec<Point3>,
}

/// Random draws of one slot, per UAV and device.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotDraw {
    /// Unit-interval samples mapped onto the DS task size range.
    pub ds_size_quantile: Vec<Vec<f64>>,
    pub ds_scatter: Vec<Vec<Complex64>>,
    pub dt_scatter: Vec<Vec<Complex64>>,
}

/// Positions, per-slot channel and task draws, and initial UAV storage.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    pub seed: u64,
    pub uavs: Vec<UavSite>,
    pub slots: Vec<SlotDraw>,
    pub initial_storage: StorageState,
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn grid_centres(cfg: &ScenarioConfig) -> Vec<(f64, f64)> {
    let n = cfg.num_uavs;
    let cols = (n as f64).sqrt().ceil() as usize;
    let rows = n.div_ceil(cols);
    (0..n)
        .map(|i| {
            let (r, c) = (i / cols, i % cols);
            ((c as f64 + 0.5) * cfg.area_x_m / cols as f64, (r as f64 + 0.5) * cfg.area_y_m / rows as f64)
        })
        .collect()
}

fn disc_point(rng: &mut ChaCha8Rng, centre: (f64, f64), radius: f64) -> Point3 {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    Point3::new(centre.0 + r * phi.cos(), centre.1 + r * phi.sin(), 0.0)
}

/// Builds the network for `seed`. Identical inputs give identical states.
pub fn generate_scenario(cfg: &ScenarioConfig, seed: u64) -> Result<NetworkState> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centres: Vec<(f64, f64)> = match cfg.placement {
        Placement::Grid => grid_centres(cfg)
            .into_iter()
            .map(|(x, y)| {
                let jx = cfg.placement_jitter_m * (2.0 * rng.random::<f64>() - 1.0);
                let jy = cfg.placement_jitter_m * (2.0 * rng.random::<f64>() - 1.0);
                ((x + jx).clamp(0.0, cfg.area_x_m), (y + jy).clamp(0.0, cfg.area_y_m))
            })
            .collect(),
        Placement::Random => (0..cfg.num_uavs)
            .map(|_| (cfg.area_x_m * rng.random::<f64>(), cfg.area_y_m * rng.random::<f64>()))
            .collect(),
    };
    let uavs: Vec<UavSite> = centres
        .into_iter()
        .map(|c| {
            let n_ds = rng.random_range(cfg.ds_devices_min..=cfg.ds_devices_max);
            let n_dt = rng.random_range(cfg.dt_devices_min..=cfg.dt_devices_max);
            UavSite {
                position: Point3::new(c.0, c.1, cfg.uav_altitude_m),
                ds_devices: (0..n_ds).map(|_| disc_point(&mut rng, c, cfg.device_radius_m)).collect(),
                dt_devices: (0..n_dt).map(|_| disc_point(&mut rng, c, cfg.device_radius_m)).collect(),
            }
        })
        .collect();

    let slots = (0..cfg.num_slots)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64 + 1);
            let mut draw = SlotDraw { ds_size_quantile: Vec::new(), ds_scatter: Vec::new(), dt_scatter: Vec::new() };
            for site in &uavs {
                draw.ds_size_quantile.push(site.ds_devices.iter().map(|_| rng.random::<f64>()).collect());
                draw.ds_scatter.push(site.ds_devices.iter().map(|_| complex_normal(&mut rng)).collect());
                draw.dt_scatter.push(site.dt_devices.iter().map(|_| complex_normal(&mut rng)).collect());
            }
            draw
        })
        .collect();

    Ok(NetworkState {
        seed,
        uavs,
        slots,
        initial_storage: StorageState::new(cfg.storage_capacity_bits, cfg.initial_remaining_bits, cfg.num_uavs),
    })
}

impl NetworkState {
    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    /// DS task sizes of slot `t` under the configured size range.
    pub fn ds_task_bits(&self, cfg: &ScenarioConfig, t: usize) -> Vec<Vec<f64>> {
        let span = cfg.ds_task_max_bits - cfg.ds_task_min_bits;
        self.slots[t]
            .ds_size_quantile
            .iter()
            .map(|q| q.iter().map(|&x| cfg.ds_task_min_bits + x * span).collect())
            .collect()
    }

    /// Decision-independent view of slot `t` given the current buffers.
    pub fn slot_context(&self, cfg: &ScenarioConfig, t: usize, storage: &StorageState) -> Result<SlotContext> {
        let maritime = cfg.maritime();
        let link = cfg.sat_link();
        let geom = cfg.geometry();
        let distance = geom.uav_sat_distance()?;
        let leo_gain = uav_leo_gain(distance, &link)?;
        let draw = &self.slots[t];
        let tasks = self.ds_task_bits(cfg, t);

        let mut uavs = Vec::with_capacity(self.uavs.len());
        for (u, site) in self.uavs.iter().enumerate() {
            let ds_rates = site
                .ds_devices
                .iter()
                .zip(&draw.ds_scatter[u])
                .map(|(dev, &o)| {
                    let g = device_uav_gain(*dev, site.position, &maritime, o)?;
                    device_uav_rate(TaskKind::Ds, g, &maritime, site.ds_devices.len())
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let dt_rate_sum = site
                .dt_devices
                .iter()
                .zip(&draw.dt_scatter[u])
                .map(|(dev, &o)| {
                    let g = device_uav_gain(*dev, site.position, &maritime, o)?;
                    device_uav_rate(TaskKind::Dt, g, &maritime, site.dt_devices.len())
                })
                .sum::<std::result::Result<f64, _>>()?;
            uavs.push(UavSlotState::new(tasks[u].clone(), ds_rates, dt_rate_sum, storage.remaining_bits[u])?);
        }

        Ok(SlotContext {
            uavs,
            compute: cfg.compute(),
            link,
            leo_gain,
            propagation_delay: distance / geom.light_speed_mps,
            dt_uplink_rate: leo_rate_from_gain(link.dt_uplink_power_w, leo_gain, &link, cfg.num_uavs),
            slot_len: cfg.slot_len_s,
            omega: cfg.omega,
            capacity_bits: storage.capacity_bits,
        })
    }
}
