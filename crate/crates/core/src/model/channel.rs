//! Device-to-UAV maritime channel (path loss + Rician fading) and the
//! FDMA UAV-to-satellite link.

use num_complex::Complex64;

use super::geometry::SatelliteGeometry;
use super::Point3;
use crate::error::ModelError;

/// Which task class a link carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    /// Delay-sensitive.
    Ds,
    /// Delay-tolerant.
    Dt,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaritimeChannelParams {
    pub pathloss_coeff: f64,
    pub pathloss_exp: f64,
    /// Line-of-sight to scatter power ratio.
    pub rician_k0: f64,
    pub noise_power_w: f64,
    pub uav_bandwidth_hz: f64,
    /// Share of the UAV bandwidth given to DS devices.
    pub ds_bandwidth_fraction: f64,
    pub ds_device_power_w: f64,
    pub dt_device_power_w: f64,
}

impl MaritimeChannelParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |name, reason: &str| ModelError::InvalidParameter { name, reason: reason.to_string() };
        if !(self.rician_k0 >= 0.0) {
            return Err(bad("rician_k0", "must be >= 0"));
        }
        if !(0.0..=1.0).contains(&self.ds_bandwidth_fraction) {
            return Err(bad("beta", "must lie in [0, 1]"));
        }
        if !(self.noise_power_w > 0.0) {
            return Err(bad("noise_dbm", "noise power must be > 0 W"));
        }
        for (name, v) in [
            ("uav_bandwidth_hz", self.uav_bandwidth_hz),
            ("ds_device_power_w", self.ds_device_power_w),
            ("dt_device_power_w", self.dt_device_power_w),
            ("pathloss_coeff", self.pathloss_coeff),
        ] {
            if !(v >= 0.0) {
                return Err(bad(name, "must be >= 0"));
            }
        }
        Ok(())
    }
}

/// Power of the small-scale Rician term `|√(K/(1+K)) + √(1/(1+K))·o|²`.
///
/// `K0 = ∞` collapses to a pure line-of-sight channel with unit power.
pub fn rician_power(k0: f64, scatter: Complex64) -> f64 {
    if k0.is_infinite() {
        return 1.0;
    }
    let los = (k0 / (1.0 + k0)).sqrt();
    let nlos = (1.0 / (1.0 + k0)).sqrt();
    (Complex64::new(los, 0.0) + scatter * nlos).norm_sqr()
}

/// Large-scale path loss `PLc · d^(−PLe)`.
pub fn path_loss(distance_m: f64, params: &MaritimeChannelParams) -> Result<f64, ModelError> {
    if !(distance_m > 0.0) {
        return Err(ModelError::ZeroDistance);
    }
    Ok(params.pathloss_coeff * distance_m.powf(-params.pathloss_exp))
}

/// Device-to-UAV power gain: path loss times the squared Rician magnitude.
pub fn device_uav_gain(
    device: Point3,
    uav: Point3,
    params: &MaritimeChannelParams,
    scatter: Complex64,
) -> Result<f64, ModelError> {
    let large = path_loss(device.distance(&uav), params)?;
    Ok(large * rician_power(params.rician_k0, scatter))
}

/// Per-device uplink rate (bit/s). DS devices share `β·Bu`, DT devices
/// share `(1−β)·Bu`, each split equally among the group.
pub fn device_uav_rate(
    kind: TaskKind,
    gain: f64,
    params: &MaritimeChannelParams,
    group_size: usize,
) -> Result<f64, ModelError> {
    if group_size == 0 {
        return Err(ModelError::EmptyGroup(match kind {
            TaskKind::Ds => "DS",
            TaskKind::Dt => "DT",
        }));
    }
    let (share, power) = match kind {
        TaskKind::Ds => (params.ds_bandwidth_fraction, params.ds_device_power_w),
        TaskKind::Dt => (1.0 - params.ds_bandwidth_fraction, params.dt_device_power_w),
    };
    let bandwidth = share * params.uav_bandwidth_hz / group_size as f64;
    Ok(bandwidth * (power * gain / params.noise_power_w).ln_1p() / std::f64::consts::LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatLinkParams {
    /// Reference channel gain at `ref_distance_m` (linear).
    pub ref_gain: f64,
    /// Combined UAV transmit and satellite receive antenna gain (linear).
    pub antenna_gain: f64,
    /// Distance at which `ref_gain` is specified (m).
    pub ref_distance_m: f64,
    pub leo_bandwidth_hz: f64,
    pub max_tx_power_w: f64,
    /// Fixed UAV transmit power while uplinking DT data (W).
    pub dt_uplink_power_w: f64,
    pub noise_power_w: f64,
}

impl SatLinkParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |name, reason: &str| ModelError::InvalidParameter { name, reason: reason.to_string() };
        for (name, v) in [
            ("ref_gain_db", self.ref_gain),
            ("antenna_gain_db", self.antenna_gain),
            ("leo_bandwidth_hz", self.leo_bandwidth_hz),
            ("pmax_w", self.max_tx_power_w),
            ("dt_uplink_power_w", self.dt_uplink_power_w),
        ] {
            if !(v >= 0.0) {
                return Err(bad(name, "must be >= 0"));
            }
        }
        if !(self.ref_distance_m > 0.0) {
            return Err(bad("sat_ref_distance_m", "must be > 0"));
        }
        if !(self.noise_power_w > 0.0) {
            return Err(bad("noise_dbm", "noise power must be > 0 W"));
        }
        if self.dt_uplink_power_w > self.max_tx_power_w {
            return Err(bad("dt_uplink_power_w", "must not exceed pmax_w"));
        }
        Ok(())
    }
}

/// Inverse-square UAV-to-satellite gain `g0·G·(d_ref/d)²`.
pub fn uav_leo_gain(distance_m: f64, link: &SatLinkParams) -> Result<f64, ModelError> {
    if !(distance_m > 0.0) {
        return Err(ModelError::ZeroDistance);
    }
    let scaled = distance_m / link.ref_distance_m;
    Ok(link.ref_gain * link.antenna_gain / (scaled * scaled))
}

/// Shannon rate over one FDMA share `B_LEO/U` at transmit power `p_tx`.
pub fn leo_rate_from_gain(p_tx: f64, gain: f64, link: &SatLinkParams, num_uavs: usize) -> f64 {
    let bandwidth = link.leo_bandwidth_hz / num_uavs.max(1) as f64;
    bandwidth * (p_tx.max(0.0) * gain / link.noise_power_w).ln_1p() / std::f64::consts::LN_2
}

/// UAV-to-satellite rate (bit/s). DS and DT uplinks use the same formula and
/// differ only in the transmit power supplied.
pub fn uav_leo_rate(
    p_tx: f64,
    geom: &SatelliteGeometry,
    link: &SatLinkParams,
    num_uavs: usize,
) -> Result<f64, ModelError> {
    if num_uavs == 0 {
        return Err(ModelError::InvalidParameter { name: "num_uavs", reason: "must be >= 1".into() });
    }
    let gain = uav_leo_gain(geom.uav_sat_distance()?, link)?;
    Ok(leo_rate_from_gain(p_tx, gain, link, num_uavs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn maritime() -> MaritimeChannelParams {
        MaritimeChannelParams {
            pathloss_coeff: 1.0,
            pathloss_exp: 2.0,
            rician_k0: 10.0,
            noise_power_w: 1e-11,
            uav_bandwidth_hz: 10e6,
            ds_bandwidth_fraction: 0.6,
            ds_device_power_w: 0.3,
            dt_device_power_w: 0.3,
        }
    }

    fn link(ref_distance_m: f64) -> SatLinkParams {
        SatLinkParams {
            ref_gain: 1e-3,
            antenna_gain: 10.0,
            ref_distance_m,
            leo_bandwidth_hz: 40e6,
            max_tx_power_w: 1.0,
            dt_uplink_power_w: 1.0,
            noise_power_w: 1e-11,
        }
    }

    fn table1_geom() -> SatelliteGeometry {
        SatelliteGeometry::new(780e3, 6371e3, 20f64.to_radians(), 7.5e3, 3e8).unwrap()
    }

    #[test]
    fn pure_los_is_path_loss_only() {
        let mut p = maritime();
        p.rician_k0 = f64::INFINITY;
        let g = device_uav_gain(Point3::new(0.0, 0.0, 0.0), Point3::new(0.0, 0.0, 500.0), &p, Complex64::new(0.7, -0.3))
            .unwrap();
        assert_relative_eq!(g, 4e-6, max_relative = 1e-14);
    }

    #[test]
    fn zero_scatter_sample_keeps_los_fraction() {
        let p = maritime();
        let g = device_uav_gain(Point3::new(0.0, 0.0, 0.0), Point3::new(0.0, 0.0, 500.0), &p, Complex64::new(0.0, 0.0))
            .unwrap();
        assert_relative_eq!(g, 10.0 / 11.0 * 4e-6, max_relative = 1e-14);
    }

    #[test]
    fn slant_distance_gain() {
        let mut p = maritime();
        p.rician_k0 = f64::INFINITY;
        let g = device_uav_gain(Point3::new(500.0, 0.0, 0.0), Point3::new(0.0, 0.0, 500.0), &p, Complex64::new(0.0, 0.0))
            .unwrap();
        assert_relative_eq!(g, 2e-6, max_relative = 1e-12);
        // Independent route: |Ĝ|² expanded by hand for o = 0.3 + 0.4i.
        p.rician_k0 = 10.0;
        let o = Complex64::new(0.3, 0.4);
        let re = (10.0f64 / 11.0).sqrt() + 0.3 * (1.0f64 / 11.0).sqrt();
        let im = 0.4 * (1.0f64 / 11.0).sqrt();
        let g = device_uav_gain(Point3::new(500.0, 0.0, 0.0), Point3::new(0.0, 0.0, 500.0), &p, o).unwrap();
        assert_relative_eq!(g, 2e-6 * (re * re + im * im), max_relative = 1e-12);
    }

    #[test]
    fn colocated_device_is_an_error() {
        let p = maritime();
        let here = Point3::new(1.0, 2.0, 3.0);
        assert_eq!(device_uav_gain(here, here, &p, Complex64::new(0.0, 0.0)), Err(ModelError::ZeroDistance));
    }

    #[test]
    fn ds_rate_at_15db() {
        let p = maritime();
        // SNR = 10^1.5 at 0.3 W.
        let gain = 10f64.powf(1.5) * p.noise_power_w / p.ds_device_power_w;
        let r = device_uav_rate(TaskKind::Ds, gain, &p, 3).unwrap();
        assert_relative_eq!(r, 10_055_615.346_701_039, max_relative = 1e-12);
    }

    #[test]
    fn zero_power_and_zero_share_give_zero_rate() {
        let mut p = maritime();
        p.ds_device_power_w = 0.0;
        assert_eq!(device_uav_rate(TaskKind::Ds, 1e-6, &p, 2).unwrap(), 0.0);
        let mut p = maritime();
        p.ds_bandwidth_fraction = 1.0;
        assert_eq!(device_uav_rate(TaskKind::Dt, 1e-6, &p, 7).unwrap(), 0.0);
    }

    #[test]
    fn empty_group_is_an_error() {
        assert!(matches!(device_uav_rate(TaskKind::Dt, 1e-6, &maritime(), 0), Err(ModelError::EmptyGroup("DT"))));
    }

    #[test]
    fn table1_leo_rate() {
        let geom = table1_geom();
        // Gain referenced to 1 km: SNR ≈ 333.4 at 1 W.
        let r = uav_leo_rate(1.0, &geom, &link(1e3), 6).unwrap();
        assert_relative_eq!(r, 55_902_588.473_045_88, max_relative = 1e-10);
        // Gain referenced to 1 m: SNR ≈ 3.3e-4, a few kbit/s.
        let r = uav_leo_rate(1.0, &geom, &link(1.0), 6).unwrap();
        assert_relative_eq!(r, 3_206.000_444_072_524_3, max_relative = 1e-10);
        assert_eq!(uav_leo_rate(0.0, &geom, &link(1e3), 6).unwrap(), 0.0);
    }

    #[test]
    fn inverse_square_gain() {
        let l = link(1e3);
        let g1 = uav_leo_gain(1.5e6, &l).unwrap();
        let g2 = uav_leo_gain(3.0e6, &l).unwrap();
        assert_relative_eq!(g1 / g2, 4.0, max_relative = 1e-14);
    }
}
