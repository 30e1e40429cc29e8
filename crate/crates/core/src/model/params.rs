use crate::error::ModelError;

/// CPU and energy constants for DS task execution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeParams {
    /// CPU cycles needed per bit.
    pub cycles_per_bit: f64,
    /// UAV CPU frequency (cycles/s).
    pub uav_cpu_hz: f64,
    /// Satellite CPU capacity shared by all UAVs (cycles/s).
    pub leo_cpu_hz: f64,
    /// Effective switched capacitance.
    pub kappa: f64,
}

impl ComputeParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [
            ("cycles_per_bit", self.cycles_per_bit),
            ("uav_cpu_hz", self.uav_cpu_hz),
            ("leo_cpu_hz", self.leo_cpu_hz),
            ("kappa", self.kappa),
        ] {
            if !(v > 0.0) {
                return Err(ModelError::InvalidParameter { name, reason: "must be > 0".into() });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotSchedule {
    pub slot_len_s: f64,
    pub num_slots: usize,
    /// Weight of energy (J) against collected data (bits) in the utility.
    pub omega: f64,
}

impl SlotSchedule {
    /// Checks the horizon fits into the visibility window `window_s`.
    pub fn validate(&self, window_s: f64) -> Result<(), ModelError> {
        if !(self.slot_len_s > 0.0) {
            return Err(ModelError::InvalidParameter { name: "slot_len_s", reason: "must be > 0".into() });
        }
        if !(self.omega >= 0.0) {
            return Err(ModelError::InvalidParameter { name: "omega", reason: "must be >= 0".into() });
        }
        let horizon = self.slot_len_s * self.num_slots as f64;
        if horizon > window_s * (1.0 + 1e-12) {
            return Err(ModelError::InvalidParameter {
                name: "num_slots",
                reason: format!("horizon {horizon:.3} s exceeds the satellite visibility window {window_s:.3} s"),
            });
        }
        Ok(())
    }
}

/// A point in a local east-north-up frame (m).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2)).sqrt()
    }
}

/// Converts a decibel ratio to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}
