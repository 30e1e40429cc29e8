/// The four decision blocks of one UAV in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UavDecision {
    /// UAV transmit power for offloaded DS bits (W).
    pub p_sens: f64,
    /// Satellite CPU share granted to this UAV (cycles/s).
    pub f_leo: f64,
    /// Instant within the slot at which DT uplink starts (s).
    pub delta_tol: f64,
    /// Fraction of the UAV's DS bits executed on the satellite.
    pub gamma: f64,
}

/// Decisions of every UAV for one slot.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlotDecision {
    pub uavs: Vec<UavDecision>,
}

impl SlotDecision {
    pub fn new(uavs: Vec<UavDecision>) -> Self {
        Self { uavs }
    }

    pub fn len(&self) -> usize {
        self.uavs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uavs.is_empty()
    }

    pub fn total_leo_cpu(&self) -> f64 {
        self.uavs.iter().map(|d| d.f_leo).sum()
    }
}
