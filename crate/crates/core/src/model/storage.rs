//! Store-carry-forward buffer of each UAV.

/// UAV storage: one shared capacity and the free space left on each UAV.
#[derive(Debug, Clone, PartialEq)]
pub struct StorageState {
    pub capacity_bits: f64,
    /// Free space per UAV (bits).
    pub remaining_bits: Vec<f64>,
}

impl StorageState {
    pub fn new(capacity_bits: f64, initial_remaining_bits: f64, num_uavs: usize) -> Self {
        let remaining = initial_remaining_bits.clamp(0.0, capacity_bits);
        Self { capacity_bits, remaining_bits: vec![remaining; num_uavs] }
    }

    /// Data already held by UAV `u` and waiting for uplink.
    pub fn backlog(&self, u: usize) -> f64 {
        self.capacity_bits - self.remaining_bits[u]
    }

    /// Next state after one slot of per-UAV steps.
    pub fn advance(&self, steps: &[DtStep]) -> StorageState {
        StorageState {
            capacity_bits: self.capacity_bits,
            remaining_bits: steps.iter().map(|s| s.next_remaining).collect(),
        }
    }
}

/// Outcome of one slot of DT collection and uplink on one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DtStep {
    /// Bits gathered from DT devices (truncated to free space).
    pub collected: f64,
    /// Bits the satellite link could carry during `δ − δ_tol`.
    pub uplink_capacity: f64,
    /// Stored plus freshly collected data: the most that can be uplinked.
    pub uplink_limit: f64,
    pub uplinked: f64,
    pub next_remaining: f64,
    /// Raw collection would have exceeded the free space.
    pub storage_overflow: bool,
    /// Raw collection in excess of the free space (bits).
    pub overflow_bits: f64,
}

/// Advances one UAV's buffer by one slot.
///
/// Collection runs for `delta_tol` at `device_rate_sum`, uplink runs for
/// `slot_len − delta_tol` at `uplink_rate`, bounded by the data on board.
pub fn dt_collection_step(
    remaining_bits: f64,
    capacity_bits: f64,
    device_rate_sum: f64,
    uplink_rate: f64,
    delta_tol: f64,
    slot_len: f64,
) -> DtStep {
    let delta_tol = delta_tol.clamp(0.0, slot_len);
    let raw = device_rate_sum * delta_tol;
    let overflow_bits = (raw - remaining_bits).max(0.0);
    let collected = raw.min(remaining_bits);
    let uplink_capacity = uplink_rate * (slot_len - delta_tol);
    let uplink_limit = collected + (capacity_bits - remaining_bits);
    let uplinked = uplink_capacity.min(uplink_limit).max(0.0);
    let next_remaining = (remaining_bits - collected + uplinked).clamp(0.0, capacity_bits);
    DtStep {
        collected,
        uplink_capacity,
        uplink_limit,
        uplinked,
        next_remaining,
        storage_overflow: overflow_bits > 0.0,
        overflow_bits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const GB: f64 = 8e9;

    #[test]
    fn full_slot_of_collection_means_no_uplink() {
        let s = dt_collection_step(1.0 * GB, 1.5 * GB, 50e6, 40e6, 10.0, 10.0);
        assert_eq!(s.uplinked, 0.0);
        assert_relative_eq!(s.collected, 500e6);
        assert_relative_eq!(s.next_remaining, 1.0 * GB - 500e6);
    }

    #[test]
    fn zero_collection_drains_backlog() {
        let s = dt_collection_step(1.4 * GB, 1.5 * GB, 50e6, 200e6, 0.0, 10.0);
        assert_eq!(s.collected, 0.0);
        assert_relative_eq!(s.uplink_limit, 0.1 * GB, max_relative = 1e-12);
        assert_relative_eq!(s.uplinked, 0.1 * GB, max_relative = 1e-12);
        assert_relative_eq!(s.next_remaining, 1.5 * GB, max_relative = 1e-12);
    }

    #[test]
    fn hand_traced_step() {
        // remaining 1 GB of 1.5 GB, 0.1 GB collected, link can carry 0.2 GB.
        let s = dt_collection_step(1.0 * GB, 1.5 * GB, 0.1 * GB / 4.0, 0.2 * GB / 6.0, 4.0, 10.0);
        assert_relative_eq!(s.collected, 0.1 * GB, max_relative = 1e-12);
        assert_relative_eq!(s.uplink_limit, 0.6 * GB, max_relative = 1e-12);
        assert_relative_eq!(s.uplinked, 0.2 * GB, max_relative = 1e-12);
        assert_relative_eq!(s.next_remaining, 1.1 * GB, max_relative = 1e-12);
    }

    #[test]
    fn overflow_is_flagged() {
        let s = dt_collection_step(10e6, 100e6, 5e6, 1e6, 4.0, 10.0);
        assert!(s.storage_overflow);
        assert_relative_eq!(s.overflow_bits, 10e6);
        assert_relative_eq!(s.collected, 10e6);
    }

    proptest! {
        #[test]
        fn storage_stays_in_bounds(
            cap in 1e6f64..1e10,
            frac in 0.0f64..=1.0,
            steps in prop::collection::vec((0.0f64..1e8, 0.0f64..1e8, 0.0f64..=1.0), 1..30),
        ) {
            let mut remaining = cap * frac;
            for (dev, up, start) in steps {
                let s = dt_collection_step(remaining, cap, dev, up, start * 10.0, 10.0);
                prop_assert!(s.uplinked <= s.uplink_limit);
                prop_assert!(s.next_remaining >= 0.0 && s.next_remaining <= cap);
                remaining = s.next_remaining;
            }
        }
    }
}
