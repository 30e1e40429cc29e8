use super::{ComputeParams, UavDecision};

/// Energy spent on behalf of one UAV in one slot (J).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyBreakdown {
    /// DS uplink plus DT uplink transmission on the UAV.
    pub uav_comm: f64,
    pub uav_compute: f64,
    pub leo_compute: f64,
}

impl EnergyBreakdown {
    pub fn total(&self) -> f64 {
        self.uav_comm + self.uav_compute + self.leo_compute
    }
}

impl std::ops::Add for EnergyBreakdown {
    type Output = EnergyBreakdown;

    fn add(self, rhs: Self) -> Self {
        EnergyBreakdown {
            uav_comm: self.uav_comm + rhs.uav_comm,
            uav_compute: self.uav_compute + rhs.uav_compute,
            leo_compute: self.leo_compute + rhs.leo_compute,
        }
    }
}

impl std::iter::Sum for EnergyBreakdown {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(EnergyBreakdown::default(), |a, b| a + b)
    }
}

/// Slot energy of one UAV.
///
/// `ds_uplink_time` is the DS transmission time to the satellite and
/// `dt_uplink_power_w` the fixed DT uplink power.
pub fn slot_energy(
    decision: &UavDecision,
    ds_total_bits: f64,
    ds_uplink_time: f64,
    dt_uplink_power_w: f64,
    slot_len: f64,
    compute: &ComputeParams,
) -> EnergyBreakdown {
    let cycles = compute.cycles_per_bit * compute.kappa * ds_total_bits;
    EnergyBreakdown {
        uav_comm: decision.p_sens * ds_uplink_time + dt_uplink_power_w * (slot_len - decision.delta_tol),
        uav_compute: cycles * (1.0 - decision.gamma) * compute.uav_cpu_hz.powi(2),
        leo_compute: cycles * decision.gamma * decision.f_leo.powi(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn compute() -> ComputeParams {
        ComputeParams { cycles_per_bit: 400.0, uav_cpu_hz: 2e9, leo_cpu_hz: 10e9, kappa: 1e-28 }
    }

    #[test]
    fn full_offload_at_10ghz() {
        let d = UavDecision { p_sens: 0.0, f_leo: 1e10, delta_tol: 10.0, gamma: 1.0 };
        let e = slot_energy(&d, 6e6, 0.0, 1.0, 10.0, &compute());
        // 400 · 1e-28 · 1e20 · 6e6 = 24 J
        assert_relative_eq!(e.leo_compute, 24.0, max_relative = 1e-12);
        assert_eq!(e.uav_compute, 0.0);
        assert_eq!(e.uav_comm, 0.0);
    }

    #[test]
    fn local_only_has_no_satellite_energy() {
        let d = UavDecision { p_sens: 0.7, f_leo: 3e9, delta_tol: 4.0, gamma: 0.0 };
        let e = slot_energy(&d, 6e6, 0.0, 1.0, 10.0, &compute());
        assert_eq!(e.leo_compute, 0.0);
        // 400 · 1e-28 · 4e18 · 6e6 = 0.96 J
        assert_relative_eq!(e.uav_compute, 0.96, max_relative = 1e-12);
        assert_relative_eq!(e.uav_comm, 6.0);
        assert_relative_eq!(e.total(), 6.96, max_relative = 1e-12);
    }

    #[test]
    fn components_add_up() {
        let d = UavDecision { p_sens: 0.4, f_leo: 2e9, delta_tol: 3.0, gamma: 0.3 };
        let e = slot_energy(&d, 5e6, 0.12, 0.8, 10.0, &compute());
        let parts: EnergyBreakdown = [e, e, e].into_iter().sum();
        assert_relative_eq!(parts.total(), 3.0 * (e.uav_comm + e.uav_compute + e.leo_compute), max_relative = 1e-14);
    }
}
