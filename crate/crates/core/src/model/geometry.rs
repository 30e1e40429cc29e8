//! LEO coverage geometry: coverage angle, visibility window, slant range.

use crate::error::ModelError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteGeometry {
    /// Orbit altitude above the surface (m).
    pub altitude_m: f64,
    pub earth_radius_m: f64,
    /// Minimum elevation angle seen from the ground (rad).
    pub elevation_rad: f64,
    pub sat_speed_mps: f64,
    pub light_speed_mps: f64,
}

impl SatelliteGeometry {
    pub fn new(
        altitude_m: f64,
        earth_radius_m: f64,
        elevation_rad: f64,
        sat_speed_mps: f64,
        light_speed_mps: f64,
    ) -> Result<Self, ModelError> {
        let geom = Self { altitude_m, earth_radius_m, elevation_rad, sat_speed_mps, light_speed_mps };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |name, reason: &str| ModelError::InvalidParameter { name, reason: reason.to_string() };
        if !(self.altitude_m > 0.0) {
            return Err(bad("sat_altitude_m", "must be > 0"));
        }
        if !(self.earth_radius_m > 0.0) {
            return Err(bad("earth_radius_m", "must be > 0"));
        }
        if !(self.elevation_rad >= 0.0 && self.elevation_rad <= std::f64::consts::FRAC_PI_2) {
            return Err(bad("elevation_deg", "must lie in [0, 90] degrees"));
        }
        if !(self.sat_speed_mps > 0.0) {
            return Err(bad("sat_speed_mps", "must be > 0"));
        }
        if !(self.light_speed_mps > 0.0) {
            return Err(bad("light_speed_mps", "must be > 0"));
        }
        Ok(())
    }

    fn orbit_radius(&self) -> f64 {
        self.earth_radius_m + self.altitude_m
    }

    /// Earth-central coverage half-angle `arccos(rE/(rE+h)·cosθ) − θ` (rad).
    pub fn coverage_angle(&self) -> f64 {
        let ratio = self.earth_radius_m / self.orbit_radius();
        ((ratio * self.elevation_rad.cos()).clamp(-1.0, 1.0)).acos() - self.elevation_rad
    }

    /// Time the satellite stays above the elevation mask (s).
    pub fn visibility_window(&self) -> f64 {
        (2.0 * self.orbit_radius() * self.coverage_angle() / self.sat_speed_mps).max(0.0)
    }

    /// UAV-to-satellite distance `(rE+h)·sin γ / cos θ` (m).
    ///
    /// A zenith-only mask (θ = π/2) has no slant path and is rejected.
    pub fn uav_sat_distance(&self) -> Result<f64, ModelError> {
        let cos_el = self.elevation_rad.cos();
        if cos_el <= 1e-12 {
            return Err(ModelError::DegenerateGeometry("elevation of 90 degrees has no slant range"));
        }
        Ok(self.orbit_radius() * self.coverage_angle().sin() / cos_el)
    }

    /// One-way propagation delay to the satellite (s).
    pub fn propagation_delay(&self) -> Result<f64, ModelError> {
        Ok(self.uav_sat_distance()? / self.light_speed_mps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn table1(elevation_deg: f64) -> SatelliteGeometry {
        SatelliteGeometry::new(780e3, 6371e3, elevation_deg.to_radians(), 7.5e3, 3e8).unwrap()
    }

    // Reference values from an independent double-precision evaluation
    // (python `math`, same closed forms).
    #[test]
    fn table1_visibility_window() {
        let g = table1(20.0);
        assert_relative_eq!(g.coverage_angle(), 0.229_596_374_764_128_4, max_relative = 1e-12);
        assert_relative_eq!(g.visibility_window(), 437.824_980_250_208_5, max_relative = 1e-12);
    }

    #[test]
    fn zero_elevation_window() {
        let g = table1(0.0);
        assert_relative_eq!(g.coverage_angle(), 0.471_419_878_370_926_3, max_relative = 1e-12);
        assert_relative_eq!(g.visibility_window(), 898.966_280_061_465, max_relative = 1e-12);
    }

    #[test]
    fn zenith_mask_has_no_window() {
        let g = SatelliteGeometry::new(780e3, 6371e3, FRAC_PI_2, 7.5e3, 3e8).unwrap();
        assert!(g.coverage_angle().abs() < 1e-12);
        assert!(g.visibility_window().abs() < 1e-6);
        assert!(matches!(g.uav_sat_distance(), Err(ModelError::DegenerateGeometry(_))));
    }

    #[test]
    fn table1_slant_range() {
        let g = table1(20.0);
        assert_relative_eq!(g.uav_sat_distance().unwrap(), 1_731_903.374_930_407_4, max_relative = 1e-12);
        assert_relative_eq!(g.propagation_delay().unwrap(), 5.773_011_249_768_025e-3, max_relative = 1e-12);
    }

    #[test]
    fn slant_range_matches_law_of_cosines() {
        // Independent route: triangle Earth-centre / ground point / satellite.
        for el in [5.0_f64, 20.0, 45.0, 70.0] {
            let g = table1(el);
            let re = g.earth_radius_m;
            let r = re + g.altitude_m;
            let th = el.to_radians();
            let direct = (r * r - (re * th.cos()).powi(2)).sqrt() - re * th.sin();
            assert_relative_eq!(g.uav_sat_distance().unwrap(), direct, max_relative = 1e-10);
        }
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(SatelliteGeometry::new(-1.0, 6371e3, 0.3, 7.5e3, 3e8).is_err());
        assert!(SatelliteGeometry::new(780e3, 6371e3, 2.0, 7.5e3, 3e8).is_err());
    }
}
