//! CODATA 2018 constants (exact where the SI defines them) and the Fowler
//! constants used for single-point work-function estimates.

use std::f64::consts::PI;

/// Elementary charge (C).
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Electron rest mass (kg).
pub const M_ELECTRON: f64 = 9.109_383_701_5e-31;
/// Speed of light in vacuum (m/s).
pub const C_LIGHT: f64 = 299_792_458.0;
/// Planck constant (J·s).
pub const H_PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = H_PLANCK / (2.0 * PI);
/// Boltzmann constant (J/K).
pub const K_BOLTZMANN: f64 = 1.380_649e-23;
/// Vacuum permittivity (F/m).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Classical electron radius (m), CODATA tabulated value.
pub const R0_CLASSICAL: f64 = 2.817_940_326_2e-15;
/// Empirical Fowler constant `a` (m²·s per quantum); provenance unstated, so configurable.
pub const FOWLER_A_DEFAULT: f64 = 4.0e-36;
/// One Goeppert-Mayer unit (m⁴·s).
pub const GM: f64 = 1.0e-58;

/// Classical electron radius from first principles, `e²/(4πε₀ m c²)`
/// (the Gaussian `e²/mc²` written in SI).
pub fn classical_electron_radius() -> f64 {
    E_CHARGE * E_CHARGE / (4.0 * PI * EPSILON_0 * M_ELECTRON * C_LIGHT * C_LIGHT)
}

/// Fowler prefactor `𝒜 = 4πm k_B²/h³` (1/(m²·s·K²)).
pub fn fowler_script_a(m: f64, k_b: f64, h: f64) -> f64 {
    4.0 * PI * m * k_b * k_b / (h * h * h)
}

/// Constant set threaded through the models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub e: f64,
    pub m: f64,
    pub c: f64,
    pub h: f64,
    pub hbar: f64,
    pub k_b: f64,
    pub r0: f64,
    pub fowler_a: f64,
    pub fowler_script_a: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}

impl PhysicalConstants {
    pub fn codata() -> Self {
        Self {
            e: E_CHARGE,
            m: M_ELECTRON,
            c: C_LIGHT,
            h: H_PLANCK,
            hbar: HBAR,
            k_b: K_BOLTZMANN,
            r0: R0_CLASSICAL,
            fowler_a: FOWLER_A_DEFAULT,
            fowler_script_a: fowler_script_a(M_ELECTRON, K_BOLTZMANN, H_PLANCK),
        }
    }

    /// Same constants with a different empirical Fowler `a`.
    pub fn with_fowler_a(mut self, a: f64) -> Self {
        self.fowler_a = a;
        self
    }

    /// `hc/e` in nm·eV (≈ 1239.84).
    pub fn hc_ev_nm(&self) -> f64 {
        self.h * self.c / self.e * 1e9
    }
}
