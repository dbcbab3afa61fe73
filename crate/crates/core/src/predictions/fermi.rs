use std::f64::consts::{PI, TAU};

/// one chiral branch on a half-line, 1/(4 pi l)
pub fn chiral_halfline(l: f64) -> f64 {
    1.0 / (4.0 * PI * l)
}

/// both branches on a half-line, 1/(2 pi l)
pub fn halfline_full(l: f64) -> f64 {
    1.0 / (TAU * l)
}

/// insertion at the midpoint of an interval of half-width l, 1/(pi l)
pub fn midpoint_1d(l: f64) -> f64 {
    1.0 / (PI * l)
}

/// ball of radius l: Area(FS) / ((2 pi)^d l)
pub fn disk_d(l: f64, area: f64, d: u32) -> f64 {
    area / (TAU.powi(d as i32) * l)
}

/// half-space at depth l: (1/(4 pi)) int dS |v . n| / (2 pi)^{d-1} / l
pub fn halfspace(l: f64, fs_integral: f64, d: u32) -> f64 {
    fs_integral / (4.0 * PI * TAU.powi(d as i32 - 1) * l)
}

/// Fermi momentum of a circular two-dimensional Fermi sea at filling nu, 2 sqrt(pi nu)
pub fn circular_fermi_momentum(nu: f64) -> f64 {
    2.0 * (PI * nu).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((midpoint_1d(50.0) - 1.0 / (50.0 * PI)).abs() < 1e-18);
        assert!((chiral_halfline(7.0) * 2.0 - halfline_full(7.0)).abs() < 1e-18);
        let kf = circular_fermi_momentum(0.1);
        assert!((disk_d(9.0, TAU * kf, 2) - kf / (TAU * 9.0)).abs() < 1e-15);
        assert!((halfspace(5.0, 4.0 * kf, 2) - kf / (2.0 * PI * PI * 5.0)).abs() < 1e-15);
    }

    #[test]
    fn decreasing_in_l() {
        for l in [1.0, 2.0, 10.0] {
            let m = l * 1.01;
            assert!(chiral_halfline(m) < chiral_halfline(l));
            assert!(halfline_full(m) < halfline_full(l));
            assert!(midpoint_1d(m) < midpoint_1d(l));
            assert!(disk_d(m, 3.0, 2) < disk_d(l, 3.0, 2));
            assert!(halfspace(m, 3.0, 3) < halfspace(l, 3.0, 3));
        }
    }
}
