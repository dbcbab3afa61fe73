//! experiment configuration files

use std::path::Path;

use serde::{Deserialize, Serialize};
use swssb_core::predictions::{FitMethod, ScalingClass};

use crate::error::{HarnessError, HarnessResult};

/// one experiment: a model, a covering family, a grid of sizes and an estimator
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub model: ModelSpec,
    pub region: RegionFamily,
    pub ell: EllGrid,
    pub estimator: Estimator,
    #[serde(default)]
    pub seeds: SeedSpec,
    #[serde(default)]
    pub fit: Option<FitSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    /// nearest-neighbour chain, hopping -1
    FermiChain {
        length: usize,
        filling: f64,
        #[serde(default = "yes")]
        periodic: bool,
    },
    SquareLattice {
        lx: usize,
        ly: usize,
        filling: f64,
    },
    PiFlux {
        lx: usize,
        ly: usize,
        filling: f64,
    },
    /// square lattice with uniform on-site disorder of width `disorder`, one sample per seed
    Anderson {
        length: usize,
        disorder: f64,
        filling: f64,
    },
    /// random symmetric hopping, one sample per seed
    Goe {
        size: usize,
        #[serde(default = "one")]
        coupling: f64,
        filling: f64,
    },
    /// Gibbs state of -sum X on an open chain, optionally projected to the even sector
    ThermalParamagnet {
        sites: usize,
        beta: f64,
        #[serde(default)]
        projected: bool,
    },
    /// Gibbs state of -J sum ZZ - h sum X on an open chain
    TransverseFieldGibbs {
        sites: usize,
        coupling: f64,
        field: f64,
        beta: f64,
    },
    /// paramagnet |+...+> under ZZ decoherence with error rate p
    DecoheredIsing {
        p: f64,
    },
}

fn yes() -> bool {
    true
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelClass {
    Dense,
    Gaussian,
    Ising,
}

impl ModelSpec {
    pub fn id(&self) -> &'static str {
        match self {
            ModelSpec::FermiChain { .. } => "fermi_chain",
            ModelSpec::SquareLattice { .. } => "square_lattice",
            ModelSpec::PiFlux { .. } => "pi_flux",
            ModelSpec::Anderson { .. } => "anderson",
            ModelSpec::Goe { .. } => "goe",
            ModelSpec::ThermalParamagnet { .. } => "thermal_paramagnet",
            ModelSpec::TransverseFieldGibbs { .. } => "transverse_field_gibbs",
            ModelSpec::DecoheredIsing { .. } => "decohered_ising",
        }
    }

    pub fn class(&self) -> ModelClass {
        match self {
            ModelSpec::ThermalParamagnet { .. } | ModelSpec::TransverseFieldGibbs { .. } => ModelClass::Dense,
            ModelSpec::DecoheredIsing { .. } => ModelClass::Ising,
            _ => ModelClass::Gaussian,
        }
    }

    /// lattice dimension of the sites the regions live on
    pub fn dimension(&self) -> usize {
        match self {
            ModelSpec::SquareLattice { .. } | ModelSpec::PiFlux { .. } | ModelSpec::Anderson { .. } => 2,
            ModelSpec::DecoheredIsing { .. } => 2,
            _ => 1,
        }
    }

    /// a new Hamiltonian per seed
    pub fn is_disordered(&self) -> bool {
        matches!(self, ModelSpec::Anderson { .. } | ModelSpec::Goe { .. })
    }

    fn filling(&self) -> Option<f64> {
        match *self {
            ModelSpec::FermiChain { filling, .. }
            | ModelSpec::SquareLattice { filling, .. }
            | ModelSpec::PiFlux { filling, .. }
            | ModelSpec::Anderson { filling, .. }
            | ModelSpec::Goe { filling, .. } => Some(filling),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// [x - ell, x + ell]
    #[default]
    Symmetric,
    /// [x - ell - 1, x + ell]; same innermost distance, one extra site on the left
    LeftFirst,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionFamily {
    Interval {
        #[serde(default)]
        center: Option<usize>,
        #[serde(default)]
        growth: Growth,
    },
    /// Euclidean disks of radius ell
    Disk {
        #[serde(default)]
        center: Option<usize>,
    },
    /// half-plane {x_axis >= 0} of an infinite strip of the given width; ell is the depth of the insertion
    HalfSpace {
        #[serde(default)]
        axis: usize,
        width: usize,
        #[serde(default)]
        band: usize,
    },
    /// (2 ell + 1) x height rectangle of spins, height defaulting to 2 ell + 1
    Rectangle {
        #[serde(default)]
        height: Option<usize>,
    },
}

impl RegionFamily {
    pub fn id(&self) -> &'static str {
        match self {
            RegionFamily::Interval { .. } => "interval",
            RegionFamily::Disk { .. } => "disk",
            RegionFamily::HalfSpace { .. } => "half_space",
            RegionFamily::Rectangle { .. } => "rectangle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EllGrid {
    List(Vec<f64>),
    Range { from: f64, to: f64, step: f64 },
}

impl EllGrid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            EllGrid::List(v) => v.clone(),
            EllGrid::Range { from, to, step } => {
                if !(*step > 0.0) || !from.is_finite() || !to.is_finite() {
                    return vec![];
                }
                let n = ((to - from) / step + 1e-9).floor();
                if n < 0.0 {
                    return vec![];
                }
                (0..=n as usize).map(|i| from + i as f64 * step).collect()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Estimator {
    /// F(rho_A; Z_x)
    Fidelity,
    /// R^alpha(rho_A; Z_x)
    Renyi { alpha: f64 },
    /// [sqrt(C_A (1 - C_A))]_xx
    GaussianRenyi1,
    /// sum over y outside A of |C(x, y)|^2
    EscapeIntegral,
    /// |C(x, x + ell)| along the first lattice direction
    CorrelationAbs,
    /// sum_s sqrt(p_s p_{s + e_x})
    IsingFidelity,
    IsingRenyi2k { k: u32 },
    /// Metropolis estimate of <eta_x> at coupling 2K, one chain per seed
    IsingMagnetization {
        #[serde(default)]
        thermalization: Option<usize>,
        #[serde(default)]
        measurement: Option<usize>,
    },
}

impl Estimator {
    pub fn id(&self) -> &'static str {
        match self {
            Estimator::Fidelity => "fidelity",
            Estimator::Renyi { .. } => "renyi",
            Estimator::GaussianRenyi1 => "gaussian_renyi1",
            Estimator::EscapeIntegral => "escape_integral",
            Estimator::CorrelationAbs => "correlation_abs",
            Estimator::IsingFidelity => "ising_fidelity",
            Estimator::IsingRenyi2k { .. } => "ising_renyi2k",
            Estimator::IsingMagnetization { .. } => "ising_magnetization",
        }
    }

    pub fn class(&self) -> ModelClass {
        match self {
            Estimator::Fidelity | Estimator::Renyi { .. } => ModelClass::Dense,
            Estimator::GaussianRenyi1 | Estimator::EscapeIntegral | Estimator::CorrelationAbs => ModelClass::Gaussian,
            _ => ModelClass::Ising,
        }
    }

    /// estimators that cannot grow along a nested covering
    pub fn monotone(&self) -> bool {
        match self {
            Estimator::Fidelity | Estimator::GaussianRenyi1 | Estimator::EscapeIntegral | Estimator::IsingFidelity => true,
            Estimator::Renyi { alpha } => *alpha == 1.0,
            _ => false,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, Estimator::IsingMagnetization { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    #[serde(default)]
    pub base: u64,
    #[serde(default = "one_usize")]
    pub realizations: usize,
}

fn one_usize() -> usize {
    1
}

impl Default for SeedSpec {
    fn default() -> Self {
        SeedSpec { base: 0, realizations: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSpec {
    pub method: FitMethod,
    pub window: (f64, f64),
    /// scaling class whose exponent the fit must reproduce
    #[serde(default)]
    pub expect: Option<ScalingClass>,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub csv: Option<String>,
    #[serde(default)]
    pub json: Option<String>,
    #[serde(default)]
    pub svg: Option<String>,
    #[serde(default)]
    pub overlay: Option<Overlay>,
}

/// analytic curve drawn next to the data
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Overlay {
    /// 1 / (pi ell)
    Midpoint1d,
    /// Area(FS) / ((2 pi)^2 ell) with the Fermi surface of the model
    Disk2d {
        #[serde(default)]
        area: Option<f64>,
    },
    Plateau { value: f64 },
    PowerLaw { prefactor: f64, exponent: f64 },
    /// the fitted power law
    Fit,
}

fn bad(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> HarnessResult<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| bad(format!("parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> HarnessResult<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            HarnessError::Config(m) => bad(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// seeds actually used: one per realization for disordered models and Monte Carlo, otherwise just the base
    pub fn seed_list(&self) -> Vec<u64> {
        if self.model.is_disordered() || self.estimator.is_stochastic() {
            (0..self.seeds.realizations as u64).map(|i| self.seeds.base.wrapping_add(i)).collect()
        } else {
            vec![self.seeds.base]
        }
    }

    pub fn validate(&self) -> HarnessResult<()> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(bad("name must be a nonempty [A-Za-z0-9_-] identifier"));
        }
        let ell = self.ell.values();
        if ell.is_empty() {
            return Err(bad("empty ell grid"));
        }
        if ell.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(bad("ell values must be finite and nonnegative"));
        }
        if ell.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("ell grid must be strictly increasing"));
        }
        if self.seeds.realizations == 0 {
            return Err(bad("at least one realization required"));
        }
        if self.model.class() != self.estimator.class() {
            return Err(bad(format!(
                "estimator {} does not apply to model {}",
                self.estimator.id(),
                self.model.id()
            )));
        }
        self.validate_model()?;
        self.validate_region(&ell)?;
        if let Estimator::Renyi { alpha } = self.estimator {
            if !(alpha > 0.0) {
                return Err(bad("Renyi index must be positive"));
            }
        }
        if let Estimator::IsingRenyi2k { k } = self.estimator {
            if k == 0 {
                return Err(bad("replica index k must be at least 1"));
            }
        }
        if let Some(f) = &self.fit {
            if !(f.window.0 <= f.window.1) {
                return Err(bad("fit window must satisfy a <= b"));
            }
        }
        Ok(())
    }

    fn validate_model(&self) -> HarnessResult<()> {
        if let Some(nu) = self.model.filling() {
            if !(0.0..=1.0).contains(&nu) {
                return Err(bad("filling outside [0, 1]"));
            }
        }
        match self.model {
            ModelSpec::ThermalParamagnet { sites, beta, .. } | ModelSpec::TransverseFieldGibbs { sites, beta, .. } => {
                if !(2..=10).contains(&sites) {
                    return Err(bad("dense models take 2..=10 sites"));
                }
                if !(beta >= 0.0) || !beta.is_finite() {
                    return Err(bad("beta must be finite and nonnegative"));
                }
            }
            ModelSpec::DecoheredIsing { p } => {
                if !(0.0..=0.5).contains(&p) {
                    return Err(bad("error rate outside [0, 0.5]"));
                }
            }
            ModelSpec::Anderson { disorder, .. } if !(disorder >= 0.0) => {
                return Err(bad("disorder strength must be nonnegative"));
            }
            _ => {}
        }
        Ok(())
    }

    fn validate_region(&self, ell: &[f64]) -> HarnessResult<()> {
        let integer = ell.iter().all(|l| l.fract() == 0.0);
        let region = &self.region;
        let ok = match (region, self.model.class()) {
            (RegionFamily::Interval { .. }, ModelClass::Dense) => true,
            (RegionFamily::Interval { .. }, ModelClass::Gaussian) => self.model.dimension() == 1,
            (RegionFamily::Disk { .. }, ModelClass::Gaussian) => true,
            (RegionFamily::HalfSpace { .. }, ModelClass::Gaussian) => {
                matches!(self.model, ModelSpec::SquareLattice { .. } | ModelSpec::PiFlux { .. })
                    && self.estimator == Estimator::GaussianRenyi1
            }
            (RegionFamily::Rectangle { .. }, ModelClass::Ising) => true,
            _ => false,
        };
        if !ok && self.estimator != Estimator::CorrelationAbs {
            return Err(bad(format!("region family {} does not apply to model {}", region.id(), self.model.id())));
        }
        if matches!(region, RegionFamily::Interval { .. } | RegionFamily::HalfSpace { .. } | RegionFamily::Rectangle { .. })
            && !integer
        {
            return Err(bad(format!("{} regions need integer ell", region.id())));
        }
        if self.estimator == Estimator::CorrelationAbs && !integer {
            return Err(bad("correlation distances must be integers"));
        }
        if let (RegionFamily::HalfSpace { axis, width, .. }, _) = (region, ()) {
            if *axis > 1 || *width == 0 {
                return Err(bad("half-space axis must be 0 or 1 and width positive"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = r#"{
        "name": "chain",
        "model": {"kind": "fermi_chain", "length": 200, "filling": 0.5},
        "region": {"kind": "interval"},
        "ell": {"from": 4, "to": 20, "step": 4},
        "estimator": {"kind": "gaussian_renyi1"}
    }"#;

    #[test]
    fn parses_with_defaults() {
        let c = ExperimentConfig::from_json(CHAIN).unwrap();
        assert_eq!(c.ell.values(), vec![4.0, 8.0, 12.0, 16.0, 20.0]);
        assert_eq!(c.seeds, SeedSpec::default());
        assert_eq!(c.seed_list(), vec![0]);
        assert!(matches!(c.model, ModelSpec::FermiChain { periodic: true, .. }));
        let back = ExperimentConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_bad_configs() {
        let cases = [
            CHAIN.replace(r#""step": 4"#, r#""step": -1"#),
            CHAIN.replace(r#"{"from": 4, "to": 20, "step": 4}"#, "[4, 4, 8]"),
            CHAIN.replace("gaussian_renyi1", "fidelity"),
            CHAIN.replace("interval", "rectangle"),
            CHAIN.replace(r#""filling": 0.5"#, r#""filling": 1.5"#),
            CHAIN.replace(r#""name": "chain""#, r#""name": "a b""#),
            CHAIN.replace(r#""estimator""#, r#""extra": 1, "estimator""#),
            CHAIN.replace(r#"{"from": 4, "to": 20, "step": 4}"#, "[1.5, 2.5]"),
        ];
        for c in cases {
            assert!(matches!(ExperimentConfig::from_json(&c), Err(HarnessError::Config(_))), "{c}");
        }
    }

    #[test]
    fn disordered_models_expand_seeds() {
        let c = ExperimentConfig::from_json(
            r#"{"name": "goe", "model": {"kind": "goe", "size": 100, "filling": 0.2},
                "region": {"kind": "interval"}, "ell": [2, 4, 6],
                "estimator": {"kind": "gaussian_renyi1"}, "seeds": {"base": 7, "realizations": 3}}"#,
        )
        .unwrap();
        assert_eq!(c.seed_list(), vec![7, 8, 9]);
    }
}
