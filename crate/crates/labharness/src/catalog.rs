//! the models and estimators a config can name

use serde::Serialize;

use crate::config::ModelClass;

#[derive(Clone, Debug, Serialize)]
pub struct ModelEntry {
    pub kind: &'static str,
    pub class: ModelClass,
    pub parameters: &'static [&'static str],
    pub regions: &'static [&'static str],
    pub estimators: &'static [&'static str],
    pub summary: &'static str,
}

const GAUSSIAN_EST: &[&str] = &["gaussian_renyi1", "escape_integral", "correlation_abs"];
const DENSE_EST: &[&str] = &["fidelity", "renyi"];
const ISING_EST: &[&str] = &["ising_fidelity", "ising_renyi2k", "ising_magnetization"];

pub const MODELS: &[ModelEntry] = &[
    ModelEntry {
        kind: "fermi_chain",
        class: ModelClass::Gaussian,
        parameters: &["length", "filling", "periodic=true"],
        regions: &["interval"],
        estimators: GAUSSIAN_EST,
        summary: "nearest-neighbour chain, hopping -1",
    },
    ModelEntry {
        kind: "square_lattice",
        class: ModelClass::Gaussian,
        parameters: &["lx", "ly", "filling"],
        regions: &["disk", "half_space"],
        estimators: GAUSSIAN_EST,
        summary: "periodic square lattice, -cos kx - cos ky",
    },
    ModelEntry {
        kind: "pi_flux",
        class: ModelClass::Gaussian,
        parameters: &["lx", "ly", "filling"],
        regions: &["disk", "half_space"],
        estimators: GAUSSIAN_EST,
        summary: "square lattice with flux pi per plaquette; Dirac points at half filling",
    },
    ModelEntry {
        kind: "anderson",
        class: ModelClass::Gaussian,
        parameters: &["length", "disorder", "filling"],
        regions: &["disk"],
        estimators: GAUSSIAN_EST,
        summary: "square lattice with uniform on-site disorder, one sample per seed",
    },
    ModelEntry {
        kind: "goe",
        class: ModelClass::Gaussian,
        parameters: &["size", "coupling=1", "filling"],
        regions: &["interval"],
        estimators: GAUSSIAN_EST,
        summary: "all-to-all GOE hopping on a ring of labels, one sample per seed",
    },
    ModelEntry {
        kind: "thermal_paramagnet",
        class: ModelClass::Dense,
        parameters: &["sites", "beta", "projected=false"],
        regions: &["interval"],
        estimators: DENSE_EST,
        summary: "Gibbs state of -sum X, optionally projected to the even sector",
    },
    ModelEntry {
        kind: "transverse_field_gibbs",
        class: ModelClass::Dense,
        parameters: &["sites", "coupling", "field", "beta"],
        regions: &["interval"],
        estimators: DENSE_EST,
        summary: "Gibbs state of -J sum ZZ - h sum X on an open chain",
    },
    ModelEntry {
        kind: "decohered_ising",
        class: ModelClass::Ising,
        parameters: &["p"],
        regions: &["rectangle"],
        estimators: ISING_EST,
        summary: "|+...+> under nearest-neighbour ZZ decoherence with rate p",
    },
];

/// aligned text table
pub fn table() -> String {
    let mut s = format!("{:<24}{:<10}{:<36}{}\n", "kind", "class", "parameters", "estimators");
    for m in MODELS {
        let class = serde_json::to_value(m.class).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        s.push_str(&format!("{:<24}{:<10}{:<36}{}\n", m.kind, class, m.parameters.join(" "), m.estimators.join(" ")));
    }
    s
}
