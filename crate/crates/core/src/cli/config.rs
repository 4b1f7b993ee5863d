use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Direction;
use crate::soliton::SolitonPhase;
use crate::worldline::Scenario;

/// Everything a run reads from its TOML file. Each suite reads only its own table.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    /// Use the literal ∂(ln β) reading in the ghje suite instead of the derived ∂β.
    pub strict_paper: bool,
    pub algebra: AlgebraConfig,
    pub decompose: DecomposeConfig,
    pub equivalence: EquivalenceConfig,
    pub ghje: GhjeConfig,
    pub soliton: SolitonConfig,
    pub worldline: WorldlineConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AlgebraConfig {
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig { samples: 1000, tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecomposeConfig {
    /// Multivector in the textual format, e.g. `"1 + 0.5 g12"`.
    pub value: String,
    pub tolerance: f64,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig { value: "1".into(), tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EquivalenceConfig {
    pub mass: f64,
    pub charge: f64,
    /// Canonical momentum Π (covariant components).
    pub momentum: [f64; 4],
    pub potential: [f64; 4],
    pub action_phase: f64,
    pub direction: Direction,
    /// δm for the off-equation counterexample; 0 skips it.
    pub mass_perturbation: f64,
    pub tolerance: f64,
}

impl Default for EquivalenceConfig {
    fn default() -> Self {
        EquivalenceConfig {
            mass: 1.0,
            charge: 0.0,
            momentum: [1.0, 0.0, 0.0, 0.0],
            potential: [0.0; 4],
            action_phase: 0.0,
            direction: Direction::Both,
            mass_perturbation: 0.25,
            tolerance: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GhjeFieldKind {
    /// Classical plane wave (β ≡ 0, ρ ≡ 1).
    PlaneWave,
    /// Gaussian density and linear Takabayashi angle on top of the plane wave.
    Synthetic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub center: [f64; 4],
    pub half_extent: f64,
    /// Nodes per axis.
    pub nodes: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { center: [0.0; 4], half_extent: 1.0, nodes: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GhjeConfig {
    pub field: GhjeFieldKind,
    pub mass: f64,
    pub charge: f64,
    pub momentum: [f64; 4],
    pub potential: [f64; 4],
    pub beta0: f64,
    pub beta_gradient: [f64; 4],
    pub density_amplitude: f64,
    pub density_center: [f64; 4],
    pub density_widths: [f64; 4],
    pub grid: GridConfig,
    /// Bound on ghje residual, constraint, quantum potential and mass deviation
    /// (classical fields only).
    pub tolerance: f64,
    pub decomposition_tolerance: f64,
}

impl Default for GhjeConfig {
    fn default() -> Self {
        GhjeConfig {
            field: GhjeFieldKind::PlaneWave,
            mass: 1.0,
            charge: 0.0,
            momentum: [1.25, 0.0, 0.0, 0.75],
            potential: [0.0; 4],
            beta0: 0.4,
            beta_gradient: [0.1, -0.15, 0.05, 0.2],
            density_amplitude: 1.7,
            density_center: [0.1, -0.2, 0.3, 0.0],
            density_widths: [1.3, 0.9, 1.1, 1.6],
            grid: GridConfig::default(),
            tolerance: 1e-10,
            decomposition_tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolitonConfig {
    pub amplitude: f64,
    pub mass: f64,
    pub speed: f64,
    pub phase: SolitonPhase,
    pub center: [f64; 4],
    pub half_extent: f64,
    /// Coarse grid spacing; the fine grid uses half of it.
    pub spacing: f64,
    /// Scale ω and k by √2 so that ω² − k² = 2m² (a control that must fail).
    pub broken_dispersion: bool,
    /// Allowed relative deviation of the h → h/2 error ratio from 4.
    pub ratio_tolerance: f64,
}

impl Default for SolitonConfig {
    fn default() -> Self {
        SolitonConfig {
            amplitude: 1.0,
            mass: 1.0,
            speed: 0.6,
            phase: SolitonPhase::Sin,
            center: [0.3, 0.2, -0.1, 0.4],
            half_extent: 0.08,
            spacing: 0.02,
            broken_dispersion: false,
            ratio_tolerance: 0.2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WorldlineConfig {
    pub scenario: Scenario,
    /// Bound on |v² − 1| drift.
    pub drift_tolerance: f64,
    /// Bound on Gram defects, Darboux deviation and spin conservation.
    pub transport_tolerance: f64,
    /// Bound on rotor-frame vs directly transported frame.
    pub frame_tolerance: f64,
    pub kappa2: f64,
    /// Unit velocity 1-form for the plane-wave check.
    pub plane_wave_velocity: [f64; 4],
    pub plane_wave_tolerance: f64,
}

impl Default for WorldlineConfig {
    fn default() -> Self {
        WorldlineConfig {
            scenario: Scenario::default(),
            drift_tolerance: 1e-9,
            transport_tolerance: 1e-9,
            frame_tolerance: 1e-7,
            kappa2: -2.0,
            plane_wave_velocity: [1.0, 0.0, 0.0, 0.0],
            plane_wave_tolerance: 1e-10,
        }
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {x}")))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        positive("algebra.tolerance", self.algebra.tolerance)?;
        positive("decompose.tolerance", self.decompose.tolerance)?;
        positive("equivalence.tolerance", self.equivalence.tolerance)?;
        positive("ghje.tolerance", self.ghje.tolerance)?;
        positive("ghje.decomposition_tolerance", self.ghje.decomposition_tolerance)?;
        positive("soliton.ratio_tolerance", self.soliton.ratio_tolerance)?;
        positive("soliton.spacing", self.soliton.spacing)?;
        positive("soliton.half_extent", self.soliton.half_extent)?;
        positive("ghje.grid.half_extent", self.ghje.grid.half_extent)?;
        let w = &self.worldline;
        positive("worldline.drift_tolerance", w.drift_tolerance)?;
        positive("worldline.transport_tolerance", w.transport_tolerance)?;
        positive("worldline.frame_tolerance", w.frame_tolerance)?;
        positive("worldline.plane_wave_tolerance", w.plane_wave_tolerance)?;
        positive("worldline.scenario.dtau", w.scenario.dtau)?;
        if self.algebra.samples == 0 {
            return Err(Error::InvalidArgument("algebra.samples must be at least 1".into()));
        }
        if self.ghje.grid.nodes == 0 {
            return Err(Error::InvalidArgument("ghje.grid.nodes must be at least 1".into()));
        }
        Ok(())
    }
}
