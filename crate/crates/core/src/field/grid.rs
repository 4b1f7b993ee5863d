use super::{Event, MultivectorField};
use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// Central-difference stencil order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StencilOrder {
    #[default]
    Second,
    Fourth,
}

impl StencilOrder {
    /// Nodes needed on each side of the evaluation point.
    pub fn half_width(self) -> usize {
        match self {
            StencilOrder::Second => 1,
            StencilOrder::Fourth => 2,
        }
    }
}

/// Uniform 4-D lattice; node storage is row-major with the z index fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid4 {
    pub origin: Event,
    pub spacing: [f64; 4],
    pub counts: [usize; 4],
}

/// Relative tolerance when snapping an event onto a node.
const NODE_SNAP: f64 = 1e-9;

impl Grid4 {
    pub fn new(origin: Event, spacing: [f64; 4], counts: [usize; 4]) -> Result<Self> {
        if spacing.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidArgument(format!("grid spacing must be positive, got {spacing:?}")));
        }
        if counts.contains(&0) {
            return Err(Error::InvalidArgument("grid node counts must be positive".into()));
        }
        Ok(Grid4 { origin, spacing, counts })
    }

    /// Cube [center − half_extent, center + half_extent] in every axis with `n` nodes per axis.
    pub fn cube(center: Event, half_extent: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("need at least two nodes per axis".into()));
        }
        let h = 2.0 * half_extent / (n - 1) as f64;
        Self::new(center.map(|c| c - half_extent), [h; 4], [n; 4])
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat_index(&self, idx: [usize; 4]) -> usize {
        ((idx[0] * self.counts[1] + idx[1]) * self.counts[2] + idx[2]) * self.counts[3] + idx[3]
    }

    pub fn multi_index(&self, mut flat: usize) -> [usize; 4] {
        let mut idx = [0; 4];
        for mu in (0..4).rev() {
            idx[mu] = flat % self.counts[mu];
            flat /= self.counts[mu];
        }
        idx
    }

    pub fn node(&self, idx: [usize; 4]) -> Event {
        std::array::from_fn(|mu| self.origin[mu] + idx[mu] as f64 * self.spacing[mu])
    }

    pub fn nodes(&self) -> impl Iterator<Item = Event> + '_ {
        (0..self.len()).map(|i| self.node(self.multi_index(i)))
    }

    /// Node coinciding with `x`, if any.
    pub fn locate(&self, x: &Event) -> Option<[usize; 4]> {
        let mut idx = [0; 4];
        for mu in 0..4 {
            let u = (x[mu] - self.origin[mu]) / self.spacing[mu];
            let k = u.round();
            if !((u - k).abs() <= NODE_SNAP * (1.0 + k.abs())) || k < 0.0 || k >= self.counts[mu] as f64 {
                return None;
            }
            idx[mu] = k as usize;
        }
        Some(idx)
    }

    /// True when a stencil of the given half-width fits around `idx` on every axis.
    pub fn is_interior(&self, idx: [usize; 4], half_width: usize) -> bool {
        (0..4).all(|mu| idx[mu] >= half_width && idx[mu] + half_width < self.counts[mu])
    }

    pub fn interior_nodes(&self, half_width: usize) -> impl Iterator<Item = [usize; 4]> + '_ {
        (0..self.len()).map(|i| self.multi_index(i)).filter(move |idx| self.is_interior(*idx, half_width))
    }

    pub fn sample(&self, f: &dyn MultivectorField, order: StencilOrder) -> Result<GridField> {
        let values = self.nodes().map(|x| f.value(&x)).collect::<Result<Vec<_>>>()?;
        GridField::new(self.clone(), values, order)
    }
}

/// Multivector samples on a [`Grid4`], differentiated by central differences.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    grid: Grid4,
    values: Vec<Multivector>,
    order: StencilOrder,
}

impl GridField {
    pub fn new(grid: Grid4, values: Vec<Multivector>, order: StencilOrder) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "grid has {} nodes but {} values were supplied",
                grid.len(),
                values.len()
            )));
        }
        Ok(GridField { grid, values, order })
    }

    pub fn grid(&self) -> &Grid4 {
        &self.grid
    }

    pub fn values(&self) -> &[Multivector] {
        &self.values
    }

    pub fn order(&self) -> StencilOrder {
        self.order
    }

    pub fn with_order(mut self, order: StencilOrder) -> Self {
        self.order = order;
        self
    }

    pub fn at(&self, idx: [usize; 4]) -> Multivector {
        self.values[self.grid.flat_index(idx)]
    }

    fn shifted(&self, idx: [usize; 4], mu: usize, by: isize) -> Multivector {
        let mut j = idx;
        j[mu] = (idx[mu] as isize + by) as usize;
        self.at(j)
    }

    fn interior(&self, idx: [usize; 4]) -> Result<()> {
        if self.grid.is_interior(idx, self.order.half_width()) {
            Ok(())
        } else {
            Err(Error::BoundaryPoint)
        }
    }

    pub fn partials_at(&self, idx: [usize; 4]) -> Result<[Multivector; 4]> {
        self.interior(idx)?;
        Ok(std::array::from_fn(|mu| {
            let h = self.grid.spacing[mu];
            let f = |k| self.shifted(idx, mu, k);
            match self.order {
                StencilOrder::Second => (f(1) - f(-1)) / (2.0 * h),
                StencilOrder::Fourth => (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * h),
            }
        }))
    }

    /// η^{μν}∂_μ∂_ν f at an interior node.
    pub fn dalembertian_at(&self, idx: [usize; 4]) -> Result<Multivector> {
        self.interior(idx)?;
        Ok((0..4)
            .map(|mu| {
                let h = self.grid.spacing[mu];
                let f = |k| self.shifted(idx, mu, k);
                let second = match self.order {
                    StencilOrder::Second => (f(1) - 2.0 * f(0) + f(-1)) / (h * h),
                    StencilOrder::Fourth => (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * h * h),
                };
                if mu == 0 {
                    second
                } else {
                    -second
                }
            })
            .sum())
    }
}

impl MultivectorField for GridField {
    fn value(&self, x: &Event) -> Result<Multivector> {
        self.grid.locate(x).map(|idx| self.at(idx)).ok_or(Error::OffGrid)
    }

    fn partials(&self, x: &Event) -> Result<[Multivector; 4]> {
        self.partials_at(self.grid.locate(x).ok_or(Error::OffGrid)?)
    }
}
