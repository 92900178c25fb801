use crate::error::{Error, Result};

/// Default cap on the number of evaluated grid points.
pub const DEFAULT_GRID_CAP: u64 = 5_000_000;

/// The lattice `{ k / res : k in N^dim, sum k = res }` on the probability
/// simplex. Vertices are always included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexGrid {
    dim: usize,
    res: usize,
}

impl SimplexGrid {
    pub fn new(dim: usize, res: usize) -> Result<Self> {
        if dim == 0 || res == 0 {
            return Err(Error::Shape(format!(
                "simplex grid needs dim >= 1 and res >= 1, got dim {dim}, res {res}"
            )));
        }
        Ok(Self { dim, res })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> usize {
        self.res
    }

    /// `C(res + dim - 1, dim - 1)`, as a float so huge grids do not overflow.
    pub fn count(&self) -> f64 {
        let k = (self.dim - 1) as f64;
        (0..self.dim - 1).fold(1.0, |acc, i| {
            acc * (self.res as f64 + k - i as f64) / (i as f64 + 1.0)
        })
    }

    pub fn check_cap(&self, cap: u64) -> Result<()> {
        let count = self.count();
        if count > cap as f64 {
            return Err(Error::GridTooLarge { count, cap });
        }
        Ok(())
    }

    /// All lattice points in lexicographic order of their integer
    /// compositions.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        let mut comp = vec![0usize; self.dim];
        self.fill(0, self.res, &mut comp, &mut out);
        out
    }

    fn fill(&self, pos: usize, left: usize, comp: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if pos + 1 == self.dim {
            comp[pos] = left;
            out.push(comp.iter().map(|&k| k as f64 / self.res as f64).collect());
            return;
        }
        for k in 0..=left {
            comp[pos] = k;
            self.fill(pos + 1, left - k, comp, out);
        }
    }
}
