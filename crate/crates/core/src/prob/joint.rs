use std::collections::BTreeMap;

use super::index::{shape_len, unflatten};
use super::{Kernel, Pmf, NORMALIZATION_TOL};
use crate::error::{Error, Result};

/// Projections with at most this many cells accumulate into a dense buffer.
const DENSE_PROJECTION_LIMIT: usize = 1 << 20;

/// Joint law of named finite random variables.
///
/// Only cells with positive mass are stored, sorted lexicographically by
/// coordinate tuple, so every iteration order (and therefore every floating
/// point reduction) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledJoint {
    names: Vec<String>,
    sizes: Vec<usize>,
    coords: Vec<u32>,
    probs: Vec<f64>,
}

impl LabeledJoint {
    /// Builds a joint from `(coordinates, probability)` cells. Duplicate
    /// coordinates are merged; zero cells dropped.
    pub fn from_cells<I>(names: &[&str], sizes: &[usize], cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        check_names(names, sizes)?;
        let mut merged: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (c, p) in cells {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidEntry {
                    what: "joint cell".into(),
                    value: p,
                });
            }
            if c.len() != sizes.len() || c.iter().zip(sizes).any(|(v, n)| v >= n) {
                return Err(Error::Shape(format!("cell {c:?} outside shape {sizes:?}")));
            }
            if p > 0.0 {
                *merged
                    .entry(c.iter().map(|&v| v as u32).collect())
                    .or_insert(0.0) += p;
            }
        }
        let mut joint = Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            sizes: sizes.to_vec(),
            coords: Vec::with_capacity(merged.len() * sizes.len()),
            probs: Vec::with_capacity(merged.len()),
        };
        for (c, p) in merged {
            joint.coords.extend(c);
            joint.probs.push(p);
        }
        joint.check_mass()?;
        Ok(joint)
    }

    /// Builds a joint from a dense row-major table over `sizes`.
    pub fn from_dense(names: &[&str], sizes: &[usize], probs: &[f64]) -> Result<Self> {
        let total = shape_len(sizes);
        if probs.len() != total {
            return Err(Error::Shape(format!(
                "dense table has {} entries, shape {sizes:?} needs {total}",
                probs.len()
            )));
        }
        let mut coords = vec![0; sizes.len()];
        let cells = probs.iter().enumerate().map(|(i, &p)| {
            unflatten(sizes, i, &mut coords);
            (coords.clone(), p)
        });
        Self::from_cells(names, sizes, cells.collect::<Vec<_>>())
    }

    pub fn from_pmf(name: &str, pmf: &Pmf) -> Result<Self> {
        Self::from_dense(&[name], &[pmf.len()], pmf.probs())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    /// Number of stored (positive-mass) cells.
    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn size_of(&self, name: &str) -> Result<usize> {
        Ok(self.sizes[self.var_index(name)?])
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var_indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.var_index(n)).collect()
    }

    /// Iterates `(coordinates, probability)` over the support.
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], f64)> + '_ {
        let n = self.arity();
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (&self.coords[i * n..(i + 1) * n], p))
    }

    /// Dense row-major table over the full shape.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; shape_len(&self.sizes)];
        for (c, p) in self.iter() {
            let idx = c
                .iter()
                .zip(&self.sizes)
                .fold(0usize, |acc, (&v, &n)| acc * n + v as usize);
            out[idx] += p;
        }
        out
    }

    /// Probability of the event `{var = value, ..}`.
    pub fn probability(&self, event: &[(&str, usize)]) -> Result<f64> {
        let fixed = self.resolve_event(event)?;
        Ok(self
            .iter()
            .filter(|(c, _)| fixed.iter().all(|&(i, v)| c[i] as usize == v))
            .map(|(_, p)| p)
            .sum())
    }

    /// Marginal law of `vars`, in the given order.
    pub fn marginal(&self, vars: &[&str]) -> Result<LabeledJoint> {
        let idx = self.var_indices(vars)?;
        check_distinct(vars)?;
        let sizes: Vec<usize> = idx.iter().map(|&i| self.sizes[i]).collect();
        let masses = self.project(&idx)?;
        let mut out = LabeledJoint {
            names: vars.iter().map(|s| s.to_string()).collect(),
            sizes: sizes.clone(),
            coords: Vec::with_capacity(masses.len() * idx.len()),
            probs: Vec::with_capacity(masses.len()),
        };
        let mut c = vec![0usize; idx.len()];
        for (key, p) in masses {
            unflatten(&sizes, key as usize, &mut c);
            out.coords.extend(c.iter().map(|&v| v as u32));
            out.probs.push(p);
        }
        Ok(out)
    }

    /// Conditional joint of the remaining variables given the event.
    pub fn condition(&self, evidence: &[(&str, usize)]) -> Result<LabeledJoint> {
        let fixed = self.resolve_event(evidence)?;
        let keep: Vec<usize> = (0..self.arity())
            .filter(|i| !fixed.iter().any(|(f, _)| f == i))
            .collect();
        let mut out = LabeledJoint {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            sizes: keep.iter().map(|&i| self.sizes[i]).collect(),
            coords: Vec::new(),
            probs: Vec::new(),
        };
        for (c, p) in self.iter() {
            if fixed.iter().all(|&(i, v)| c[i] as usize == v) {
                out.coords.extend(keep.iter().map(|&i| c[i]));
                out.probs.push(p);
            }
        }
        let mass: f64 = out.probs.iter().sum();
        if mass <= 0.0 {
            return Err(Error::ZeroProbability);
        }
        out.probs.iter_mut().for_each(|p| *p /= mass);
        Ok(out)
    }

    /// Joint of two independent laws over disjoint variable sets.
    pub fn product(&self, other: &LabeledJoint) -> Result<LabeledJoint> {
        if let Some(dup) = other.names.iter().find(|n| self.names.contains(n)) {
            return Err(Error::DuplicateVariable(dup.clone()));
        }
        let mut out = LabeledJoint {
            names: self.names.iter().chain(&other.names).cloned().collect(),
            sizes: self.sizes.iter().chain(&other.sizes).copied().collect(),
            coords: Vec::with_capacity(self.coords.len() * other.support_len()),
            probs: Vec::with_capacity(self.support_len() * other.support_len()),
        };
        for (a, pa) in self.iter() {
            for (b, pb) in other.iter() {
                let p = pa * pb;
                if p > 0.0 {
                    out.coords.extend_from_slice(a);
                    out.coords.extend_from_slice(b);
                    out.probs.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Extends the joint with new variables drawn from `kernel` given the
    /// existing variables `given`: `P(.., new) = P(..) K(new | given)`.
    pub fn attach(
        &self,
        given: &[&str],
        kernel: &Kernel,
        new_vars: &[(&str, usize)],
    ) -> Result<LabeledJoint> {
        let idx = self.var_indices(given)?;
        let given_sizes: Vec<usize> = idx.iter().map(|&i| self.sizes[i]).collect();
        if kernel.input_shape() != given_sizes.as_slice() {
            return Err(Error::Shape(format!(
                "kernel input shape {:?} does not match {:?} of {given:?}",
                kernel.input_shape(),
                given_sizes
            )));
        }
        let new_sizes: Vec<usize> = new_vars.iter().map(|v| v.1).collect();
        if kernel.output_shape() != new_sizes.as_slice() {
            return Err(Error::Shape(format!(
                "kernel output shape {:?} does not match {new_sizes:?}",
                kernel.output_shape()
            )));
        }
        for (name, _) in new_vars {
            if self.names.iter().any(|n| n == name) {
                return Err(Error::DuplicateVariable(name.to_string()));
            }
        }
        let names: Vec<&str> = new_vars.iter().map(|v| v.0).collect();
        check_distinct(&names)?;

        let mut out = LabeledJoint {
            names: self
                .names
                .iter()
                .cloned()
                .chain(names.iter().map(|s| s.to_string()))
                .collect(),
            sizes: self
                .sizes
                .iter()
                .copied()
                .chain(new_sizes.clone())
                .collect(),
            coords: Vec::new(),
            probs: Vec::new(),
        };
        let mut tail = vec![0usize; new_sizes.len()];
        for (c, p) in self.iter() {
            let row_index = idx
                .iter()
                .zip(&given_sizes)
                .fold(0usize, |acc, (&i, &n)| acc * n + c[i] as usize);
            for (j, &k) in kernel.row_at(row_index).iter().enumerate() {
                let q = p * k;
                if q > 0.0 {
                    unflatten(&new_sizes, j, &mut tail);
                    out.coords.extend_from_slice(c);
                    out.coords.extend(tail.iter().map(|&v| v as u32));
                    out.probs.push(q);
                }
            }
        }
        Ok(out)
    }

    /// Adds a variable that is a deterministic function of existing ones.
    pub fn with_function(
        &self,
        source: &[&str],
        name: &str,
        size: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<LabeledJoint> {
        let in_shape = self
            .var_indices(source)?
            .into_iter()
            .map(|i| self.sizes[i])
            .collect();
        let kernel = Kernel::deterministic(in_shape, vec![size], |c| vec![f(c)])?;
        self.attach(source, &kernel, &[(name, size)])
    }

    /// Masses of the projection onto variable positions `idx`, keyed by the
    /// row-major index of the projected tuple, in increasing key order.
    pub(crate) fn project(&self, idx: &[usize]) -> Result<Vec<(u64, f64)>> {
        let sizes: Vec<usize> = idx.iter().map(|&i| self.sizes[i]).collect();
        let mut total: u64 = 1;
        for &n in &sizes {
            total = total
                .checked_mul(n as u64)
                .ok_or_else(|| Error::Shape("projection too large".into()))?;
        }
        let key_of = |c: &[u32]| {
            idx.iter()
                .zip(&sizes)
                .fold(0u64, |acc, (&i, &n)| acc * n as u64 + c[i] as u64)
        };
        if total as usize <= DENSE_PROJECTION_LIMIT {
            let mut dense = vec![0.0; total as usize];
            for (c, p) in self.iter() {
                dense[key_of(c) as usize] += p;
            }
            Ok(dense
                .into_iter()
                .enumerate()
                .filter(|(_, p)| *p > 0.0)
                .map(|(k, p)| (k as u64, p))
                .collect())
        } else {
            let mut map: BTreeMap<u64, f64> = BTreeMap::new();
            for (c, p) in self.iter() {
                *map.entry(key_of(c)).or_insert(0.0) += p;
            }
            Ok(map.into_iter().collect())
        }
    }

    fn resolve_event(&self, event: &[(&str, usize)]) -> Result<Vec<(usize, usize)>> {
        event
            .iter()
            .map(|&(name, v)| {
                let i = self.var_index(name)?;
                if v >= self.sizes[i] {
                    return Err(Error::Shape(format!(
                        "value {v} outside alphabet of `{name}` (size {})",
                        self.sizes[i]
                    )));
                }
                Ok((i, v))
            })
            .collect()
    }

    fn check_mass(&self) -> Result<()> {
        let mass = self.total_mass();
        if (mass - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                what: "joint law".into(),
                mass,
            });
        }
        Ok(())
    }
}

fn check_names(names: &[&str], sizes: &[usize]) -> Result<()> {
    if names.len() != sizes.len() {
        return Err(Error::Shape(format!(
            "{} variable names for {} alphabet sizes",
            names.len(),
            sizes.len()
        )));
    }
    if sizes.iter().any(|&n| n == 0 || n > u32::MAX as usize) {
        return Err(Error::Shape("alphabet sizes must be positive".into()));
    }
    check_distinct(names)
}

fn check_distinct(names: &[&str]) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::DuplicateVariable(a.to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_bits() -> LabeledJoint {
        LabeledJoint::from_dense(&["A", "B"], &[2, 2], &[0.1, 0.2, 0.3, 0.4]).unwrap()
    }

    #[test]
    fn marginalize_everything_is_unit_mass() {
        let m = two_bits().marginal(&[]).unwrap();
        assert_eq!(m.support_len(), 1);
        assert!((m.total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn total_probability() {
        let j = two_bits();
        let pb = j.marginal(&["B"]).unwrap().to_dense();
        let pa = j.marginal(&["A"]).unwrap().to_dense();
        for (a, &want) in pa.iter().enumerate() {
            let total: f64 = (0..2)
                .map(|b| {
                    j.condition(&[("B", b)])
                        .unwrap()
                        .probability(&[("A", a)])
                        .unwrap()
                        * pb[b]
                })
                .sum();
            assert!((total - want).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_probability_evidence() {
        let j = LabeledJoint::from_dense(&["A"], &[2], &[1.0, 0.0]).unwrap();
        assert_eq!(j.condition(&[("A", 1)]), Err(Error::ZeroProbability));
    }

    #[test]
    fn marginal_reorders() {
        let j = two_bits();
        let m = j.marginal(&["B", "A"]).unwrap();
        assert_eq!(m.to_dense(), vec![0.1, 0.3, 0.2, 0.4]);
    }

    #[test]
    fn unknown_and_duplicate_names() {
        let j = two_bits();
        assert_eq!(
            j.marginal(&["C"]).unwrap_err(),
            Error::UnknownVariable("C".into())
        );
        assert!(LabeledJoint::from_dense(&["A", "A"], &[1, 1], &[1.0]).is_err());
    }

    #[test]
    fn attach_then_marginal_recovers_kernel() {
        let j = two_bits();
        let k = Kernel::new(vec![2], vec![3], vec![0.5, 0.25, 0.25, 0.0, 0.0, 1.0]).unwrap();
        let e = j.attach(&["A"], &k, &[("C", 3)]).unwrap();
        let ac = e.marginal(&["A", "C"]).unwrap().to_dense();
        assert!((ac[0] - 0.3 * 0.5).abs() < 1e-15);
        assert!((ac[5] - 0.7).abs() < 1e-15);
        assert!((e.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(matches!(
            LabeledJoint::from_dense(&["A"], &[2], &[0.3, 0.3]),
            Err(Error::NotNormalized { .. })
        ));
    }
}
