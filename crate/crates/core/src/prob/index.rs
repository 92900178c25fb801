//! Row-major mixed-radix indexing helpers.

pub fn shape_len(shape: &[usize]) -> usize {
    shape.iter().product()
}

pub fn flat_index(shape: &[usize], coords: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), coords.len());
    coords
        .iter()
        .zip(shape)
        .fold(0, |acc, (&c, &n)| acc * n + c)
}

pub fn unflatten(shape: &[usize], mut index: usize, out: &mut [usize]) {
    for (slot, &n) in out.iter_mut().zip(shape).rev() {
        *slot = index % n;
        index /= n;
    }
}

/// Iterates all coordinate tuples of `shape` in row-major order.
pub fn for_each_coord(shape: &[usize], mut f: impl FnMut(&[usize])) {
    let total = shape_len(shape);
    let mut coords = vec![0usize; shape.len()];
    for i in 0..total {
        unflatten(shape, i, &mut coords);
        f(&coords);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_back() {
        let shape = [2, 3, 4];
        let mut out = [0; 3];
        for i in 0..24 {
            unflatten(&shape, i, &mut out);
            assert_eq!(flat_index(&shape, &out), i);
        }
        assert_eq!(flat_index(&shape, &[1, 2, 3]), 23);
    }
}
