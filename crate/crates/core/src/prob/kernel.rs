use super::index::{flat_index, shape_len, unflatten};
use super::pmf::validate_row;
use crate::error::{Error, Result};

/// A conditional probability table `P(output | input)` over finite product
/// alphabets. Rows are stored contiguously in row-major order of the input
/// tuple, each row flattened row-major over the output tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    input_shape: Vec<usize>,
    output_shape: Vec<usize>,
    table: Vec<f64>,
}

impl Kernel {
    pub fn new(input_shape: Vec<usize>, output_shape: Vec<usize>, table: Vec<f64>) -> Result<Self> {
        if input_shape.iter().chain(&output_shape).any(|&n| n == 0) {
            return Err(Error::Shape("alphabet sizes must be positive".into()));
        }
        let rows = shape_len(&input_shape);
        let width = shape_len(&output_shape);
        if table.len() != rows * width {
            return Err(Error::Shape(format!(
                "kernel table has {} entries, expected {} rows x {} columns",
                table.len(),
                rows,
                width
            )));
        }
        let mut coords = vec![0; input_shape.len()];
        for (r, row) in table.chunks(width).enumerate() {
            unflatten(&input_shape, r, &mut coords);
            validate_row(&format!("kernel row {coords:?}"), row)?;
        }
        Ok(Self {
            input_shape,
            output_shape,
            table,
        })
    }

    /// Builds a kernel from a row generator called once per input tuple.
    pub fn from_fn(
        input_shape: Vec<usize>,
        output_shape: Vec<usize>,
        mut row: impl FnMut(&[usize]) -> Vec<f64>,
    ) -> Result<Self> {
        let rows = shape_len(&input_shape);
        let mut table = Vec::with_capacity(rows * shape_len(&output_shape));
        let mut coords = vec![0; input_shape.len()];
        for r in 0..rows {
            unflatten(&input_shape, r, &mut coords);
            table.extend(row(&coords));
        }
        Self::new(input_shape, output_shape, table)
    }

    /// Deterministic kernel: each input tuple maps to exactly one output tuple.
    pub fn deterministic(
        input_shape: Vec<usize>,
        output_shape: Vec<usize>,
        mut map: impl FnMut(&[usize]) -> Vec<usize>,
    ) -> Result<Self> {
        let width = shape_len(&output_shape);
        let out_shape = output_shape.clone();
        Self::from_fn(input_shape, output_shape, move |input| {
            let out = map(input);
            let mut row = vec![0.0; width];
            if out.len() == out_shape.len() && out.iter().zip(&out_shape).all(|(o, n)| o < n) {
                row[flat_index(&out_shape, &out)] = 1.0;
            }
            row
        })
    }

    pub fn input_shape(&self) -> &[usize] {
        &self.input_shape
    }

    pub fn output_shape(&self) -> &[usize] {
        &self.output_shape
    }

    pub fn rows(&self) -> usize {
        shape_len(&self.input_shape)
    }

    pub fn width(&self) -> usize {
        shape_len(&self.output_shape)
    }

    pub fn row_at(&self, flat_input: usize) -> &[f64] {
        let w = self.width();
        &self.table[flat_input * w..(flat_input + 1) * w]
    }

    pub fn row(&self, input: &[usize]) -> &[f64] {
        self.row_at(flat_index(&self.input_shape, input))
    }

    pub fn prob(&self, input: &[usize], output: &[usize]) -> f64 {
        self.row(input)[flat_index(&self.output_shape, output)]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }
}
