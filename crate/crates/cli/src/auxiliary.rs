//! JSON auxiliary documents for the `thm1` and `prop3` regions.
//!
//! `thm1`: `{"input": [P(x)..], "u1": [[P(u|x)..] per x], "u2": [...]}`.
//!
//! `prop3`: `{"u_sizes": [|U0|, |U1|, |U2|], "input": [P(u0,u1,u2,x) row-major],
//! "v_sizes": [|V0|, |V1|, |V2|], "v_kernel": [[P(v0,v1,v2 | u0,u1,u2,z)..] per row]}`
//! with kernel rows ordered row-major over `(u0, u1, u2, z)`.

use serde::Deserialize;

use sdmbc_core::prob::{Kernel, LabeledJoint, Pmf};
use sdmbc_core::regions::{InnerAux, OuterAux};
use sdmbc_core::Error;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OuterDoc {
    input: Vec<f64>,
    u1: Vec<Vec<f64>>,
    u2: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InnerDoc {
    u_sizes: [usize; 3],
    input: Vec<f64>,
    v_sizes: [usize; 3],
    v_kernel: Vec<Vec<f64>>,
}

fn schema(e: serde_json::Error) -> Error {
    Error::Schema(e.to_string())
}

fn rows_kernel(
    input_shape: Vec<usize>,
    output_shape: Vec<usize>,
    rows: Vec<Vec<f64>>,
) -> Result<Kernel, Error> {
    Kernel::new(input_shape, output_shape, rows.concat())
}

pub fn outer(text: &str, x_size: usize) -> Result<OuterAux, Error> {
    let doc: OuterDoc = serde_json::from_str(text).map_err(schema)?;
    let width = |rows: &[Vec<f64>]| rows.first().map_or(0, Vec::len);
    let (w1, w2) = (width(&doc.u1), width(&doc.u2));
    Ok(OuterAux {
        input: Pmf::new(doc.input)?,
        u1: rows_kernel(vec![x_size], vec![w1], doc.u1)?,
        u2: rows_kernel(vec![x_size], vec![w2], doc.u2)?,
    })
}

pub fn inner(text: &str, x_size: usize, z_size: usize) -> Result<InnerAux, Error> {
    let doc: InnerDoc = serde_json::from_str(text).map_err(schema)?;
    let [u0, u1, u2] = doc.u_sizes;
    let input =
        LabeledJoint::from_dense(&["U0", "U1", "U2", "X"], &[u0, u1, u2, x_size], &doc.input)?;
    let v_kernel = rows_kernel(vec![u0, u1, u2, z_size], doc.v_sizes.to_vec(), doc.v_kernel)?;
    Ok(InnerAux { input, v_kernel })
}
