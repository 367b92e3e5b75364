use serde_json::{json, Value};

use super::linalg::CMatrix;
use crate::scalar::Real;

/// Row-major nested arrays of `[re, im]` pairs.
pub fn matrix_to_json<T: Real>(m: &CMatrix<T>) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            let row: Vec<Value> = (0..m.ncols())
                .map(|j| {
                    let z = m[(i, j)];
                    json!([z.re.to_f64(), z.im.to_f64()])
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}
