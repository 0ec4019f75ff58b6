//! The endomorphism prop `End_X` of `X = Q^d`.

use serde::Serialize;

use super::eval::pow;
use super::rat::RatTensor;
use crate::error::{Error, Result};
use crate::free_prop::Prop;
use crate::perm::Perm;

/// A linear map `X^{⊗inputs} → X^{⊗outputs}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    pub inputs: usize,
    pub outputs: usize,
    pub matrix: RatTensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndProp {
    pub dim: usize,
}

impl EndProp {
    pub fn new(dim: usize) -> Self {
        EndProp { dim }
    }

    pub fn map(&self, inputs: usize, outputs: usize, matrix: RatTensor) -> Result<LinearMap> {
        if matrix.shape() != [pow(self.dim, outputs)?, pow(self.dim, inputs)?] {
            return Err(Error::DimensionMismatch(format!(
                "shape {:?} is not that of a ({inputs}, {outputs})-map at dimension {}",
                matrix.shape(),
                self.dim
            )));
        }
        Ok(LinearMap { inputs, outputs, matrix })
    }
}

/// Reorders the boundary axes of a `d^n × d^m` matrix: output axis `k` of
/// the result is output axis `outs[k]` of `t`, and likewise for inputs.
pub fn permute_boundary(t: &RatTensor, d: usize, outs: &[usize], ins: &[usize]) -> Result<RatTensor> {
    let (n, m) = (outs.len(), ins.len());
    let axes: Vec<usize> = outs.iter().copied().chain(ins.iter().map(|&i| n + i)).collect();
    t.reshape(vec![d; n + m])?.permute_axes(&axes)?.reshape(vec![pow(d, n)?, pow(d, m)?])
}

impl Prop for EndProp {
    type Morphism = LinearMap;

    fn identity(&self, n: usize) -> LinearMap {
        let size = pow(self.dim, n).expect("identity size fits");
        LinearMap { inputs: n, outputs: n, matrix: RatTensor::identity(size) }
    }

    fn boundary(&self, f: &LinearMap) -> (usize, usize) {
        (f.inputs, f.outputs)
    }

    fn hcompose(&self, a: &LinearMap, b: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap { inputs: a.inputs + b.inputs, outputs: a.outputs + b.outputs, matrix: a.matrix.kron(&b.matrix)? })
    }

    fn vcompose(&self, top: &LinearMap, bottom: &LinearMap) -> Result<LinearMap> {
        if top.outputs != bottom.inputs {
            return Err(Error::BoundaryMismatch(format!("{} outputs feed {} inputs", top.outputs, bottom.inputs)));
        }
        Ok(LinearMap { inputs: top.inputs, outputs: bottom.outputs, matrix: bottom.matrix.matmul(&top.matrix)? })
    }

    /// New input `k` is old input `w(k)`.
    fn permute_inputs(&self, f: &LinearMap, w: &Perm) -> Result<LinearMap> {
        if w.len() != f.inputs {
            return Err(Error::PermutationSize { expected: f.inputs, found: w.len() });
        }
        let outs: Vec<usize> = (0..f.outputs).collect();
        let matrix = permute_boundary(&f.matrix, self.dim, &outs, w.images())?;
        Ok(LinearMap { matrix, ..f.clone() })
    }

    /// Old output `j` becomes output `w(j)`.
    fn permute_outputs(&self, f: &LinearMap, w: &Perm) -> Result<LinearMap> {
        if w.len() != f.outputs {
            return Err(Error::PermutationSize { expected: f.outputs, found: w.len() });
        }
        let ins: Vec<usize> = (0..f.inputs).collect();
        let matrix = permute_boundary(&f.matrix, self.dim, w.inverse().images(), &ins)?;
        Ok(LinearMap { matrix, ..f.clone() })
    }
}
