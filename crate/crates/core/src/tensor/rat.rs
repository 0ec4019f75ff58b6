//! Dense tensors of exact rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(text).map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A dense row-major array of rationals. Matrices are rank-2 tensors with
/// shape `[rows, cols]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatTensor {
    shape: Vec<usize>,
    data: Vec<Rational>,
}

impl fmt::Debug for RatTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let data: Vec<String> = self.data.iter().map(format_rational).collect();
        f.debug_struct("RatTensor").field("shape", &self.shape).field("data", &data).finish()
    }
}

impl RatTensor {
    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        RatTensor { shape, data: vec![Rational::zero(); len] }
    }

    pub fn from_data(shape: Vec<usize>, data: Vec<Rational>) -> Result<Self> {
        if shape.iter().product::<usize>() != data.len() {
            return Err(Error::DimensionMismatch(format!("{} entries for shape {shape:?}", data.len())));
        }
        Ok(RatTensor { shape, data })
    }

    pub fn scalar(x: Rational) -> Self {
        RatTensor { shape: Vec::new(), data: vec![x] }
    }

    pub fn identity(n: usize) -> Self {
        let mut t = Self::zeros(vec![n, n]);
        for i in 0..n {
            t.data[i * n + i] = Rational::one();
        }
        t
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("rows of different lengths".into()));
        }
        let shape = vec![rows.len(), cols];
        Ok(RatTensor { shape, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
            .expect("rectangular rows")
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.shape[0]
    }

    pub fn cols(&self) -> usize {
        self.shape[1]
    }

    pub fn is_matrix(&self) -> bool {
        self.shape.len() == 2
    }

    pub fn get(&self, index: &[usize]) -> &Rational {
        &self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], x: Rational) {
        let o = self.offset(index);
        self.data[o] = x;
    }

    fn offset(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.cols().max(1)).map(<[Rational]>::to_vec).take(self.rows()).collect()
    }

    pub fn reshape(&self, shape: Vec<usize>) -> Result<Self> {
        Self::from_data(shape, self.data.clone())
    }

    /// Axis `k` of the result is axis `axes[k]` of `self`.
    pub fn permute_axes(&self, axes: &[usize]) -> Result<Self> {
        let rank = self.shape.len();
        let mut seen = vec![false; rank];
        if axes.len() != rank || axes.iter().any(|&a| a >= rank || std::mem::replace(&mut seen[a], true)) {
            return Err(Error::InvalidPermutation(format!("{axes:?} on {rank} axes")));
        }
        let shape: Vec<usize> = axes.iter().map(|&a| self.shape[a]).collect();
        let mut out = Self::zeros(shape.clone());
        let mut index = vec![0; rank];
        let mut source = vec![0; rank];
        for k in 0..out.data.len() {
            for (slot, &a) in axes.iter().enumerate() {
                source[a] = index[slot];
            }
            out.data[k] = self.get(&source).clone();
            increment(&mut index, &shape);
        }
        Ok(out)
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &RatTensor) -> Result<Self> {
        if !self.is_matrix() || !other.is_matrix() || self.cols() != other.rows() {
            return Err(Error::DimensionMismatch(format!("cannot multiply {:?} by {:?}", self.shape, other.shape)));
        }
        let (r, k, c) = (self.rows(), self.cols(), other.cols());
        let mut out = Self::zeros(vec![r, c]);
        for i in 0..r {
            for t in 0..k {
                let a = &self.data[i * k + t];
                if a.is_zero() {
                    continue;
                }
                for j in 0..c {
                    let b = &other.data[t * c + j];
                    if !b.is_zero() {
                        out.data[i * c + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product of matrices; row `(i, k)` is `i · rows(other) + k`.
    pub fn kron(&self, other: &RatTensor) -> Result<Self> {
        if !self.is_matrix() || !other.is_matrix() {
            return Err(Error::DimensionMismatch("Kronecker product of non-matrices".into()));
        }
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), other.rows(), other.cols());
        let mut out = Self::zeros(vec![r1 * r2, c1 * c2]);
        let cols = c1 * c2;
        for i in 0..r1 {
            for j in 0..c1 {
                let a = &self.data[i * c1 + j];
                for k in 0..r2 {
                    for l in 0..c2 {
                        out.data[(i * r2 + k) * cols + j * c2 + l] = a * &other.data[k * c2 + l];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `n`-fold Kronecker power; the 1×1 identity for `n = 0`.
    pub fn kron_power(&self, n: usize) -> Result<Self> {
        let mut out = Self::identity(1);
        for _ in 0..n {
            out = out.kron(self)?;
        }
        Ok(out)
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_matrix() || self.rows() != self.cols() {
            return Err(Error::DimensionMismatch(format!("cannot invert shape {:?}", self.shape)));
        }
        let n = self.rows();
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &factor, &inv[col][j] * &factor);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Sum over the shared axes of `self` and `other`: axes labeled alike
    /// are contracted and the remaining axes, those of `self` first, are
    /// kept in order.
    pub fn contract<A: PartialEq + Clone>(
        &self,
        labels: &[A],
        other: &RatTensor,
        other_labels: &[A],
    ) -> Result<(RatTensor, Vec<A>)> {
        let shared: Vec<(usize, usize)> = labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| other_labels.iter().position(|x| x == l).map(|j| (i, j)))
            .collect();
        for &(i, j) in &shared {
            if self.shape[i] != other.shape[j] {
                return Err(Error::DimensionMismatch("contracted axes differ in size".into()));
            }
        }
        let keep_a: Vec<usize> = (0..labels.len()).filter(|i| !shared.iter().any(|s| s.0 == *i)).collect();
        let keep_b: Vec<usize> = (0..other_labels.len()).filter(|j| !shared.iter().any(|s| s.1 == *j)).collect();
        let out_shape: Vec<usize> =
            keep_a.iter().map(|&i| self.shape[i]).chain(keep_b.iter().map(|&j| other.shape[j])).collect();
        let sum_shape: Vec<usize> = shared.iter().map(|&(i, _)| self.shape[i]).collect();
        let out_labels: Vec<A> =
            keep_a.iter().map(|&i| labels[i].clone()).chain(keep_b.iter().map(|&j| other_labels[j].clone())).collect();

        let mut out = Self::zeros(out_shape.clone());
        let mut index = vec![0; out_shape.len()];
        let mut ia = vec![0; labels.len()];
        let mut ib = vec![0; other_labels.len()];
        let sum_len: usize = sum_shape.iter().product();
        for k in 0..out.data.len() {
            for (slot, &i) in keep_a.iter().enumerate() {
                ia[i] = index[slot];
            }
            for (slot, &j) in keep_b.iter().enumerate() {
                ib[j] = index[keep_a.len() + slot];
            }
            let mut s = vec![0; sum_shape.len()];
            let mut acc = Rational::zero();
            for _ in 0..sum_len {
                for (t, &(i, j)) in shared.iter().enumerate() {
                    ia[i] = s[t];
                    ib[j] = s[t];
                }
                let a = self.get(&ia);
                if !a.is_zero() {
                    acc += a * other.get(&ib);
                }
                increment(&mut s, &sum_shape);
            }
            out.data[k] = acc;
            increment(&mut index, &out_shape);
        }
        Ok((out, out_labels))
    }
}

/// Advances a row-major multi-index, wrapping to zero after the last one.
fn increment(index: &mut [usize], shape: &[usize]) {
    for k in (0..index.len()).rev() {
        index[k] += 1;
        if index[k] < shape[k] {
            return;
        }
        index[k] = 0;
    }
}

/// Matrices are written as arrays of rows of rational strings.
impl Serialize for RatTensor {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = if self.is_matrix() {
            self.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
        } else {
            vec![self.data.iter().map(format_rational).collect()]
        };
        rows.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RatTensor {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<serde_json::Value>>::deserialize(de)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x {
                        serde_json::Value::String(s) => parse_rational(s).map_err(de::Error::custom),
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(|i| Rational::from_integer(i.into()))
                            .ok_or_else(|| de::Error::custom("matrix entries must be integers or \"p/q\" strings")),
                        _ => Err(de::Error::custom("matrix entries must be integers or \"p/q\" strings")),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RatTensor::from_rows(parsed).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    #[test]
    fn parses_and_prints_rationals() {
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q(3, 2)), "3/2");
        assert_eq!(format_rational(&q(4, 2)), "2");
    }

    #[test]
    fn kron_of_identities() {
        let i2 = RatTensor::identity(2);
        assert_eq!(i2.kron(&RatTensor::identity(3)).unwrap(), RatTensor::identity(6));
    }

    #[test]
    fn inverse_of_a_triangular_matrix() {
        let a = RatTensor::from_integers(&[&[2, 1], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), RatTensor::identity(2));
        assert!(matches!(RatTensor::from_integers(&[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn contraction_is_matrix_product() {
        let a = RatTensor::from_integers(&[&[1, 2], &[3, 4]]);
        let b = RatTensor::from_integers(&[&[0, 1], &[1, 0]]);
        let (c, labels) = a.contract(&['i', 'k'], &b, &['k', 'j']).unwrap();
        assert_eq!(labels, vec!['i', 'j']);
        assert_eq!(c, a.matmul(&b).unwrap());
    }

    #[test]
    fn transpose_by_axis_permutation() {
        let a = RatTensor::from_integers(&[&[1, 2, 3], &[4, 5, 6]]);
        let t = a.permute_axes(&[1, 0]).unwrap();
        assert_eq!(t, RatTensor::from_integers(&[&[1, 4], &[2, 5], &[3, 6]]));
    }
}
